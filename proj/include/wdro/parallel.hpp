#pragma once

namespace wdro {

// Kernels that have both a serial reference loop and an OpenMP loop take an
// Execution argument. Results never depend on the choice or thread count.
enum class Execution { kSerial, kParallel };

// Number of OpenMP threads used by parallel kernels; values < 1 restore the
// runtime default. No effect in builds without OpenMP.
void set_thread_count(int threads);
int thread_count();

}  // namespace wdro
