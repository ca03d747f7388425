#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wdro/errors.hpp"
#include "wdro/experiments.hpp"

namespace wdro {

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

const char* color_of(Method m) {
  switch (m) {
    case Method::kSaa: return "#444444";
    case Method::kRowGen: return "#1f77b4";
    case Method::kDistort: return "#d62728";
  }
  return "#000000";
}

std::string chart(const std::string& title, const std::vector<Series>& series) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << std::setprecision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kLeft << "\" y=\"22\" font-size=\"14\">" << title << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = x0 + (x1 - x0) * t / 4, y = y0 + (y1 - y0) * t / 4;
    o << "<text x=\"" << px(x) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << x << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y << "</text>\n";
    o << "<line x1=\"" << kLeft << "\" y1=\"" << py(y) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(y)
      << "\" stroke=\"#dddddd\"/>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">epsilon</text>\n";
  o << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">q0.9</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.points) o << px(x) << ',' << py(y) << ' ';
    o << "\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(k);
    o << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 32
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly << "\">" << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<std::string> write_plots(const SweepResult& result, const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  const auto& c = result.config;
  std::vector<std::string> written;
  std::vector<Series> mean;
  for (Method m : c.methods) mean.push_back(Series{std::string(to_string(m)) + " (mean)", color_of(m), {}});

  for (int s = 0; s < c.samples; ++s) {
    std::vector<Series> series;
    for (Method m : c.methods) series.push_back(Series{to_string(m), color_of(m), {}});
    for (const auto& r : result.records) {
      if (r.sample_id != s || !std::isfinite(r.q90)) continue;
      const auto k = std::find(c.methods.begin(), c.methods.end(), r.method) - c.methods.begin();
      series[k].points.emplace_back(r.epsilon, r.q90);
    }
    const fs::path path = fs::path(directory) / ("sample_" + std::to_string(s) + ".svg");
    save(path, chart("sample " + std::to_string(s) + ": q0.9 of the chosen solution", series));
    written.push_back(path.string());
  }

  for (std::size_t k = 0; k < c.methods.size(); ++k) {
    for (double eps : c.epsilons) {
      double sum = 0.0;
      int count = 0;
      for (const auto& r : result.records) {
        if (r.method == c.methods[k] && r.epsilon == eps && std::isfinite(r.q90)) {
          sum += r.q90;
          ++count;
        }
      }
      if (count > 0) mean[k].points.emplace_back(eps, sum / count);
    }
  }
  const fs::path path = fs::path(directory) / "aggregate.svg";
  save(path, chart("mean q0.9 over samples", mean));
  written.push_back(path.string());
  return written;
}

}  // namespace wdro
