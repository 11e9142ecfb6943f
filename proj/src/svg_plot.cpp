#include "dscofs/svg_plot.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace dscofs {

void write_scatter_svg(const std::string& path, const DataMatrix& data,
                       int feature_x, int feature_y, const LabelVector& labels) {
  const Eigen::Index n = data.n();
  if (feature_x < 0 || feature_x >= data.d() || feature_y < 0 ||
      feature_y >= data.d()) {
    throw std::invalid_argument("write_scatter_svg: feature index out of range");
  }
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument("write_scatter_svg: label count mismatch");
  }
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf"};
  constexpr int kSize = 480, kMargin = 44;

  const Vector xs = data.values.row(feature_x).transpose();
  const Vector ys = data.values.row(feature_y).transpose();
  double xmin = xs.minCoeff(), xmax = xs.maxCoeff();
  double ymin = ys.minCoeff(), ymax = ys.maxCoeff();
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  auto sx = [&](double x) {
    return kMargin + (x - xmin) / (xmax - xmin) * (kSize - 2 * kMargin);
  };
  auto sy = [&](double y) {
    return kSize - kMargin - (y - ymin) / (ymax - ymin) * (kSize - 2 * kMargin);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">feature " << feature_x
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << kSize / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
      << kSize / 2 << ")\">feature " << feature_y << "</text>\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const int cls = labels.empty() ? 0 : labels[i];
    out << "<circle cx=\"" << sx(xs[i]) << "\" cy=\"" << sy(ys[i])
        << "\" r=\"2\" fill=\"" << kPalette[cls % 10] << "\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dscofs
