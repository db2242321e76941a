#include "selfsim/io_plot.hpp"

#include "selfsim/io_json.hpp"

#include <algorithm>
#include <sstream>

namespace selfsim {

namespace {

const char* kOverlayColors[] = {"#d62728", "#ff7f0e", "#2ca02c", "#9467bd",
                                "#8c564b", "#e377c2", "#17becf"};

struct Box {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
};

Box bounding(const std::vector<QVec>& pts, int dim) {
  Box b;
  if (pts.empty()) return b;
  auto p0 = qvec_to_double(pts[0]);
  b.xmin = b.xmax = p0[0];
  b.ymin = b.ymax = dim > 1 ? p0[1] : 0;
  for (const auto& q : pts) {
    auto p = qvec_to_double(q);
    b.xmin = std::min(b.xmin, p[0]);
    b.xmax = std::max(b.xmax, p[0]);
    if (dim > 1) {
      b.ymin = std::min(b.ymin, p[1]);
      b.ymax = std::max(b.ymax, p[1]);
    }
  }
  double padx = 0.05 * std::max(1e-9, b.xmax - b.xmin);
  double pady = 0.05 * std::max(1e-9, b.ymax - b.ymin);
  b.xmin -= padx;
  b.xmax += padx;
  b.ymin -= pady;
  b.ymax += pady;
  return b;
}

}  // namespace

std::string plot_svg(const SelfSimilarSystem& sys, const AttractorGrid& grid,
                     const DiscreteMeasure& mu,
                     const std::vector<std::vector<QVec>>& orbit_overlays) {
  const int w = 720, h = 560;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  out << "<text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" << sys.name
      << "  grid depth " << grid.depth << "  points " << grid.points.size() << "</text>\n";

  Box box = bounding(grid.points, sys.dimension);
  auto sx = [&](double x) { return 30 + (x - box.xmin) / (box.xmax - box.xmin) * (w - 60); };

  if (sys.dimension == 1) {
    // histogram of the measure
    double wmax = 0;
    for (const auto& q : mu.weights) wmax = std::max(wmax, q.get_d());
    for (size_t i = 0; i < mu.support.size(); ++i) {
      double x = sx(mu.support[i][0].to_double());
      double bar = (h - 120) * (mu.weights[i].get_d() / std::max(wmax, 1e-300));
      out << "<line x1=\"" << format_real(x) << "\" y1=\"" << (h - 40) << "\" x2=\""
          << format_real(x) << "\" y2=\"" << format_real(h - 40 - bar)
          << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    }
    out << "<line x1=\"30\" y1=\"" << (h - 40) << "\" x2=\"" << (w - 30) << "\" y2=\"" << (h - 40)
        << "\" stroke=\"black\"/>\n";
    for (size_t k = 0; k < orbit_overlays.size(); ++k) {
      const char* color = kOverlayColors[k % (sizeof(kOverlayColors) / sizeof(char*))];
      for (const auto& p : orbit_overlays[k]) {
        out << "<circle cx=\"" << format_real(sx(p[0].to_double())) << "\" cy=\"" << (h - 40)
            << "\" r=\"5\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      }
    }
  } else {
    auto sy = [&](double y) { return h - 40 - (y - box.ymin) / (box.ymax - box.ymin) * (h - 90); };
    for (const auto& q : grid.points) {
      auto p = qvec_to_double(q);
      out << "<circle cx=\"" << format_real(sx(p[0])) << "\" cy=\"" << format_real(sy(p[1]))
          << "\" r=\"1.2\" fill=\"#1f77b4\"/>\n";
    }
    for (size_t k = 0; k < orbit_overlays.size(); ++k) {
      const char* color = kOverlayColors[k % (sizeof(kOverlayColors) / sizeof(char*))];
      for (const auto& q : orbit_overlays[k]) {
        auto p = qvec_to_double(q);
        out << "<circle cx=\"" << format_real(sx(p[0])) << "\" cy=\"" << format_real(sy(p[1]))
            << "\" r=\"5\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string grid_csv(const SelfSimilarSystem& sys, const AttractorGrid& grid,
                     const DiscreteMeasure& mu) {
  std::ostringstream out;
  out << "word,";
  for (int i = 0; i < sys.dimension; ++i) out << "x" << i << ",";
  out << "weight\n";
  auto words = all_words(sys.branch_count(), grid.depth);
  for (size_t k = 0; k < words.size(); ++k) {
    const QVec& p = grid.points[grid.point_of_word[k]];
    std::string w;
    for (int j : words[k]) w += std::to_string(j);
    out << (w.empty() ? "-" : w) << ",";
    for (int i = 0; i < sys.dimension; ++i) out << quad_to_string(p[i]) << ",";
    out << rational_to_string(mu.weights[grid.point_of_word[k]]) << "\n";
  }
  return out.str();
}

}  // namespace selfsim
