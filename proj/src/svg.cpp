#include "morseot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace morseot {

namespace {

constexpr double kCanvas = 640.0;

std::string hex_color(const Rgb& c) {
  auto chan = [](double v) {
    int x = (int)std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
    return x;
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", chan(c.r), chan(c.g), chan(c.b));
  return buf;
}

// blue -> white -> red scalar ramp
Rgb scalar_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  if (t < 0.5) {
    double s = t * 2.0;
    return {0.2 + 0.8 * s, 0.3 + 0.7 * s, 0.9};
  }
  double s = (t - 0.5) * 2.0;
  return {1.0, 1.0 - 0.7 * s, 0.9 - 0.8 * s};
}

struct SvgDoc {
  std::ostringstream body;
  double w, h;
  SvgDoc(double width, double height) : w(width), h(height) {
    body << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)w
         << "\" height=\"" << (int)h << "\" viewBox=\"0 0 " << (int)w << " "
         << (int)h << "\">\n";
  }
  std::string finish() {
    body << "</svg>\n";
    return body.str();
  }
};

// y axis flipped: domain (0,0) is the lower-left corner
double to_px_y(double y) { return kCanvas * (1.0 - y); }
double to_px_x(double x) { return kCanvas * x; }

void draw_field(SvgDoc& doc, const ScalarField& f) {
  double range = f.vmax - f.vmin;
  double cw = kCanvas / f.cols, ch = kCanvas / f.rows;
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      double t = range > 0 ? (f.at(r, c) - f.vmin) / range : 0.5;
      doc.body << "<rect x=\"" << c * cw << "\" y=\"" << kCanvas - (r + 1) * ch
               << "\" width=\"" << cw + 0.5 << "\" height=\"" << ch + 0.5
               << "\" fill=\"" << hex_color(scalar_color(t)) << "\"/>\n";
    }
  }
}

void draw_graph(SvgDoc& doc, const MorseGraph& g,
                const std::vector<Rgb>* node_colors,
                const std::vector<bool>* hollow) {
  for (auto& e : g.edges) {
    doc.body << "<polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" points=\"";
    for (auto& [x, y] : e.polyline)
      doc.body << to_px_x(x) << "," << to_px_y(y) << " ";
    doc.body << "\"/>\n";
  }
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    auto& nd = g.nodes[i];
    Rgb color = node_colors && i < node_colors->size()
                    ? (*node_colors)[i]
                    : colormap_color(Colormap::PositionRgb, nd.x, nd.y);
    bool is_hollow = hollow && i < hollow->size() && (*hollow)[i];
    double rad = nd.kind == NodeKind::Sampled ? 3.0 : 5.0;
    doc.body << "<circle cx=\"" << to_px_x(nd.x) << "\" cy=\"" << to_px_y(nd.y)
             << "\" r=\"" << rad << "\" ";
    if (is_hollow)
      doc.body << "fill=\"none\" stroke=\"" << hex_color(color)
               << "\" stroke-width=\"1.5\"";
    else
      doc.body << "fill=\"" << hex_color(color) << "\" stroke=\"#333333\" stroke-width=\"0.5\"";
    doc.body << "/>\n";
  }
}

}  // namespace

std::string svg_field(const ScalarField& f, const MorseGraph* overlay) {
  SvgDoc doc(kCanvas, kCanvas);
  draw_field(doc, f);
  if (overlay) draw_graph(doc, *overlay, nullptr, nullptr);
  return doc.finish();
}

std::string svg_graph(const MorseGraph& g, const std::vector<Rgb>* node_colors,
                      const std::vector<bool>* hollow,
                      const ScalarField* background) {
  SvgDoc doc(kCanvas, kCanvas);
  if (background) draw_field(doc, *background);
  draw_graph(doc, g, node_colors, hollow);
  return doc.finish();
}

std::string svg_matrix(const DistanceMatrix& d) {
  int n = (int)d.values.rows();
  double margin = 80.0;
  double cell = std::max(4.0, std::min(40.0, (kCanvas - margin) / n));
  SvgDoc doc(margin + cell * n + 10, margin + cell * n + 10);
  double vmax = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::isfinite(d.values(i, j))) vmax = std::max(vmax, d.values(i, j));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = d.values(i, j);
      std::string fill = std::isfinite(v)
                             ? hex_color(scalar_color(vmax > 0 ? v / vmax : 0))
                             : "#888888";
      doc.body << "<rect x=\"" << margin + j * cell << "\" y=\"" << margin + i * cell
               << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
               << fill << "\"/>\n";
    }
  }
  if (cell >= 9) {
    for (int i = 0; i < n; ++i) {
      doc.body << "<text x=\"" << margin - 4 << "\" y=\""
               << margin + i * cell + cell * 0.7
               << "\" font-size=\"8\" text-anchor=\"end\">" << d.labels[i]
               << "</text>\n";
      doc.body << "<text x=\"" << margin + i * cell + cell * 0.5 << "\" y=\""
               << margin - 4 << "\" font-size=\"8\" text-anchor=\"middle\">"
               << d.labels[i] << "</text>\n";
    }
  }
  return doc.finish();
}

std::string svg_scatter(const Eigen::MatrixXd& points,
                        const std::vector<std::string>& classes) {
  SvgDoc doc(kCanvas, kCanvas);
  int n = (int)points.rows();
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (n > 0) {
    xmin = points.col(0).minCoeff();
    xmax = points.col(0).maxCoeff();
    ymin = points.cols() > 1 ? points.col(1).minCoeff() : -1;
    ymax = points.cols() > 1 ? points.col(1).maxCoeff() : 1;
  }
  double spanx = std::max(xmax - xmin, 1e-12);
  double spany = std::max(ymax - ymin, 1e-12);

  std::set<std::string> cls_set(classes.begin(), classes.end());
  std::vector<std::string> cls(cls_set.begin(), cls_set.end());
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::map<std::string, std::string> color_of;
  for (size_t i = 0; i < cls.size(); ++i)
    color_of[cls[i]] = palette[i % 8];

  for (int i = 0; i < n; ++i) {
    double px = 40 + (points(i, 0) - xmin) / spanx * (kCanvas - 80);
    double py = points.cols() > 1
                    ? kCanvas - 40 - (points(i, 1) - ymin) / spany * (kCanvas - 80)
                    : kCanvas / 2;
    std::string fill = i < (int)classes.size() ? color_of[classes[i]] : "#1f77b4";
    doc.body << "<circle cx=\"" << px << "\" cy=\"" << py
             << "\" r=\"4\" fill=\"" << fill << "\" fill-opacity=\"0.8\"/>\n";
  }
  return doc.finish();
}

}  // namespace morseot
