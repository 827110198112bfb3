#include "morseot/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "morseot/rng.hpp"

namespace morseot {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::string> split_tokens(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (sep == ' ' ? (ch == ' ' || ch == '\t' || ch == '\r') : (ch == sep || ch == '\r')) {
      if (!cur.empty() || sep != ' ') {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || (sep != ' ' && !out.empty())) out.push_back(cur);
  return out;
}

double parse_number(const std::string& tok, int line_no, int row_no) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                             ", row " + std::to_string(row_no) +
                             ": non-numeric token \"" + tok + "\"");
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                             ", row " + std::to_string(row_no) +
                             ": non-finite value");
  }
  return v;
}

}  // namespace

void ScalarField::update_range() {
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  vmin = *mn;
  vmax = *mx;
}

ScalarField make_field(int rows, int cols, std::vector<double> vals) {
  if (rows < 2 || cols < 2)
    throw std::runtime_error("grid must be at least 2x2");
  if (vals.size() != size_t(rows) * size_t(cols))
    throw std::runtime_error("value count does not match grid dimensions");
  for (double v : vals)
    if (!std::isfinite(v))
      throw std::runtime_error("field contains a non-finite value");
  ScalarField f;
  f.rows = rows;
  f.cols = cols;
  f.values = std::move(vals);
  f.update_range();
  return f;
}

ScalarField load_field(const std::string& path, FieldFormat fmt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && split_tokens(lines.back(), ' ').empty())
    lines.pop_back();
  if (lines.empty()) throw std::runtime_error("empty file: " + path);

  int rows = 0, cols = 0;
  size_t first_data = 0;
  if (fmt == FieldFormat::PlainText) {
    auto toks = split_tokens(lines[0], ' ');
    if (toks.size() != 2)
      throw std::runtime_error(
          "parse error at line 1: header must be \"rows cols\"");
    rows = (int)parse_number(toks[0], 1, 0);
    cols = (int)parse_number(toks[1], 1, 0);
    if (rows < 2 || cols < 2) throw std::runtime_error("grid must be at least 2x2");
    if (lines.size() < size_t(rows) + 1)
      throw std::runtime_error("file has fewer data rows than the header declares");
    first_data = 1;
  } else {
    rows = (int)lines.size();
    if (rows < 2) throw std::runtime_error("grid must be at least 2x2");
    cols = (int)split_tokens(lines[0], ',').size();
    if (cols < 2) throw std::runtime_error("grid must be at least 2x2");
  }

  std::vector<double> vals;
  vals.reserve(size_t(rows) * cols);
  char sep = fmt == FieldFormat::PlainText ? ' ' : ',';
  for (int r = 0; r < rows; ++r) {
    int line_no = int(first_data) + r + 1;
    auto toks = split_tokens(lines[first_data + r], sep);
    if ((int)toks.size() != cols)
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ", row " + std::to_string(r + 1) + ": expected " +
                               std::to_string(cols) + " values, got " +
                               std::to_string(toks.size()));
    for (auto& t : toks) vals.push_back(parse_number(t, line_no, r + 1));
  }
  return make_field(rows, cols, std::move(vals));
}

void save_field(const ScalarField& f, const std::string& path, FieldFormat fmt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  char buf[40];
  if (fmt == FieldFormat::PlainText) out << f.rows << " " << f.cols << "\n";
  char sep = fmt == FieldFormat::PlainText ? ' ' : ',';
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", f.at(r, c));
      if (c) out << sep;
      out << buf;
    }
    out << "\n";
  }
}

ScalarField normalize_field(const ScalarField& f) {
  if (!(f.vmax > f.vmin))
    throw std::runtime_error("degenerate constant field");
  ScalarField g = f;
  double range = f.vmax - f.vmin;
  for (double& v : g.values) v = (v - f.vmin) / range;
  g.update_range();
  return g;
}

ScalarField gen_sine_mixture(int rows, int cols, std::pair<double, double> f1,
                             std::pair<double, double> f2, double noise_amp,
                             uint64_t seed) {
  if (rows < 2 || cols < 2) throw std::runtime_error("grid must be at least 2x2");
  if (noise_amp < 0) throw std::runtime_error("noise amplitude must be >= 0");
  std::vector<double> vals(size_t(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    double v = double(r) / (rows - 1);
    for (int c = 0; c < cols; ++c) {
      double u = double(c) / (cols - 1);
      vals[size_t(r) * cols + c] =
          std::sin(kTwoPi * (f1.first * u + f1.second * v)) +
          std::sin(kTwoPi * (f2.first * u + f2.second * v));
    }
  }
  if (noise_amp > 0) {
    Rng rng(seed);
    for (double& v : vals) v += noise_amp * rng.symmetric();
  }
  return make_field(rows, cols, std::move(vals));
}

ScalarField gen_gaussian_mixture(int rows, int cols,
                                 const std::vector<GaussianComponent>& comps,
                                 double rotation_angle, double noise_amp,
                                 uint64_t seed) {
  if (rows < 2 || cols < 2) throw std::runtime_error("grid must be at least 2x2");
  if (comps.empty()) throw std::runtime_error("at least one component required");
  if (noise_amp < 0) throw std::runtime_error("noise amplitude must be >= 0");
  for (auto& g : comps) {
    if (!(g.sigma > 0)) throw std::runtime_error("component bandwidth must be > 0");
    if (g.cx < 0 || g.cx > 1 || g.cy < 0 || g.cy > 1)
      throw std::runtime_error("component center outside [0,1]^2");
  }

  double ang = std::fmod(rotation_angle, kTwoPi);
  double ca = std::cos(ang), sa = std::sin(ang);
  std::vector<GaussianComponent> rotated = comps;
  for (auto& g : rotated) {
    double dx = g.cx - 0.5, dy = g.cy - 0.5;
    g.cx = 0.5 + ca * dx - sa * dy;
    g.cy = 0.5 + sa * dx + ca * dy;
  }

  std::vector<double> vals(size_t(rows) * cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    double v = double(r) / (rows - 1);
    for (int c = 0; c < cols; ++c) {
      double u = double(c) / (cols - 1);
      double s = 0.0;
      for (auto& g : rotated) {
        double dx = u - g.cx, dy = v - g.cy;
        s += g.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * g.sigma * g.sigma));
      }
      vals[size_t(r) * cols + c] = s;
    }
  }
  if (noise_amp > 0) {
    Rng rng(seed);
    for (double& v : vals) v += noise_amp * rng.symmetric();
  }
  return make_field(rows, cols, std::move(vals));
}

double euclidean_scalar_distance(const ScalarField& f1, const ScalarField& f2) {
  if (f1.rows != f2.rows || f1.cols != f2.cols)
    throw std::runtime_error("field dimensions do not match");
  double s = 0.0;
  for (size_t i = 0; i < f1.values.size(); ++i) {
    double d = f1.values[i] - f2.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace morseot
