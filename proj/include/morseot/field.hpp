#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace morseot {

// Uniformly sampled 2D scalar field. Values are stored row-major; grid
// coordinates map to [0,1]^2 with (row 0, col 0) at the lower-left corner:
// x = col/(cols-1), y = row/(rows-1). The first data row of a file is the
// bottom row of the domain.
struct ScalarField {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // rows*cols, row-major
  double extent_w = 1.0;       // abstract spatial units
  double extent_h = 1.0;
  double vmin = 0.0;           // cached range
  double vmax = 0.0;

  double at(int r, int c) const { return values[size_t(r) * cols + c]; }
  double& at(int r, int c) { return values[size_t(r) * cols + c]; }
  int size() const { return rows * cols; }
  void update_range();
};

enum class FieldFormat { PlainText, Csv };

// Validates dimensions (>= 2x2) and finiteness, caches the range.
ScalarField make_field(int rows, int cols, std::vector<double> vals);

ScalarField load_field(const std::string& path, FieldFormat fmt);
void save_field(const ScalarField& f, const std::string& path, FieldFormat fmt);

// Affine rescale to [0,1]. Throws on constant fields.
ScalarField normalize_field(const ScalarField& f);

// f(u,v) = sin(2pi fx1 u + 2pi fy1 v) + sin(2pi fx2 u + 2pi fy2 v) + noise,
// noise ~ noise_amp * U[-1,1) per vertex, drawn row-major from Rng(seed).
// noise_amp == 0 skips the generator entirely, so the field is
// seed-independent in that case.
ScalarField gen_sine_mixture(int rows, int cols,
                             std::pair<double, double> freq1,
                             std::pair<double, double> freq2,
                             double noise_amp, uint64_t seed);

struct GaussianComponent {
  double cx = 0.5;
  double cy = 0.5;
  double sigma = 0.1;
  double amplitude = 1.0;
};

// Sum of isotropic Gaussians; all centers are rotated about (0.5, 0.5) by
// rotation_angle (reduced mod 2pi) before evaluation. Centers must lie in
// [0,1]^2.
ScalarField gen_gaussian_mixture(int rows, int cols,
                                 const std::vector<GaussianComponent>& comps,
                                 double rotation_angle, double noise_amp,
                                 uint64_t seed);

// Frobenius norm of the difference; requires identical dimensions.
double euclidean_scalar_distance(const ScalarField& f1, const ScalarField& f2);

}  // namespace morseot
