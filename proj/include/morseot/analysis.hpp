#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morseot/ot.hpp"

namespace morseot {

enum class Colormap { PositionRgb, PositionHue };

struct Rgb {
  double r = 0, g = 0, b = 0;
};

Rgb colormap_color(Colormap cm, double x, double y);

// Coupling-based color transfer: the target node j inherits the color of
// argmax_i C(i,j); a target column carrying less than 1e-12 * mass is hollow.
struct ColorAssignment {
  std::vector<Rgb> source_colors;
  std::vector<Rgb> target_colors;
  std::vector<bool> hollow;
};

ColorAssignment color_transfer(const MeasureNetwork& source,
                               const MeasureNetwork& target,
                               const Coupling& coupling, Colormap cm);

struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // symmetric, zero diagonal; NaN marks missing
};

enum class MatrixKind {
  W, GW, FGW, PW, PGW, PFGW,
  EuclideanScalar,   // Frobenius norm between raw fields
  EuclideanComplex,  // Frobenius norm between graph rasterizations
};

MatrixKind parse_matrix_kind(const std::string& name);
std::string matrix_kind_name(MatrixKind kind);

// One experiment instance; OT kinds use `net` (pair-normalized on the fly),
// the Euclidean baselines use `field` / `graph`.
struct Instance {
  std::string label;
  std::string cls;  // class name for classification tasks (may be empty)
  std::optional<MeasureNetwork> net;
  std::optional<ScalarField> field;
  std::optional<MorseGraph> graph;
};

struct MatrixOptions {
  int jobs = 1;
  int raster_rows = 0, raster_cols = 0;  // EuclideanComplex rasterization
  bool allow_missing = false;
  // when set, receives (i, j, seconds) per computed pair
  std::vector<std::tuple<int, int, double>>* timings = nullptr;
};

// All unordered pairs, computed independently (parallel over pairs);
// Frank-Wolfe kinds average both directions. A per-pair failure poisons the
// run unless allow_missing is set, in which case the entry stays NaN.
DistanceMatrix distance_matrix(const std::vector<Instance>& instances,
                               MatrixKind kind, const SolverConfig& cfg,
                               const MatrixOptions& opts = {});

// max ||a_i - b_j|| over the coupling support (entries above 1e-12).
double max_matched_distance(const MeasureNetwork& g1, const MeasureNetwork& g2,
                            const Coupling& coupling);

struct ElbowResult {
  double m_star = 0.0;
  bool clear = false;  // false when the curve has no distinguished kink
};

// Point of maximum |second difference| of the (m, max matched distance)
// curve; ties resolve to the smallest m. Needs >= 4 ascending points.
ElbowResult elbow_select(const std::vector<std::pair<double, double>>& curve);

struct MdsResult {
  Eigen::MatrixXd points;  // n x dim
  int clamped = 0;         // negative eigenvalues clamped to zero
};

MdsResult classical_mds(const DistanceMatrix& d, int dim);

struct ClassificationReport {
  double accuracy = 0.0;
  std::vector<std::string> classes;
  std::map<std::string, double> f1;  // NaN marks classes with no test data
  Eigen::MatrixXi confusion;         // rows: true class, cols: predicted
  int k = 0;
  int train_count = 0, test_count = 0;
};

// Stratified seeded split; majority vote among the k nearest training
// instances, ties by smaller summed distance then smaller class index.
ClassificationReport knn_classify(const DistanceMatrix& d,
                                  const std::vector<std::string>& labels,
                                  int k, double train_fraction, uint64_t seed);

// Leave-one-out over the training split, candidates {1,3,5,7}, ties to the
// smaller k.
int knn_select_k(const DistanceMatrix& d, const std::vector<std::string>& labels,
                 double train_fraction, uint64_t seed);

}  // namespace morseot
