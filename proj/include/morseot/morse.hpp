#pragma once

#include <string>
#include <utility>
#include <vector>

#include "morseot/field.hpp"

namespace morseot {

// Discrete critical point classification uses 8-connectivity. Ties in vertex
// values are broken lexicographically by (value, row-major index)
// ("simulation of simplicity"), so every comparison below is strict.
enum class CriticalKind { Minimum, Saddle, Maximum };

struct CriticalPoint {
  int row = 0, col = 0;
  CriticalKind kind = CriticalKind::Minimum;
  double value = 0.0;
  // Maxima carry their merge persistence; the global maximum (and kinds this
  // pipeline never cancels) carry +inf. Saddles that close a pair carry that
  // pair's persistence.
  double persistence = 0.0;
};

struct CriticalCensus {
  int minima = 0, saddles = 0, maxima = 0;
};

enum class NodeKind { Critical, Sampled, Virtual };

struct GraphNode {
  int id = 0;
  double x = 0.0, y = 0.0;  // normalized [0,1]^2 coordinates
  NodeKind kind = NodeKind::Critical;
};

struct GraphEdge {
  int a = 0, b = 0;
  std::vector<std::pair<double, double>> polyline;  // starts at a, ends at b
  double arc_length = 0.0;
};

// Embedded 1-skeleton bounding the descending manifolds of the maxima.
struct MorseGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  double epsilon = 0.0;        // simplification level of the source field
  std::string source;          // provenance tag
  bool boundary_only = false;  // degenerate single-maximum case
};

struct PersistencePair {
  int max_row = 0, max_col = 0;
  int saddle_row = 0, saddle_col = 0;
  double persistence = 0.0;
};

std::vector<CriticalPoint> classify_critical_points(const ScalarField& f);
CriticalCensus census(const std::vector<CriticalPoint>& cps);

// Superlevel-set merge pairs of maxima (union-find over vertices in
// decreasing order, elder rule). The global maximum is not listed.
std::vector<PersistencePair> persistence_pairs(const ScalarField& f);

// (epsilon, number of surviving maxima) for each threshold in eps_grid.
std::vector<std::pair<double, int>> persistence_graph(
    const ScalarField& f, const std::vector<double>& eps_grid);

// Removes every maximum whose merge persistence is below epsilon by
// flattening its superlevel component down to the merge value (with
// infinitesimal ordering offsets so no spurious maxima appear).
ScalarField simplify(const ScalarField& f, double epsilon);

// Per-vertex label: the grid index of the maximum reached by iterated
// steepest ascent (8-connectivity, slope normalized by step length).
std::vector<int> descending_labels(const ScalarField& f);

MorseGraph extract_morse_graph(const ScalarField& f);

// Inserts kind=Sampled nodes along each edge at arc-length intervals of
// `spacing` (normalized units); endpoints stay untouched.
MorseGraph sample_edges(const MorseGraph& g, double spacing);

// Frobenius norm between the binary rasterizations of the two graphs on a
// rows x cols cell grid over [0,1]^2.
double euclidean_complex_distance(const MorseGraph& g1, const MorseGraph& g2,
                                  int rows, int cols);

// Rasterize one graph (exposed for the baseline CLI and tests).
std::vector<uint8_t> rasterize_graph(const MorseGraph& g, int rows, int cols);

// Node id groups of the connected components, largest first.
std::vector<std::vector<int>> connected_components(const MorseGraph& g);
MorseGraph largest_component(const MorseGraph& g);

}  // namespace morseot
