#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "morseot/morse.hpp"

namespace morseot {

// Attributed measure network (V, p, W, F): degree-based node probabilities,
// geodesic network function, positions as attributes.
struct MeasureNetwork {
  Eigen::VectorXd p;           // probability vector, sums to 1
  Eigen::MatrixXd W;           // symmetric geodesic matrix, zero diagonal
  Eigen::MatrixX2d F;          // node positions
  std::vector<NodeKind> kinds;
  std::vector<int> degrees;
  std::string source;
  int virtual_node = -1;       // index of the mass-relaxation node, if any

  int n() const { return (int)p.size(); }
};

// Requires a connected, edge-sampled graph. Throws on disconnected input,
// listing component sizes.
MeasureNetwork to_measure_network(const MorseGraph& g);

// Attributes of both networks are divided by the maximum cross-pair distance
// max_{i,j} |a_i - b_j|; each W matrix is divided by its own maximum entry.
// Inputs are left untouched.
std::pair<MeasureNetwork, MeasureNetwork> normalize_pair(
    const MeasureNetwork& g1, const MeasureNetwork& g2);

// Copy with p(i) = 1/n (last entry fixed up so the sum is exactly 1).
MeasureNetwork uniform_distribution(const MeasureNetwork& g);

}  // namespace morseot
