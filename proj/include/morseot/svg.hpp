#pragma once

#include <string>
#include <vector>

#include "morseot/analysis.hpp"

namespace morseot {

// Static SVG renderings of the pipeline artifacts. Node colors/hollow flags
// follow a ColorAssignment; omitted colors fall back to the positional
// colormap.
std::string svg_field(const ScalarField& f, const MorseGraph* overlay = nullptr);

std::string svg_graph(const MorseGraph& g, const std::vector<Rgb>* node_colors,
                      const std::vector<bool>* hollow,
                      const ScalarField* background = nullptr);

std::string svg_matrix(const DistanceMatrix& d);

std::string svg_scatter(const Eigen::MatrixXd& points,
                        const std::vector<std::string>& classes);

}  // namespace morseot
