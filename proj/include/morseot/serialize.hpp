#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "morseot/analysis.hpp"

namespace morseot {

// Doubles are rendered with "%.17g" so reruns with identical inputs produce
// byte-identical files.
std::string format_double(double v);

nlohmann::json morse_graph_to_json(const MorseGraph& g);
MorseGraph morse_graph_from_json(const nlohmann::json& j);

nlohmann::json network_to_json(const MeasureNetwork& g);
MeasureNetwork network_from_json(const nlohmann::json& j);

nlohmann::json distance_result_to_json(const DistanceResult& r,
                                       bool include_coupling = true);
nlohmann::json classification_report_to_json(const ClassificationReport& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

std::string distance_matrix_to_csv(const DistanceMatrix& d);
DistanceMatrix distance_matrix_from_csv(const std::string& text);

std::string persistence_graph_to_csv(const std::vector<std::pair<double, int>>& pg);
std::string coupling_to_csv(const Coupling& c);
std::string trace_to_csv(const std::vector<double>& trace);
std::string sweep_to_csv(const std::vector<std::tuple<double, double, double>>& sweep);
std::string mds_to_csv(const std::vector<std::string>& labels,
                       const Eigen::MatrixXd& points);

// "id,class" lines
std::string labels_to_csv(const std::vector<std::string>& ids,
                          const std::vector<std::string>& classes);
std::pair<std::vector<std::string>, std::vector<std::string>> labels_from_csv(
    const std::string& text);

// 64-bit FNV-1a over the canonical dump, hex-encoded
std::string config_hash(const nlohmann::json& j);

}  // namespace morseot
