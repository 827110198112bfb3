#pragma once

#include <Eigen/Dense>
#include <vector>

namespace morseot {

struct TransportCell {
  int i = 0, j = 0;
  double flow = 0.0;
};

struct TransportResult {
  std::vector<TransportCell> cells;  // basic cells; flows may be zero
  double objective = 0.0;
  int pivots = 0;
};

// Exact dense transportation simplex (u-v method with a spanning-tree basis,
// block pivoting, Bland fallback for degenerate stalls). Costs may be
// negative. Throws if |sum(supply) - sum(demand)| exceeds the feasibility
// tolerance. An optional warm basis (from a previous solve with the same
// marginals) skips the northwest-corner phase.
TransportResult solve_transport(const Eigen::MatrixXd& cost,
                                const Eigen::VectorXd& supply,
                                const Eigen::VectorXd& demand,
                                const std::vector<TransportCell>* warm = nullptr);

Eigen::MatrixXd transport_plan_dense(const TransportResult& res, int n1, int n2);

}  // namespace morseot
