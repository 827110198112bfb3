#include "morseot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace morseot {

namespace {

struct Tree {
  // node ids: rows 0..n1-1, cols n1..n1+n2-1
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor node, basis idx)
  Tree(int n1, int n2, const std::vector<TransportCell>& basis) {
    adj.assign(n1 + n2, {});
    for (int k = 0; k < (int)basis.size(); ++k) {
      int a = basis[k].i, b = n1 + basis[k].j;
      adj[a].push_back({b, k});
      adj[b].push_back({a, k});
    }
  }
};

}  // namespace

TransportResult solve_transport(const Eigen::MatrixXd& cost,
                                const Eigen::VectorXd& supply,
                                const Eigen::VectorXd& demand,
                                const std::vector<TransportCell>* warm) {
  const int n1 = (int)supply.size();
  const int n2 = (int)demand.size();
  if (cost.rows() != n1 || cost.cols() != n2)
    throw std::runtime_error("cost matrix dimensions do not match marginals");
  double total_a = supply.sum(), total_b = demand.sum();
  if (std::abs(total_a - total_b) > 1e-9 * std::max(1.0, std::abs(total_a)))
    throw std::runtime_error("infeasible marginals: supply and demand totals differ");
  for (int i = 0; i < n1; ++i)
    if (supply[i] < -1e-15) throw std::runtime_error("negative supply");
  for (int j = 0; j < n2; ++j)
    if (demand[j] < -1e-15) throw std::runtime_error("negative demand");

  const int nbasis = n1 + n2 - 1;
  std::vector<TransportCell> basis;
  if (warm && (int)warm->size() == nbasis) {
    basis = *warm;
  } else {
    // northwest corner start; ties advance the row, leaving a degenerate
    // zero-flow cell on the column
    basis.reserve(nbasis);
    Eigen::VectorXd a = supply, b = demand;
    int i = 0, j = 0;
    for (int step = 0; step < nbasis; ++step) {
      double x = std::min(a[i], b[j]);
      if (x < 0) x = 0;
      basis.push_back({i, j, x});
      a[i] -= x;
      b[j] -= x;
      if (i == n1 - 1 && j == n2 - 1) break;
      if (j == n2 - 1) ++i;
      else if (i == n1 - 1) ++j;
      else if (a[i] <= b[j]) ++i;
      else ++j;
    }
    while ((int)basis.size() < nbasis) basis.push_back({n1 - 1, n2 - 1, 0.0});
  }

  const double eps = 1e-11 * (1.0 + cost.cwiseAbs().maxCoeff());
  const int total = n1 * n2;
  const int block = std::max(64, (int)std::sqrt((double)total));
  std::vector<double> u(n1), v(n2);
  std::vector<char> seen(n1 + n2);
  std::vector<int> parent_node(n1 + n2), parent_cell(n1 + n2);

  int scan_start = 0;
  int pivots = 0;
  int degenerate_run = 0;
  bool bland = false;
  const long long pivot_limit = 2000LL * (n1 + n2) + 200000;

  while (true) {
    Tree tree(n1, n2, basis);

    // duals by BFS over the basis tree
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    u[0] = 0.0;
    int visited = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      ++visited;
      for (auto [y, k] : tree.adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        const auto& cell = basis[k];
        if (y >= n1) v[y - n1] = cost(cell.i, cell.j) - u[cell.i];
        else u[y] = cost(cell.i, cell.j) - v[cell.j];
        q.push_back(y);
      }
    }
    if (visited != n1 + n2)
      throw std::logic_error("transport basis is not a spanning tree");

    // entering variable
    int enter = -1;
    double best_rc = -eps;
    if (!bland) {
      int count = 0;
      for (int t = 0; t < total; ++t) {
        int pos = scan_start + t;
        if (pos >= total) pos -= total;
        int i = pos / n2, j = pos - i * n2;
        double rc = cost(i, j) - u[i] - v[j];
        if (rc < best_rc) {
          best_rc = rc;
          enter = pos;
        }
        if (++count == block) {
          if (enter >= 0) break;
          count = 0;
        }
      }
    } else {
      for (int pos = 0; pos < total; ++pos) {
        int i = pos / n2, j = pos - i * n2;
        if (cost(i, j) - u[i] - v[j] < -eps) {
          enter = pos;
          break;
        }
      }
    }
    if (enter < 0) break;  // optimal
    scan_start = enter + 1 == total ? 0 : enter + 1;

    int ei = enter / n2, ej = enter - ei * n2;

    // unique tree path from row node ei to col node n1+ej
    std::fill(seen.begin(), seen.end(), 0);
    q.assign(1, ei);
    seen[ei] = 1;
    parent_node[ei] = -1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      if (x == n1 + ej) break;
      for (auto [y, k] : tree.adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        parent_node[y] = x;
        parent_cell[y] = k;
        q.push_back(y);
      }
    }
    if (!seen[n1 + ej])
      throw std::logic_error("transport basis path not found");

    // cells along the path, starting adjacent to the entering row
    std::vector<int> path;
    for (int x = n1 + ej; parent_node[x] != -1; x = parent_node[x])
      path.push_back(parent_cell[x]);
    std::reverse(path.begin(), path.end());

    // entering gets +theta; path cells alternate starting with -
    double theta = std::numeric_limits<double>::infinity();
    int leave_pos_in_path = -1;
    for (size_t t = 0; t < path.size(); t += 2) {
      const auto& cell = basis[path[t]];
      bool better = cell.flow < theta ||
                    (cell.flow == theta && leave_pos_in_path >= 0 &&
                     (cell.i < basis[path[leave_pos_in_path]].i ||
                      (cell.i == basis[path[leave_pos_in_path]].i &&
                       cell.j < basis[path[leave_pos_in_path]].j)));
      if (better) {
        theta = cell.flow;
        leave_pos_in_path = (int)t;
      }
    }
    if (leave_pos_in_path < 0)
      throw std::logic_error("transport pivot found no leaving cell");

    for (size_t t = 0; t < path.size(); ++t) {
      double& fl = basis[path[t]].flow;
      if (t % 2 == 0) fl = std::max(fl - theta, 0.0);
      else fl += theta;
    }
    int leaving = path[leave_pos_in_path];
    basis[leaving] = {ei, ej, theta};

    ++pivots;
    degenerate_run = theta <= 0 ? degenerate_run + 1 : 0;
    if (degenerate_run > 2 * (n1 + n2) + 16) bland = true;
    if (pivots > pivot_limit)
      throw std::logic_error("transportation simplex exceeded pivot limit");
  }

  TransportResult res;
  res.cells = std::move(basis);
  res.pivots = pivots;
  double obj = 0.0;
  for (auto& c : res.cells) obj += c.flow * cost(c.i, c.j);
  res.objective = obj;
  return res;
}

Eigen::MatrixXd transport_plan_dense(const TransportResult& res, int n1, int n2) {
  Eigen::MatrixXd plan = Eigen::MatrixXd::Zero(n1, n2);
  for (auto& c : res.cells) plan(c.i, c.j) += c.flow;
  return plan;
}

}  // namespace morseot
