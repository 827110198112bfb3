#include "morseot/ot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morseot/rng.hpp"
#include "morseot/transport.hpp"

namespace morseot {

namespace {

double pow_q(double x, double q) {
  if (q == 2.0) return x * x;
  if (q == 1.0) return std::abs(x);
  return std::pow(std::abs(x), q);
}

// Quadratic structure engine. Q(C) = sum |W1(i,k)-W2(j,l)|^q C_ij C_kl is a
// quadratic form in C for every q, so the line search along a Frank-Wolfe
// direction is exact. half_grad returns g(i,j) = sum_kl L(i,k,j,l) C_kl
// (the gradient is twice that).
struct QuadEngine {
  const Eigen::MatrixXd &W1, &W2;
  double q;
  bool fast;  // q == 2 closed-form path
  Eigen::MatrixXd A1, B2;  // elementwise squares (fast path)

  QuadEngine(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2, double q_)
      : W1(w1), W2(w2), q(q_), fast(q_ == 2.0) {
    if (fast) {
      A1 = W1.cwiseProduct(W1);
      B2 = W2.cwiseProduct(W2);
    }
  }

  Eigen::MatrixXd half_grad(const Eigen::MatrixXd& C) const {
    if (fast) {
      Eigen::VectorXd r = C.rowwise().sum(), c = C.colwise().sum();
      Eigen::VectorXd ar = A1 * r, bc = B2 * c;
      Eigen::MatrixXd Y = W1 * C * W2;
      Eigen::MatrixXd g = (-2.0 * Y).eval();
      g.colwise() += ar;
      g.rowwise() += bc.transpose();
      return g;
    }
    int n1 = (int)W1.rows(), n2 = (int)W2.rows();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n1, n2);
    for (int i = 0; i < n1; ++i)
      for (int k = 0; k < n1; ++k) {
        double w1 = W1(i, k);
        for (int j = 0; j < n2; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n2; ++l) acc += pow_q(w1 - W2(j, l), q) * C(k, l);
          g(i, j) += acc;
        }
      }
    return g;
  }

  double value(const Eigen::MatrixXd& C, const Eigen::MatrixXd& half_g) const {
    return (C.array() * half_g.array()).sum();
  }

  // bilinear form against a sparse vertex: B(C, X) = sum_cells X * half_grad(C)
  double bilinear_with(const Eigen::MatrixXd& half_g,
                       const std::vector<TransportCell>& x) const {
    double s = 0.0;
    for (auto& c : x) s += c.flow * half_g(c.i, c.j);
    return s;
  }

  double value_sparse(const std::vector<TransportCell>& x) const {
    double s = 0.0;
    for (auto& a : x)
      for (auto& b : x) {
        if (a.flow == 0.0 || b.flow == 0.0) continue;
        s += a.flow * b.flow * pow_q(W1(a.i, b.i) - W2(a.j, b.j), q);
      }
    return s;
  }
};

struct FwProblem {
  Eigen::MatrixXd D;   // attribute cost, q-th powers; virtual rows/cols zero
  const Eigen::MatrixXd &W1, &W2;
  Eigen::VectorXd p1, p2;
  double alpha;
  double q;
  double penalty = 0.0;  // virtual-virtual linear penalty
  int vi = -1, vj = -1;
};

struct FwOutcome {
  Eigen::MatrixXd C;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  int restart_best = 0;
  std::vector<double> trace;
};

double linear_part(const FwProblem& pb, const Eigen::MatrixXd& C) {
  double s = (1.0 - pb.alpha) * (pb.D.array() * C.array()).sum();
  if (pb.vi >= 0) s += pb.penalty * C(pb.vi, pb.vj);
  return s;
}

double linear_part_sparse(const FwProblem& pb, const std::vector<TransportCell>& x) {
  double s = 0.0;
  for (auto& c : x) {
    s += (1.0 - pb.alpha) * pb.D(c.i, c.j) * c.flow;
    if (c.i == pb.vi && c.j == pb.vj) s += pb.penalty * c.flow;
  }
  return s;
}

FwOutcome frank_wolfe(const FwProblem& pb, const SolverConfig& cfg) {
  const int n1 = (int)pb.p1.size(), n2 = (int)pb.p2.size();
  QuadEngine quad(pb.W1, pb.W2, pb.q);

  FwOutcome best;
  bool have_best = false;
  std::vector<TransportCell> basis;  // warm-started across LPs

  int restarts = std::max(1, cfg.restarts);
  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXd C;
    if (r == 0) {
      C = pb.p1 * pb.p2.transpose();
    } else {
      // random vertex of the coupling polytope: exact LP under hashed
      // per-cell costs (index-keyed, so padding does not shift draws)
      Eigen::MatrixXd rc(n1, n2);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) rc(i, j) = hash_unit(cfg.seed, r, i, j);
      auto vtx = solve_transport(rc, pb.p1, pb.p2, basis.empty() ? nullptr : &basis);
      basis = vtx.cells;
      C = transport_plan_dense(vtx, n1, n2);
    }

    std::vector<double> trace;
    Eigen::MatrixXd half_g = quad.half_grad(C);
    double quad_val = quad.value(C, half_g);
    double obj = linear_part(pb, C) + pb.alpha * quad_val;
    trace.push_back(obj);

    bool converged = false;
    int small_steps = 0;
    int iter = 0;
    while (iter < cfg.max_iterations) {
      // gradient = (1-a) D + 2a half_grad + penalty
      Eigen::MatrixXd G = (1.0 - pb.alpha) * pb.D + (2.0 * pb.alpha) * half_g;
      if (pb.vi >= 0) G(pb.vi, pb.vj) += pb.penalty;

      auto lp = solve_transport(G, pb.p1, pb.p2, basis.empty() ? nullptr : &basis);
      basis = lp.cells;

      // E(C + t(X-C)) = obj + b t + a t^2
      double bc_x = quad.bilinear_with(half_g, lp.cells);
      double q_xx = quad.value_sparse(lp.cells);
      double a_coef = pb.alpha * (q_xx - 2.0 * bc_x + quad_val);
      double b_coef = linear_part_sparse(pb, lp.cells) - linear_part(pb, C) +
                      2.0 * pb.alpha * (bc_x - quad_val);

      double t;
      if (a_coef > 1e-300) {
        t = std::clamp(-b_coef / (2.0 * a_coef), 0.0, 1.0);
      } else {
        t = (a_coef + b_coef < 0.0) ? 1.0 : 0.0;  // ties take the smaller step
      }

      double prev = obj;
      if (t > 0.0) {
        C *= (1.0 - t);
        for (auto& cell : lp.cells) C(cell.i, cell.j) += t * cell.flow;
        half_g = quad.half_grad(C);
        quad_val = quad.value(C, half_g);
        obj = linear_part(pb, C) + pb.alpha * quad_val;
      }
      ++iter;
      if (obj > prev + 1e-9 * (1.0 + std::abs(prev)))
        throw std::logic_error("Frank-Wolfe objective increased");
      trace.push_back(obj);

      double rel = std::abs(prev - obj) / std::max(1.0, std::abs(obj));
      small_steps = rel < cfg.tolerance ? small_steps + 1 : 0;
      if (t == 0.0 || small_steps >= 2) {
        converged = true;
        break;
      }
    }

    if (!have_best || obj < best.objective) {
      have_best = true;
      best.C = C;
      best.objective = obj;
      best.iterations = iter;
      best.converged = converged;
      best.restart_best = r;
      best.trace = std::move(trace);
    }
  }
  return best;
}

DistanceResult result_from(const Eigen::MatrixXd& C, double objective, double q,
                           CouplingKind kind, double mass, int iterations,
                           bool converged, int restart_best,
                           std::vector<double> trace) {
  DistanceResult res;
  res.objective = objective;
  res.distance = std::pow(std::max(objective, 0.0), 1.0 / q);
  res.coupling = {C, mass, kind};
  res.iterations = iterations;
  res.converged = converged;
  res.restart_best = restart_best;
  res.trace = std::move(trace);
  return res;
}

}  // namespace

Eigen::MatrixXd attribute_cost(const MeasureNetwork& g1,
                               const MeasureNetwork& g2, double q) {
  Eigen::MatrixXd D(g1.n(), g2.n());
  for (int i = 0; i < g1.n(); ++i) {
    for (int j = 0; j < g2.n(); ++j) {
      if (i == g1.virtual_node || j == g2.virtual_node) {
        D(i, j) = 0.0;
        continue;
      }
      double dx = g1.F(i, 0) - g2.F(j, 0);
      double dy = g1.F(i, 1) - g2.F(j, 1);
      double d = std::sqrt(dx * dx + dy * dy);
      D(i, j) = pow_q(d, q);
    }
  }
  return D;
}

double gw_objective_at(const Eigen::MatrixXd& W1, const Eigen::MatrixXd& W2,
                       const Eigen::MatrixXd& C, double q) {
  QuadEngine quad(W1, W2, q);
  Eigen::MatrixXd g = quad.half_grad(C);
  return quad.value(C, g);
}

DistanceResult wasserstein(const MeasureNetwork& g1, const MeasureNetwork& g2,
                           const SolverConfig& cfg) {
  Eigen::MatrixXd D = attribute_cost(g1, g2, cfg.q);
  auto lp = solve_transport(D, g1.p, g2.p);
  Eigen::MatrixXd C = transport_plan_dense(lp, g1.n(), g2.n());
  return result_from(C, lp.objective, cfg.q, CouplingKind::Full, 1.0,
                     lp.pivots, true, 0, {lp.objective});
}

DistanceResult fused_gw(const MeasureNetwork& g1, const MeasureNetwork& g2,
                        const SolverConfig& cfg) {
  if (cfg.alpha < 0 || cfg.alpha > 1)
    throw std::runtime_error("alpha must lie in [0,1]");
  FwProblem pb{attribute_cost(g1, g2, cfg.q), g1.W, g2.W, g1.p, g2.p,
               cfg.alpha, cfg.q};
  if (g1.virtual_node >= 0 || g2.virtual_node >= 0)
    throw std::runtime_error("augmented networks must go through partial_distance");
  auto out = frank_wolfe(pb, cfg);
  return result_from(out.C, out.objective, cfg.q, CouplingKind::Full, 1.0,
                     out.iterations, out.converged, out.restart_best,
                     std::move(out.trace));
}

DistanceResult gromov_wasserstein(const MeasureNetwork& g1,
                                  const MeasureNetwork& g2,
                                  const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.alpha = 1.0;
  return fused_gw(g1, g2, c);
}

std::tuple<MeasureNetwork, MeasureNetwork, double> augment_with_virtual_node(
    const MeasureNetwork& g1, const MeasureNetwork& g2, double m, double q) {
  if (!(m > 0)) throw std::runtime_error("m must be positive (empty coupling)");
  if (m > 1) throw std::runtime_error("m must be <= 1");

  double scale = 2.0 - m;
  auto augment = [&](const MeasureNetwork& g) {
    MeasureNetwork a;
    int n = g.n();
    a.p.resize(n + 1);
    a.p.head(n) = g.p / scale;
    a.p[n] = (1.0 - m) / scale;
    a.W = Eigen::MatrixXd::Zero(n + 1, n + 1);
    a.W.topLeftCorner(n, n) = g.W;
    a.F.resize(n + 1, 2);
    a.F.topRows(n) = g.F;
    a.F(n, 0) = a.F(n, 1) = 0.0;  // ignored: costs treat the node specially
    a.kinds = g.kinds;
    a.kinds.push_back(NodeKind::Virtual);
    a.degrees = g.degrees;
    a.degrees.push_back(0);
    a.source = g.source;
    a.virtual_node = n;
    return a;
  };

  // penalty above any achievable total cost, so virtual<->virtual transport
  // is never profitable
  double dmax = 0.0;
  for (int i = 0; i < g1.n(); ++i)
    for (int j = 0; j < g2.n(); ++j) {
      double dx = g1.F(i, 0) - g2.F(j, 0), dy = g1.F(i, 1) - g2.F(j, 1);
      dmax = std::max(dmax, std::sqrt(dx * dx + dy * dy));
    }
  double wmax = 0.0;
  if (g1.W.size()) wmax = std::max(wmax, g1.W.maxCoeff());
  if (g2.W.size()) wmax = std::max(wmax, g2.W.maxCoeff());
  double penalty = 2.0 * pow_q(dmax + wmax, q);

  return {augment(g1), augment(g2), penalty};
}

DistanceResult partial_distance(DistanceKind kind, const MeasureNetwork& g1,
                                const MeasureNetwork& g2,
                                const SolverConfig& cfg) {
  if (kind != DistanceKind::PW && kind != DistanceKind::PGW &&
      kind != DistanceKind::PFGW)
    throw std::runtime_error("partial_distance requires a partial kind");
  double m = cfg.m;
  auto [a1, a2, penalty] = augment_with_virtual_node(g1, g2, m, cfg.q);
  int n1 = g1.n(), n2 = g2.n();

  Eigen::MatrixXd Caug;
  int iterations = 0, restart_best = 0;
  bool converged = true;
  std::vector<double> trace;

  if (kind == DistanceKind::PW) {
    Eigen::MatrixXd D = attribute_cost(a1, a2, cfg.q);
    D(n1, n2) = penalty;
    auto lp = solve_transport(D, a1.p, a2.p);
    Caug = transport_plan_dense(lp, n1 + 1, n2 + 1);
    iterations = lp.pivots;
    trace = {lp.objective};
  } else {
    FwProblem pb{attribute_cost(a1, a2, cfg.q), a1.W, a2.W, a1.p, a2.p,
                 kind == DistanceKind::PGW ? 1.0 : cfg.alpha, cfg.q,
                 penalty, n1, n2};
    auto out = frank_wolfe(pb, cfg);
    Caug = std::move(out.C);
    iterations = out.iterations;
    converged = out.converged;
    restart_best = out.restart_best;
    trace = std::move(out.trace);
  }

  if (Caug(n1, n2) > 1e-7)
    throw std::logic_error("virtual-virtual mass survived the penalty");

  Eigen::MatrixXd C = (2.0 - m) * Caug.topLeftCorner(n1, n2);
  C = C.cwiseMax(0.0);
  double mass = C.sum();

  double obj = 0.0;
  Eigen::MatrixXd D = attribute_cost(g1, g2, cfg.q);
  double lin = (D.array() * C.array()).sum();
  switch (kind) {
    case DistanceKind::PW:
      obj = lin;
      break;
    case DistanceKind::PGW:
      obj = gw_objective_at(g1.W, g2.W, C, cfg.q);
      break;
    default:
      obj = (1.0 - cfg.alpha) * mass * lin +
            cfg.alpha * gw_objective_at(g1.W, g2.W, C, cfg.q);
      break;
  }

  auto res = result_from(C, obj, cfg.q, CouplingKind::Partial, mass,
                         iterations, converged, restart_best, std::move(trace));
  validate_coupling(res.coupling, g1.p, g2.p);
  if (std::abs(mass - m) > 1e-8)
    throw std::logic_error("partial coupling mass deviates from m");
  return res;
}

DistanceResult compute_distance(DistanceKind kind, const MeasureNetwork& g1,
                                const MeasureNetwork& g2,
                                const SolverConfig& cfg) {
  switch (kind) {
    case DistanceKind::W: return wasserstein(g1, g2, cfg);
    case DistanceKind::GW: return gromov_wasserstein(g1, g2, cfg);
    case DistanceKind::FGW: return fused_gw(g1, g2, cfg);
    default: return partial_distance(kind, g1, g2, cfg);
  }
}

void validate_coupling(const Coupling& c, const Eigen::VectorXd& p1,
                       const Eigen::VectorXd& p2, double tol) {
  if (c.matrix.rows() != p1.size() || c.matrix.cols() != p2.size())
    throw std::runtime_error("coupling dimensions do not match marginals");
  if ((c.matrix.array() < -tol).any())
    throw std::runtime_error("coupling has negative entries");
  Eigen::VectorXd r = c.matrix.rowwise().sum(), s = c.matrix.colwise().sum();
  if (c.kind == CouplingKind::Full) {
    if ((r - p1).cwiseAbs().maxCoeff() > tol ||
        (s - p2).cwiseAbs().maxCoeff() > tol)
      throw std::runtime_error("coupling marginals violate equality constraints");
  } else {
    if (((r - p1).array() > tol).any() || ((s - p2).array() > tol).any())
      throw std::runtime_error("partial coupling exceeds its marginals");
    if (std::abs(c.matrix.sum() - c.mass) > tol)
      throw std::runtime_error("partial coupling total mass mismatch");
  }
}

DistanceKind parse_distance_kind(const std::string& name) {
  if (name == "w" || name == "wasserstein") return DistanceKind::W;
  if (name == "gw") return DistanceKind::GW;
  if (name == "fgw") return DistanceKind::FGW;
  if (name == "pw") return DistanceKind::PW;
  if (name == "pgw") return DistanceKind::PGW;
  if (name == "pfgw") return DistanceKind::PFGW;
  throw std::runtime_error("unknown distance kind: " + name);
}

std::string distance_kind_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::W: return "w";
    case DistanceKind::GW: return "gw";
    case DistanceKind::FGW: return "fgw";
    case DistanceKind::PW: return "pw";
    case DistanceKind::PGW: return "pgw";
    default: return "pfgw";
  }
}

bool is_partial_kind(DistanceKind kind) {
  return kind == DistanceKind::PW || kind == DistanceKind::PGW ||
         kind == DistanceKind::PFGW;
}

}  // namespace morseot
