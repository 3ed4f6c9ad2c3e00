#include "delamid/normal_cone.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "delamid/errors.hpp"

namespace delamid {

std::vector<int> classify_trajectory_word(double z0, const Eigen::VectorXd& z,
                                          const Eigen::VectorXd& v, double tol) {
  const int K = static_cast<int>(z.size());
  std::vector<int> word(K);
  double z_prev = z0;
  for (int k = 0; k < K; ++k) {
    word[k] = classify_piece(z_prev, z(k), v(k), tol);
    z_prev = z(k);
  }
  return word;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool empty(double eps) const { return lo > hi + eps; }
  void clamp_lo(double v) { lo = std::max(lo, v); }
  void clamp_hi(double v) { hi = std::min(hi, v); }
  void intersect(const Interval& o) {
    clamp_lo(o.lo);
    clamp_hi(o.hi);
  }
  double pick(double preferred) const { return std::min(std::max(preferred, lo), hi); }
};

Interval add(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = (a.lo == -kInf || b.lo == -kInf) ? -kInf : a.lo + b.lo;
  r.hi = (a.hi == kInf || b.hi == kInf) ? kInf : a.hi + b.hi;
  return r;
}

/// Per-step constraint data after substituting mu = gamma - mu_tilde^k and
/// nu = delta: interval bounds on a := mu_tilde^{k-1}, on b := mu_tilde^k,
/// and on w := a - b when a row couples both. All facet rows of the stratum
/// cones couple mu_tilde' and mu only through their sum, so these three
/// intervals describe the step polyhedron exactly.
struct StepBounds {
  Interval a, b, w;
  bool coupled = false;
  bool infeasible = false;
};

StepBounds step_bounds(const PolyCone3& cone, double gamma_k, double delta_k, double tol) {
  StepBounds sb;
  const double eps = tol * (1.0 + std::abs(gamma_k) + std::abs(delta_k));

  auto apply_row = [&](const Eigen::Vector3d& row, bool is_eq) {
    const double p = row(0);       // coefficient of mu_tilde^{k-1}
    const double q = row(1);       // coefficient of mu = gamma - b
    const double r = row(2);       // coefficient of nu = delta
    const double coef_tol = 1e-12;
    const bool has_p = std::abs(p) > coef_tol;
    const bool has_q = std::abs(q) > coef_tol;
    const double cst = q * gamma_k + r * delta_k;  // row value at a = b = 0

    if (!has_p && !has_q) {
      if (is_eq ? std::abs(cst) > eps : cst > eps) sb.infeasible = true;
      return;
    }
    if (has_p && !has_q) {
      // p*a + cst (<=,=) 0
      const double bound = -cst / p;
      if (is_eq) { sb.a.clamp_lo(bound); sb.a.clamp_hi(bound); }
      else if (p > 0) sb.a.clamp_hi(bound);
      else sb.a.clamp_lo(bound);
      return;
    }
    if (!has_p && has_q) {
      // -q*b + cst (<=,=) 0
      const double bound = cst / q;
      if (is_eq) { sb.b.clamp_lo(bound); sb.b.clamp_hi(bound); }
      else if (q > 0) sb.b.clamp_lo(bound);
      else sb.b.clamp_hi(bound);
      return;
    }
    // Coupled row: valid cone tables only produce p == q, bounding w = a - b.
    if (std::abs(p - q) > 1e-9 * (std::abs(p) + std::abs(q)))
      throw numerical_error("chain propagation: unexpected coupled facet row");
    const double bound = -cst / p;  // p*(a - b) + cst (<=,=) 0
    sb.coupled = true;
    if (is_eq) { sb.w.clamp_lo(bound); sb.w.clamp_hi(bound); }
    else if (p > 0) sb.w.clamp_hi(bound);
    else sb.w.clamp_lo(bound);
  };

  for (const auto& row : cone.eq_rows) apply_row(row, true);
  for (const auto& row : cone.ineq_rows) apply_row(row, false);
  return sb;
}

bool propagate(const std::vector<const PolyCone3*>& cones, const Eigen::VectorXd& gamma,
               const Eigen::VectorXd& delta, double tol, Eigen::VectorXd* chain) {
  const int K = static_cast<int>(gamma.size());
  std::vector<StepBounds> bounds(K);
  std::vector<Interval> feasible(K + 1);  // feasible[k] holds mu_tilde^k
  feasible[K] = Interval{0.0, 0.0};

  for (int k = K - 1; k >= 0; --k) {
    StepBounds sb = step_bounds(*cones[k], gamma(k), delta(k), tol);
    const double eps = tol * (1.0 + std::abs(gamma(k)) + std::abs(delta(k)));
    if (sb.infeasible) return false;
    Interval b = feasible[k + 1];
    b.intersect(sb.b);
    if (b.empty(eps)) return false;
    Interval a = sb.a;
    if (sb.coupled) a.intersect(add(sb.w, b));
    if (a.empty(eps)) return false;
    sb.b = b;  // store the tail-feasible b range for the forward pass
    bounds[k] = sb;
    feasible[k] = a;
  }

  if (chain) {
    chain->resize(K + 1);
    (*chain)(0) = feasible[0].pick(0.0);
    for (int k = 0; k < K; ++k) {
      Interval range = bounds[k].b;
      if (bounds[k].coupled) {
        // mu_tilde^k = mu_tilde^{k-1} - w with w in the step's w-interval
        Interval from_w;
        from_w.lo = bounds[k].w.hi == kInf ? -kInf : (*chain)(k) - bounds[k].w.hi;
        from_w.hi = bounds[k].w.lo == -kInf ? kInf : (*chain)(k) - bounds[k].w.lo;
        range.intersect(from_w);
      }
      (*chain)(k + 1) = range.pick(0.0);
    }
  }
  return true;
}

void enumerate_words_rec(const std::vector<int>& base, bool prev_positive, int k,
                         std::vector<int>& current, std::int64_t limit,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<std::int64_t>(out.size()) >= limit) return;
  if (k == static_cast<int>(base.size())) {
    out.push_back(current);
    return;
  }
  for (int piece : pieces_containing_stratum(base[k])) {
    const bool allowed = prev_positive ? (piece >= 1 && piece <= 5)
                                       : (piece >= 6 && piece <= 8);
    if (!allowed) continue;
    current.push_back(piece);
    enumerate_words_rec(base, piece_keeps_z_positive(piece), k + 1, current, limit, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_admissible_words(const std::vector<int>& base,
                                                         bool z0_positive,
                                                         std::int64_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  enumerate_words_rec(base, z0_positive, 0, current, limit, out);
  return out;
}

bool chain_feasible(const std::vector<const PolyCone3*>& step_cones,
                    const Eigen::VectorXd& gamma, const Eigen::VectorXd& delta,
                    double tol, Eigen::VectorXd* mu_tilde_out) {
  return propagate(step_cones, gamma, delta, tol, mu_tilde_out);
}

GraphMembership limiting_normal_gphQ(double z0, const Eigen::VectorXd& z,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& gamma,
                                     const Eigen::VectorXd& delta, double tol,
                                     std::int64_t branch_budget) {
  const int K = static_cast<int>(z.size());
  if (v.size() != K || gamma.size() != K || delta.size() != K)
    throw std::invalid_argument("limiting_normal_gphQ: length mismatch");

  GraphMembership result;
  const std::vector<int> traj_word = classify_trajectory_word(z0, z, v, tol);
  const bool z0_positive = z0 > tol * (1.0 + std::abs(z0));

  const auto branches = enumerate_admissible_words(traj_word, z0_positive, branch_budget);
  result.budget_exhausted =
      static_cast<std::int64_t>(branches.size()) >= branch_budget;

  for (const auto& s : branches) {
    ++result.branches_checked;

    // Fast path: one chain satisfying the per-step intersection cone works
    // for every admissible piece word simultaneously.
    std::vector<const PolyCone3*> inter(K);
    for (int k = 0; k < K; ++k) inter[k] = &stratum_chain_cone(s[k]);
    Eigen::VectorXd chain;
    if (propagate(inter, gamma, delta, tol, &chain)) {
      result.member = true;
      result.certificate = {s, chain, true};
      return result;
    }

    // Otherwise each admissible piece word may use its own decomposition.
    const auto words = enumerate_admissible_words(s, z0_positive, branch_budget);
    if (static_cast<std::int64_t>(words.size()) >= branch_budget)
      result.budget_exhausted = true;
    bool all = !words.empty();
    Eigen::VectorXd first_chain;
    for (const auto& w : words) {
      std::vector<const PolyCone3*> cones(K);
      for (int k = 0; k < K; ++k) cones[k] = &piece_normal_cone(w[k], s[k]);
      Eigen::VectorXd* sink = first_chain.size() == 0 ? &first_chain : nullptr;
      if (!propagate(cones, gamma, delta, tol, sink)) {
        all = false;
        break;
      }
    }
    if (all) {
      result.member = true;
      result.certificate = {s, first_chain, false};
      return result;
    }
  }
  return result;
}

}  // namespace delamid
