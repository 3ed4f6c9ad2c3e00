#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "delamid/pieces.hpp"

namespace delamid {

/// Multiplier chain certifying membership of (gamma, delta) in the normal
/// cone to the graph of the stacked delamination step map, for one contact
/// coordinate. gamma^k = mu^k + mu_tilde^k with mu_tilde^K = 0 and each step
/// triple (mu_tilde^{k-1}, mu^k, nu^k = delta^k) lying in the selected
/// stratum cone.
struct ChainCertificate {
  std::vector<int> branch;      // witnessing stratum word s, values 1..8
  Eigen::VectorXd mu_tilde;     // mu_tilde^0 .. mu_tilde^K (K+1 values)
  bool uniform = false;         // chain valid for every admissible piece word
};

struct GraphMembership {
  bool member = false;
  bool budget_exhausted = false;
  ChainCertificate certificate;  // valid when member
  std::int64_t branches_checked = 0;
};

/// Trajectory word of one coordinate: piece index per step from the triples
/// (z^{k-1}, z^k, v^k), with z^0 = z0.
std::vector<int> classify_trajectory_word(double z0, const Eigen::VectorXd& z,
                                          const Eigen::VectorXd& v, double tol);

/// Exact membership of (gamma, delta) in the limiting normal cone to the
/// graph of Q at (z, v), realized as a union over nearby-stratum branch
/// words of intersections over admissible piece words, each tested by exact
/// interval propagation along the multiplier chain. The union / intersection
/// enumeration is capped by `branch_budget` word evaluations.
GraphMembership limiting_normal_gphQ(double z0, const Eigen::VectorXd& z,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& gamma,
                                     const Eigen::VectorXd& delta, double tol,
                                     std::int64_t branch_budget = 1 << 14);

/// Enumerate admissible words with per-step values from
/// pieces_containing_stratum(base[k]), chained by the piece transition rule
/// and started from the class of z0. Capped at `limit` words.
std::vector<std::vector<int>> enumerate_admissible_words(const std::vector<int>& base,
                                                         bool z0_positive,
                                                         std::int64_t limit);

/// Feasibility of the multiplier chain for a fixed sequence of step cones
/// (facet form), by backward interval propagation; optionally extracts a
/// witness chain. Exposed for tests.
bool chain_feasible(const std::vector<const PolyCone3*>& step_cones,
                    const Eigen::VectorXd& gamma, const Eigen::VectorXd& delta,
                    double tol, Eigen::VectorXd* mu_tilde_out = nullptr);

}  // namespace delamid
