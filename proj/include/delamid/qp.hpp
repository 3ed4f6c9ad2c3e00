#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace delamid {

/// Strictly convex quadratic program 0.5 x'Hx + c'x over a coordinate box.
/// Bound entries may be -inf / +inf; lo == hi pins a coordinate.
struct BoxQP {
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

/// Contact program: same objective, with x_j >= 0 only on the listed
/// coordinates (normal components); all others unconstrained.
struct ContactQP {
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  std::vector<int> unilateral;
};

enum class Activity : std::uint8_t { Inactive, Lower, Upper, Pinned };

/// Minimizer plus the KKT data downstream branch classification needs.
/// lambda_j = (Hx + c)_j on active coordinates (>= 0 at a lower bound,
/// <= 0 at an upper bound), 0 on inactive ones; -lambda is the realized
/// normal-cone element. Active coordinates whose multiplier is within
/// 10x the KKT tolerance are flagged biactive rather than rounded.
struct QPSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;
  std::vector<Activity> activity;
  std::vector<bool> biactive;
  int iterations = 0;
  double kkt_residual = 0.0;
};

/// Primal active-set method, Cholesky factorization of the free block per
/// working-set change. `tol` bounds the KKT residual relative to |c| + 1.
/// Throws numerical_error if H is not positive definite or the iteration
/// guard trips.
QPSolution solve_box_qp(const BoxQP& qp, double tol = 1e-10,
                        const QPSolution* warm = nullptr);

QPSolution solve_contact_qp(const ContactQP& qp, double tol = 1e-10,
                            const QPSolution* warm = nullptr);

}  // namespace delamid
