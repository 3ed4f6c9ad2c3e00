#pragma once

#include <Eigen/Dense>
#include <vector>

#include "delamid/mesh.hpp"

namespace delamid {

/// Distributed adhesive parameters, one triple per contact node.
/// alpha_F in J/m^2, kappa_N and kappa_T in Pa/m.
struct AdhesiveParams {
  Eigen::VectorXd alpha_F;
  Eigen::VectorXd kappa_N;
  Eigen::VectorXd kappa_T;

  int num_nodes() const { return static_cast<int>(alpha_F.size()); }
  void validate() const;

  static AdhesiveParams constant(int m, double aF, double kN, double kT);
};

/// Map from parameter slots (groups of contact nodes) to nodes. Slot vectors
/// are laid out field-major: [alpha_F over groups, kappa_N over groups,
/// kappa_T over groups], dimension 3 * num_groups.
struct Grouping {
  int num_groups = 0;
  std::vector<int> node_group;  // size M, values in [0, num_groups)

  int num_nodes() const { return static_cast<int>(node_group.size()); }
  int dim() const { return 3 * num_groups; }

  static Grouping single(int m);
  static Grouping pairs(int m);     // nodes 2g, 2g+1 share a slot
  static Grouping per_node(int m);

  /// True if `fine` splits every group of *this (piecewise-constant lifting
  /// is well defined).
  bool refines_to(const Grouping& fine) const;
};

AdhesiveParams expand_params(const Grouping& grouping, const Eigen::VectorXd& slots);
Eigen::VectorXd collapse_params(const Grouping& grouping, const AdhesiveParams& params);

/// Transpose of the piecewise-constant prolongation: per-node gradient
/// (layout [d/d alpha_F, d/d kappa_N, d/d kappa_T], size 3M) -> slot gradient.
Eigen::VectorXd pull_back_gradient(const Grouping& grouping, const Eigen::VectorXd& grad_nodes);

/// Piecewise-constant lifting of slot values between compatible groupings.
/// Throws std::invalid_argument if `from` does not refine to `to`.
Eigen::VectorXd lift_grouping(const Eigen::VectorXd& slots_coarse, const Grouping& from,
                              const Grouping& to);

/// Cohesive energy h(z) = 0.5*h_a*z^2 + h_c*z plus the surface-gradient
/// weight. h_a > 0 keeps the delamination problem strictly convex.
struct AdhesiveEnergyConfig {
  double h_a = 1.0;   // J/m^2
  double h_c = -1.0;  // J/m^2
  double eps = 1.0;   // J
  bool lumped_mass = true;

  void validate() const;
};

/// z-quadratic operators on the contact boundary.
struct SurfaceOperators {
  Eigen::MatrixXd B;             // M x M SPD: h_a * mass + eps * P1 stiffness
  Eigen::VectorXd lumped_area;   // s_i, trapezoidal node measures, size M
};

SurfaceOperators assemble_z_quadratic(const AdhesiveEnergyConfig& cfg, const Mesh2D& mesh);

/// Diagonal of the adhesive coupling in the rotated contact frame:
/// entry 2i   = z_i * kappa_N,i * s_i   (normal),
/// entry 2i+1 = z_i * kappa_T,i * s_i   (tangent).
/// Throws std::domain_error on negative z entries.
Eigen::VectorXd assemble_contact_coupling(const AdhesiveParams& params,
                                          const Eigen::VectorXd& z,
                                          const Eigen::VectorXd& lumped_area);

/// z-linear coefficient of the delamination program:
/// b_i = s_i * (0.5*kappa_N,i*u_N,i^2 + 0.5*kappa_T,i*u_T,i^2 - alpha_F,i + h_c).
Eigen::VectorXd compute_b(const AdhesiveParams& params, const Eigen::VectorXd& u_contact,
                          const AdhesiveEnergyConfig& cfg,
                          const Eigen::VectorXd& lumped_area);

}  // namespace delamid
