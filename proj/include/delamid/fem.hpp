#pragma once

#include <Eigen/Dense>
#include <vector>

#include "delamid/mesh.hpp"

namespace delamid {

/// Isotropic plane-strain elasticity. E in Pa, nu dimensionless.
struct ElasticityTensor {
  double E = 70e9;
  double nu = 0.35;

  void validate() const;

  /// Voigt 3x3 matrix for strain ordering (e_xx, e_yy, 2 e_xy).
  Eigen::Matrix3d voigt() const;
};

/// 6x6 stiffness of one P1 triangle, DOFs (ux0, uy0, ux1, uy1, ux2, uy2).
Eigen::Matrix<double, 6, 6> p1_element_stiffness(const Eigen::Vector2d& a,
                                                 const Eigen::Vector2d& b,
                                                 const Eigen::Vector2d& c,
                                                 const ElasticityTensor& elast);

/// Global stiffness over all displacement DOFs (2 per node, xy frame).
/// OpenMP-parallel over elements; `assemble_stiffness_serial` is the plain
/// reference kept for testing and benchmarking.
Eigen::MatrixXd assemble_stiffness(const Mesh2D& mesh, const ElasticityTensor& elast);
Eigen::MatrixXd assemble_stiffness_serial(const Mesh2D& mesh, const ElasticityTensor& elast);

/// Contact/free/Dirichlet split of displacement DOFs. The contact block is
/// expressed per node in the rotated (normal, tangent) frame so the Signorini
/// constraint is a per-coordinate sign condition: within the contact block,
/// index 2*i is the normal component of contact node i and 2*i+1 the
/// tangential one.
struct DofPartition {
  std::vector<int> contact_dofs;    // global xy DOF ids backing the block, [2*i]=x, [2*i+1]=y of node i
  std::vector<int> free_dofs;
  std::vector<int> dirichlet_dofs;  // per node: x then y
  Eigen::MatrixX2d normals;         // per contact node
  Eigen::MatrixX2d tangents;        // 90-degree CCW rotation of the normal

  int n_contact() const { return static_cast<int>(contact_dofs.size()); }
  int n_free() const { return static_cast<int>(free_dofs.size()); }
  int n_dirichlet() const { return static_cast<int>(dirichlet_dofs.size()); }

  bool is_normal_component(int contact_block_index) const {
    return contact_block_index % 2 == 0;
  }

  /// Rotated contact vector -> global xy components (per contact node).
  Eigen::VectorXd contact_to_xy(const Eigen::VectorXd& u_rot) const;
};

/// Throws std::invalid_argument if a node carries both contact and Dirichlet
/// labels or if the Dirichlet set is empty (the free block would be singular).
DofPartition partition_dofs(const Mesh2D& mesh);

/// Condensed operators of the contact-boundary reduction
///   A_alpha = K_CC - K_CF K_FF^-1 K_FC      (contact frame, SPD)
///   A_beta  = K_CD - K_CF K_FF^-1 K_FD
///   A_gamma = -K_FF^-1 K_FC                  (free-block reconstruction)
///   A_delta = -K_FF^-1 K_FD
/// so that u_F = A_gamma u_C + A_delta w_D restores F-block equilibrium.
struct ReducedOperators {
  Eigen::MatrixXd A_alpha;
  Eigen::MatrixXd A_beta;
  Eigen::MatrixXd A_gamma;
  Eigen::MatrixXd A_delta;
};

/// Throws numerical_error if the FF block fails to factorize.
ReducedOperators schur_reduce(const Eigen::MatrixXd& K, const DofPartition& part);

}  // namespace delamid
