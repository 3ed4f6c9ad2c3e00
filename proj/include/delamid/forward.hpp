#pragma once

#include <Eigen/Dense>
#include <vector>

#include "delamid/adhesive.hpp"
#include "delamid/fem.hpp"
#include "delamid/qp.hpp"

namespace delamid {

/// Immutable model data shared by every simulation: condensed elastic
/// operators, surface operators, and the contact frame.
struct ModelOperators {
  ReducedOperators reduced;
  SurfaceOperators surface;
  DofPartition partition;
  AdhesiveEnergyConfig energy;

  int n_contact() const { return partition.n_contact(); }
  int n_z() const { return static_cast<int>(surface.lumped_area.size()); }
};

/// Dirichlet driving program. w_D has K+1 rows (row 0 is the initial load,
/// used only for the initial contact solve) and n_dirichlet columns.
struct LoadingProgram {
  int K = 0;
  double tau = 1.0;  // s, reporting only; the recursion itself is rate-independent
  Eigen::MatrixXd w_D;

  void validate(int n_dirichlet) const;
};

/// Per-step solver records kept for the adjoint: both QP solutions and the
/// per-coordinate piece classification of the delamination triple.
struct StepRecord {
  QPSolution contact;
  QPSolution delamination;
  std::vector<int> piece;  // 1..8 per z coordinate
};

struct Trajectory {
  Eigen::MatrixXd u;  // (K+1) x N_C, rotated contact frame; row 0 = initial solve
  Eigen::MatrixXd z;  // (K+1) x M; row 0 = z0
  std::vector<StepRecord> steps;  // size K, index k-1 holds step k

  int num_steps() const { return static_cast<int>(steps.size()); }
  bool has_biactive_step() const;
};

/// One semi-implicit step: the contact program with the adhesive frozen at
/// z_prev, then the delamination program in the box [0, z_prev] at the new
/// displacement. Returns (u_k, z_k) and the records.
struct StepResult {
  Eigen::VectorXd u;
  Eigen::VectorXd z;
  StepRecord record;
};
StepResult step(const AdhesiveParams& params, const ModelOperators& ops,
                const Eigen::VectorXd& z_prev, const Eigen::VectorXd& w_D_k,
                double tol, const QPSolution* warm_contact = nullptr,
                const QPSolution* warm_z = nullptr);

/// Full recursion k = 1..K. u^0 solves the contact program under w_D row 0
/// with the intact adhesive z0. Deterministic for fixed inputs. QP failures
/// are rethrown with the step index attached.
Trajectory simulate(const AdhesiveParams& params, const ModelOperators& ops,
                    const LoadingProgram& loading, const Eigen::VectorXd& z0,
                    double tol = 1e-10);

/// Reconstructed free-block displacement u_F = A_gamma u_C + A_delta w_D.
Eigen::VectorXd reconstruct_free(const ModelOperators& ops, const Eigen::VectorXd& u_C,
                                 const Eigen::VectorXd& w_D_k);

}  // namespace delamid
