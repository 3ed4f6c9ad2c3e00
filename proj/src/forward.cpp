#include "delamid/forward.hpp"

#include <stdexcept>
#include <string>

#include "delamid/errors.hpp"

namespace delamid {

void LoadingProgram::validate(int n_dirichlet) const {
  if (K < 1) throw std::invalid_argument("LoadingProgram: need K >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("LoadingProgram: need tau > 0");
  if (w_D.rows() != K + 1 || w_D.cols() != n_dirichlet)
    throw std::invalid_argument("LoadingProgram: w_D must be (K+1) x N_D");
}

bool Trajectory::has_biactive_step() const {
  for (const auto& s : steps) {
    for (bool b : s.contact.biactive)
      if (b) return true;
    for (bool b : s.delamination.biactive)
      if (b) return true;
    for (int p : s.piece)
      if (p == 2 || p == 4 || p == 7) return true;
  }
  return false;
}

namespace {

QPSolution solve_contact_stage(const AdhesiveParams& params, const ModelOperators& ops,
                               const Eigen::VectorXd& z_prev, const Eigen::VectorXd& w_D_k,
                               double tol, const QPSolution* warm) {
  ContactQP qp;
  qp.H = ops.reduced.A_alpha;
  qp.H.diagonal() += assemble_contact_coupling(params, z_prev, ops.surface.lumped_area);
  qp.c = ops.reduced.A_beta * w_D_k;
  for (int i = 0; i < ops.n_z(); ++i) qp.unilateral.push_back(2 * i);
  return solve_contact_qp(qp, tol, warm);
}

}  // namespace

StepResult step(const AdhesiveParams& params, const ModelOperators& ops,
                const Eigen::VectorXd& z_prev, const Eigen::VectorXd& w_D_k, double tol,
                const QPSolution* warm_contact, const QPSolution* warm_z) {
  StepResult out;
  out.record.contact = solve_contact_stage(params, ops, z_prev, w_D_k, tol, warm_contact);
  out.u = out.record.contact.x;

  BoxQP zqp;
  zqp.H = ops.surface.B;
  zqp.c = compute_b(params, out.u, ops.energy, ops.surface.lumped_area);
  zqp.lo = Eigen::VectorXd::Zero(ops.n_z());
  zqp.hi = z_prev;
  out.record.delamination = solve_box_qp(zqp, tol, warm_z);
  out.z = out.record.delamination.x;

  const int m = ops.n_z();
  out.record.piece.resize(m);
  for (int i = 0; i < m; ++i) {
    // v = -q(z^k) = -lambda at the solution (exactly zero off the bounds)
    const double v = -out.record.delamination.lambda(i);
    out.record.piece[i] = classify_piece(z_prev(i), out.z(i), v, 10.0 * tol);
  }
  return out;
}

Trajectory simulate(const AdhesiveParams& params, const ModelOperators& ops,
                    const LoadingProgram& loading, const Eigen::VectorXd& z0, double tol) {
  params.validate();
  loading.validate(ops.partition.n_dirichlet());
  const int m = ops.n_z();
  if (z0.size() != m) throw std::invalid_argument("simulate: z0 has wrong dimension");
  if ((z0.array() < 0.0).any() || (z0.array() > 1.0).any())
    throw std::invalid_argument("simulate: z0 must lie in [0,1]");

  Trajectory traj;
  traj.u.resize(loading.K + 1, ops.n_contact());
  traj.z.resize(loading.K + 1, m);
  traj.z.row(0) = z0.transpose();

  try {
    const QPSolution u0 =
        solve_contact_stage(params, ops, z0, loading.w_D.row(0).transpose(), tol, nullptr);
    traj.u.row(0) = u0.x.transpose();

    const QPSolution* warm_contact = &u0;
    const QPSolution* warm_z = nullptr;
    Eigen::VectorXd z_prev = z0;
    for (int k = 1; k <= loading.K; ++k) {
      StepResult r = step(params, ops, z_prev, loading.w_D.row(k).transpose(), tol,
                          warm_contact, warm_z);
      traj.u.row(k) = r.u.transpose();
      traj.z.row(k) = r.z.transpose();
      traj.steps.push_back(std::move(r.record));
      z_prev = traj.z.row(k).transpose();
      warm_contact = &traj.steps.back().contact;
      warm_z = &traj.steps.back().delamination;
    }
  } catch (const numerical_error& e) {
    throw numerical_error("simulate: step " + std::to_string(traj.steps.size() + 1) +
                          " failed: " + e.what());
  }
  return traj;
}

Eigen::VectorXd reconstruct_free(const ModelOperators& ops, const Eigen::VectorXd& u_C,
                                 const Eigen::VectorXd& w_D_k) {
  return ops.reduced.A_gamma * u_C + ops.reduced.A_delta * w_D_k;
}

}  // namespace delamid
