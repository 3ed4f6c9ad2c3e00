#include "delamid/adhesive.hpp"

#include <stdexcept>

namespace delamid {

void AdhesiveParams::validate() const {
  const auto m = alpha_F.size();
  if (kappa_N.size() != m || kappa_T.size() != m)
    throw std::invalid_argument("AdhesiveParams: field length mismatch");
  if ((alpha_F.array() <= 0).any() || (kappa_N.array() <= 0).any() ||
      (kappa_T.array() <= 0).any())
    throw std::invalid_argument("AdhesiveParams: entries must be strictly positive");
}

AdhesiveParams AdhesiveParams::constant(int m, double aF, double kN, double kT) {
  AdhesiveParams p;
  p.alpha_F = Eigen::VectorXd::Constant(m, aF);
  p.kappa_N = Eigen::VectorXd::Constant(m, kN);
  p.kappa_T = Eigen::VectorXd::Constant(m, kT);
  return p;
}

Grouping Grouping::single(int m) {
  Grouping g;
  g.num_groups = 1;
  g.node_group.assign(m, 0);
  return g;
}

Grouping Grouping::pairs(int m) {
  Grouping g;
  g.num_groups = (m + 1) / 2;
  g.node_group.resize(m);
  for (int i = 0; i < m; ++i) g.node_group[i] = i / 2;
  return g;
}

Grouping Grouping::per_node(int m) {
  Grouping g;
  g.num_groups = m;
  g.node_group.resize(m);
  for (int i = 0; i < m; ++i) g.node_group[i] = i;
  return g;
}

bool Grouping::refines_to(const Grouping& fine) const {
  if (fine.num_nodes() != num_nodes()) return false;
  // Every fine group must sit inside a single coarse group.
  std::vector<int> owner(fine.num_groups, -1);
  for (int i = 0; i < num_nodes(); ++i) {
    const int fg = fine.node_group[i];
    if (owner[fg] == -1) owner[fg] = node_group[i];
    else if (owner[fg] != node_group[i]) return false;
  }
  return true;
}

AdhesiveParams expand_params(const Grouping& grouping, const Eigen::VectorXd& slots) {
  if (slots.size() != grouping.dim())
    throw std::invalid_argument("expand_params: slot vector has wrong dimension");
  const int m = grouping.num_nodes();
  const int g = grouping.num_groups;
  AdhesiveParams p;
  p.alpha_F.resize(m);
  p.kappa_N.resize(m);
  p.kappa_T.resize(m);
  for (int i = 0; i < m; ++i) {
    const int gi = grouping.node_group[i];
    p.alpha_F(i) = slots(gi);
    p.kappa_N(i) = slots(g + gi);
    p.kappa_T(i) = slots(2 * g + gi);
  }
  return p;
}

Eigen::VectorXd collapse_params(const Grouping& grouping, const AdhesiveParams& params) {
  const int g = grouping.num_groups;
  Eigen::VectorXd slots = Eigen::VectorXd::Zero(3 * g);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(g);
  for (int i = 0; i < grouping.num_nodes(); ++i) {
    const int gi = grouping.node_group[i];
    slots(gi) += params.alpha_F(i);
    slots(g + gi) += params.kappa_N(i);
    slots(2 * g + gi) += params.kappa_T(i);
    count(gi) += 1.0;
  }
  for (int gi = 0; gi < g; ++gi) {
    slots(gi) /= count(gi);
    slots(g + gi) /= count(gi);
    slots(2 * g + gi) /= count(gi);
  }
  return slots;
}

Eigen::VectorXd pull_back_gradient(const Grouping& grouping,
                                   const Eigen::VectorXd& grad_nodes) {
  const int m = grouping.num_nodes();
  if (grad_nodes.size() != 3 * m)
    throw std::invalid_argument("pull_back_gradient: expected per-node layout 3M");
  const int g = grouping.num_groups;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * g);
  for (int i = 0; i < m; ++i) {
    const int gi = grouping.node_group[i];
    out(gi) += grad_nodes(i);
    out(g + gi) += grad_nodes(m + i);
    out(2 * g + gi) += grad_nodes(2 * m + i);
  }
  return out;
}

Eigen::VectorXd lift_grouping(const Eigen::VectorXd& slots_coarse, const Grouping& from,
                              const Grouping& to) {
  if (!from.refines_to(to))
    throw std::invalid_argument("lift_grouping: groupings are not nested");
  const AdhesiveParams nodal = expand_params(from, slots_coarse);
  // `to` refines `from`, so per-node values are constant on each fine group.
  return collapse_params(to, nodal);
}

void AdhesiveEnergyConfig::validate() const {
  if (!(h_a > 0.0))
    throw std::invalid_argument("AdhesiveEnergyConfig: h_a must be positive");
  if (eps < 0.0)
    throw std::invalid_argument("AdhesiveEnergyConfig: eps must be nonnegative");
}

SurfaceOperators assemble_z_quadratic(const AdhesiveEnergyConfig& cfg, const Mesh2D& mesh) {
  cfg.validate();
  const int m = mesh.num_contact_nodes();
  if (m == 0) throw std::invalid_argument("assemble_z_quadratic: empty contact boundary");

  SurfaceOperators ops;
  ops.lumped_area = Eigen::VectorXd::Zero(m);
  ops.B = Eigen::MatrixXd::Zero(m, m);

  const auto lengths = mesh.contact_edge_lengths();
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    const double l = lengths[e];
    const int i = static_cast<int>(e), j = static_cast<int>(e) + 1;
    ops.lumped_area(i) += 0.5 * l;
    ops.lumped_area(j) += 0.5 * l;
    // 1D P1 surface-gradient stiffness along the contact polyline.
    ops.B(i, i) += cfg.eps / l;
    ops.B(j, j) += cfg.eps / l;
    ops.B(i, j) -= cfg.eps / l;
    ops.B(j, i) -= cfg.eps / l;
    if (!cfg.lumped_mass) {
      ops.B(i, i) += cfg.h_a * l / 3.0;
      ops.B(j, j) += cfg.h_a * l / 3.0;
      ops.B(i, j) += cfg.h_a * l / 6.0;
      ops.B(j, i) += cfg.h_a * l / 6.0;
    }
  }
  if (m == 1) ops.lumped_area(0) = 1.0;  // isolated node: unit measure
  if (cfg.lumped_mass)
    ops.B += (cfg.h_a * ops.lumped_area).asDiagonal();
  return ops;
}

Eigen::VectorXd assemble_contact_coupling(const AdhesiveParams& params,
                                          const Eigen::VectorXd& z,
                                          const Eigen::VectorXd& lumped_area) {
  const int m = params.num_nodes();
  if (z.size() != m || lumped_area.size() != m)
    throw std::invalid_argument("assemble_contact_coupling: dimension mismatch");
  if ((z.array() < 0).any())
    throw std::domain_error("assemble_contact_coupling: negative delamination value");
  Eigen::VectorXd diag(2 * m);
  for (int i = 0; i < m; ++i) {
    diag(2 * i) = z(i) * params.kappa_N(i) * lumped_area(i);
    diag(2 * i + 1) = z(i) * params.kappa_T(i) * lumped_area(i);
  }
  return diag;
}

Eigen::VectorXd compute_b(const AdhesiveParams& params, const Eigen::VectorXd& u_contact,
                          const AdhesiveEnergyConfig& cfg,
                          const Eigen::VectorXd& lumped_area) {
  const int m = params.num_nodes();
  if (u_contact.size() != 2 * m)
    throw std::invalid_argument("compute_b: contact vector has wrong dimension");
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const double uN = u_contact(2 * i);
    const double uT = u_contact(2 * i + 1);
    b(i) = lumped_area(i) * (0.5 * params.kappa_N(i) * uN * uN +
                             0.5 * params.kappa_T(i) * uT * uT -
                             params.alpha_F(i) + cfg.h_c);
  }
  return b;
}

}  // namespace delamid
