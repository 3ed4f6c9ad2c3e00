#include "delamid/fem.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>
#include <vector>

#include "delamid/errors.hpp"
#include "delamid/par.hpp"

namespace delamid {

void ElasticityTensor::validate() const {
  if (!(E > 0.0))
    throw std::invalid_argument("ElasticityTensor: E must be positive");
  if (!(nu > -1.0 && nu < 0.5))
    throw std::invalid_argument("ElasticityTensor: need -1 < nu < 0.5");
}

Eigen::Matrix3d ElasticityTensor::voigt() const {
  validate();
  const double lambda = nu * E / ((1.0 + nu) * (1.0 - 2.0 * nu));
  const double mu = E / (2.0 * (1.0 + nu));
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  D(0, 0) = D(1, 1) = lambda + 2.0 * mu;
  D(0, 1) = D(1, 0) = lambda;
  D(2, 2) = mu;
  return D;
}

Eigen::Matrix<double, 6, 6> p1_element_stiffness(const Eigen::Vector2d& a,
                                                 const Eigen::Vector2d& b,
                                                 const Eigen::Vector2d& c,
                                                 const ElasticityTensor& elast) {
  const double area2 = (b(0) - a(0)) * (c(1) - a(1)) - (c(0) - a(0)) * (b(1) - a(1));
  if (!(area2 > 0.0))
    throw std::invalid_argument("p1_element_stiffness: non-positive triangle area");
  const double inv2A = 1.0 / area2;

  // Constant shape-function gradients of the linear triangle.
  const double bx0 = (b(1) - c(1)) * inv2A, by0 = (c(0) - b(0)) * inv2A;
  const double bx1 = (c(1) - a(1)) * inv2A, by1 = (a(0) - c(0)) * inv2A;
  const double bx2 = (a(1) - b(1)) * inv2A, by2 = (b(0) - a(0)) * inv2A;

  Eigen::Matrix<double, 3, 6> B;
  B << bx0, 0, bx1, 0, bx2, 0,
       0, by0, 0, by1, 0, by2,
       by0, bx0, by1, bx1, by2, bx2;

  const double area = 0.5 * area2;
  return area * B.transpose() * elast.voigt() * B;
}

namespace {

Eigen::MatrixXd assemble_impl(const Mesh2D& mesh, const ElasticityTensor& elast,
                              bool parallel) {
  const int ndof = 2 * mesh.num_nodes();
  const int nt = mesh.num_triangles();

  auto element = [&](int t) {
    const auto tri = mesh.triangles.row(t);
    return p1_element_stiffness(mesh.nodes.row(tri(0)).transpose(),
                                mesh.nodes.row(tri(1)).transpose(),
                                mesh.nodes.row(tri(2)).transpose(), elast);
  };
  auto scatter = [&](Eigen::MatrixXd& K, int t, const Eigen::Matrix<double, 6, 6>& ke) {
    const auto tri = mesh.triangles.row(t);
    const int dof[6] = {2 * tri(0), 2 * tri(0) + 1, 2 * tri(1),
                        2 * tri(1) + 1, 2 * tri(2), 2 * tri(2) + 1};
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) K(dof[r], dof[c]) += ke(r, c);
  };

  if (!parallel || par::max_threads() == 1 || nt < 64) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(ndof, ndof);
    for (int t = 0; t < nt; ++t) scatter(K, t, element(t));
    return K;
  }

  // Per-thread accumulators, deterministic tree-free reduction.
  const int workers = par::max_threads();
  std::vector<Eigen::MatrixXd> buffers(workers, Eigen::MatrixXd::Zero(ndof, ndof));
#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
  {
    Eigen::MatrixXd& K = buffers[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (int t = 0; t < nt; ++t) scatter(K, t, element(t));
  }
#else
  for (int t = 0; t < nt; ++t) scatter(buffers[0], t, element(t));
#endif
  Eigen::MatrixXd K = std::move(buffers[0]);
  for (int w = 1; w < workers; ++w) K += buffers[w];
  return K;
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const Mesh2D& mesh, const ElasticityTensor& elast) {
  return assemble_impl(mesh, elast, true);
}

Eigen::MatrixXd assemble_stiffness_serial(const Mesh2D& mesh,
                                          const ElasticityTensor& elast) {
  return assemble_impl(mesh, elast, false);
}

DofPartition partition_dofs(const Mesh2D& mesh) {
  const int nn = mesh.num_nodes();
  std::vector<int> label(nn, 0);  // 0 free, 1 contact, 2 dirichlet
  for (int id : mesh.contact_node_ids) label[id] = 1;
  for (int id : mesh.dirichlet_node_ids) {
    if (label[id] == 1)
      throw std::invalid_argument("partition_dofs: node " + std::to_string(id) +
                                  " labeled both contact and Dirichlet");
    label[id] = 2;
  }
  if (mesh.dirichlet_node_ids.empty())
    throw std::invalid_argument("partition_dofs: empty Dirichlet boundary");
  if (mesh.contact_node_ids.empty())
    throw std::invalid_argument("partition_dofs: empty contact boundary");

  DofPartition part;
  for (int ci = 0; ci < mesh.num_contact_nodes(); ++ci) {
    const int id = mesh.contact_node_ids[ci];
    part.contact_dofs.push_back(2 * id);
    part.contact_dofs.push_back(2 * id + 1);
  }
  for (int id : mesh.dirichlet_node_ids) {
    part.dirichlet_dofs.push_back(2 * id);
    part.dirichlet_dofs.push_back(2 * id + 1);
  }
  for (int id = 0; id < nn; ++id) {
    if (label[id] != 0) continue;
    part.free_dofs.push_back(2 * id);
    part.free_dofs.push_back(2 * id + 1);
  }

  part.normals = mesh.contact_normals;
  part.tangents.resize(part.normals.rows(), 2);
  for (int i = 0; i < part.normals.rows(); ++i) {
    // tangent = normal rotated by +90 degrees
    part.tangents(i, 0) = -part.normals(i, 1);
    part.tangents(i, 1) = part.normals(i, 0);
  }
  return part;
}

Eigen::VectorXd DofPartition::contact_to_xy(const Eigen::VectorXd& u_rot) const {
  Eigen::VectorXd u_xy(u_rot.size());
  for (int i = 0; i < normals.rows(); ++i) {
    const double uN = u_rot(2 * i);
    const double uT = u_rot(2 * i + 1);
    u_xy(2 * i) = normals(i, 0) * uN + tangents(i, 0) * uT;
    u_xy(2 * i + 1) = normals(i, 1) * uN + tangents(i, 1) * uT;
  }
  return u_xy;
}

namespace {

Eigen::MatrixXd pick(const Eigen::MatrixXd& K, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = K(rows[r], cols[c]);
  return out;
}

/// Block-diagonal rotation taking xy contact components to (normal, tangent).
Eigen::MatrixXd contact_rotation(const DofPartition& part) {
  const int nc = part.n_contact();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(nc, nc);
  for (int i = 0; i < nc / 2; ++i) {
    R(2 * i, 2 * i) = part.normals(i, 0);
    R(2 * i, 2 * i + 1) = part.normals(i, 1);
    R(2 * i + 1, 2 * i) = part.tangents(i, 0);
    R(2 * i + 1, 2 * i + 1) = part.tangents(i, 1);
  }
  return R;
}

}  // namespace

ReducedOperators schur_reduce(const Eigen::MatrixXd& K, const DofPartition& part) {
  const Eigen::MatrixXd R = contact_rotation(part);

  const Eigen::MatrixXd K_CC = R * pick(K, part.contact_dofs, part.contact_dofs) * R.transpose();
  const Eigen::MatrixXd K_CF = R * pick(K, part.contact_dofs, part.free_dofs);
  const Eigen::MatrixXd K_CD = R * pick(K, part.contact_dofs, part.dirichlet_dofs);
  const Eigen::MatrixXd K_FF = pick(K, part.free_dofs, part.free_dofs);
  const Eigen::MatrixXd K_FD = pick(K, part.free_dofs, part.dirichlet_dofs);

  Eigen::LLT<Eigen::MatrixXd> llt(K_FF);
  if (llt.info() != Eigen::Success)
    throw numerical_error("schur_reduce: FF block is not positive definite");

  ReducedOperators red;
  red.A_gamma = -llt.solve(K_CF.transpose());
  red.A_delta = -llt.solve(K_FD);
  red.A_alpha = K_CC + K_CF * red.A_gamma;
  red.A_beta = K_CD + K_CF * red.A_delta;
  // Symmetrize away factorization round-off; A_alpha is SPD by construction.
  red.A_alpha = 0.5 * (red.A_alpha + red.A_alpha.transpose()).eval();
  return red;
}

}  // namespace delamid
