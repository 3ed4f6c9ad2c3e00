#include "delamid/pieces.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace delamid {

int classify_piece(double z_prev, double z, double v, double tol) {
  const double scale = 1.0 + std::abs(z_prev) + std::abs(z) + std::abs(v);
  const double eps = tol * scale;
  if (z_prev < -eps || z < -eps || z > z_prev + eps)
    throw std::invalid_argument("classify_piece: point violates 0 <= z <= z_prev");

  if (z_prev <= eps) {  // pinched box [0,0]
    if (std::abs(z) > eps)
      throw std::invalid_argument("classify_piece: z must vanish when z_prev = 0");
    if (v > eps) return 8;
    if (v < -eps) return 6;
    return 7;
  }
  if (z >= z_prev - eps) {  // upper bound
    if (v > eps) return 1;
    if (std::abs(v) <= eps) return 2;
    throw std::invalid_argument("classify_piece: negative residual at the upper bound");
  }
  if (z <= eps) {  // lower bound
    if (v < -eps) return 5;
    if (std::abs(v) <= eps) return 4;
    throw std::invalid_argument("classify_piece: positive residual at the lower bound");
  }
  if (std::abs(v) > eps)
    throw std::invalid_argument("classify_piece: nonzero residual at an interior point");
  return 3;
}

bool piece_keeps_z_positive(int piece) { return piece >= 1 && piece <= 3; }

bool piece_transition_ok(int prev_piece, int piece) {
  if (piece_keeps_z_positive(prev_piece)) return piece >= 1 && piece <= 5;
  return piece >= 6 && piece <= 8;
}

const std::vector<int>& pieces_containing_stratum(int s) {
  static const std::vector<int> table[9] = {
      {},                          // unused index 0
      {1},                         // s=1
      {1, 2, 3},                   // s=2
      {3},                         // s=3
      {3, 4, 5},                   // s=4
      {5},                         // s=5
      {5, 6},                      // s=6
      {1, 2, 3, 4, 5, 6, 7, 8},    // s=7
      {1, 8},                      // s=8
  };
  if (s < 1 || s > 8) throw std::invalid_argument("pieces_containing_stratum: bad stratum");
  return table[s];
}

const PieceConstraints& piece_closure_constraints(int i) {
  // Coordinates x = (z_prev, z, v); all closures are cones through 0.
  // Inequality rows are written so that row.x <= 0 on the set.
  static const auto make = [] {
    std::array<PieceConstraints, 9> t;
    using V = Eigen::Vector3d;
    t[1].eq = {V(-1, 1, 0)};                                 // z = z_prev
    t[1].ineq = {V(-1, 0, 0), V(0, 0, -1)};                  // z_prev >= 0, v >= 0
    t[2].eq = {V(-1, 1, 0), V(0, 0, 1)};                     // z = z_prev, v = 0
    t[2].ineq = {V(-1, 0, 0)};
    t[3].eq = {V(0, 0, 1)};                                  // v = 0
    t[3].ineq = {V(0, -1, 0), V(-1, 1, 0)};                  // z >= 0, z <= z_prev
    t[4].eq = {V(0, 1, 0), V(0, 0, 1)};                      // z = 0, v = 0
    t[4].ineq = {V(-1, 0, 0)};
    t[5].eq = {V(0, 1, 0)};                                  // z = 0
    t[5].ineq = {V(-1, 0, 0), V(0, 0, 1)};                   // z_prev >= 0, v <= 0
    t[6].eq = {V(1, 0, 0), V(0, 1, 0)};                      // z_prev = 0, z = 0
    t[6].ineq = {V(0, 0, 1)};                                // v <= 0
    t[7].eq = {V(1, 0, 0), V(0, 1, 0), V(0, 0, 1)};          // origin
    t[8].eq = {V(1, 0, 0), V(0, 1, 0)};
    t[8].ineq = {V(0, 0, -1)};                               // v >= 0
    return t;
  }();
  if (i < 1 || i > 8) throw std::invalid_argument("piece_closure_constraints: bad piece");
  return make[i];
}

Eigen::Vector3d stratum_representative(int s) {
  switch (s) {
    case 1: return {1.0, 1.0, 1.0};
    case 2: return {1.0, 1.0, 0.0};
    case 3: return {2.0, 1.0, 0.0};
    case 4: return {1.0, 0.0, 0.0};
    case 5: return {1.0, 0.0, -1.0};
    case 6: return {0.0, 0.0, -1.0};
    case 7: return {0.0, 0.0, 0.0};
    case 8: return {0.0, 0.0, 1.0};
    default: throw std::invalid_argument("stratum_representative: bad stratum");
  }
}

namespace {

using Vec3 = Eigen::Vector3d;

Eigen::MatrixXd stack_rows(const std::vector<Vec3>& rows) {
  Eigen::MatrixXd m(rows.size(), 3);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(r) = rows[r].transpose();
  return m;
}

/// Orthonormal nullspace basis via full-pivot QR of the transpose.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tol = 1e-12) {
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * svd.singularValues()(0)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

/// V-representation (lineality basis + extreme rays) of a cone given in
/// facet form {y : E y = 0, A y <= 0} in up to 3 dimensions.
void enumerate_cone(const Eigen::MatrixXd& E, const Eigen::MatrixXd& A,
                    std::vector<Vec3>* lineality, std::vector<Vec3>* rays) {
  const double tol = 1e-10;
  lineality->clear();
  rays->clear();

  // Restrict to the equality subspace.
  const Eigen::MatrixXd N = nullspace(E);
  const int d = static_cast<int>(N.cols());
  if (d == 0) return;
  Eigen::MatrixXd Ah = A * N;  // rows x d

  // Lineality inside the subspace.
  const Eigen::MatrixXd L = nullspace(Ah);
  for (int c = 0; c < L.cols(); ++c) lineality->push_back(N * L.col(c));
  const int l = static_cast<int>(L.cols());
  const int q = d - l;  // dimension of the pointed quotient
  if (q == 0) return;

  // Complement of the lineality inside the subspace.
  Eigen::MatrixXd M;
  {
    Eigen::MatrixXd LT = L.transpose();
    M = nullspace(LT.rows() ? LT : Eigen::MatrixXd::Zero(0, d));
  }
  Eigen::MatrixXd Aq = Ah * M;  // rows x q, pointed cone {w : Aq w <= 0}

  auto feasible = [&](const Eigen::VectorXd& w) {
    for (int r = 0; r < Aq.rows(); ++r)
      if (Aq.row(r).dot(w) > tol) return false;
    return true;
  };
  auto push_ray = [&](const Eigen::VectorXd& w) {
    const Vec3 v = N * (M * w);
    if (v.norm() < tol) return;
    const Vec3 u = v / v.norm();
    for (const auto& existing : *rays)
      if ((existing - u).norm() < 1e-8) return;
    rays->push_back(u);
  };

  if (q == 1) {
    Eigen::VectorXd w(1);
    w << 1.0;
    if (feasible(w)) push_ray(w);
    w << -1.0;
    if (feasible(w)) push_ray(w);
    return;
  }

  // Extreme rays of a pointed cone: nullspace directions of (q-1)-subsets of
  // active rows. q <= 3 and row counts are tiny, brute force is fine.
  const int nr = static_cast<int>(Aq.rows());
  std::vector<std::vector<int>> subsets;
  if (q == 2) {
    for (int r = 0; r < nr; ++r) subsets.push_back({r});
  } else {  // q == 3
    for (int r = 0; r < nr; ++r)
      for (int s = r + 1; s < nr; ++s) subsets.push_back({r, s});
  }
  for (const auto& sub : subsets) {
    Eigen::MatrixXd rows(sub.size(), q);
    for (std::size_t k = 0; k < sub.size(); ++k) rows.row(k) = Aq.row(sub[k]);
    const Eigen::MatrixXd ker = nullspace(rows);
    if (ker.cols() != 1) continue;
    Eigen::VectorXd w = ker.col(0);
    if (feasible(w)) push_ray(w);
    if (feasible(-w)) push_ray(-w);
  }
}

PolyCone3 cone_from_generators(std::vector<Vec3> span, std::vector<Vec3> rays) {
  PolyCone3 cone;
  cone.span = std::move(span);
  cone.rays = std::move(rays);

  // Polar cone in facet form: y orthogonal to every span vector and <= 0
  // against every ray. Its V-representation gives the facets of the primal:
  // polar lineality -> equality rows, polar rays -> inequality rows.
  Eigen::MatrixXd E = stack_rows(cone.span);
  Eigen::MatrixXd A = stack_rows(cone.rays);
  std::vector<Vec3> polar_lin, polar_rays;
  enumerate_cone(E, A, &polar_lin, &polar_rays);
  cone.eq_rows = polar_lin;
  cone.ineq_rows = polar_rays;
  return cone;
}

}  // namespace

bool PolyCone3::contains(const Eigen::Vector3d& x, double tol) const {
  const double eps = tol * (1.0 + x.norm());
  for (const auto& e : eq_rows)
    if (std::abs(e.dot(x)) > eps) return false;
  for (const auto& a : ineq_rows)
    if (a.dot(x) > eps) return false;
  return true;
}

PolyCone3 polyhedral_normal_cone(const PieceConstraints& cons, const Eigen::Vector3d& at,
                                 double tol) {
  std::vector<Vec3> span = cons.eq;
  std::vector<Vec3> rays;
  for (const auto& a : cons.ineq)
    if (std::abs(a.dot(at)) <= tol * (1.0 + at.norm())) rays.push_back(a);
  return cone_from_generators(std::move(span), std::move(rays));
}

const PolyCone3& piece_normal_cone(int i, int s) {
  static const auto table = [] {
    std::map<std::pair<int, int>, PolyCone3> t;
    for (int s = 1; s <= 8; ++s)
      for (int i : pieces_containing_stratum(s))
        t.emplace(std::make_pair(i, s),
                  polyhedral_normal_cone(piece_closure_constraints(i),
                                         stratum_representative(s)));
    return t;
  }();
  const auto it = table.find({i, s});
  if (it == table.end())
    throw std::invalid_argument("piece_normal_cone: piece " + std::to_string(i) +
                                " does not contain stratum " + std::to_string(s) +
                                " (invalid branch)");
  return it->second;
}

const PolyCone3& stratum_chain_cone(int s) {
  static const auto table = [] {
    std::array<PolyCone3, 9> t;
    for (int s = 1; s <= 8; ++s) {
      PolyCone3 c;
      for (int i : pieces_containing_stratum(s)) {
        const PolyCone3& ni = piece_normal_cone(i, s);
        c.eq_rows.insert(c.eq_rows.end(), ni.eq_rows.begin(), ni.eq_rows.end());
        c.ineq_rows.insert(c.ineq_rows.end(), ni.ineq_rows.begin(), ni.ineq_rows.end());
      }
      t[s] = std::move(c);
    }
    return t;
  }();
  if (s < 1 || s > 8) throw std::invalid_argument("stratum_chain_cone: bad stratum");
  return table[s];
}

}  // namespace delamid
