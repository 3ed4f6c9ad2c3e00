#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace delamid {

// One delamination coordinate contributes, per time step, a triple
// (z_prev, z, v) with v the negative residual of the z-program. The graph of
// the step map z -> N_[0,z_prev](z) splits into eight relatively open
// polyhedral pieces:
//   1: z_prev > 0, z = z_prev, v > 0        upper bound strongly active
//   2: z_prev > 0, z = z_prev, v = 0        upper bound biactive
//   3: z_prev > 0, 0 < z < z_prev, v = 0    inactive
//   4: z_prev > 0, z = 0, v = 0             lower bound biactive
//   5: z_prev > 0, z = 0, v < 0             lower bound strongly active
//   6: z_prev = 0, z = 0, v < 0             pinched, negative residual
//   7: z_prev = 0, z = 0, v = 0             pinched, zero residual
//   8: z_prev = 0, z = 0, v > 0             pinched, positive residual
//
// Pieces 1-3 have z > 0 ("open" class), 4-8 have z = 0 ("closed" class); a
// step word is realizable only if an open-class piece is never preceded by a
// closed-class one.

/// Classify one step triple. Values within `tol` of a stratum boundary snap
/// to the lower-dimensional stratum. Throws std::invalid_argument if the
/// triple lies off the graph beyond `tol` (scaled by the triple magnitude).
int classify_piece(double z_prev, double z, double v, double tol);

/// true for pieces {1,2,3} (z stays positive).
bool piece_keeps_z_positive(int piece);

/// Realizability of consecutive pieces: prev in {1,2,3} allows {1,...,5},
/// prev in {4,...,8} allows {6,7,8}.
bool piece_transition_ok(int prev_piece, int piece);

/// Pieces i whose closure contains stratum s (per component): selecting a
/// nearby-stratum branch s requires the normal cones of all these closures.
const std::vector<int>& pieces_containing_stratum(int s);

/// Polyhedral cone in R^3 on triples (mu_tilde_prev, mu, nu), carried in both
/// generator form (span + rays) and facet form (equalities + inequalities,
/// rows r with r.x = 0 resp. r.x <= 0).
struct PolyCone3 {
  std::vector<Eigen::Vector3d> span;
  std::vector<Eigen::Vector3d> rays;
  std::vector<Eigen::Vector3d> eq_rows;
  std::vector<Eigen::Vector3d> ineq_rows;

  bool contains(const Eigen::Vector3d& x, double tol) const;
};

/// Normal cone of cl(piece i) at any point of stratum s, i.e. the common
/// value N_{cl Q_i}(Q_s). Precondition: i in pieces_containing_stratum(s);
/// otherwise throws std::invalid_argument (invalid branch).
const PolyCone3& piece_normal_cone(int i, int s);

/// Facet-form intersection over all i in pieces_containing_stratum(s):
/// the cone a single multiplier chain must satisfy at a step classified into
/// branch stratum s. (Concatenated facet rows of the individual cones.)
const PolyCone3& stratum_chain_cone(int s);

/// Constraint table of cl(piece i) in (z_prev, z, v) coordinates, as facet
/// rows: equalities first. Used by the generic polyhedral routines and the
/// verification oracles.
struct PieceConstraints {
  std::vector<Eigen::Vector3d> eq;      // e.x = 0 on cl(piece)
  std::vector<Eigen::Vector3d> ineq;    // a.x <= 0 on cl(piece)
};
const PieceConstraints& piece_closure_constraints(int i);

/// Representative interior point of stratum s (z_prev scale 1).
Eigen::Vector3d stratum_representative(int s);

/// Generic normal cone of the polyhedral cone {eq.x=0, ineq.x<=0} at a point:
/// span of equality rows plus the active inequality rows as rays. Facet form
/// is produced by dualization (ray enumeration of the polar in R^3).
PolyCone3 polyhedral_normal_cone(const PieceConstraints& cons, const Eigen::Vector3d& at,
                                 double tol = 1e-9);

}  // namespace delamid
