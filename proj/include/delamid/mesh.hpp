#pragma once

#include <Eigen/Dense>
#include <vector>

namespace delamid {

/// Rectangle geometry with the bottom-left portion of the lower edge glued
/// (contact boundary on the x-axis) and the top edge driven by the
/// time-dependent Dirichlet loading.
struct RectGeometry {
  double width = 1.3;    // m, x extent
  double height = 1.9;   // m, y extent
  int contact_nodes = 0; // glued nodes on the bottom edge, counted from x=0
};

struct Mesh2D {
  Eigen::MatrixX2d nodes;                // node coordinates, m
  Eigen::MatrixX3i triangles;            // CCW connectivity
  std::vector<int> contact_node_ids;     // ordered along +x
  std::vector<int> dirichlet_node_ids;   // loading edge (top), ordered along +x
  Eigen::MatrixX2d contact_normals;      // outward unit normal per contact node

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.rows()); }
  int num_contact_nodes() const { return static_cast<int>(contact_node_ids.size()); }

  double triangle_area(int t) const;

  /// Polyline edge lengths between consecutive contact nodes; size M-1.
  std::vector<double> contact_edge_lengths() const;
};

/// Structured triangulation of [0,width] x [0,height] with nx-by-ny nodes,
/// each cell split into two triangles. Contact nodes are the leftmost
/// `geom.contact_nodes` bottom-edge nodes (outward normal (0,-1)); Dirichlet
/// nodes are the whole top edge.
///
/// Throws std::invalid_argument on degenerate geometry (zero extent,
/// nx/ny < 2, contact span exceeding the bottom edge).
Mesh2D build_structured_mesh(int nx, int ny, const RectGeometry& geom);

}  // namespace delamid
