#include "delamid/mesh.hpp"

#include <stdexcept>
#include <string>

namespace delamid {

double Mesh2D::triangle_area(int t) const {
  const auto a = nodes.row(triangles(t, 0));
  const auto b = nodes.row(triangles(t, 1));
  const auto c = nodes.row(triangles(t, 2));
  return 0.5 * ((b(0) - a(0)) * (c(1) - a(1)) - (c(0) - a(0)) * (b(1) - a(1)));
}

std::vector<double> Mesh2D::contact_edge_lengths() const {
  std::vector<double> lengths;
  for (std::size_t i = 0; i + 1 < contact_node_ids.size(); ++i) {
    const auto a = nodes.row(contact_node_ids[i]);
    const auto b = nodes.row(contact_node_ids[i + 1]);
    lengths.push_back((b - a).norm());
  }
  return lengths;
}

Mesh2D build_structured_mesh(int nx, int ny, const RectGeometry& geom) {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("build_structured_mesh: need nx, ny >= 2");
  if (!(geom.width > 0.0) || !(geom.height > 0.0))
    throw std::invalid_argument("build_structured_mesh: degenerate rectangle extents");
  if (geom.contact_nodes < 1 || geom.contact_nodes > nx)
    throw std::invalid_argument(
        "build_structured_mesh: contact span must cover 1.." + std::to_string(nx) +
        " bottom nodes, got " + std::to_string(geom.contact_nodes));

  Mesh2D mesh;
  mesh.nodes.resize(nx * ny, 2);
  const double dx = geom.width / (nx - 1);
  const double dy = geom.height / (ny - 1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      mesh.nodes.row(j * nx + i) << i * dx, j * dy;

  // Two CCW triangles per cell, diagonal from lower-left to upper-right.
  mesh.triangles.resize(2 * (nx - 1) * (ny - 1), 3);
  int t = 0;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const int n00 = j * nx + i;
      const int n10 = n00 + 1;
      const int n01 = n00 + nx;
      const int n11 = n01 + 1;
      mesh.triangles.row(t++) << n00, n10, n11;
      mesh.triangles.row(t++) << n00, n11, n01;
    }
  }

  for (int i = 0; i < geom.contact_nodes; ++i) mesh.contact_node_ids.push_back(i);
  for (int i = 0; i < nx; ++i) mesh.dirichlet_node_ids.push_back((ny - 1) * nx + i);

  mesh.contact_normals.resize(geom.contact_nodes, 2);
  for (int i = 0; i < geom.contact_nodes; ++i)
    mesh.contact_normals.row(i) << 0.0, -1.0;  // out of the body across y=0

  return mesh;
}

}  // namespace delamid
