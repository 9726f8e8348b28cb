#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mixdim/geom.hpp"

namespace mixdim {

/// Boundary triangle of the tet complex, tagged with the box face it lies on.
struct BoundaryFace {
  std::array<int, 3> nodes;
  int tet;  // the unique adjacent tet
  FaceTag tag;
  double area;
  Vec3 normal;  // outward unit normal
};

/// Tetrahedral mesh of an axis-aligned box.
///
/// Tets are positively oriented (signed volume > 0). Boundary faces are
/// derived from connectivity: a face is on the boundary iff it belongs to
/// exactly one tet, and every boundary face must lie on one of the six box
/// planes. Immutable after construction.
class TetMesh3D {
public:
  /// Structured mesh: the box is split into cells small enough that the
  /// maximum tet diameter is <= h_target, each cell into six tets sharing
  /// the cell's main diagonal. Deterministic.
  static TetMesh3D build_box(const Box& box, double h_target);

  /// Reads the plain-text node/tet format (see `export_file`). Boundary
  /// faces are re-derived from connectivity; orientation is validated.
  static TetMesh3D import_file(const std::string& path);

  /// Constructs from raw arrays; validates orientation, manifoldness and
  /// boundary tags.
  TetMesh3D(std::vector<Vec3> nodes, std::vector<std::array<int, 4>> tets);

  /// Writes `nodes <N>` / `tets <T>` plain text with full double precision.
  void export_file(const std::string& path) const;

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_tets() const { return static_cast<int>(tets_.size()); }
  const Vec3& node(int i) const { return nodes_[i]; }
  const std::array<int, 4>& tet(int t) const { return tets_[t]; }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<std::array<int, 4>>& tets() const { return tets_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }

  double tet_volume(int t) const { return volumes_[t]; }
  double tet_diameter(int t) const;

  /// Maximum tet diameter.
  double h() const { return h_; }
  const Box& box() const { return box_; }

  /// Neighbor tet across the face opposite local vertex `v`, or -1 on the
  /// boundary.
  int neighbor(int t, int v) const { return neighbors_[t][v]; }

  /// Tets incident to a node.
  std::span<const int> tets_around_node(int n) const;

  /// Barycentric coordinates of p with respect to tet t, ordered like the
  /// tet's vertices.
  std::array<double, 4> barycentric(int t, const Vec3& p) const;

  /// Constant gradient of the P1 basis function of local vertex v on tet t.
  Vec3 basis_gradient(int t, int v) const;

private:
  void finalize();

  std::vector<Vec3> nodes_;
  std::vector<std::array<int, 4>> tets_;
  std::vector<BoundaryFace> boundary_faces_;
  std::vector<double> volumes_;
  std::vector<std::array<int, 4>> neighbors_;
  std::vector<int> node_tet_offsets_;  // CSR star-of-node
  std::vector<int> node_tet_ids_;
  Box box_;
  double h_ = 0.0;
};

/// Endpoint condition of a 1D inclusion.
struct EndpointBC {
  enum class Kind { Neumann, Dirichlet };
  Kind kind = Kind::Neumann;
  double value = 0.0;
};

/// Straight thin inclusion reduced to its centreline.
struct SegmentGeom {
  Vec3 p0{0, 0, 0}, p1{0, 0, 1};
  double radius = 1e-2;
  double conductivity = 1.0;
  EndpointBC bc0, bc1;

  double length() const { return (p1 - p0).norm(); }
  Vec3 direction() const { return (p1 - p0) / length(); }
  Vec3 point_at(double s) const { return p0 + s * direction(); }
  /// Perimeter of the cross section.
  double lateral_weight() const { return 2.0 * M_PI * radius; }
  /// Area of the cross section.
  double section_area() const { return M_PI * radius * radius; }

  /// Checks geometric sanity against the enclosing box. Throws on zero
  /// length, non-positive radius/conductivity or endpoints outside the
  /// closed box; warns when the radius is not small versus the box.
  void validate(const Box& box) const;
};

/// Uniform 1D mesh on [0, S] along a segment.
///
/// For P1 meshes `s` holds the node parameters; for P0 meshes it holds the
/// cell boundaries (num_cells()+1 entries). Spacing is uniform.
struct Mesh1D {
  enum class Kind { P1Nodal, P0Cellwise };

  int segment = -1;
  Kind kind = Kind::P1Nodal;
  std::vector<double> s;

  int num_cells() const { return static_cast<int>(s.size()) - 1; }
  int num_dofs() const {
    return kind == Kind::P1Nodal ? static_cast<int>(s.size()) : num_cells();
  }
  double length() const { return s.back(); }
  double spacing() const { return s[1] - s[0]; }
  /// Index of the cell containing parameter x (ties resolve to the lower
  /// cell; clamped to [0, num_cells()-1]).
  int cell_of(double x) const;
};

/// The three 1D meshes discretizing one segment.
struct SegmentMeshes {
  Mesh1D uhat;  // P1, for the inclusion solution
  Mesh1D phi;   // P0, for the interface flux density
  Mesh1D psi;   // P1, for the interface value
};

/// Builds the three 1D meshes from the crossing count n_star: the solution
/// mesh gets n_star equally spaced nodes, the interface meshes get
/// round(ratio*n_star) nodes/cells (clamped to stay valid). n_star below 3
/// is clamped up with a warning.
SegmentMeshes build_segment_meshes(const SegmentGeom& seg, int n_star, double ratio = 0.5);

}  // namespace mixdim
