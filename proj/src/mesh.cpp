#include "mixdim/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mixdim {

namespace {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

// Even permutations of (0,1,2) keep a right-handed vertex chain.
constexpr int kAxisOrders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

}  // namespace

TetMesh3D TetMesh3D::build_box(const Box& box, double h_target) {
  box.validate();
  if (!(h_target > 0.0)) fail("build_box: h_target must be positive");

  // Cell diagonal a*sqrt(3) <= h_target for a cubic cell of edge a; with
  // unequal per-axis counts the cell diagonal stays <= h_target as well.
  std::array<int, 3> n;
  for (int a = 0; a < 3; ++a)
    n[a] = std::max(1, static_cast<int>(std::ceil(box.edge(a) * std::sqrt(3.0) / h_target)));

  const int nx = n[0] + 1, ny = n[1] + 1, nz = n[2] + 1;
  auto node_id = [&](int i, int j, int k) { return (k * ny + j) * nx + i; };

  std::vector<Vec3> nodes(static_cast<size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        // Endpoints exact, interior points by linear interpolation.
        Vec3 p(i == n[0] ? box.hi[0] : box.lo[0] + box.edge(0) * i / n[0],
               j == n[1] ? box.hi[1] : box.lo[1] + box.edge(1) * j / n[1],
               k == n[2] ? box.hi[2] : box.lo[2] + box.edge(2) * k / n[2]);
        nodes[node_id(i, j, k)] = p;
      }

  // Six tets per cell, all sharing the cell's main diagonal; conforming
  // across cells.
  std::vector<std::array<int, 4>> tets;
  tets.reserve(6ull * n[0] * n[1] * n[2]);
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i)
        for (const auto& order : kAxisOrders) {
          std::array<int, 3> c = {i, j, k};
          std::array<int, 4> t;
          t[0] = node_id(c[0], c[1], c[2]);
          for (int q = 0; q < 3; ++q) {
            c[order[q]] += 1;
            t[q + 1] = node_id(c[0], c[1], c[2]);
          }
          if (signed_volume(nodes[t[0]], nodes[t[1]], nodes[t[2]], nodes[t[3]]) < 0.0)
            std::swap(t[1], t[2]);
          tets.push_back(t);
        }

  TetMesh3D mesh(std::move(nodes), std::move(tets));
  if (mesh.h() > h_target * (1.0 + 1e-12))
    failf("build_box: resulting diameter ", mesh.h(), " exceeds target ", h_target);
  return mesh;
}

TetMesh3D::TetMesh3D(std::vector<Vec3> nodes, std::vector<std::array<int, 4>> tets)
    : nodes_(std::move(nodes)), tets_(std::move(tets)) {
  finalize();
}

void TetMesh3D::finalize() {
  if (nodes_.empty() || tets_.empty()) fail("mesh: empty node or tet list");

  Vec3 lo = nodes_[0], hi = nodes_[0];
  for (const Vec3& p : nodes_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  box_ = Box{lo, hi};
  box_.validate();

  volumes_.resize(tets_.size());
  h_ = 0.0;
  for (size_t t = 0; t < tets_.size(); ++t) {
    for (int v : tets_[t])
      if (v < 0 || v >= num_nodes()) failf("mesh: tet ", t, " has node index out of range");
    const auto& tt = tets_[t];
    double vol = signed_volume(nodes_[tt[0]], nodes_[tt[1]], nodes_[tt[2]], nodes_[tt[3]]);
    if (!(vol > 0.0)) failf("mesh: tet ", t, " has non-positive volume ", vol);
    volumes_[t] = vol;
    h_ = std::max(h_, tet_diameter(static_cast<int>(t)));
  }

  // Face-to-tet map; a face key is the sorted node triple.
  std::map<std::array<int, 3>, std::array<int, 2>> faces;  // -> (tet, opposite vertex)
  neighbors_.assign(tets_.size(), {-1, -1, -1, -1});
  for (size_t t = 0; t < tets_.size(); ++t)
    for (int v = 0; v < 4; ++v) {
      std::array<int, 3> key;
      int w = 0;
      for (int u = 0; u < 4; ++u)
        if (u != v) key[w++] = tets_[t][u];
      std::sort(key.begin(), key.end());
      auto [it, inserted] = faces.try_emplace(key, std::array<int, 2>{static_cast<int>(t), v});
      if (!inserted) {
        if (it->second[0] < 0)
          failf("mesh: non-manifold boundary, face shared by more than two tets (tets ",
                t, " and others)");
        neighbors_[t][v] = it->second[0];
        neighbors_[it->second[0]][it->second[1]] = static_cast<int>(t);
        it->second[0] = -1;  // consumed
      }
    }

  const double plane_tol = 1e-12 * (1.0 + box_.diagonal());
  boundary_faces_.clear();
  for (const auto& [key, owner] : faces) {
    if (owner[0] < 0) continue;  // interior face
    BoundaryFace f;
    const int t = owner[0], v = owner[1];
    int w = 0;
    for (int u = 0; u < 4; ++u)
      if (u != v) f.nodes[w++] = tets_[t][u];
    f.tet = t;

    // Tag by the unique box plane containing all three vertices.
    int tag = -1;
    for (int ft = 0; ft < 6; ++ft) {
      const int axis = ft / 2;
      const double plane = (ft % 2) ? box_.hi[axis] : box_.lo[axis];
      bool on = true;
      for (int nidx : f.nodes)
        on = on && std::abs(nodes_[nidx][axis] - plane) <= plane_tol;
      if (on) {
        tag = ft;
        break;
      }
    }
    if (tag < 0)
      failf("mesh: boundary face (", f.nodes[0], ",", f.nodes[1], ",", f.nodes[2],
            ") lies on no box plane; domain is not an axis-aligned box");
    f.tag = static_cast<FaceTag>(tag);

    const Vec3 e1 = nodes_[f.nodes[1]] - nodes_[f.nodes[0]];
    const Vec3 e2 = nodes_[f.nodes[2]] - nodes_[f.nodes[0]];
    Vec3 cr = e1.cross(e2);
    f.area = 0.5 * cr.norm();
    f.normal = face_normal(f.tag);
    boundary_faces_.push_back(f);
  }

  // Star of each node in CSR form.
  node_tet_offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& t : tets_)
    for (int v : t) node_tet_offsets_[v + 1]++;
  for (size_t i = 1; i < node_tet_offsets_.size(); ++i)
    node_tet_offsets_[i] += node_tet_offsets_[i - 1];
  node_tet_ids_.resize(node_tet_offsets_.back());
  std::vector<int> cursor(node_tet_offsets_.begin(), node_tet_offsets_.end() - 1);
  for (size_t t = 0; t < tets_.size(); ++t)
    for (int v : tets_[t]) node_tet_ids_[cursor[v]++] = static_cast<int>(t);
}

double TetMesh3D::tet_diameter(int t) const {
  double d2 = 0.0;
  const auto& tt = tets_[t];
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      d2 = std::max(d2, (nodes_[tt[a]] - nodes_[tt[b]]).squaredNorm());
  return std::sqrt(d2);
}

std::span<const int> TetMesh3D::tets_around_node(int n) const {
  return {node_tet_ids_.data() + node_tet_offsets_[n],
          node_tet_ids_.data() + node_tet_offsets_[n + 1]};
}

std::array<double, 4> TetMesh3D::barycentric(int t, const Vec3& p) const {
  const auto& tt = tets_[t];
  Eigen::Matrix3d J;
  for (int c = 0; c < 3; ++c) J.col(c) = nodes_[tt[c + 1]] - nodes_[tt[0]];
  const Vec3 q = J.partialPivLu().solve(p - nodes_[tt[0]]);
  return {1.0 - q[0] - q[1] - q[2], q[0], q[1], q[2]};
}

Vec3 TetMesh3D::basis_gradient(int t, int v) const {
  const auto& tt = tets_[t];
  Eigen::Matrix3d J;
  for (int c = 0; c < 3; ++c) J.col(c) = nodes_[tt[c + 1]] - nodes_[tt[0]];
  const Eigen::Matrix3d Jinv = J.inverse();
  if (v == 0) return -(Jinv.row(0) + Jinv.row(1) + Jinv.row(2)).transpose();
  return Jinv.row(v - 1).transpose();
}

void TetMesh3D::export_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) failf("cannot open '", path, "' for writing");
  out << "# tet mesh: nodes then tets, zero-based indices\n";
  out << "nodes " << num_nodes() << "\n";
  char buf[96];
  for (const Vec3& p : nodes_) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  out << "tets " << num_tets() << "\n";
  for (const auto& t : tets_) out << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  if (!out) failf("write failed for '", path, "'");
}

namespace {

// Strips '#' comments and returns whitespace tokens.
std::vector<std::string> tokenize_stream(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

TetMesh3D TetMesh3D::import_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) failf("cannot open mesh file '", path, "'");
  auto tokens = tokenize_stream(in);
  size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) failf("mesh file '", path, "': unexpected end of input");
    return tokens[pos++];
  };
  auto next_int = [&]() {
    const std::string& t = next();
    size_t used = 0;
    long v = std::stol(t, &used);
    if (used != t.size()) failf("mesh file '", path, "': bad integer '", t, "'");
    return static_cast<int>(v);
  };
  auto next_double = [&]() {
    const std::string& t = next();
    size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) failf("mesh file '", path, "': bad number '", t, "'");
    return v;
  };

  if (next() != "nodes") failf("mesh file '", path, "': expected 'nodes'");
  const int nn = next_int();
  if (nn <= 0) failf("mesh file '", path, "': node count must be positive");
  std::vector<Vec3> nodes(nn);
  for (int i = 0; i < nn; ++i) nodes[i] = Vec3(next_double(), next_double(), next_double());

  if (next() != "tets") failf("mesh file '", path, "': expected 'tets'");
  const int nt = next_int();
  if (nt <= 0) failf("mesh file '", path, "': tet count must be positive");
  std::vector<std::array<int, 4>> tets(nt);
  for (int t = 0; t < nt; ++t)
    tets[t] = {next_int(), next_int(), next_int(), next_int()};
  if (pos != tokens.size()) failf("mesh file '", path, "': trailing tokens");

  return TetMesh3D(std::move(nodes), std::move(tets));
}

void SegmentGeom::validate(const Box& box) const {
  if (!(length() > 0.0)) fail("segment: zero length");
  if (!(radius > 0.0)) fail("segment: radius must be positive");
  if (!(conductivity > 0.0)) fail("segment: conductivity must be positive");
  const double tol = 1e-12 * (1.0 + box.diagonal());
  if (!box.contains(p0, tol) || !box.contains(p1, tol))
    failf("segment (", p0.transpose(), ") -> (", p1.transpose(), ") has an endpoint outside the box");
  if (radius > 0.1 * box.min_edge())
    warn("segment radius ", radius, " is not small versus the box (min edge ", box.min_edge(),
         "); the centreline reduction may be inaccurate");
}

int Mesh1D::cell_of(double x) const {
  const int nc = num_cells();
  int c = static_cast<int>(std::floor(x / spacing()));
  return std::clamp(c, 0, nc - 1);
}

namespace {

Mesh1D uniform_mesh(int segment, Mesh1D::Kind kind, int n_points, double length) {
  Mesh1D m;
  m.segment = segment;
  m.kind = kind;
  m.s.resize(n_points);
  for (int i = 0; i < n_points; ++i) m.s[i] = length * i / (n_points - 1);
  m.s.front() = 0.0;
  m.s.back() = length;
  return m;
}

}  // namespace

SegmentMeshes build_segment_meshes(const SegmentGeom& seg, int n_star, double ratio) {
  if (!(ratio > 0.0)) fail("build_segment_meshes: ratio must be positive");
  if (n_star < 3) {
    warn("crossing count ", n_star, " below 3; clamping (segment shorter than the 3D cells)");
    n_star = 3;
  }
  const double S = seg.length();
  const int n_psi = std::max(2, static_cast<int>(std::lround(ratio * n_star)));
  const int n_phi_cells = std::max(1, static_cast<int>(std::lround(ratio * n_star)));

  SegmentMeshes m;
  m.uhat = uniform_mesh(-1, Mesh1D::Kind::P1Nodal, n_star, S);
  m.phi = uniform_mesh(-1, Mesh1D::Kind::P0Cellwise, n_phi_cells + 1, S);
  m.psi = uniform_mesh(-1, Mesh1D::Kind::P1Nodal, n_psi, S);
  return m;
}

}  // namespace mixdim
