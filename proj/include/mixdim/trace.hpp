#pragma once

#include <vector>

#include "mixdim/mesh.hpp"

namespace mixdim {

/// One piece of a segment lying inside a single tet. The four barycentric
/// coordinates of the traversed tet are affine in the arclength s; they are
/// stored by their values at both ends of the piece.
struct TraceInterval {
  double s0, s1;
  int tet;
  std::array<int, 4> nodes;    // global node ids of the tet corners
  std::array<double, 4> bary0;  // barycentric coordinates at s0
  std::array<double, 4> bary1;  // and at s1

  double bary_at(int corner, double s) const {
    const double t = (s - s0) / (s1 - s0);
    return bary0[corner] + t * (bary1[corner] - bary0[corner]);
  }
};

/// Piecewise description of a segment's path through the tet mesh.
///
/// The intervals tile [0, S] without gaps; breakpoints are the arclengths
/// where the segment crosses tet faces (coincident crossings merged), plus
/// both endpoints. Restricting any 3D P1 basis function to the segment gives
/// a piecewise-linear function with breaks exactly at these parameters.
class TraceMap {
public:
  TraceMap(int segment, double length, std::vector<TraceInterval> intervals);

  int segment() const { return segment_; }
  double length() const { return length_; }
  const std::vector<TraceInterval>& intervals() const { return intervals_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  /// Number of distinct face-crossing parameters, endpoints included; this
  /// drives the 1D mesh resolution.
  int n_star() const { return static_cast<int>(breakpoints_.size()); }

  /// Index of the interval containing s (shared breakpoints resolve to the
  /// left interval, s=0 to the first).
  int interval_of(double s) const;

  /// Value at arclength s of the 3D basis function of global node k
  /// restricted to the segment; zero when k is not a corner of the
  /// traversed tet.
  double eval(int node, double s) const;

private:
  int segment_;
  double length_;
  std::vector<TraceInterval> intervals_;
  std::vector<double> breakpoints_;
};

/// Walks a segment through the mesh tet by tet. Both endpoints must lie in
/// the closed box. Tangential contacts are resolved by advancing into the
/// incident tet whose closure contains the longest upcoming piece of the
/// segment; crossings closer than 1e-12*S are merged.
TraceMap traverse(const TetMesh3D& mesh, const SegmentGeom& seg, int segment_index = 0);

/// Composite 2-point Gauss rule on the union of the trace breakpoints and
/// the nodes of the three 1D meshes. Every product of the discrete spaces'
/// basis functions (and their s-derivatives) is polynomial of degree <= 2 on
/// each sub-interval, so the rule integrates the coupling integrands exactly.
class Quadrature1D {
public:
  static Quadrature1D build(const TraceMap& tm, const SegmentMeshes& meshes);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double length() const { return breakpoints_.back(); }

  /// Calls f(s, w) for the two Gauss points of every sub-interval.
  template <typename F>
  void for_each_point(F&& f) const {
    constexpr double inv_sqrt3 = 0.57735026918962576;
    for (size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
      const double a = breakpoints_[i], b = breakpoints_[i + 1];
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      f(mid - half * inv_sqrt3, half);
      f(mid + half * inv_sqrt3, half);
    }
  }

  template <typename Fn>
  double integrate(Fn&& fn) const {
    double acc = 0.0;
    for_each_point([&](double s, double w) { acc += w * fn(s); });
    return acc;
  }

private:
  std::vector<double> breakpoints_;
};

}  // namespace mixdim
