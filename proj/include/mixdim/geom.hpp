#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "mixdim/error.hpp"

namespace mixdim {

using Vec3 = Eigen::Vector3d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box, lo componentwise below hi.
struct Box {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};

  double edge(int axis) const { return hi[axis] - lo[axis]; }
  double min_edge() const { return (hi - lo).minCoeff(); }
  double max_edge() const { return (hi - lo).maxCoeff(); }
  double diagonal() const { return (hi - lo).norm(); }
  double volume() const { return (hi - lo).prod(); }

  bool contains(const Vec3& p, double tol = 0.0) const {
    return (p.array() >= lo.array() - tol).all() &&
           (p.array() <= hi.array() + tol).all();
  }

  void validate() const {
    if (!((hi - lo).array() > 0.0).all()) fail("degenerate box: non-positive edge");
  }
};

/// The six faces of a box domain.
enum class FaceTag : int { XMinus = 0, XPlus, YMinus, YPlus, ZMinus, ZPlus };

inline constexpr std::array<const char*, 6> kFaceNames = {"x-", "x+", "y-", "y+", "z-", "z+"};

inline const char* face_name(FaceTag t) { return kFaceNames[static_cast<int>(t)]; }
inline int face_axis(FaceTag t) { return static_cast<int>(t) / 2; }
inline bool face_is_upper(FaceTag t) { return static_cast<int>(t) % 2 == 1; }

/// Plane coordinate of a box face along its axis.
inline double face_plane(const Box& box, FaceTag t) {
  return face_is_upper(t) ? box.hi[face_axis(t)] : box.lo[face_axis(t)];
}

/// Outward unit normal of a box face.
inline Vec3 face_normal(FaceTag t) {
  Vec3 n = Vec3::Zero();
  n[face_axis(t)] = face_is_upper(t) ? 1.0 : -1.0;
  return n;
}

inline FaceTag opposite_face(FaceTag t) {
  return static_cast<FaceTag>(static_cast<int>(t) ^ 1);
}

}  // namespace mixdim
