#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace plsa {

/// Absolute tolerance for real comparisons outside the dynamic programs.
inline constexpr double kTolerance = 1e-9;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static Point3 from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Throws InvalidPoint when any coordinate is NaN or infinite.
Point3 checked_point(double x, double y, double z);

double dist(const Point3& p, const Point3& q);

/// Ordered, non-empty list of finite vertices, e.g. a CA backbone trace.
class Chain3D {
 public:
  Chain3D(std::string id, std::vector<Point3> vertices);

  const std::string& id() const noexcept { return id_; }
  std::span<const Point3> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  /// 0-based access.
  const Point3& operator[](std::size_t i) const { return vertices_[i]; }

  /// Polyline restricted to the given 1-based, strictly increasing indices.
  Chain3D restricted(std::span<const std::size_t> indices, std::string id = {}) const;

  friend bool operator==(const Chain3D&, const Chain3D&) = default;

 private:
  std::string id_;
  std::vector<Point3> vertices_;
};

/// Proper rigid motion x -> R x + t. R is orthonormal with det +1.
class RigidMotion {
 public:
  /// Parameter count of a rigid motion in 3D (3 rotation + 3 translation).
  static constexpr int kDegreesOfFreedom = 6;

  RigidMotion() = default;
  RigidMotion(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static RigidMotion identity() { return {}; }
  static RigidMotion translation(const Eigen::Vector3d& t) {
    return {Eigen::Matrix3d::Identity(), t};
  }

  const Eigen::Matrix3d& rotation() const noexcept { return rotation_; }
  const Eigen::Vector3d& translation() const noexcept { return translation_; }

  Point3 apply(const Point3& p) const;
  RigidMotion inverse() const;
  /// (*this * other)(x) == this->apply(other.apply(x))
  RigidMotion operator*(const RigidMotion& other) const;

 private:
  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
};

bool is_proper_rotation(const Eigen::Matrix3d& r, double tol = kTolerance);

Chain3D apply_motion(const RigidMotion& m, const Chain3D& c);

/// Least-squares superposition of src onto dst (Kabsch on three points).
/// Throws DegenerateTriple if src is collinear and IncompatibleTriple if
/// corresponding pairwise distances differ by more than `tolerance`.
RigidMotion motion_from_triples(const std::array<Point3, 3>& src,
                                const std::array<Point3, 3>& dst,
                                double tolerance = kTolerance);

double triangle_area(const Point3& a, const Point3& b, const Point3& c);

}  // namespace plsa
