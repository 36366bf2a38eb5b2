#include "plsa/geometry.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "plsa/error.hpp"

namespace plsa {

Point3 checked_point(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorCode::InvalidPoint, "coordinates must be finite");
  }
  return {x, y, z};
}

double dist(const Point3& p, const Point3& q) {
  return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z);
}

Chain3D::Chain3D(std::string id, std::vector<Point3> vertices)
    : id_(std::move(id)), vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::EmptyChain, "chain '" + id_ + "' has no vertices");
  for (const auto& v : vertices_) checked_point(v.x, v.y, v.z);
}

Chain3D Chain3D::restricted(std::span<const std::size_t> indices, std::string id) const {
  std::vector<Point3> out;
  out.reserve(indices.size());
  std::size_t prev = 0;
  for (std::size_t idx : indices) {
    if (idx <= prev || idx > vertices_.size()) {
      throw Error(ErrorCode::IncompatibleWalk, "subsequence indices must be strictly increasing and in range");
    }
    out.push_back(vertices_[idx - 1]);
    prev = idx;
  }
  return Chain3D(id.empty() ? id_ : std::move(id), std::move(out));
}

bool is_proper_rotation(const Eigen::Matrix3d& r, double tol) {
  if (!r.allFinite()) return false;
  const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

RigidMotion::RigidMotion(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  if (!is_proper_rotation(rotation_) || !translation_.allFinite()) {
    throw Error(ErrorCode::InvalidMotion, "rotation must be orthonormal with determinant +1");
  }
}

Point3 RigidMotion::apply(const Point3& p) const {
  return Point3::from(rotation_ * p.vec() + translation_);
}

RigidMotion RigidMotion::inverse() const {
  RigidMotion inv;
  inv.rotation_ = rotation_.transpose();
  inv.translation_ = -(inv.rotation_ * translation_);
  return inv;
}

RigidMotion RigidMotion::operator*(const RigidMotion& other) const {
  RigidMotion out;
  out.rotation_ = rotation_ * other.rotation_;
  out.translation_ = rotation_ * other.translation_ + translation_;
  return out;
}

Chain3D apply_motion(const RigidMotion& m, const Chain3D& c) {
  std::vector<Point3> out;
  out.reserve(c.size());
  for (const auto& v : c.vertices()) out.push_back(m.apply(v));
  return Chain3D(c.id(), std::move(out));
}

double triangle_area(const Point3& a, const Point3& b, const Point3& c) {
  return 0.5 * (b.vec() - a.vec()).cross(c.vec() - a.vec()).norm();
}

RigidMotion motion_from_triples(const std::array<Point3, 3>& src,
                                const std::array<Point3, 3>& dst, double tolerance) {
  if (triangle_area(src[0], src[1], src[2]) <= kTolerance) {
    throw Error(ErrorCode::DegenerateTriple, "source triple is collinear");
  }
  constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : kPairs) {
    const double gap = std::abs(dist(src[i], src[j]) - dist(dst[i], dst[j]));
    if (gap > tolerance) {
      throw Error(ErrorCode::IncompatibleTriple,
                  "pairwise distances differ by " + std::to_string(gap));
    }
  }

  Eigen::Vector3d src_center = Eigen::Vector3d::Zero();
  Eigen::Vector3d dst_center = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k) {
    src_center += src[k].vec();
    dst_center += dst[k].vec();
  }
  src_center /= 3.0;
  dst_center /= 3.0;

  // Cross-covariance H = sum (dst_k - dst_c)(src_k - src_c)^T; R = U diag(1,1,d) V^T.
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (int k = 0; k < 3; ++k) {
    h += (dst[k].vec() - dst_center) * (src[k].vec() - src_center).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d correction = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) correction(2, 2) = -1.0;
  Eigen::Matrix3d rotation = svd.matrixU() * correction * svd.matrixV().transpose();

  // Re-orthonormalize so the RigidMotion invariant holds at 1e-9 after rounding.
  Eigen::Quaterniond q(rotation);
  q.normalize();
  rotation = q.toRotationMatrix();
  return RigidMotion(rotation, dst_center - rotation * src_center);
}

}  // namespace plsa
