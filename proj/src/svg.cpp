#include "plsa/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace plsa {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#8c564b"};

struct Projection {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d u = Eigen::Vector3d::UnitX();
  Eigen::Vector3d v = Eigen::Vector3d::UnitY();
  double scale = 1.0;
  double min_u = 0.0;
  double min_v = 0.0;
  double offset_u = kMargin;
  double offset_v = kMargin;

  std::pair<double, double> operator()(const Point3& p) const {
    const Eigen::Vector3d d = p.vec() - center;
    const double x = offset_u + (d.dot(u) - min_u) * scale;
    const double y = kHeight - (offset_v + (d.dot(v) - min_v) * scale);
    return {x, y};
  }
};

// Orient an eigenvector so its largest-magnitude component is positive.
Eigen::Vector3d canonical_sign(Eigen::Vector3d e) {
  Eigen::Index k = 0;
  e.cwiseAbs().maxCoeff(&k);
  return e(k) < 0 ? Eigen::Vector3d(-e) : e;
}

Projection fit_projection(std::span<const Chain3D> chains) {
  Projection proj;
  std::size_t count = 0;
  for (const auto& c : chains) {
    for (const auto& p : c.vertices()) {
      proj.center += p.vec();
      ++count;
    }
  }
  if (count == 0) return proj;
  proj.center /= static_cast<double>(count);

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& c : chains) {
    for (const auto& p : c.vertices()) {
      const Eigen::Vector3d d = p.vec() - proj.center;
      cov += d * d.transpose();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  // Eigenvalues ascend; the last two columns span the plane of maximal spread.
  proj.u = canonical_sign(eig.eigenvectors().col(2));
  proj.v = canonical_sign(eig.eigenvectors().col(1));

  double max_u = -INFINITY;
  double max_v = -INFINITY;
  proj.min_u = INFINITY;
  proj.min_v = INFINITY;
  for (const auto& c : chains) {
    for (const auto& p : c.vertices()) {
      const Eigen::Vector3d d = p.vec() - proj.center;
      proj.min_u = std::min(proj.min_u, d.dot(proj.u));
      proj.min_v = std::min(proj.min_v, d.dot(proj.v));
      max_u = std::max(max_u, d.dot(proj.u));
      max_v = std::max(max_v, d.dot(proj.v));
    }
  }
  const double span_u = max_u - proj.min_u;
  const double span_v = max_v - proj.min_v;
  const double avail_u = kWidth - 2 * kMargin;
  const double avail_v = kHeight - 2 * kMargin;
  const double ratio = std::max(span_u / avail_u, span_v / avail_v);
  proj.scale = ratio > 0.0 ? 1.0 / ratio : 1.0;
  proj.offset_u = kMargin + (avail_u - span_u * proj.scale) / 2.0;
  proj.offset_v = kMargin + (avail_v - span_v * proj.scale) / 2.0;
  return proj;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void polyline(std::ostringstream& out, const Projection& proj, std::span<const Point3> pts,
              const std::string& attrs) {
  out << "  <polyline " << attrs << " points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto [x, y] = proj(pts[k]);
    out << (k ? " " : "") << fmt(x) << "," << fmt(y);
  }
  out << "\"/>\n";
}

}  // namespace

std::string emit_alignment_svg(const AlignmentResult& result, std::span<const Chain3D> chains) {
  const Projection proj = fit_projection(chains);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "  <title>alignment value " << result.value << "</title>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> drawn;
  for (const auto& step : result.walk.steps) {
    if (step.size() != chains.size()) break;
    for (std::size_t c = 1; c < chains.size(); ++c) {
      if (!drawn.insert({c, step[0], step[c]}).second) continue;
      const auto [x1, y1] = proj(chains[0][step[0] - 1]);
      const auto [x2, y2] = proj(chains[c][step[c] - 1]);
      out << "  <line class=\"match\" data-pair=\"1-" << c + 1 << "\" x1=\"" << fmt(x1) << "\" y1=\""
          << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
          << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    }
  }

  for (std::size_t c = 0; c < chains.size(); ++c) {
    const std::string color = kPalette[c % kPalette.size()];
    polyline(out, proj, chains[c].vertices(),
             "class=\"chain\" data-name=\"" + escape(chains[c].id()) + "\" fill=\"none\" stroke=\"" +
                 color + "\" stroke-width=\"2\"");
    for (const auto& p : chains[c].vertices()) {
      const auto [x, y] = proj(p);
      out << "  <circle class=\"vertex\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
  }
  if (result.common_chain) {
    polyline(out, proj, result.common_chain->vertices(),
             "class=\"common\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace plsa
