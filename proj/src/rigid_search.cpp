#include "plsa/rigid_search.hpp"

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "plsa/error.hpp"

namespace plsa {

double SearchConfig::resolved_prune_tolerance(double delta) const {
  return prune_tolerance.value_or(2.0 * delta);
}

void SearchConfig::validate() const {
  if (budget < 1) throw Error(ErrorCode::InvalidConfig, "search budget must be at least 1");
  if (prune_tolerance && !(*prune_tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "prune tolerance must be >= 0");
  }
}

namespace {

struct Triple {
  std::array<std::size_t, 3> idx;
  std::array<double, 3> sides;  // d01, d02, d12
};

std::vector<Triple> triples_of(const Chain3D& c) {
  std::vector<Triple> out;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (triangle_area(c[i], c[j], c[k]) <= kTolerance) continue;
        out.push_back({{i, j, k}, {dist(c[i], c[j]), dist(c[i], c[k]), dist(c[j], c[k])}});
      }
    }
  }
  return out;
}

void triple_candidates(const Chain3D& a, const Chain3D& b, double tol, std::size_t budget,
                       std::vector<RigidMotion>& out) {
  const auto ta = triples_of(a);
  const auto tb = triples_of(b);
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      if (out.size() >= budget) return;
      bool close = true;
      for (std::size_t s = 0; s < 3 && close; ++s) close = std::abs(x.sides[s] - y.sides[s]) <= tol;
      if (!close) continue;
      const std::array<Point3, 3> src{b[y.idx[0]], b[y.idx[1]], b[y.idx[2]]};
      const std::array<Point3, 3> dst{a[x.idx[0]], a[x.idx[1]], a[x.idx[2]]};
      try {
        out.push_back(motion_from_triples(src, dst, tol));
      } catch (const Error&) {
        // near-threshold distance rounding; treat as pruned
      }
    }
  }
}

void random_candidates(const Chain3D& a, const Chain3D& b, std::uint64_t seed,
                       std::size_t budget, std::vector<RigidMotion>& out) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_a(0, a.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_b(0, b.size() - 1);
  while (out.size() < budget) {
    // A normalized 4D Gaussian is a uniform unit quaternion (Haar measure on SO(3)).
    Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    if (q.norm() < 1e-12) continue;
    q.normalize();
    const Eigen::Matrix3d r = q.toRotationMatrix();
    const Eigen::Vector3d anchor_a = a[pick_a(rng)].vec();
    const Eigen::Vector3d anchor_b = b[pick_b(rng)].vec();
    out.emplace_back(r, anchor_a - r * anchor_b);
  }
}

}  // namespace

std::vector<RigidMotion> enumerate_candidate_motions(const Chain3D& a, const Chain3D& b,
                                                     double delta, const SearchConfig& cfg) {
  require_delta(delta);
  cfg.validate();
  std::vector<RigidMotion> out;
  if (cfg.mode == SearchMode::TripleEnumeration) {
    triple_candidates(a, b, cfg.resolved_prune_tolerance(delta), cfg.budget, out);
  } else {
    random_candidates(a, b, cfg.seed, cfg.budget, out);
  }
  return out;
}

RigidAlignment plsa_rigid_pair(const Chain3D& a, const Chain3D& b, double delta,
                               const SearchConfig& cfg) {
  require_delta(delta);
  cfg.validate();

  RigidAlignment best{RigidMotion::identity(), {}, plsa_static_pair_fast(a, b, delta), 0, 1};
  best.chain_motions = {RigidMotion::identity(), RigidMotion::identity()};
  if (cfg.budget == 1) return best;

  SearchConfig rest = cfg;
  rest.budget = cfg.budget - 1;
  const auto candidates = enumerate_candidate_motions(a, b, delta, rest);
  const std::size_t ceiling = a.size() + b.size();
  for (std::size_t k = 0; k < candidates.size() && best.alignment.value < ceiling; ++k) {
    auto alignment = plsa_static_pair_fast(a, apply_motion(candidates[k], b), delta);
    ++best.evaluated;
    if (alignment.value > best.alignment.value) {
      best.motion = candidates[k];
      best.chain_motions[1] = candidates[k];
      best.alignment = std::move(alignment);
      best.candidate_index = k + 1;
    }
  }
  return best;
}

RigidAlignment plsa_rigid_multi(std::span<const Chain3D> chains, double delta,
                                std::span<const std::vector<RigidMotion>> configurations) {
  RigidAlignment best{RigidMotion::identity(), {}, plsa_static_multi(chains, delta), 0, 1};
  best.chain_motions.assign(chains.size(), RigidMotion::identity());
  for (std::size_t k = 0; k < configurations.size(); ++k) {
    const auto& motions = configurations[k];
    if (motions.size() != chains.size()) {
      throw Error(ErrorCode::UnsupportedArity, "configuration needs one motion per chain");
    }
    std::vector<Chain3D> moved;
    for (std::size_t c = 0; c < chains.size(); ++c) moved.push_back(apply_motion(motions[c], chains[c]));
    auto alignment = plsa_static_multi(moved, delta);
    ++best.evaluated;
    if (alignment.value > best.alignment.value) {
      best.chain_motions = motions;
      best.alignment = std::move(alignment);
      best.candidate_index = k + 1;
    }
  }
  return best;
}

}  // namespace plsa
