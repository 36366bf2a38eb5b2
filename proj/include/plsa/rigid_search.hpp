#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plsa/alignment.hpp"
#include "plsa/geometry.hpp"

namespace plsa {

// Heuristic search over rigid motions of B. Exhaustive enumeration of the
// critical configurations is infeasible beyond a handful of vertices; this
// samples them instead. Results are never worse than the static alignment,
// but they are not guaranteed optimal.

enum class SearchMode { TripleEnumeration, RandomRestarts };

struct SearchConfig {
  SearchMode mode = SearchMode::TripleEnumeration;
  /// Total motions evaluated by plsa_rigid_pair, identity included.
  std::size_t budget = 1'000'000;
  std::uint64_t seed = 0;
  /// Pairwise-distance agreement required of corresponding triples; 2 delta when unset.
  std::optional<double> prune_tolerance;

  double resolved_prune_tolerance(double delta) const;
  /// Throws InvalidConfig unless budget >= 1 and prune_tolerance >= 0.
  void validate() const;
};

/// Candidate motions in deterministic order, at most cfg.budget of them.
/// Triple mode: for index triples i<j<k of A and p<q<r of B (lexicographic,
/// A-major) whose corresponding pairwise distances agree within the prune
/// tolerance, the superposition of B's triple onto A's. Degenerate triples are
/// skipped. Random mode: uniform random rotations, translated so a random B
/// vertex lands on a random A vertex.
std::vector<RigidMotion> enumerate_candidate_motions(const Chain3D& a, const Chain3D& b,
                                                     double delta, const SearchConfig& cfg);

struct RigidAlignment {
  /// Motion applied to B (pair search).
  RigidMotion motion;
  /// Motion applied to each chain; for the pair search {identity, motion}.
  std::vector<RigidMotion> chain_motions;
  /// Alignment of the moved chains.
  AlignmentResult alignment;
  /// 0 for the identity, otherwise 1 + position in the candidate stream.
  std::size_t candidate_index = 0;
  std::size_t evaluated = 0;
};

/// Evaluates the identity and then up to budget - 1 candidates, keeping the
/// first motion with the largest static value against A.
RigidAlignment plsa_rigid_pair(const Chain3D& a, const Chain3D& b, double delta,
                               const SearchConfig& cfg);

/// Multi-chain variant: no joint search, only the identity configuration and
/// caller-supplied configurations (one motion per chain each).
RigidAlignment plsa_rigid_multi(std::span<const Chain3D> chains, double delta,
                                std::span<const std::vector<RigidMotion>> configurations);

}  // namespace plsa
