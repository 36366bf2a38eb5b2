#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plsa/geometry.hpp"

namespace plsa {

/// Tuple of 1-based vertex indices, one per chain.
using IndexTuple = std::vector<std::size_t>;

/// Monotone walk over m chains. Indices address the original chains, so a
/// step may skip vertices (they are left out of the aligned subsequence);
/// relative to the aligned subsequences every chain advances by 0 or 1.
struct JointWalk {
  std::vector<IndexTuple> steps;
  friend bool operator==(const JointWalk&, const JointWalk&) = default;
};

struct AlignmentResult {
  /// Sum over chains of the aligned subsequence lengths.
  std::size_t value = 0;
  /// Per chain, strictly increasing 1-based indices of aligned vertices.
  std::vector<std::vector<std::size_t>> subsequences;
  JointWalk walk;
  /// Common chain C; absent for the empty alignment.
  std::optional<Chain3D> common_chain;
};

struct PlsaInstance {
  std::vector<Chain3D> chains;
  double delta = 0.0;

  /// Throws UnsupportedArity (m < 2) or NegativeDelta.
  void validate() const;
};

/// Largest m accepted by plsa_static_multi.
inline constexpr std::size_t kMaxArity = 4;

/// Reference pair DP: the dog/man recurrences over end pairs (i, j), each
/// cell scanning all earlier rows and columns, O(|A|^2 |B|^2) time.
AlignmentResult plsa_static_pair(const Chain3D& a, const Chain3D& b, double delta);

/// Same contract as plsa_static_pair in O(|A||B|) using running prefix maxima.
AlignmentResult plsa_static_pair_fast(const Chain3D& a, const Chain3D& b, double delta);

/// 2 <= m <= 4 chains; tuples must be star-compatible (see star_center).
AlignmentResult plsa_static_multi(std::span<const Chain3D> chains, double delta);

/// Smallest chain position c whose vertex lies within delta of every other
/// vertex of the tuple, or nullopt. Tuple holds 1-based indices.
std::optional<std::size_t> star_center(std::span<const Chain3D> chains,
                                       std::span<const std::size_t> tuple, double delta);

/// Star centers of each step, consecutive repeats collapsed. Throws
/// IncompatibleWalk if the walk is malformed or a step has no star center.
Chain3D reconstruct_common_chain(const JointWalk& walk, std::span<const Chain3D> chains,
                                 double delta);

/// Fills value, subsequences and common chain from a walk (steps may be empty).
AlignmentResult alignment_from_walk(JointWalk walk, std::span<const Chain3D> chains,
                                    double delta);

/// Every reason `result` fails its invariants under (chains, delta); empty when
/// consistent. Checks d_F(C, chain restricted to S_i) <= delta + 1e-9 for each i.
std::vector<std::string> alignment_violations(const AlignmentResult& result,
                                              std::span<const Chain3D> chains, double delta);

}  // namespace plsa
