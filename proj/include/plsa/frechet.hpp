#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plsa/geometry.hpp"

namespace plsa {

/// 1-based index pair (i into A, j into B).
struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Unit-step coupling from (1,1) to (|A|,|B|). Each step advances i, j or both by one.
struct PairedWalk {
  std::vector<IndexPair> steps;

  bool is_valid_for(std::size_t len_a, std::size_t len_b) const;
};

struct FrechetResult {
  double value = 0.0;
  PairedWalk walk;
  IndexPair witness;
};

/// Discrete Fréchet distance by the O(|A||B|) coupling DP, with the optimal walk.
/// Traceback ties prefer "both move", then "A moves", then "B moves".
FrechetResult discrete_frechet(const Chain3D& a, const Chain3D& b);

/// Distance only; O(min(|A|,|B|)) memory.
double discrete_frechet_value(const Chain3D& a, const Chain3D& b);

/// True iff discrete_frechet(a, b).value <= delta. Throws NegativeDelta.
bool frechet_decision(const Chain3D& a, const Chain3D& b, double delta);

/// Max pair distance along a walk (the walk's cost).
double walk_cost(const Chain3D& a, const Chain3D& b, const PairedWalk& walk);

}  // namespace plsa
