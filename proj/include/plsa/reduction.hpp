#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plsa/alignment.hpp"
#include "plsa/geometry.hpp"

namespace plsa {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 1..N. Edges are stored with i < j in
/// the order given; that order numbers the reduction chains P_1..P_M.
class Graph {
 public:
  /// Normalizes each edge to i < j. Throws InvalidGraph on self-loops,
  /// duplicates or out-of-range endpoints, EmptyGraph when n == 0.
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<char>> adjacency_;
};

/// "N M" header then M lines "i j"; '#' starts a comment.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

enum class Layer { Prime, DoublePrime };

struct VertexLabel {
  std::size_t vertex = 0;  // graph vertex p, also the x coordinate
  Layer layer = Layer::Prime;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

inline constexpr double kDefaultReductionDelta = 0.05;

struct ReductionInstance {
  Graph graph;
  double delta;
  /// P_0 first, then one chain per edge in edge order.
  std::vector<Chain3D> chains;
  std::vector<std::vector<VertexLabel>> labels;
};

/// v'_p = (p, p^2, 0), v''_p = (p, p^2, delta). P_0 = v'_1..v'_N; the chain of
/// edge (i, j) is every v'_p with p != i followed by every v''_q with q != j.
/// Throws BadDelta unless 0 < delta < 0.1.
ReductionInstance build_reduction(const Graph& g, double delta = kDefaultReductionDelta);

struct PropertyCheck {
  std::string name;
  bool holds = true;
  /// Extreme value found (min distance, max distance, min gap, ...).
  double measured = 0.0;
  double threshold = 0.0;
  std::string witness;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool all_hold() const;
  const PropertyCheck& get(std::string_view name) const;
};

/// Evaluates the construction's geometric properties without throwing:
///  "a"          d(v'_p, v''_q) > 3 for p != q
///  "b"          d(v'_p, v''_p) <= delta
///  "c"          min |d(u_p,u_q) - d(u_p',u_q')| over four distinct labels > 10 delta
///  "simplicity" no two non-adjacent segments of a chain within 1e-9
PropertyReport check_reduction_properties(const ReductionInstance& inst);

/// As above, but throws PropertyViolation naming the first failing property.
PropertyReport verify_reduction_properties(const ReductionInstance& inst);

/// True when some pair of non-adjacent segments comes within `tol`.
bool chain_is_simple(const Chain3D& c, double tol = kTolerance, std::string* witness = nullptr);

/// Closest distance between segments [p0,p1] and [q0,q1].
double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1);

inline constexpr std::size_t kMaxBruteForceVertices = 20;

struct IndependentSet {
  std::size_t k = 0;
  /// Lexicographically smallest maximum independent set, 1-based, sorted.
  std::vector<std::size_t> witness;
};

/// Exact maximum independent set; throws TooLarge for N > 20.
IndependentSet max_independent_set_bruteforce(const Graph& g);

/// True iff some subsequence S of p has d_F(c, S) <= delta.
bool subsequence_match_decision(const Chain3D& c, const Chain3D& p, double delta);

struct ReductionSolution {
  std::size_t k = 0;
  /// Graph vertices i_1 < ... < i_k used by C.
  std::vector<std::size_t> vertices;
  Chain3D common_chain;
  /// Per chain P_r, 1-based positions of the matched subsequence S_r.
  std::vector<std::vector<std::size_t>> matches;
};

/// Largest C = <v'_{i_1}, ..., v'_{i_k}> matching a subsequence of every chain,
/// found by enumerating vertex subsets by decreasing size (lexicographic within
/// a size). Membership is decided both by the greedy label scan and by
/// subsequence_match_decision; disagreement throws InvariantFailure.
ReductionSolution solve_reduction_bruteforce(const ReductionInstance& inst);

/// The solution as a joint alignment over P_0..P_M.
AlignmentResult alignment_from_solution(const ReductionInstance& inst,
                                        const ReductionSolution& sol);

}  // namespace plsa
