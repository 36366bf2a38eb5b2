#include "plsa/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "plsa/error.hpp"
#include "plsa/frechet.hpp"
#include "text_util.hpp"

namespace plsa {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ == 0) throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
  adjacency_.assign(n_ + 1, std::vector<char>(n_ + 1, 0));
  for (auto& [i, j] : edges_) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n_) {
      throw Error(ErrorCode::InvalidGraph, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") out of range 1.." + std::to_string(n_));
    }
    if (i == j) throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(i));
    if (adjacency_[i][j]) {
      throw Error(ErrorCode::InvalidGraph,
                  "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    adjacency_[i][j] = adjacency_[j][i] = 1;
  }
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  return u <= n_ && v <= n_ && adjacency_[u][v];
}

Graph parse_graph(std::string_view text) {
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(detail::strip_comment(line));
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw LineError(ErrorCode::ParseError, line_no, "expected two integers, got " +
                                                          std::to_string(fields.size()) + " fields");
    }
    std::size_t a = 0;
    std::size_t b = 0;
    if (!detail::parse_uint(fields[0], a) || !detail::parse_uint(fields[1], b)) {
      throw LineError(ErrorCode::ParseError, line_no, "not a non-negative integer");
    }
    if (!have_header) {
      n = a;
      m = b;
      have_header = true;
    } else {
      if (edges.size() == m) throw LineError(ErrorCode::ParseError, line_no, "more edges than declared");
      edges.emplace_back(a, b);
    }
  }
  if (!have_header) throw LineError(ErrorCode::ParseError, line_no, "missing 'N M' header");
  if (edges.size() != m) {
    throw LineError(ErrorCode::ParseError, line_no,
                    "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n_vertices() << ' ' << g.edges().size() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

ReductionInstance build_reduction(const Graph& g, double delta) {
  if (!(delta > 0.0 && delta < 0.1)) {
    throw Error(ErrorCode::BadDelta, "reduction delta must lie in (0, 0.1), got " + std::to_string(delta));
  }
  const std::size_t n = g.n_vertices();
  auto prime = [](std::size_t p) {
    const double x = static_cast<double>(p);
    return Point3{x, x * x, 0.0};
  };
  auto double_prime = [delta](std::size_t p) {
    const double x = static_cast<double>(p);
    return Point3{x, x * x, delta};
  };

  ReductionInstance inst{g, delta, {}, {}};
  inst.chains.reserve(g.edges().size() + 1);

  std::vector<Point3> base;
  std::vector<VertexLabel> base_labels;
  for (std::size_t p = 1; p <= n; ++p) {
    base.push_back(prime(p));
    base_labels.push_back({p, Layer::Prime});
  }
  inst.chains.emplace_back("P_0", std::move(base));
  inst.labels.push_back(std::move(base_labels));

  for (std::size_t r = 0; r < g.edges().size(); ++r) {
    const auto [i, j] = g.edges()[r];
    std::vector<Point3> pts;
    std::vector<VertexLabel> labels;
    for (std::size_t p = 1; p <= n; ++p) {
      if (p == i) continue;
      pts.push_back(prime(p));
      labels.push_back({p, Layer::Prime});
    }
    for (std::size_t q = 1; q <= n; ++q) {
      if (q == j) continue;
      pts.push_back(double_prime(q));
      labels.push_back({q, Layer::DoublePrime});
    }
    inst.chains.emplace_back("P_" + std::to_string(r + 1), std::move(pts));
    inst.labels.push_back(std::move(labels));
  }
  return inst;
}

bool PropertyReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

const PropertyCheck& PropertyReport::get(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvariantFailure, "no property named " + std::string(name));
}

double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1) {
  // Closest points of two segments, clamping the line-line solution.
  const Eigen::Vector3d d1 = p1.vec() - p0.vec();
  const Eigen::Vector3d d2 = q1.vec() - q0.vec();
  const Eigen::Vector3d r = p0.vec() - q0.vec();
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  constexpr double kEps = 1e-300;
  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) return r.norm();
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0.vec() + d1 * s) - (q0.vec() + d2 * t)).norm();
}

bool chain_is_simple(const Chain3D& c, double tol, std::string* witness) {
  const std::size_t segments = c.size() < 2 ? 0 : c.size() - 1;
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t u = s + 2; u < segments; ++u) {
      const double d = segment_distance(c[s], c[s + 1], c[u], c[u + 1]);
      if (d <= tol) {
        if (witness) {
          *witness = c.id() + " segments " + std::to_string(s + 1) + " and " + std::to_string(u + 1);
        }
        return false;
      }
    }
  }
  return true;
}

namespace {

std::string describe(const ReductionInstance& inst, std::size_t chain, std::size_t pos) {
  const auto& l = inst.labels[chain][pos];
  return inst.chains[chain].id() + "[" + std::to_string(pos + 1) + "]=v" +
         (l.layer == Layer::Prime ? "'" : "''") + std::to_string(l.vertex);
}

void check_layers(const ReductionInstance& inst, std::size_t r, std::size_t s,
                  PropertyCheck& a, PropertyCheck& b) {
  const auto& cr = inst.chains[r];
  const auto& cs = inst.chains[s];
  for (std::size_t x = 0; x < cr.size(); ++x) {
    const auto& lx = inst.labels[r][x];
    for (std::size_t y = 0; y < cs.size(); ++y) {
      const auto& ly = inst.labels[s][y];
      if (lx.layer == ly.layer) continue;
      const double d = dist(cr[x], cs[y]);
      if (lx.vertex != ly.vertex) {
        if (d < a.measured) {
          a.measured = d;
          a.witness = describe(inst, r, x) + " vs " + describe(inst, s, y);
        }
      } else if (d > b.measured) {
        b.measured = d;
        b.witness = describe(inst, r, x) + " vs " + describe(inst, s, y);
      }
    }
  }
}

struct LabeledDistance {
  double d;
  std::size_t u;
  std::size_t v;
};

void check_distance_gap(const ReductionInstance& inst, std::size_t r, PropertyCheck& c) {
  const auto& chain = inst.chains[r];
  const auto& labels = inst.labels[r];
  std::vector<LabeledDistance> pairs;
  for (std::size_t u = 0; u < chain.size(); ++u) {
    for (std::size_t v = u + 1; v < chain.size(); ++v) {
      if (labels[u].vertex != labels[v].vertex) pairs.push_back({dist(chain[u], chain[v]), u, v});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.d < y.d; });
  // For a fixed pair the closest disjoint partner above it in sorted order is
  // the first one found scanning upward.
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::size_t lu = labels[pairs[k].u].vertex;
    const std::size_t lv = labels[pairs[k].v].vertex;
    for (std::size_t l = k + 1; l < pairs.size(); ++l) {
      if (pairs[l].d - pairs[k].d >= c.measured) break;
      const std::size_t mu = labels[pairs[l].u].vertex;
      const std::size_t mv = labels[pairs[l].v].vertex;
      if (mu == lu || mu == lv || mv == lu || mv == lv) continue;
      c.measured = pairs[l].d - pairs[k].d;
      c.witness = "|d(" + describe(inst, r, pairs[k].u) + ", " + describe(inst, r, pairs[k].v) +
                  ") - d(" + describe(inst, r, pairs[l].u) + ", " + describe(inst, r, pairs[l].v) + ")|";
      break;
    }
  }
}

}  // namespace

PropertyReport check_reduction_properties(const ReductionInstance& inst) {
  const double inf = std::numeric_limits<double>::infinity();
  PropertyCheck a{"a", true, inf, 3.0, {}};
  PropertyCheck b{"b", true, 0.0, inst.delta, {}};
  PropertyCheck c{"c", true, inf, 10.0 * inst.delta, {}};
  PropertyCheck simple{"simplicity", true, 0.0, kTolerance, {}};

  for (std::size_t r = 0; r < inst.chains.size(); ++r) {
    check_layers(inst, r, r, a, b);
    if (r > 0) check_layers(inst, 0, r, a, b);
    check_distance_gap(inst, r, c);
    std::string w;
    if (!chain_is_simple(inst.chains[r], kTolerance, &w) && simple.holds) {
      simple.holds = false;
      simple.witness = w;
    }
  }
  a.holds = a.measured > a.threshold;
  b.holds = b.measured <= b.threshold;
  c.holds = c.measured > c.threshold;
  return PropertyReport{{a, b, c, simple}};
}

PropertyReport verify_reduction_properties(const ReductionInstance& inst) {
  auto report = check_reduction_properties(inst);
  for (const auto& c : report.checks) {
    if (!c.holds) {
      throw Error(ErrorCode::PropertyViolation,
                  "property (" + c.name + ") fails: measured " + std::to_string(c.measured) +
                      " vs threshold " + std::to_string(c.threshold) + " at " + c.witness);
    }
  }
  return report;
}

namespace {

// Lexicographically first independent set of exactly `need` vertices drawn
// from [next, N], extending `chosen`.
bool first_independent_set(const Graph& g, std::size_t next, std::size_t need,
                           std::vector<std::size_t>& chosen) {
  if (need == 0) return true;
  const std::size_t n = g.n_vertices();
  for (std::size_t v = next; v + need - 1 <= n; ++v) {
    const bool free = std::none_of(chosen.begin(), chosen.end(),
                                   [&](std::size_t u) { return g.adjacent(u, v); });
    if (!free) continue;
    chosen.push_back(v);
    if (first_independent_set(g, v + 1, need - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

IndependentSet max_independent_set_bruteforce(const Graph& g) {
  if (g.n_vertices() > kMaxBruteForceVertices) {
    throw Error(ErrorCode::TooLarge, "brute-force MIS limited to N <= 20");
  }
  for (std::size_t k = g.n_vertices(); k >= 1; --k) {
    std::vector<std::size_t> chosen;
    if (first_independent_set(g, 1, k, chosen)) return {k, chosen};
  }
  return {};
}

bool subsequence_match_decision(const Chain3D& c, const Chain3D& p, double delta) {
  require_delta(delta);
  // reach[b]: C[0..a] coupled with a subsequence of P whose last vertex is P[b].
  std::vector<char> prev(p.size(), 0), cur(p.size(), 0);
  for (std::size_t a = 0; a < c.size(); ++a) {
    bool prev_before = false;  // some prev[b'] with b' < b
    bool cur_before = false;   // some cur[b'] with b' < b
    bool any = false;
    for (std::size_t b = 0; b < p.size(); ++b) {
      bool r = false;
      if (dist(c[a], p[b]) <= delta) {
        r = a == 0 || prev_before || prev[b] || cur_before;
      }
      prev_before = prev_before || (a > 0 && prev[b]);
      cur_before = cur_before || r;
      cur[b] = r;
      any = any || r;
    }
    if (!any) return false;
    std::swap(prev, cur);
  }
  return true;
}

namespace {

// The proof's greedy scan: successive vertices whose x coordinate equals the
// next chosen graph vertex. Empty result when the scan runs off the chain.
std::vector<std::size_t> greedy_label_scan(const Chain3D& chain,
                                           const std::vector<std::size_t>& vertices) {
  std::vector<std::size_t> positions;
  std::size_t pos = 0;
  for (std::size_t v : vertices) {
    const double x = static_cast<double>(v);
    while (pos < chain.size() && chain[pos].x != x) ++pos;
    if (pos == chain.size()) return {};
    positions.push_back(++pos);
  }
  return positions;
}

bool advance_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  for (std::size_t t = k; t-- > 0;) {
    if (combo[t] < n - (k - 1 - t)) {
      ++combo[t];
      for (std::size_t u = t + 1; u < k; ++u) combo[u] = combo[u - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ReductionSolution solve_reduction_bruteforce(const ReductionInstance& inst) {
  const std::size_t n = inst.graph.n_vertices();
  if (n > kMaxBruteForceVertices) {
    throw Error(ErrorCode::TooLarge, "brute-force reduction solving limited to N <= 20");
  }
  const Chain3D& base = inst.chains.front();

  for (std::size_t k = n; k >= 1; --k) {
    std::vector<std::size_t> combo(k);
    for (std::size_t t = 0; t < k; ++t) combo[t] = t + 1;
    do {
      std::vector<Point3> pts;
      for (std::size_t v : combo) pts.push_back(base[v - 1]);
      Chain3D candidate("C", std::move(pts));

      std::vector<std::vector<std::size_t>> matches;
      bool accepted = true;
      for (const auto& chain : inst.chains) {
        auto greedy = greedy_label_scan(chain, combo);
        const bool by_scan = !greedy.empty();
        const bool by_dp = subsequence_match_decision(candidate, chain, inst.delta);
        if (by_scan != by_dp) {
          throw Error(ErrorCode::InvariantFailure,
                      "greedy scan and subsequence DP disagree on " + chain.id());
        }
        if (!by_scan) {
          accepted = false;
          break;
        }
        matches.push_back(std::move(greedy));
      }
      if (accepted) return {k, combo, std::move(candidate), std::move(matches)};
    } while (advance_combination(combo, n));
  }
  throw Error(ErrorCode::InvariantFailure, "no single-vertex chain matched every P_r");
}

AlignmentResult alignment_from_solution(const ReductionInstance& inst,
                                        const ReductionSolution& sol) {
  JointWalk walk;
  for (std::size_t t = 0; t < sol.k; ++t) {
    IndexTuple step;
    for (const auto& m : sol.matches) step.push_back(m[t]);
    walk.steps.push_back(std::move(step));
  }
  return alignment_from_walk(std::move(walk), inst.chains, inst.delta);
}

}  // namespace plsa
