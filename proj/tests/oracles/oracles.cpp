#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Geometry>

#include "plsa/error.hpp"
#include "plsa/frechet.hpp"

namespace plsa::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void walk_couplings(const Chain3D& a, const Chain3D& b, std::size_t i, std::size_t j,
                    double cost, double& best) {
  cost = std::max(cost, dist(a[i], b[j]));
  if (i + 1 == a.size() && j + 1 == b.size()) {
    best = std::min(best, cost);
    return;
  }
  if (i + 1 < a.size() && j + 1 < b.size()) walk_couplings(a, b, i + 1, j + 1, cost, best);
  if (i + 1 < a.size()) walk_couplings(a, b, i + 1, j, cost, best);
  if (j + 1 < b.size()) walk_couplings(a, b, i, j + 1, cost, best);
}

double run_cost(const Chain3D& a, std::size_t a0, std::size_t a1, const Chain3D& b, std::size_t b0,
                std::size_t b1) {
  double c = 0.0;
  for (std::size_t i = a0; i < a1; ++i) {
    for (std::size_t j = b0; j < b1; ++j) c = std::max(c, dist(a[i], b[j]));
  }
  return c;
}

void walk_partitions(const Chain3D& a, const Chain3D& b, std::size_t ia, std::size_t ib,
                     double cost, double& best) {
  if (ia == a.size() && ib == b.size()) {
    best = std::min(best, cost);
    return;
  }
  if (ia == a.size() || ib == b.size()) return;  // both m-walks must end together
  // |A_i| = 1, |B_i| = t >= 1
  for (std::size_t t = 1; ib + t <= b.size(); ++t) {
    walk_partitions(a, b, ia + 1, ib + t, std::max(cost, run_cost(a, ia, ia + 1, b, ib, ib + t)), best);
  }
  // |A_i| = s >= 2, |B_i| = 1
  for (std::size_t s = 2; ia + s <= a.size(); ++s) {
    walk_partitions(a, b, ia + s, ib + 1, std::max(cost, run_cost(a, ia, ia + s, b, ib, ib + 1)), best);
  }
}

bool star_ok(std::span<const Chain3D> chains, const std::vector<std::size_t>& idx, double delta) {
  for (std::size_t c = 0; c < chains.size(); ++c) {
    bool all = true;
    for (std::size_t k = 0; k < chains.size(); ++k) {
      if (k != c && dist(chains[c][idx[c]], chains[k][idx[k]]) > delta) all = false;
    }
    if (all) return true;
  }
  return false;
}

// Whether the chosen per-chain vertex lists admit a coupling from all-first
// to all-last where each step moves a non-empty set of chains forward by one.
bool coupling_exists(std::span<const Chain3D> chains,
                     const std::vector<std::vector<std::size_t>>& picks, double delta) {
  const std::size_t m = chains.size();
  std::vector<std::size_t> dims(m), stride(m);
  std::size_t cells = 1;
  for (std::size_t c = m; c-- > 0;) {
    dims[c] = picks[c].size();
    stride[c] = cells;
    cells *= dims[c];
  }
  std::vector<char> reach(cells, 0);
  std::vector<std::size_t> pos(m), idx(m);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    for (std::size_t c = 0; c < m; ++c) {
      pos[c] = (flat / stride[c]) % dims[c];
      idx[c] = picks[c][pos[c]];
    }
    if (!star_ok(chains, idx, delta)) continue;
    if (flat == 0) {
      reach[0] = 1;
      continue;
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << m) && !reach[flat]; ++mask) {
      std::size_t from = flat;
      bool ok = true;
      for (std::size_t c = 0; c < m && ok; ++c) {
        if (mask >> c & 1U) {
          ok = pos[c] > 0;
          from -= stride[c];
        }
      }
      if (ok && reach[from]) reach[flat] = 1;
    }
  }
  return reach[cells - 1] != 0;
}

void dfs_walks(std::span<const Chain3D> chains, double delta, std::vector<std::size_t>& cur,
               std::size_t value, std::size_t& best) {
  best = std::max(best, value);
  const std::size_t m = chains.size();
  // Choose the next index of every chain: stay, or jump to any later vertex.
  std::vector<std::size_t> next(m);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t c, std::size_t moved) {
    if (c == m) {
      if (moved == 0 || !star_ok(chains, next, delta)) return;
      auto saved = cur;
      cur = next;
      dfs_walks(chains, delta, cur, value + moved, best);
      cur = saved;
      return;
    }
    next[c] = cur[c];
    choose(c + 1, moved);
    for (std::size_t k = cur[c] + 1; k < chains[c].size(); ++k) {
      next[c] = k;
      choose(c + 1, moved + 1);
    }
  };
  choose(0, 0);
}

}  // namespace

double brute_force_frechet(const Chain3D& a, const Chain3D& b) {
  if (a.size() + b.size() > 16) throw Error(ErrorCode::TooLarge, "brute force limited to |A|+|B| <= 16");
  double best = kInf;
  walk_couplings(a, b, 0, 0, 0.0, best);
  return best;
}

double segment_partition_frechet(const Chain3D& a, const Chain3D& b) {
  if (a.size() + b.size() > 16) throw Error(ErrorCode::TooLarge, "partition enumeration limited to |A|+|B| <= 16");
  double best = kInf;
  walk_partitions(a, b, 0, 0, 0.0, best);
  return best;
}

std::size_t plsa_oracle(std::span<const Chain3D> chains, double delta) {
  std::size_t total = 0;
  for (const auto& c : chains) total += c.size();
  if (total > 18) throw Error(ErrorCode::TooLarge, "plsa oracle limited to 18 vertices in total");
  const std::size_t m = chains.size();

  std::vector<std::uint32_t> mask(m, 1);
  std::size_t best = 0;
  std::vector<std::vector<std::size_t>> picks(m);
  while (true) {
    std::size_t size = 0;
    for (auto x : mask) size += static_cast<std::size_t>(std::popcount(x));
    if (size > best) {
      for (std::size_t c = 0; c < m; ++c) {
        picks[c].clear();
        for (std::size_t v = 0; v < chains[c].size(); ++v) {
          if (mask[c] >> v & 1U) picks[c].push_back(v);
        }
      }
      if (coupling_exists(chains, picks, delta)) best = size;
    }
    std::size_t c = 0;
    for (; c < m; ++c) {
      if (++mask[c] < (std::uint32_t{1} << chains[c].size())) break;
      mask[c] = 1;
    }
    if (c == m) break;
  }
  return best;
}

std::size_t plsa_walk_enumeration(std::span<const Chain3D> chains, double delta) {
  const std::size_t m = chains.size();
  std::size_t best = 0;
  std::vector<std::size_t> start(m, 0);
  std::function<void(std::size_t)> starts = [&](std::size_t c) {
    if (c == m) {
      if (star_ok(chains, start, delta)) {
        auto cur = start;
        dfs_walks(chains, delta, cur, m, best);
      }
      return;
    }
    for (std::size_t k = 0; k < chains[c].size(); ++k) {
      start[c] = k;
      starts(c + 1);
    }
  };
  starts(0);
  return best;
}

bool subsequence_match_exhaustive(const Chain3D& c, const Chain3D& p, double delta) {
  if (p.size() > 20) throw Error(ErrorCode::TooLarge, "subsequence enumeration limited to 20 vertices");
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << p.size()); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (mask >> v & 1U) idx.push_back(v + 1);
    }
    if (discrete_frechet_value(c, p.restricted(idx)) <= delta) return true;
  }
  return false;
}

std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  std::vector<Edge> slots;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) slots.emplace_back(i, j);
  }
  std::vector<std::size_t> perm(n);
  auto canonical = [&](std::uint32_t bits) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint32_t img = 0;
      for (std::size_t e = 0; e < slots.size(); ++e) {
        if (!(bits >> e & 1U)) continue;
        auto u = perm[slots[e].first - 1] + 1;
        auto v = perm[slots[e].second - 1] + 1;
        if (u > v) std::swap(u, v);
        const auto pos = std::find(slots.begin(), slots.end(), Edge{u, v}) - slots.begin();
        img |= std::uint32_t{1} << pos;
      }
      best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };

  std::set<std::uint32_t> seen;
  std::vector<Graph> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << slots.size()); ++bits) {
    if (!seen.insert(canonical(bits)).second) continue;
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < slots.size(); ++e) {
      if (bits >> e & 1U) edges.push_back(slots[e]);
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

Chain3D random_chain(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point3> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    pts.push_back({x, y, z});
  }
  return Chain3D("random", std::move(pts));
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double edge_probability) {
  std::bernoulli_distribution coin(edge_probability);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

RigidMotion random_motion(std::mt19937_64& rng, double max_translation) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> t(-max_translation, max_translation);
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  const double tx = t(rng);
  const double ty = t(rng);
  const double tz = t(rng);
  return RigidMotion(q.toRotationMatrix(), {tx, ty, tz});
}

}  // namespace plsa::oracle
