#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>

#include "plsa/alignment.hpp"
#include "plsa/error.hpp"
#include "plsa/frechet.hpp"

namespace plsa {

namespace {

constexpr int kInvalid = std::numeric_limits<int>::min() / 4;
constexpr std::size_t kNoPred = std::numeric_limits<std::size_t>::max();

// Best-so-far cell for prefix maxima: higher value wins, ties go to the
// lexicographically smaller (= smaller flat index) cell.
struct Best {
  int value = kInvalid;
  std::size_t cell = kNoPred;

  void offer(int v, std::size_t c) {
    if (v > value || (v == value && c < cell)) {
      value = v;
      cell = c;
    }
  }
};

// Pair-DP outcome: T per cell plus the predecessor used.
struct PairTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> total;
  std::vector<std::size_t> pred;
};

JointWalk trace_pair(const PairTable& t) {
  Best end;
  for (std::size_t c = 0; c < t.total.size(); ++c) {
    if (t.total[c] > 0) end.offer(t.total[c], c);
  }
  JointWalk walk;
  for (std::size_t c = end.cell; c != kNoPred; c = t.pred[c]) {
    walk.steps.push_back({c / t.cols + 1, c % t.cols + 1});
  }
  std::reverse(walk.steps.begin(), walk.steps.end());
  return walk;
}

std::vector<char> pair_compatibility(const Chain3D& a, const Chain3D& b, double delta) {
  std::vector<char> ok(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) ok[i * b.size() + j] = dist(a[i], b[j]) <= delta;
  }
  return ok;
}

AlignmentResult finish_pair(const PairTable& table, const Chain3D& a, const Chain3D& b,
                            double delta) {
  const std::array<Chain3D, 2> chains{a, b};
  return alignment_from_walk(trace_pair(table), chains, delta);
}

}  // namespace

void PlsaInstance::validate() const {
  if (chains.size() < 2) throw Error(ErrorCode::UnsupportedArity, "need at least two chains");
  require_delta(delta);
}

AlignmentResult plsa_static_pair(const Chain3D& a, const Chain3D& b, double delta) {
  require_delta(delta);
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const auto ok = pair_compatibility(a, b, delta);

  // D counts A ("dog") vertices, M counts B ("man") vertices; the table keeps
  // their sum for the walk that maximizes D + M.
  //   dog moves:  T(k1, j) + 1      k1 < i
  //   both move:  T(k1, k2) + 2     k1 < i, k2 < j
  //   dog stays:  T(i, k2) + 1      k2 < j
  // Every walk may also start fresh at a compatible pair with T = 2.
  PairTable t{n1, n2, std::vector<int>(n1 * n2, kInvalid), std::vector<std::size_t>(n1 * n2, kNoPred)};
  auto cell = [n2](std::size_t i, std::size_t j) { return i * n2 + j; };

  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (!ok[cell(i, j)]) continue;
      int best = 2;
      std::size_t pred = kNoPred;
      // Preference among equal values: both move, then lexicographically
      // smallest predecessor (dog-move cells precede dog-stay cells).
      for (std::size_t k1 = 0; k1 < i; ++k1) {
        for (std::size_t k2 = 0; k2 < j; ++k2) {
          const int v = t.total[cell(k1, k2)] + 2;
          if (v > best) {
            best = v;
            pred = cell(k1, k2);
          }
        }
      }
      for (std::size_t k1 = 0; k1 < i; ++k1) {
        const int v = t.total[cell(k1, j)] + 1;
        if (v > best) {
          best = v;
          pred = cell(k1, j);
        }
      }
      for (std::size_t k2 = 0; k2 < j; ++k2) {
        const int v = t.total[cell(i, k2)] + 1;
        if (v > best) {
          best = v;
          pred = cell(i, k2);
        }
      }
      t.total[cell(i, j)] = best;
      t.pred[cell(i, j)] = pred;
    }
  }
  return finish_pair(t, a, b, delta);
}

AlignmentResult plsa_static_pair_fast(const Chain3D& a, const Chain3D& b, double delta) {
  require_delta(delta);
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const auto ok = pair_compatibility(a, b, delta);

  PairTable t{n1, n2, std::vector<int>(n1 * n2, kInvalid), std::vector<std::size_t>(n1 * n2, kNoPred)};
  auto cell = [n2](std::size_t i, std::size_t j) { return i * n2 + j; };

  // column[c]: best over rows <= i at column j; row[c]: best over columns <= j
  // in row i; box[c]: best over the rectangle [0..i] x [0..j].
  std::vector<Best> column(n1 * n2), row(n1 * n2), box(n1 * n2);

  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t c = cell(i, j);
      if (ok[c]) {
        int best = 2;
        std::size_t pred = kNoPred;
        if (i > 0 && j > 0) {
          const Best& b2 = box[cell(i - 1, j - 1)];
          if (b2.value + 2 > best) {
            best = b2.value + 2;
            pred = b2.cell;
          }
        }
        if (i > 0) {
          const Best& b1 = column[cell(i - 1, j)];
          if (b1.value + 1 > best) {
            best = b1.value + 1;
            pred = b1.cell;
          }
        }
        if (j > 0) {
          const Best& b1 = row[cell(i, j - 1)];
          if (b1.value + 1 > best) {
            best = b1.value + 1;
            pred = b1.cell;
          }
        }
        t.total[c] = best;
        t.pred[c] = pred;
      }

      Best col_best, row_best, box_best;
      if (ok[c]) {
        col_best.offer(t.total[c], c);
        row_best.offer(t.total[c], c);
        box_best.offer(t.total[c], c);
      }
      if (i > 0) {
        col_best.offer(column[cell(i - 1, j)].value, column[cell(i - 1, j)].cell);
        box_best.offer(box[cell(i - 1, j)].value, box[cell(i - 1, j)].cell);
      }
      if (j > 0) {
        row_best.offer(row[cell(i, j - 1)].value, row[cell(i, j - 1)].cell);
        box_best.offer(box[cell(i, j - 1)].value, box[cell(i, j - 1)].cell);
      }
      column[c] = col_best;
      row[c] = row_best;
      box[c] = box_best;
    }
  }
  return finish_pair(t, a, b, delta);
}

std::optional<std::size_t> star_center(std::span<const Chain3D> chains,
                                       std::span<const std::size_t> tuple, double delta) {
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const Point3& center = chains[c][tuple[c] - 1];
    bool all = true;
    for (std::size_t k = 0; k < chains.size() && all; ++k) {
      if (k != c) all = dist(center, chains[k][tuple[k] - 1]) <= delta;
    }
    if (all) return c;
  }
  return std::nullopt;
}

AlignmentResult plsa_static_multi(std::span<const Chain3D> chains, double delta) {
  if (chains.size() < 2 || chains.size() > kMaxArity) {
    throw Error(ErrorCode::UnsupportedArity,
                "multi-chain alignment supports 2.." + std::to_string(kMaxArity) + " chains, got " +
                    std::to_string(chains.size()));
  }
  require_delta(delta);
  const std::size_t m = chains.size();

  std::vector<std::size_t> stride(m);
  std::size_t cells = 1;
  for (std::size_t c = m; c-- > 0;) {
    stride[c] = cells;
    cells *= chains[c].size();
  }
  const std::size_t subsets = (std::size_t{1} << m) - 1;
  if (cells * (subsets + 1) > (std::size_t{1} << 28)) {
    throw Error(ErrorCode::TooLarge, "lattice of " + std::to_string(cells) + " cells is too large");
  }

  std::vector<int> total(cells, kInvalid);
  std::vector<std::size_t> pred(cells, kNoPred);
  // prefix[mask - 1][cell]: best over all cells that agree with `cell` outside
  // mask and are componentwise <= inside it.
  std::vector<std::vector<Best>> prefix(subsets, std::vector<Best>(cells));

  IndexTuple tuple(m, 1);
  std::vector<std::size_t> zero_based(m, 0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    for (std::size_t c = 0; c < m; ++c) {
      zero_based[c] = (flat / stride[c]) % chains[c].size();
      tuple[c] = zero_based[c] + 1;
    }

    if (star_center(chains, tuple, delta)) {
      int best = static_cast<int>(m);
      int best_moved = 0;
      std::size_t best_pred = kNoPred;
      for (std::size_t mask = 1; mask <= subsets; ++mask) {
        std::size_t from = flat;
        bool feasible = true;
        for (std::size_t c = 0; c < m && feasible; ++c) {
          if (mask >> c & 1U) {
            feasible = zero_based[c] > 0;
            from -= stride[c];
          }
        }
        if (!feasible) continue;
        const Best& p = prefix[mask - 1][from];
        if (p.value == kInvalid) continue;
        const int moved = std::popcount(mask);
        const int v = p.value + moved;
        if (v > best || (v == best && (moved > best_moved ||
                                       (moved == best_moved && p.cell < best_pred)))) {
          best = v;
          best_moved = moved;
          best_pred = p.cell;
        }
      }
      total[flat] = best;
      pred[flat] = best_pred;
    }

    for (std::size_t mask = 1; mask <= subsets; ++mask) {
      Best b;
      if (total[flat] != kInvalid) b.offer(total[flat], flat);
      for (std::size_t c = 0; c < m; ++c) {
        if ((mask >> c & 1U) && zero_based[c] > 0) {
          const Best& q = prefix[mask - 1][flat - stride[c]];
          if (q.value != kInvalid) b.offer(q.value, q.cell);
        }
      }
      prefix[mask - 1][flat] = b;
    }
  }

  Best end;
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (total[flat] > 0) end.offer(total[flat], flat);
  }
  JointWalk walk;
  for (std::size_t flat = end.cell; flat != kNoPred; flat = pred[flat]) {
    IndexTuple step(m);
    for (std::size_t c = 0; c < m; ++c) step[c] = (flat / stride[c]) % chains[c].size() + 1;
    walk.steps.push_back(std::move(step));
  }
  std::reverse(walk.steps.begin(), walk.steps.end());
  return alignment_from_walk(std::move(walk), chains, delta);
}

namespace {

void check_walk_shape(const JointWalk& walk, std::span<const Chain3D> chains) {
  for (std::size_t s = 0; s < walk.steps.size(); ++s) {
    const auto& step = walk.steps[s];
    if (step.size() != chains.size()) {
      throw Error(ErrorCode::IncompatibleWalk, "step " + std::to_string(s + 1) + " has wrong arity");
    }
    bool advanced = false;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (step[c] < 1 || step[c] > chains[c].size()) {
        throw Error(ErrorCode::IncompatibleWalk, "step " + std::to_string(s + 1) + " index out of range");
      }
      if (s > 0) {
        const auto before = walk.steps[s - 1][c];
        if (step[c] < before) {
          throw Error(ErrorCode::IncompatibleWalk, "step " + std::to_string(s + 1) + " moves backwards");
        }
        advanced = advanced || step[c] > before;
      }
    }
    if (s > 0 && !advanced) {
      throw Error(ErrorCode::IncompatibleWalk, "step " + std::to_string(s + 1) + " does not advance");
    }
  }
}

}  // namespace

Chain3D reconstruct_common_chain(const JointWalk& walk, std::span<const Chain3D> chains,
                                 double delta) {
  require_delta(delta);
  if (walk.steps.empty()) throw Error(ErrorCode::IncompatibleWalk, "empty walk has no common chain");
  check_walk_shape(walk, chains);

  std::vector<Point3> vertices;
  std::size_t last_chain = kNoPred;
  std::size_t last_index = kNoPred;
  for (std::size_t s = 0; s < walk.steps.size(); ++s) {
    const auto center = star_center(chains, walk.steps[s], delta);
    if (!center) {
      throw Error(ErrorCode::IncompatibleWalk,
                  "step " + std::to_string(s + 1) + " has no vertex within delta of all others");
    }
    const std::size_t idx = walk.steps[s][*center];
    if (*center == last_chain && idx == last_index) continue;
    vertices.push_back(chains[*center][idx - 1]);
    last_chain = *center;
    last_index = idx;
  }
  return Chain3D("common", std::move(vertices));
}

AlignmentResult alignment_from_walk(JointWalk walk, std::span<const Chain3D> chains,
                                    double delta) {
  AlignmentResult result;
  result.subsequences.assign(chains.size(), {});
  if (!walk.steps.empty()) {
    result.common_chain = reconstruct_common_chain(walk, chains, delta);
    for (const auto& step : walk.steps) {
      for (std::size_t c = 0; c < chains.size(); ++c) {
        auto& seq = result.subsequences[c];
        if (seq.empty() || seq.back() != step[c]) seq.push_back(step[c]);
      }
    }
  }
  for (const auto& seq : result.subsequences) result.value += seq.size();
  result.walk = std::move(walk);
  return result;
}

std::vector<std::string> alignment_violations(const AlignmentResult& result,
                                              std::span<const Chain3D> chains, double delta) {
  std::vector<std::string> problems;
  if (result.subsequences.size() != chains.size()) {
    problems.push_back("expected one subsequence per chain");
    return problems;
  }
  std::size_t sum = 0;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& seq = result.subsequences[c];
    sum += seq.size();
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (seq[k] < 1 || seq[k] > chains[c].size() || (k > 0 && seq[k] <= seq[k - 1])) {
        problems.push_back("subsequence " + std::to_string(c + 1) + " is not strictly increasing in range");
        break;
      }
    }
  }
  if (sum != result.value) problems.push_back("value does not equal the sum of subsequence lengths");

  if (result.walk.steps.empty()) {
    if (result.value != 0) problems.push_back("non-empty alignment without a walk");
    if (result.common_chain) problems.push_back("empty alignment carries a common chain");
    return problems;
  }
  try {
    check_walk_shape(result.walk, chains);
  } catch (const Error& e) {
    problems.push_back(e.what());
    return problems;
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    std::vector<std::size_t> visited;
    for (const auto& step : result.walk.steps) {
      if (visited.empty() || visited.back() != step[c]) visited.push_back(step[c]);
    }
    if (visited != result.subsequences[c]) {
      problems.push_back("walk does not visit subsequence " + std::to_string(c + 1));
    }
  }
  for (std::size_t s = 0; s < result.walk.steps.size(); ++s) {
    if (!star_center(chains, result.walk.steps[s], delta)) {
      problems.push_back("step " + std::to_string(s + 1) + " is not delta-compatible");
    }
  }
  if (!result.common_chain) {
    problems.push_back("non-empty alignment without a common chain");
    return problems;
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (!problems.empty()) break;
    const Chain3D aligned = chains[c].restricted(result.subsequences[c]);
    const double d = discrete_frechet_value(*result.common_chain, aligned);
    if (d > delta + kTolerance) {
      problems.push_back("common chain is " + std::to_string(d) + " from subsequence " +
                         std::to_string(c + 1));
    }
  }
  return problems;
}

}  // namespace plsa
