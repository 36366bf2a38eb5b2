#include "plsa/frechet.hpp"

#include <algorithm>
#include <limits>

#include "plsa/error.hpp"

namespace plsa {

bool PairedWalk::is_valid_for(std::size_t len_a, std::size_t len_b) const {
  if (steps.empty()) return false;
  if (steps.front() != IndexPair{1, 1} || steps.back() != IndexPair{len_a, len_b}) return false;
  for (std::size_t k = 1; k < steps.size(); ++k) {
    const auto di = steps[k].i - steps[k - 1].i;
    const auto dj = steps[k].j - steps[k - 1].j;
    if (steps[k].i < steps[k - 1].i || steps[k].j < steps[k - 1].j) return false;
    if (di > 1 || dj > 1 || di + dj == 0) return false;
  }
  return true;
}

double walk_cost(const Chain3D& a, const Chain3D& b, const PairedWalk& walk) {
  double cost = 0.0;
  for (const auto& s : walk.steps) cost = std::max(cost, dist(a[s.i - 1], b[s.j - 1]));
  return cost;
}

FrechetResult discrete_frechet(const Chain3D& a, const Chain3D& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // ca(i, j): best achievable max over couplings of A[0..i], B[0..j].
  std::vector<double> ca(n * m);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return ca[i * m + j]; };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = dist(a[i], b[j]);
      if (i == 0 && j == 0) {
        at(i, j) = d;
      } else if (i == 0) {
        at(i, j) = std::max(at(0, j - 1), d);
      } else if (j == 0) {
        at(i, j) = std::max(at(i - 1, 0), d);
      } else {
        at(i, j) = std::max(std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)}), d);
      }
    }
  }

  FrechetResult result;
  result.value = at(n - 1, m - 1);

  std::size_t i = n - 1;
  std::size_t j = m - 1;
  result.walk.steps.push_back({i + 1, j + 1});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double both = at(i - 1, j - 1);
      const double a_moved = at(i - 1, j);
      const double b_moved = at(i, j - 1);
      const double best = std::min({both, a_moved, b_moved});
      if (both == best) {
        --i;
        --j;
      } else if (a_moved == best) {
        --i;
      } else {
        --j;
      }
    }
    result.walk.steps.push_back({i + 1, j + 1});
  }
  std::reverse(result.walk.steps.begin(), result.walk.steps.end());

  double worst = -1.0;
  for (const auto& s : result.walk.steps) {
    const double d = dist(a[s.i - 1], b[s.j - 1]);
    if (d > worst) {
      worst = d;
      result.witness = s;
    }
  }
  return result;
}

double discrete_frechet_value(const Chain3D& a, const Chain3D& b) {
  const std::size_t m = b.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = dist(a[i], b[j]);
      if (i == 0 && j == 0) cur[j] = d;
      else if (i == 0) cur[j] = std::max(cur[j - 1], d);
      else if (j == 0) cur[j] = std::max(prev[0], d);
      else cur[j] = std::max(std::min({prev[j - 1], prev[j], cur[j - 1]}), d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

bool frechet_decision(const Chain3D& a, const Chain3D& b, double delta) {
  require_delta(delta);
  const std::size_t m = b.size();
  // Reachability of (i, j) through pairs all within delta.
  std::vector<char> prev(m, 0), cur(m, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
      bool reach = false;
      if (dist(a[i], b[j]) <= delta) {
        if (i == 0 && j == 0) reach = true;
        else {
          reach = (i > 0 && prev[j]) || (j > 0 && cur[j - 1]) || (i > 0 && j > 0 && prev[j - 1]);
        }
      }
      cur[j] = reach;
      any = any || reach;
    }
    if (!any) return false;
    std::swap(prev, cur);
  }
  return prev[m - 1] != 0;
}

}  // namespace plsa
