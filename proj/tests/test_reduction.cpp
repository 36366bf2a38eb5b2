#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles/oracles.hpp"
#include "plsa/error.hpp"
#include "plsa/frechet.hpp"
#include "plsa/reduction.hpp"

using namespace plsa;

namespace {

constexpr Layer P = Layer::Prime;
constexpr Layer PP = Layer::DoublePrime;

Graph five_vertex_graph() {
  return Graph(5, {{2, 3}, {2, 4}, {1, 2}, {1, 4}, {3, 4}, {4, 5}});
}

std::vector<VertexLabel> labels(std::initializer_list<std::size_t> primes,
                                std::initializer_list<std::size_t> double_primes) {
  std::vector<VertexLabel> out;
  for (auto p : primes) out.push_back({p, P});
  for (auto q : double_primes) out.push_back({q, PP});
  return out;
}

Chain3D with_vertex(const Chain3D& c, std::size_t pos, Point3 p) {
  std::vector<Point3> v(c.vertices().begin(), c.vertices().end());
  v[pos] = p;
  return Chain3D(c.id(), std::move(v));
}

std::size_t mis_by_bitmask(const Graph& g) {
  const std::size_t n = g.n_vertices();
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    bool ok = true;
    for (auto [i, j] : g.edges()) ok = ok && !((s >> (i - 1) & 1U) && (s >> (j - 1) & 1U));
    if (ok) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return best;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(0, {}), Error);
  for (const auto& edges : std::vector<std::vector<Edge>>{{{1, 1}}, {{1, 2}, {2, 1}}, {{1, 4}}}) {
    try {
      Graph(3, edges);
      FAIL("expected InvalidGraph");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidGraph);
    }
  }
  const Graph g(3, {{3, 1}});
  CHECK(g.edges()[0] == Edge{1, 3});
  CHECK(g.adjacent(3, 1));
  CHECK_FALSE(g.adjacent(2, 1));
}

TEST_CASE("graph text format") {
  const auto g = parse_graph("# figure\n5 2\n2 3 # first\n\n1 2\n");
  CHECK(g.n_vertices() == 5);
  CHECK(g.edges() == std::vector<Edge>{{2, 3}, {1, 2}});
  CHECK(format_graph(g) == "5 2\n2 3\n1 2\n");
  CHECK(parse_graph(format_graph(five_vertex_graph())).edges() == five_vertex_graph().edges());

  try {
    parse_graph("3 1\n1 2 3\n");
    FAIL("expected ParseError");
  } catch (const LineError& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_graph("3 2\n1 2\n"), LineError);
  CHECK_THROWS_AS(parse_graph("3 1\n1 x\n"), LineError);
  CHECK_THROWS_AS(parse_graph(""), LineError);
}

TEST_CASE("build_reduction reproduces the five-vertex example listing") {
  const auto inst = build_reduction(five_vertex_graph(), 0.05);
  REQUIRE(inst.chains.size() == 7);
  CHECK(inst.labels[0] == labels({1, 2, 3, 4, 5}, {}));
  CHECK(inst.labels[1] == labels({1, 3, 4, 5}, {1, 2, 4, 5}));
  CHECK(inst.labels[2] == labels({1, 3, 4, 5}, {1, 2, 3, 5}));
  CHECK(inst.labels[3] == labels({2, 3, 4, 5}, {1, 3, 4, 5}));
  CHECK(inst.labels[4] == labels({2, 3, 4, 5}, {1, 2, 3, 5}));
  CHECK(inst.labels[5] == labels({1, 2, 4, 5}, {1, 2, 3, 5}));
  CHECK(inst.labels[6] == labels({1, 2, 3, 5}, {1, 2, 3, 4}));
  for (std::size_t r = 0; r < inst.chains.size(); ++r) {
    for (std::size_t k = 0; k < inst.chains[r].size(); ++k) {
      const auto& l = inst.labels[r][k];
      const double x = static_cast<double>(l.vertex);
      CHECK(inst.chains[r][k] == Point3{x, x * x, l.layer == P ? 0.0 : 0.05});
    }
  }
}

TEST_CASE("build_reduction small graphs") {
  SUBCASE("single vertex") {
    const auto inst = build_reduction(Graph(1, {}));
    REQUIRE(inst.chains.size() == 1);
    CHECK(inst.chains[0] == Chain3D("P_0", {{1, 1, 0}}));
  }
  SUBCASE("triangle") {
    const auto inst = build_reduction(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), 0.05);
    REQUIRE(inst.chains.size() == 4);
    CHECK(inst.chains[0] == Chain3D("P_0", {{1, 1, 0}, {2, 4, 0}, {3, 9, 0}}));
    CHECK(inst.chains[1] == Chain3D("P_1", {{2, 4, 0}, {3, 9, 0}, {1, 1, 0.05}, {3, 9, 0.05}}));
    CHECK(inst.chains[2] == Chain3D("P_2", {{2, 4, 0}, {3, 9, 0}, {1, 1, 0.05}, {2, 4, 0.05}}));
    CHECK(inst.chains[3] == Chain3D("P_3", {{1, 1, 0}, {3, 9, 0}, {1, 1, 0.05}, {2, 4, 0.05}}));
  }
  SUBCASE("sizes") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = oracle::random_graph(rng, 2 + trial % 10);
      const auto inst = build_reduction(g);
      CHECK(inst.chains.size() == g.edges().size() + 1);
      CHECK(inst.chains[0].size() == g.n_vertices());
      for (std::size_t r = 1; r < inst.chains.size(); ++r) CHECK(inst.chains[r].size() == 2 * g.n_vertices() - 2);
    }
  }
  SUBCASE("delta bounds") {
    for (double d : {0.0, 0.1, -0.01, 0.5}) {
      try {
        build_reduction(Graph(2, {{1, 2}}), d);
        FAIL("expected BadDelta");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadDelta);
      }
    }
  }
}

TEST_CASE("reduction properties") {
  SUBCASE("five-vertex example passes all checks") {
    const auto report = verify_reduction_properties(build_reduction(five_vertex_graph()));
    CHECK(report.all_hold());
    CHECK(report.get("a").measured >= std::sqrt(10.0) - 1e-9);
    CHECK(report.get("b").measured == 0.05);
  }
  SUBCASE("a, b and simplicity hold up to N = 20") {
    std::mt19937_64 rng(32);
    for (std::size_t n = 1; n <= 20; ++n) {
      const auto inst = build_reduction(oracle::random_graph(rng, n, 0.4));
      const auto report = check_reduction_properties(inst);
      CHECK(report.get("a").holds);
      CHECK(report.get("b").holds);
      CHECK(report.get("simplicity").holds);
      if (!inst.graph.edges().empty()) CHECK(report.get("b").measured == 0.05);
    }
  }
  SUBCASE("the distance gap shrinks with N") {
    // Closest pair of distances among four distinct labels, from an
    // independent scan over all point pairs: 0.0685229... at N = 20. It lies
    // above delta = 0.05 but below 10 delta.
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= 20; ++i) {
      for (std::size_t j = i + 1; j <= 20; ++j) edges.emplace_back(i, j);
    }
    const auto inst = build_reduction(Graph(20, edges), 0.05);
    const auto report = check_reduction_properties(inst);
    const auto& c = report.get("c");
    CHECK(c.measured == doctest::Approx(0.06852290469595346).epsilon(1e-12));
    CHECK(c.measured > inst.delta);
    CHECK_FALSE(c.holds);
    try {
      verify_reduction_properties(inst);
      FAIL("expected PropertyViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PropertyViolation);
      CHECK(std::string(e.what()).find("property (c)") != std::string::npos);
    }
    CHECK(check_reduction_properties(build_reduction(Graph(20, edges), 0.005)).get("c").holds);
  }
  SUBCASE("corrupted layers are caught with a witness") {
    auto inst = build_reduction(five_vertex_graph());
    // P_3 position 5 is v''_1; move it onto v'_2
    inst.chains[3] = with_vertex(inst.chains[3], 4, {2, 4, 0});
    const auto report = check_reduction_properties(inst);
    CHECK_FALSE(report.get("a").holds);
    CHECK(report.get("a").witness.find("P_3[5]") != std::string::npos);

    auto lifted = build_reduction(five_vertex_graph());
    lifted.chains[1] = with_vertex(lifted.chains[1], 5, {2, 4, 0.09});
    const auto r2 = check_reduction_properties(lifted);
    CHECK_FALSE(r2.get("b").holds);
    CHECK(r2.get("b").witness.find("P_1[6]") != std::string::npos);
    CHECK_THROWS_AS(verify_reduction_properties(lifted), Error);
  }
}

TEST_CASE("segment distance and simplicity") {
  CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}) == doctest::Approx(1.0));
  CHECK(segment_distance({0, 0, 0}, {2, 0, 0}, {1, -1, 0}, {1, 1, 0}) == doctest::Approx(0.0));
  CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {3, 0, 0}, {4, 0, 0}) == doctest::Approx(2.0));
  CHECK(segment_distance({0, 0, 0}, {0, 0, 0}, {0, 0, 1}, {0, 0, 1}) == doctest::Approx(1.0));
  const Chain3D bow("bow", {{0, 0, 0}, {2, 2, 0}, {2, 0, 0}, {0, 2, 0}});
  std::string witness;
  CHECK_FALSE(chain_is_simple(bow, kTolerance, &witness));
  CHECK(witness == "bow segments 1 and 3");
  CHECK(chain_is_simple(Chain3D("z", {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 1}})));
}

TEST_CASE("max_independent_set_bruteforce") {
  CHECK(max_independent_set_bruteforce(Graph(7, {})).k == 7);
  std::vector<Edge> complete;
  for (std::size_t i = 1; i <= 6; ++i) {
    for (std::size_t j = i + 1; j <= 6; ++j) complete.emplace_back(i, j);
  }
  const auto k6 = max_independent_set_bruteforce(Graph(6, complete));
  CHECK(k6.k == 1);
  CHECK(k6.witness == std::vector<std::size_t>{1});

  const auto fig = max_independent_set_bruteforce(five_vertex_graph());
  CHECK(fig.k == 3);
  CHECK(fig.witness == std::vector<std::size_t>{1, 3, 5});

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 12);
    const auto s = max_independent_set_bruteforce(g);
    CHECK(s.k == mis_by_bitmask(g));
    CHECK(s.witness.size() == s.k);
    for (auto u : s.witness) {
      for (auto v : s.witness) CHECK_FALSE(g.adjacent(u, v));
    }
  }
  CHECK_THROWS_AS(max_independent_set_bruteforce(Graph(21, {})), Error);
}

TEST_CASE("subsequence_match_decision") {
  std::mt19937_64 rng(34);
  const auto p = oracle::random_chain(rng, 8);
  CHECK(subsequence_match_decision(p, p, 0.0));
  const Chain3D far("far", {{100, 100, 100}});
  CHECK_FALSE(subsequence_match_decision(far, p, 1.0));
  CHECK_THROWS_AS(subsequence_match_decision(p, p, -1.0), Error);

  std::uniform_int_distribution<std::size_t> clen(1, 4);
  std::uniform_int_distribution<std::size_t> plen(1, 12);
  std::uniform_real_distribution<double> delta(0.3, 2.0);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = oracle::random_chain(rng, clen(rng), 0.0, 3.0);
    const auto q = oracle::random_chain(rng, plen(rng), 0.0, 3.0);
    const double d = delta(rng);
    CHECK(subsequence_match_decision(c, q, d) == oracle::subsequence_match_exhaustive(c, q, d));
  }
}

TEST_CASE("solve_reduction_bruteforce") {
  SUBCASE("five-vertex example optimum") {
    const auto inst = build_reduction(five_vertex_graph(), 0.05);
    const auto sol = solve_reduction_bruteforce(inst);
    CHECK(sol.k == 3);
    CHECK(sol.vertices == std::vector<std::size_t>{1, 3, 5});
    CHECK(sol.common_chain.size() == 3);
    CHECK(sol.common_chain[0] == Point3{1, 1, 0});
    CHECK(sol.common_chain[1] == Point3{3, 9, 0});
    CHECK(sol.common_chain[2] == Point3{5, 25, 0});
    // P_3 = v'2 v'3 v'4 v'5 v''1 v''3 v''4 v''5; S_3 = v''1 v''3 v''5
    CHECK(sol.matches[3] == std::vector<std::size_t>{5, 6, 8});

    const auto alignment = alignment_from_solution(inst, sol);
    CHECK(alignment.value == 3 * inst.chains.size());
    REQUIRE(alignment.common_chain);
    CHECK(alignment.common_chain->size() == 3);
    CHECK((*alignment.common_chain)[1] == Point3{3, 9, 0});
    CHECK(alignment_violations(alignment, inst.chains, inst.delta).empty());
  }
  SUBCASE("complete graph") {
    const auto inst = build_reduction(Graph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
    CHECK(solve_reduction_bruteforce(inst).k == 1);
  }
  SUBCASE("equivalence with maximum independent set") {
    std::mt19937_64 rng(35);
    std::uniform_int_distribution<std::size_t> n(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
      const auto g = oracle::random_graph(rng, n(rng));
      const auto inst = build_reduction(g, 0.05);
      const auto sol = solve_reduction_bruteforce(inst);
      CHECK(sol.k == max_independent_set_bruteforce(g).k);
      CHECK(alignment_violations(alignment_from_solution(inst, sol), inst.chains, inst.delta).empty());
    }
  }
}

TEST_CASE("forced matching in reduction instances") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = build_reduction(oracle::random_graph(rng, 3 + trial), 0.05);
    const auto& base = inst.chains[0];
    for (std::size_t p = 0; p < base.size(); ++p) {
      for (const auto& chain : inst.chains) {
        for (const auto& v : chain.vertices()) {
          CHECK((dist(base[p], v) <= inst.delta) == (v.x == base[p].x));
        }
      }
    }
  }
}
