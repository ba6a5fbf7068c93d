#include "doctest.h"

#include "qubols/annealer.hpp"
#include "qubols/partition.hpp"
#include "support.hpp"

using namespace qubols;
using testsupport::degree_sum_cut;
using testsupport::random_graph;

TEST_CASE("cut value") {
  SUBCASE("one part means no cut") {
    auto g = testsupport::rng(71);
    WeightedGraph graph = random_graph(6, 0.6, g);
    CHECK(cut_value(graph, Partition(std::vector<std::uint32_t>(6, 0), 1)) == Rational(0));
  }

  SUBCASE("a single crossing edge counts its weight") {
    WeightedGraph graph(2, {{0, 1, Rational(3)}});
    CHECK(cut_value(graph, Partition({0, 1}, 2)) == Rational(3));
  }

  SUBCASE("matches the degree-sum identity") {
    auto g = testsupport::rng(72);
    for (int t = 0; t < 20; ++t) {
      WeightedGraph graph = random_graph(9, 0.5, g);
      Partition p = Partition({0, 1, 2, 0, 1, 2, 0, 1, 2}, 3);
      CHECK(cut_value(graph, p) == degree_sum_cut(graph, p));
    }
  }
}

TEST_CASE("swap gains") {
  SUBCASE("non-adjacent vertices add their D-values") {
    WeightedGraph graph(4, {{0, 1, Rational(2)}, {2, 3, Rational(5)}});
    Partition p({0, 0, 1, 1}, 2);
    // D_0 = -2 (internal only), D_2 = -5.
    CHECK(kl_gain(graph, p, 0, 2) == Rational(-7));
  }

  SUBCASE("isolated vertices have zero gain") {
    WeightedGraph graph(4, {});
    Partition p({0, 0, 1, 1}, 2);
    CHECK(kl_gain(graph, p, 0, 2) == Rational(0));
    CHECK_THROWS_AS(kl_gain(graph, p, 0, 1), FormulationError);
  }

  SUBCASE("equals the brute-force cut difference on bisections") {
    auto g = testsupport::rng(73);
    int checked = 0;
    while (checked < 1000) {
      WeightedGraph graph = random_graph(8, 0.5, g);
      Partition p = Partition::random_balanced(8, 2, g);
      auto u = static_cast<std::size_t>(testsupport::rand_int(g, 0, 7));
      auto v = static_cast<std::size_t>(testsupport::rand_int(g, 0, 7));
      if (p.part(u) == p.part(v)) continue;
      Partition swapped = p;
      swapped.swap_parts(u, v);
      CHECK(kl_gain(graph, p, u, v) == cut_value(graph, p) - cut_value(graph, swapped));
      ++checked;
    }
  }
}

TEST_CASE("swap matching selection") {
  SUBCASE("two vertices give at most the single cross pair") {
    WeightedGraph graph(2, {{0, 1, Rational(1)}});
    SwapMatching m = select_swap_matching(graph, Partition({0, 1}, 2), 4);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  }

  SUBCASE("selected pairs are pairwise disjoint") {
    auto g = testsupport::rng(74);
    for (int t = 0; t < 100; ++t) {
      WeightedGraph graph = random_graph(12, 0.4, g);
      Partition p = Partition::random_balanced(12, 3, g);
      SwapMatching m = select_swap_matching(graph, p, 6);
      std::vector<bool> used(12, false);
      for (auto [u, v] : m.pairs) {
        CHECK_FALSE(used[u]);
        CHECK_FALSE(used[v]);
        CHECK(p.part(u) != p.part(v));
        used[u] = used[v] = true;
      }
    }
  }

  SUBCASE("the coupled-swap construction selects both designated pairs") {
    auto inst = testsupport::coupled_swap_instance();
    SwapMatching m = select_swap_matching(inst.graph, inst.partition, 2);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0] == inst.pair1);
    CHECK(m.pairs[1] == inst.pair2);
  }
}

TEST_CASE("swap QUBO is exactly twice the cut") {
  auto g = testsupport::rng(75);

  SUBCASE("the all-zeros energy is the current doubled cut") {
    WeightedGraph graph = random_graph(10, 0.5, g);
    Partition p = Partition::random_balanced(10, 2, g);
    SwapMatching m = select_swap_matching(graph, p, 3);
    QuboModel model = build_swap_qubo(graph, p, m);
    CHECK(model.evaluate(BitString::zeros(m.pairs.size())) ==
          Rational(2) * cut_value(graph, p));
  }

  SUBCASE("a single pair toggles by minus twice its gain") {
    int checked = 0;
    while (checked < 50) {
      WeightedGraph graph = random_graph(8, 0.5, g);
      Partition p = Partition::random_balanced(8, 2, g);
      SwapMatching m = select_swap_matching(graph, p, 1);
      if (m.pairs.empty()) continue;
      QuboModel model = build_swap_qubo(graph, p, m);
      Rational gain = kl_gain(graph, p, m.pairs[0].first, m.pairs[0].second);
      CHECK(model.evaluate(BitString{1}) - model.evaluate(BitString{0}) ==
            Rational(-2) * gain);
      ++checked;
    }
  }

  SUBCASE("exact identity across all assignments, three parts") {
    for (int t = 0; t < 10; ++t) {
      WeightedGraph graph = random_graph(12, 0.5, g);
      Partition p = Partition::random_balanced(12, 3, g);
      SwapMatching m = select_swap_matching(graph, p, 4);
      QuboModel model = build_swap_qubo(graph, p, m);
      for (std::uint64_t v = 0; v < (1ULL << m.pairs.size()); ++v) {
        BitString y = BitString::from_index(v, m.pairs.size());
        Partition swapped = apply_swaps(p, m, y);
        CHECK(swapped.is_balanced());
        CHECK(model.evaluate(y) == Rational(2) * cut_value(graph, swapped));
      }
    }
  }

  SUBCASE("overlapping matchings are rejected") {
    WeightedGraph graph(4, {{0, 2, Rational(1)}});
    Partition p({0, 0, 1, 1}, 2);
    SwapMatching bad{{{0, 2}, {0, 3}}};
    CHECK_THROWS_AS(build_swap_qubo(graph, p, bad), FormulationError);
    SwapMatching same_part{{{0, 1}}};
    CHECK_THROWS_AS(build_swap_qubo(graph, p, same_part), FormulationError);
  }
}

TEST_CASE("apply_swaps") {
  auto g = testsupport::rng(76);

  SUBCASE("zero bits change nothing") {
    Partition p = Partition::random_balanced(6, 2, g);
    SwapMatching m{{{0, 5}}};
    if (p.part(0) == p.part(5)) return;
    CHECK(apply_swaps(p, m, BitString{0}) == p);
  }

  SUBCASE("a full swap on two vertices exchanges the parts") {
    WeightedGraph graph(2, {{0, 1, Rational(4)}});
    Partition p({0, 1}, 2);
    Partition swapped = apply_swaps(p, SwapMatching{{{0, 1}}}, BitString{1});
    CHECK(swapped.part(0) == 1);
    CHECK(swapped.part(1) == 0);
    CHECK(cut_value(graph, swapped) == cut_value(graph, p));
  }

  SUBCASE("part sizes never change") {
    for (int t = 0; t < 20; ++t) {
      WeightedGraph graph = random_graph(12, 0.4, g);
      Partition p = Partition::random_balanced(12, 3, g);
      SwapMatching m = select_swap_matching(graph, p, 5);
      BitString y = BitString::random(m.pairs.size(), g);
      CHECK(apply_swaps(p, m, y).part_sizes() == p.part_sizes());
    }
  }
}

TEST_CASE("full K-way formulation") {
  auto g = testsupport::rng(77);

  SUBCASE("K = 1 has zero cut term on the feasible assignment") {
    WeightedGraph graph = random_graph(4, 0.7, g);
    QuboModel model = full_gp_qubo(graph, 1, PenaltyConfig::uniform(Rational(50)));
    CHECK(model.evaluate(BitString::ones(4)) == Rational(0));
  }

  SUBCASE("one cut edge contributes twice its weight") {
    WeightedGraph graph(2, {{0, 1, Rational(5)}});
    QuboModel model = full_gp_qubo(graph, 2, PenaltyConfig::uniform(Rational(100)));
    CHECK(model.evaluate(BitString{1, 0, 0, 1}) == Rational(10));
    CHECK(model.evaluate(BitString{0, 1, 1, 0}) == Rational(10));
  }

  SUBCASE("exhaustive: balanced feasible assignments score 2*cut, others pay") {
    WeightedGraph graph = random_graph(4, 0.6, g);
    QuboModel model = full_gp_qubo(graph, 2, PenaltyConfig::uniform(Rational(1000)));
    std::size_t feasible = 0;
    for (std::uint64_t v = 0; v < 256; ++v) {
      BitString x = BitString::from_index(v, 8);
      // Feasible = every vertex in exactly one part and parts of size 2.
      bool ok = true;
      std::size_t size0 = 0;
      std::vector<std::uint32_t> assignment(4, 0);
      for (std::size_t u = 0; u < 4 && ok; ++u) {
        int ones = x[2 * u] + x[2 * u + 1];
        ok = ones == 1;
        if (ok && x[2 * u]) ++size0;
        assignment[u] = x[2 * u] ? 0 : 1;
      }
      ok = ok && size0 == 2;
      if (ok) {
        ++feasible;
        CHECK(model.evaluate(x) ==
              Rational(2) * cut_value(graph, Partition(assignment, 2)));
      } else {
        Rational penalty_free(0);
        for (const auto& e : graph.edges())
          for (std::size_t l = 0; l < 2; ++l)
            if (x[2 * e.u + l] != x[2 * e.v + l]) penalty_free += e.weight;
        CHECK(model.evaluate(x) > penalty_free);
      }
    }
    CHECK(feasible == 6);
    CHECK_THROWS_AS(full_gp_qubo(random_graph(5, 0.5, g), 2, PenaltyConfig::uniform(Rational(1))),
                    FormulationError);
  }
}

TEST_CASE("coupled improvement: no single swap helps, the joint swap does") {
  auto inst = testsupport::coupled_swap_instance();
  const auto [u1, v1] = inst.pair1;
  const auto [u2, v2] = inst.pair2;
  Rational before = cut_value(inst.graph, inst.partition);
  CHECK(before == Rational(6));

  // Brute-force single swaps: neither improves the cut.
  Partition s1 = inst.partition;
  s1.swap_parts(u1, v1);
  Partition s2 = inst.partition;
  s2.swap_parts(u2, v2);
  CHECK(cut_value(inst.graph, s1) >= before);
  CHECK(cut_value(inst.graph, s2) >= before);

  // Ranking gains are non-negative, so greedy still proposes the pairs.
  CHECK(kl_gain(inst.graph, inst.partition, u1, v1) >= Rational(0));
  CHECK(kl_gain(inst.graph, inst.partition, u2, v2) >= Rational(0));

  // The joint swap strictly reduces the cut.
  Partition joint = s1;
  joint.swap_parts(u2, v2);
  CHECK(cut_value(inst.graph, joint) <= before - Rational(1));

  // And the swap QUBO's exhaustive minimizer is exactly the joint swap.
  SwapMatching m{{inst.pair1, inst.pair2}};
  QuboModel model = build_swap_qubo(inst.graph, inst.partition, m);
  AnnealResult best = brute_force_solve(model);
  CHECK(best.best == BitString{1, 1});
  CHECK(best.best_energy == Rational(2) * cut_value(inst.graph, joint));
}

TEST_CASE("partition parsing and serialization") {
  Partition p({0, 2, 1, 0}, 3);
  Partition parsed = parse_partition(p.str());
  CHECK(parsed == p);
  CHECK_THROWS_AS(parse_partition("0\n-1\n"), ParseError);
  CHECK_THROWS_AS(Partition::balanced({0, 0, 1}, 2), FormulationError);
}
