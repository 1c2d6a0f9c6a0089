// Copyright 2026 the bwrsolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "bwr/solver.hpp"
#include "helpers.hpp"

using namespace bwr;

TEST_CASE("round_to_rational finds the unique candidate") {
  CHECK(round_to_rational(Rational(49, 100), Rational(51, 100), 2) == Rational(1, 2));
  CHECK(round_to_rational(Rational(32, 100), Rational(34, 100), 3) == Rational(1, 3));
  CHECK(round_to_rational(Rational(2857, 10000), Rational(2858, 10000), 7) == Rational(2, 7));
  CHECK(round_to_rational(Rational(3), Rational(3), 5) == Rational(3));
}

TEST_CASE("round_to_rational rejects bad intervals") {
  CHECK_THROWS_WITH(round_to_rational(Rational(0), Rational(1), 2),
                    Catch::Matchers::ContainsSubstring("too wide"));
  CHECK_THROWS_WITH(round_to_rational(Rational(1, 10), Rational(2, 10), 3),
                    Catch::Matchers::ContainsSubstring("no candidate"));
  CHECK_THROWS_AS(round_to_rational(Rational(1), Rational(0), 2), GameError);
}

TEST_CASE("round_to_rational agrees with a brute-force scan") {
  long maxden = 7;
  for (int a = 0; a < 40; ++a) {
    Rational lo(a, 20), hi = lo + Rational(1, 50);
    // Brute-force candidate collection.
    std::set<Rational> cands;
    for (long q = 1; q <= maxden; ++q) {
      for (Integer p = ceil_rat(lo * Rational(q)); p <= floor_rat(hi * Rational(q)); ++p) {
        Rational c(p, q);
        c.canonicalize();
        cands.insert(c);
      }
    }
    if (cands.size() == 1) {
      CHECK(round_to_rational(lo, hi, maxden) == *cands.begin());
    } else {
      CHECK_THROWS_AS(round_to_rational(lo, hi, maxden), GameError);
    }
  }
}

TEST_CASE("the canonical certificate reproduces oracle values") {
  BwrGame g = bwrtest::g_choice();
  auto cert = make_certificate(g, 10000);
  REQUIRE(cert);
  CHECK(cert->mu == VertexMap{Rational(4), Rational(4), Rational(2)});
  CHECK(cert->top_value == 4);
  CHECK(cert->bottom_value == 2);
  CanonicalReport rep = check_canonical(g, cert->mu, cert->x, Rational(0));
  for (int v = 0; v < g.size(); ++v) {
    CHECK(rep.c1_values_ok[v]);
    CHECK(rep.c1_rewards_ok[v]);
  }
}

TEST_CASE("extreme values match the oracle on the fixtures") {
  BwrGame gc = bwrtest::g_cycle();
  SolverContext cyc = make_solver(gc);
  CHECK(find_extreme_value(cyc, Extreme::Max) == 3);
  CHECK(find_extreme_value(cyc, Extreme::Min) == 3);

  BwrGame gr = bwrtest::g_rand();
  SolverContext rnd = make_solver(gr);
  CHECK(find_extreme_value(rnd, Extreme::Max) == Rational(3, 2));
  CHECK(find_extreme_value(rnd, Extreme::Min) == Rational(3, 2));

  BwrGame gch = bwrtest::g_choice();
  SolverContext cho = make_solver(gch);
  CHECK(find_extreme_value(cho, Extreme::Max) == 4);
  CHECK(find_extreme_value(cho, Extreme::Min) == 2);
}

TEST_CASE("class membership distinguishes top and bottom vertices") {
  BwrGame g = bwrtest::g_choice();
  SolverContext ctx = make_solver(g);
  CHECK(membership_in_class(ctx, g.index_of("a"), Rational(4), ClassSide::Top).member);
  CHECK(membership_in_class(ctx, g.index_of("w"), Rational(4), ClassSide::Top).member);
  CHECK_FALSE(membership_in_class(ctx, g.index_of("b"), Rational(4), ClassSide::Top).member);
  CHECK(membership_in_class(ctx, g.index_of("b"), Rational(2), ClassSide::Bottom).member);
  CHECK_FALSE(membership_in_class(ctx, g.index_of("a"), Rational(2), ClassSide::Bottom).member);

  BwrGame r = bwrtest::g_rand();
  SolverContext rc = make_solver(r);
  for (int v = 0; v < r.size(); ++v) {
    CHECK(membership_in_class(rc, v, Rational(3, 2), ClassSide::Top).member);
  }
}

TEST_CASE("a feasible membership point marks the whole positive support") {
  BwrGame g = bwrtest::g_choice();
  SolverContext ctx = make_solver(g);
  Membership m = membership_in_class(ctx, g.index_of("a"), Rational(4), ClassSide::Top);
  REQUIRE(m.member);
  CHECK(m.vplus == std::set<int>{g.index_of("w"), g.index_of("a")});
}

TEST_CASE("computed classes match the oracle") {
  BwrGame g = bwrtest::g_choice();
  SolverContext ctx = make_solver(g);
  CHECK(compute_class(ctx, ClassSide::Top, Rational(4)) ==
        std::set<int>{g.index_of("w"), g.index_of("a")});
  CHECK(compute_class(ctx, ClassSide::Bottom, Rational(2)) == std::set<int>{g.index_of("b")});

  BwrGame r = bwrtest::g_rand();
  SolverContext rc = make_solver(r);
  CHECK(compute_class(rc, ClassSide::Top) == std::set<int>{0, 1, 2});
}

TEST_CASE("extracted strategies pick the value-achieving arcs") {
  BwrGame g = bwrtest::g_choice();
  std::set<int> top = {g.index_of("w"), g.index_of("a")};
  StrategyPair sp = extract_strategies(g, top, Rational(4));
  REQUIRE(sp.max_choices.size() == 1);  // w is the only White position in G[T]
  CHECK(sp.max_choices[0].from == "w");
  CHECK(sp.max_choices[0].to == "a");
  REQUIRE(sp.min_choices.size() == 1);  // a keeps its self-loop
  CHECK(sp.min_choices[0].from == "a");
  CHECK(sp.min_choices[0].to == "a");

  StrategyPair forced = extract_strategies(bwrtest::g_rand(), {0, 1, 2}, Rational(3, 2));
  CHECK(forced.max_choices.size() == 1);  // unique arcs everywhere
  CHECK(forced.min_choices.size() == 1);
}

TEST_CASE("solve_ergodic handles ergodic games and rejects others") {
  GameSolution r = solve_ergodic(bwrtest::g_rand(), Mode::Practical);
  CHECK(r.values == VertexMap(3, Rational(3, 2)));
  CHECK(r.certified);

  GameSolution c = solve_ergodic(bwrtest::g_cycle(), Mode::Practical);
  CHECK(c.values == VertexMap(2, Rational(3)));

  try {
    solve_ergodic(bwrtest::g_choice(), Mode::Practical);
    FAIL("expected rejection");
  } catch (const NotErgodicError& e) {
    BwrGame g = bwrtest::g_choice();
    CHECK(e.top == std::set<int>{g.index_of("w"), g.index_of("a")});
  }
}

TEST_CASE("classify assembles the full result") {
  BwrGame g = bwrtest::g_choice();
  ClassificationResult res = classify(g, Mode::Practical);
  CHECK(res.t_max == 4);
  CHECK(res.t_min == 2);
  CHECK(res.top == std::set<int>{g.index_of("w"), g.index_of("a")});
  CHECK(res.bottom == std::set<int>{g.index_of("b")});

  ClassificationResult rr = classify(bwrtest::g_rand(), Mode::Practical);
  CHECK(rr.t_max == Rational(3, 2));
  CHECK(rr.t_min == Rational(3, 2));
  CHECK(rr.top == std::set<int>{0, 1, 2});
  CHECK(rr.bottom == std::set<int>{0, 1, 2});

  ClassificationResult ll = classify(bwrtest::g_loop(), Mode::Practical);
  CHECK(ll.t_max == 5);
  CHECK(ll.t_min == 5);
  CHECK(ll.top == std::set<int>{0});
}

TEST_CASE("the pipeline works without warm starts") {
  SolverOptions opt;
  opt.hint_cap = 0;  // force every probe through the ellipsoid
  BwrGame g = bwrtest::g_cycle();
  SolverContext ctx = make_solver(g, opt);
  CHECK(find_extreme_value(ctx, Extreme::Max) == 3);
  CHECK(find_extreme_value(ctx, Extreme::Min) == 3);
  CHECK(compute_class(ctx, ClassSide::Top, Rational(3)) == std::set<int>{0, 1});
}

TEST_CASE("paper mode is gated to small games") {
  BwrGame big = bwrtest::DescBuilder()
                    .pos("a", Owner::White)
                    .pos("b", Owner::White)
                    .pos("c", Owner::White)
                    .pos("d", Owner::White)
                    .arc("a", "b", 1)
                    .arc("b", "c", 1)
                    .arc("c", "d", 1)
                    .arc("d", "a", 1)
                    .build();
  SolverOptions paper;
  paper.mode = Mode::Paper;
  CHECK_THROWS_WITH(make_solver(big, paper), Catch::Matchers::ContainsSubstring("paper mode"));
  paper.force = true;
  CHECK_NOTHROW(make_solver(big, paper));
}

TEST_CASE("paper mode solves a small cycle game end to end") {
  SolverOptions paper;
  paper.mode = Mode::Paper;
  BwrGame g = bwrtest::g_cycle();
  SolverContext ctx = make_solver(g, paper);
  CHECK(find_extreme_value(ctx, Extreme::Max) == 3);
}

TEST_CASE("feasibility is monotone around the found value") {
  BwrGame g = bwrtest::g_cycle();
  GameParams p = derive_params(g, Mode::Practical);
  std::set<int> all = {0, 1};
  // Upper system: feasible at and above the value, infeasible below.
  for (Rational t : {Rational(7, 2), Rational(4), Rational(9, 2)}) {
    FeasibilitySystem sys = build_system(g, p, Direction::Upper, t, all, p.delta(t));
    CHECK(decide(sys).status == DecideStatus::Feasible);
  }
  for (Rational t : {Rational(2), Rational(5, 2)}) {
    FeasibilitySystem sys = build_system(g, p, Direction::Upper, t, all, p.delta(t));
    CHECK(decide(sys).status == DecideStatus::Infeasible);
  }
}

TEST_CASE("equal extreme values coincide with full classes") {
  for (const BwrGame& g : {bwrtest::g_rand(), bwrtest::g_cycle(), bwrtest::g_loop()}) {
    ClassificationResult res = classify(g, Mode::Practical);
    bool ergodic = res.t_max == res.t_min;
    CHECK(ergodic == (static_cast<int>(res.top.size()) == g.size()));
    CHECK(ergodic == (static_cast<int>(res.bottom.size()) == g.size()));
  }
}
