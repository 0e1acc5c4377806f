#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geom.hpp"
#include "testutil.hpp"

using namespace rcop;
using namespace tu;

static Rat q(const char* s) { return Rat(s); }
static Rect rb(long a, long b, long c, long d) {
  return box(Ext(Rat(a)), Ext(Rat(b)), Ext(Rat(c)), Ext(Rat(d)));
}
static Rect rq(const char* a, const char* b, const char* c, const char* d) {
  return box(Ext(q(a)), Ext(q(b)), Ext(q(c)), Ext(q(d)));
}

static Region staircase() {
  return make_region({rq("-1", "-1/4", "1/4", "1"),
                      rq("-1/2", "1/2", "-1/2", "1/2"),
                      rq("1/4", "1", "-1", "-1/4")});
}

TEST_CASE("normalize: duplicates, abutting merge, degenerate rejection") {
  Region r = normalize({rb(0, 1, 0, 1), rb(0, 1, 0, 1)});
  CHECK(r.rects.size() == 1);
  CHECK(r == make_region({rb(0, 1, 0, 1)}));

  Region m = normalize({rb(0, 2, 0, 1), rb(1, 3, 0, 1)});
  CHECK(m == make_region({rb(0, 3, 0, 1)}));

  CHECK_THROWS_AS(normalize({box(Ext(1L), Ext(1L), Ext(0L), Ext(2L))}),
                  std::invalid_argument);
}

TEST_CASE("normalize: L-shape canonical form is input-order independent") {
  Region a = normalize({rb(0, 1, 0, 2), rb(0, 2, 0, 1)});
  Region b = normalize({rb(0, 2, 0, 1), rb(0, 1, 0, 2)});
  CHECK(a == b);
  CHECK(a.rects.size() == 2);
  // point-set agreement with the raw union on sampled points
  Region raws[2] = {make_region({rb(0, 1, 0, 2)}), make_region({rb(0, 2, 0, 1)})};
  for (auto& [pu, pv] : sample_points({&raws[0], &raws[1]})) {
    bool in_raw = region_contains(raws[0], pu, pv) ||
                  region_contains(raws[1], pu, pv);
    CHECK(region_contains(a, pu, pv) == in_raw);
  }
}

TEST_CASE("normalize congruence on random corpus") {
  Gen gen(11);
  for (int t = 0; t < 60; ++t) {
    std::vector<Rect> raw;
    int n = 1 + (int)(gen.rng() % 5);
    for (int i = 0; i < n; ++i) raw.push_back(gen.rect());
    Region r1 = normalize(raw);
    std::shuffle(raw.begin(), raw.end(), gen.rng);
    CHECK(r1 == normalize(raw));
    CHECK(normalize(r1.rects) == r1);  // idempotent
    Region rr = make_region({});
    for (const Rect& rc : raw) rr = region_union(rr, normalize({rc}));
    CHECK(rr == r1);
  }
}

TEST_CASE("causal future: examples") {
  CHECK(causal_future(Region{}).empty());
  CHECK(causal_future(make_region({rb(0, 1, 0, 1)})) ==
        make_region({box(Ext(0L), pinf(), Ext(0L), pinf())}));
  Region a = make_region({rb(0, 1, 0, 1), rb(2, 3, -2, -1)});
  CHECK(causal_future(a) == make_region({box(Ext(0L), pinf(), Ext(0L), pinf()),
                                         box(Ext(2L), pinf(), Ext(-2L), pinf())}));
}

TEST_CASE("causal future/past agree with the pointwise oracle") {
  Gen gen(22);
  for (int t = 0; t < 80; ++t) {
    Region a = gen.region(4);
    Region f = causal_future(a), p = causal_past(a);
    for (auto& [pu, pv] : sample_points({&a})) {
      CHECK(region_contains(f, pu, pv) == o_future_contains(a, pu, pv));
      CHECK(region_contains(p, pu, pv) == o_past_contains(a, pu, pv));
    }
    CHECK(causal_future(f) == f);  // idempotent
    Region b = region_union(a, gen.region(2));
    CHECK(region_subset(causal_future(a), causal_future(b)));  // monotone
  }
}

TEST_CASE("causal convexity: examples and oracle") {
  CHECK(is_causally_convex(make_region({rb(0, 1, 0, 1)})));
  CHECK_FALSE(is_causally_convex(make_region({rb(0, 1, 0, 1), rb(2, 3, 2, 3)})));
  CHECK(is_causally_convex(staircase()));

  Gen gen(33);
  for (int t = 0; t < 60; ++t) {
    Region u = gen.region(4);
    CHECK(is_causally_convex(u) == o_causally_convex(u));
  }
}

TEST_CASE("causally convex hull") {
  Region u = make_region({rb(0, 1, 0, 1), rb(2, 3, 2, 3)});
  Region h = causally_convex_hull(u);
  CHECK(region_subset(make_region({rb(1, 2, 1, 2)}), h));
  CHECK(region_subset(u, h));
  CHECK(is_causally_convex(h));
  Gen gen(44);
  for (int t = 0; t < 40; ++t) {
    Region r = gen.region(4);
    Region hh = causally_convex_hull(r);
    CHECK(causally_convex_hull(hh) == hh);
    if (is_causally_convex(r)) CHECK(hh == r);
  }
}

TEST_CASE("causal disjointness: examples and oracle") {
  Region u1 = make_region({rb(0, 1, 0, 1)});
  CHECK_FALSE(are_causally_disjoint(u1, u1));
  CHECK(are_causally_disjoint(u1, make_region({rb(2, 3, -3, -2)})));
  // crossing bands overlap, so they are not causally disjoint
  CHECK_FALSE(are_causally_disjoint(make_region({rb(0, 1, -1, 1)}),
                                    make_region({rb(-1, 1, 0, 1)})));
  Gen gen(55);
  for (int t = 0; t < 80; ++t) {
    Region a = gen.region(3), b = gen.region(3);
    CHECK(are_causally_disjoint(a, b) == o_causally_disjoint(a, b));
    CHECK(are_causally_disjoint(a, b) == are_causally_disjoint(b, a));
  }
}

TEST_CASE("time ordering: examples") {
  Region a = make_region({rb(0, 1, 0, 1)});
  auto rho1 = time_ordering({a});
  REQUIRE(rho1.has_value());
  CHECK(*rho1 == std::vector<int>{0});

  // upper band is future of lower band: future-most goes first
  Region lower = make_region({rb(0, 1, 0, 1)});
  Region upper = make_region({rb(2, 3, 2, 3)});
  auto rho2 = time_ordering({lower, upper});
  REQUIRE(rho2.has_value());
  CHECK(*rho2 == std::vector<int>{1, 0});

  // crossing bands admit no ordering
  auto rho3 = time_ordering({make_region({rb(0, 1, -1, 1)}),
                             make_region({rb(-1, 1, 0, 1)})});
  CHECK_FALSE(rho3.has_value());
}

TEST_CASE("time ordering against brute-force permutation oracle") {
  Gen gen(66);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + (int)(gen.rng() % 3);
    std::vector<Region> tuple;
    for (int i = 0; i < n; ++i) tuple.push_back(gen.region(2));
    auto rho = time_ordering(tuple);
    CHECK(rho.has_value() == o_time_orderable(tuple));
    if (rho) CHECK(o_ordering_valid(tuple, *rho));
  }
}

TEST_CASE("development: examples") {
  Region m = make_region({rb(-1, 1, -1, 1)});
  CHECK(cauchy_development(m, m) == m);

  Region diamond = make_region({rb(0, 1, 0, 1)});
  CHECK(cauchy_development(diamond, m) == diamond);

  CHECK(cauchy_development(staircase(), m) == m);

  CHECK_THROWS_AS(cauchy_development(make_region({rb(2, 3, 2, 3)}), m),
                  std::invalid_argument);
  // two diamonds joined only at a corner point are not order-convex
  CHECK_THROWS_AS(
      cauchy_development(make_region({rb(-1, 0, -1, 0), rb(0, 1, 0, 1)}), m),
      std::invalid_argument);
}

TEST_CASE("development agrees with the refined-grid oracle") {
  Gen gen(77);
  int done = 0;
  while (done < 40) {
    Region m = causally_convex_hull(gen.region(2));
    Region x = region_intersect(gen.region(3), m);
    if (x.empty()) continue;
    Region u = causally_convex_hull(x);
    Region d = cauchy_development(u, m);
    DevOracle orc(u, m);
    for (int i = 0; i < orc.g.nu(); ++i)
      for (int j = 0; j < orc.g.nv(); ++j) {
        Rat pu = orc.g.u.rep(i), pv = orc.g.v.rep(j);
        CHECK(region_contains(d, pu, pv) == orc.in_dev(i, j));
      }
    // structural properties
    CHECK(region_subset(u, d));
    CHECK(region_subset(d, m));
    CHECK(is_causally_convex(d));
    CHECK(cauchy_development(d, m) == d);  // idempotent
    // sandwich: U <= U' <= D(U) implies equal developments
    if (!d.empty()) {
      Region up = causally_convex_hull(
          region_union(u, make_region({d.rects.front()})));
      CHECK(cauchy_development(up, m) == d);
    }
    ++done;
  }
}

TEST_CASE("classify_inclusion: examples") {
  Region m = make_region({rb(-1, 1, -1, 1)});
  InclusionClass ic = classify_inclusion(m, m);
  CHECK(ic.cauchy);

  // nested diamond whose closure touches the ambient corner: neither
  Region u = make_region({rb(0, 1, 0, 1)});
  ic = classify_inclusion(u, m);
  CHECK_FALSE(ic.cauchy);
  CHECK_FALSE(ic.relatively_compact);

  ic = classify_inclusion(make_region({rq("0", "1/2", "0", "1/2")}), m);
  CHECK_FALSE(ic.cauchy);
  CHECK(ic.relatively_compact);

  // the staircase spans the full u and v range of m, so its closure meets
  // the boundary: Cauchy but not relatively compact
  ic = classify_inclusion(staircase(), m);
  CHECK(ic.cauchy);
  CHECK_FALSE(ic.relatively_compact);

  CHECK_THROWS_AS(classify_inclusion(m, u), std::invalid_argument);
}

TEST_CASE("classification composes per the composition table") {
  Gen gen(88);
  int done = 0;
  while (done < 30) {
    Region w = causally_convex_hull(gen.region(2));
    Region xv = region_intersect(gen.region(2), w);
    if (xv.empty()) continue;
    Region v = causally_convex_hull(xv);
    Region xu = region_intersect(gen.region(2), v);
    if (xu.empty()) continue;
    Region u = causally_convex_hull(xu);
    InclusionClass uv = classify_inclusion(u, v);
    InclusionClass vw = classify_inclusion(v, w);
    InclusionClass uw = classify_inclusion(u, w);
    if (uv.cauchy && vw.cauchy) CHECK(uw.cauchy);
    if (uv.admissible() && vw.admissible() &&
        (uv.relatively_compact || vw.relatively_compact))
      CHECK(uw.relatively_compact);
    ++done;
  }
}

TEST_CASE("closure and the closedness of developments of compacta") {
  CHECK(closure(Region{}).empty());
  ClosedRegion c = closure(make_region({rb(0, 1, 0, 1)}));
  REQUIRE(c.rects.size() == 1);
  CHECK(c.rects[0] == rb(0, 1, 0, 1));
  CHECK(closed_contains(c, Rat(0), Rat(0)));
  CHECK(closed_contains(c, Rat(1), Rat(1)));
  CHECK_FALSE(closed_contains(c, Rat(2), Rat(0)));

  Region m = make_region({rb(-1, 1, -1, 1)});
  ClosedRegion k = closure(make_region({rq("0", "1/2", "0", "1/2")}));
  Grid g;
  Cells d = cauchy_development_closed(k, m, &g);
  CHECK(is_closed_in(g, d, cover_open(g, m.rects)));

  Gen gen(99);
  int done = 0;
  while (done < 30) {
    Region mm = causally_convex_hull(gen.region(2));
    Region x = region_intersect(gen.region(3), mm);
    if (x.empty()) continue;
    // shrink so the closure stays inside mm is not required by the lemma;
    // any compact K inside M qualifies
    if (!region_bounded(x)) continue;
    ClosedRegion kk = closure(x);
    Grid gg;
    Cells dd = cauchy_development_closed(kk, mm, &gg);
    CHECK(is_closed_in(gg, dd, cover_open(gg, mm.rects)));
    ++done;
  }
}

TEST_CASE("difference reports discarded boundary") {
  bool flag = false;
  Region d = region_difference(make_region({rb(0, 2, 0, 2)}),
                               make_region({rb(0, 1, 0, 1)}), &flag);
  CHECK(flag);
  CHECK(is_causally_convex(make_region({rb(0, 1, 0, 1)})));
  CHECK_FALSE(region_contains(d, Rat(1, 2), Rat(1, 2)));
  CHECK(region_contains(d, Rat(3, 2), Rat(3, 2)));

  flag = true;
  Region e = region_difference(make_region({rb(0, 2, 0, 2)}),
                               make_region({rb(5, 6, 5, 6)}), &flag);
  CHECK_FALSE(flag);
  CHECK(e == make_region({rb(0, 2, 0, 2)}));
}
