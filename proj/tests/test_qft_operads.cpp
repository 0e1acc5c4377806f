#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qft_operads.hpp"
#include "testutil.hpp"

using namespace rcop;
using namespace tu;

static Site single_object() {
  Region m = make_region({ibox(-1, 1, -1, 1)});
  return build_site(m, {{"M", m}});
}

TEST_CASE("single-object site: n! operations, no binary tuple op") {
  Site s = single_object();
  ColoredOperad om = build_O_M(s);
  CHECK(om.ops({}, 0).size() == 1);
  CHECK(om.ops({0}, 0).size() == 1);
  CHECK(om.ops({0, 0}, 0).size() == 2);
  CHECK(om.ops({0, 0, 0}, 0).size() == 6);

  ColoredOperad tp = build_tP_M(s);
  CHECK(tp.ops({}, 0).size() == 1);
  CHECK(tp.ops({0}, 0).size() == 1);
  CHECK(tp.ops({0, 0}, 0).empty());

  CHECK(check_operad_axioms(om).ok());
  CHECK(check_operad_axioms(tp).ok());
  CHECK(cauchy_ops(om, s).size() == 1);
}

TEST_CASE("disjoint rc pair: quotient collapses to a singleton") {
  Rect m = ibox(-4, 4, -4, 4);
  Site s = build_site(make_region({m}),
                      {{"M", make_region({m})},
                       {"A", make_region({ibox(1, 2, -2, -1)})},
                       {"B", make_region({ibox(-2, -1, 1, 2)})}});
  REQUIRE(s.orth[1][2]);
  ColoredOperad om = build_O_M(s);
  CHECK(om.ops({1, 2}, 0).size() == 1);
  CHECK(om.ops({1, 1}, 0).size() == 2);  // A not disjoint from itself

  ColoredOperad tp = build_tP_M(s);
  CHECK(tp.ops({1, 2}, 0).size() == 1);
  CHECK(tp.ops({2, 1}, 0).size() == 1);

  // both orderings of the disjoint pair are valid and land in one orbit
  Multifunctor phi = build_Phi_M(tp, om, s);
  auto meets = future_meets(s);
  CHECK(all_time_orderings(meets, {1, 2}, 0).size() == 2);
  Op image = phi.op_map(tp.ops({1, 2}, 0)[0]);
  CHECK(image == om.ops({1, 2}, 0)[0]);
  Report r = check_multifunctor(phi);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
}

TEST_CASE("crossing bands: two classes in O_M, no tuple op in tP_M") {
  Site s = crossing_site();
  ColoredOperad om = build_O_M(s);
  ColoredOperad tp = build_tP_M(s);
  CHECK(om.ops({1, 2}, 0).size() == 2);
  CHECK(tp.ops({1, 2}, 0).empty());
  CHECK(tp.ops({2, 1}, 0).empty());
  CHECK(check_operad_axioms(om).ok());
  CHECK(check_operad_axioms(tp).ok());
  CHECK(check_multifunctor(build_Phi_M(tp, om, s)).ok());
}

TEST_CASE("time-ordered sub-diamond pair: single tuple op, swap acts") {
  Rect m = ibox(0, 8, 0, 8);
  Region v = make_region({m});
  auto mp = auto_mult_pair(v);
  REQUIRE(mp);
  Site s = build_site(v, {{"V", v},
                          {"Cp", mp->later},
                          {"Cm", mp->earlier}});
  ColoredOperad tp = build_tP_M(s);
  auto ops = tp.ops({1, 2}, 0);
  REQUIRE(ops.size() == 1);
  Op swapped = tp.perm_action(ops[0], Perm{1, 0});
  CHECK(swapped == tp.ops({2, 1}, 0)[0]);
  // the pair is timelike separated: exactly one valid ordering each way
  auto meets = future_meets(s);
  CHECK(all_time_orderings(meets, {1, 2}, 0).size() == 1);
  // O_M keeps the two orderings distinct (no disjointness to quotient by)
  ColoredOperad om = build_O_M(s);
  CHECK(om.ops({1, 2}, 0).size() == 2);
}

TEST_CASE("staircase universe: axioms, comparison, W") {
  Site s = staircase_site();
  MESSAGE("saturated object count: ", s.n());
  ColoredOperad om = build_O_M(s);
  ColoredOperad tp = build_tP_M(s);

  Report r1 = check_operad_axioms(om);
  for (const auto& f : r1.failures) MESSAGE(f);
  CHECK(r1.ok());
  Report r2 = check_operad_axioms(tp);
  for (const auto& f : r2.failures) MESSAGE(f);
  CHECK(r2.ok());

  Multifunctor phi = build_Phi_M(tp, om, s);
  Report r3 = check_multifunctor(phi);
  for (const auto& f : r3.failures) MESSAGE(f);
  CHECK(r3.ok());

  // 1-ary restriction is a bijection
  std::set<Op> om1, phi1;
  for (int i = 0; i < s.n(); ++i)
    for (int j = 0; j < s.n(); ++j) {
      for (const Op& op : om.ops({i}, j)) om1.insert(op);
      for (const Op& op : tp.ops({i}, j)) phi1.insert(phi.op_map(op));
    }
  CHECK(om1 == phi1);

  // Phi maps the Cauchy set onto the Cauchy set
  std::set<Op> w_om, w_phi;
  for (const Op& op : cauchy_ops(om, s)) w_om.insert(op);
  for (const Op& op : cauchy_ops(tp, s)) w_phi.insert(phi.op_map(op));
  CHECK(w_om == w_phi);
  CHECK(!w_om.empty());

  // the staircase band is Cauchy in the ambient, sub-diamonds are not
  int iS = s.index_of("S"), iA = s.index_of("A"), iM = s.index_of("M");
  CHECK(w_om.count(Op{{iS}, iM, perm_id(1)}) == 1);
  CHECK(w_om.count(Op{{iA}, iM, perm_id(1)}) == 0);
}

TEST_CASE("operation-set monotonicity under site growth") {
  Site base = staircase_site(0);
  Site big = staircase_site(2);
  ColoredOperad om0 = build_O_M(base), om1 = build_O_M(big);
  ColoredOperad tp0 = build_tP_M(base), tp1 = build_tP_M(big);
  // saturation appends, so base colors keep their indices
  for (const Op& op : all_ops(om0)) CHECK(om1.has_op(op));
  for (const Op& op : all_ops(tp0)) CHECK(tp1.has_op(op));
}
