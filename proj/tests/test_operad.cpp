#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "operad.hpp"

using namespace rcop;

TEST_CASE("permutation utilities") {
  Perm a{1, 2, 0}, b{0, 2, 1};
  CHECK(perm_compose(a, perm_inverse(a)) == perm_id(3));
  CHECK(perm_compose(perm_inverse(a), a) == perm_id(3));
  // (a o b)[i] = a[b[i]]
  CHECK(perm_compose(a, b) == Perm{1, 0, 2});
  CHECK(all_perms(3).size() == 6);
  CHECK(all_perms(0).size() == 1);

  CHECK(perm_dsum({Perm{1, 0}, Perm{0}}) == Perm{1, 0, 2});
  // swap of a size-1 block past a size-2 block
  CHECK(block_perm(Perm{1, 0}, {1, 2}) == Perm{2, 0, 1});
  CHECK(block_perm(perm_id(2), {2, 2}) == perm_id(4));
}

// independent oracle: components of the graph on all of Sigma_n whose edges
// are the adjacent-disjoint swaps, computed with plain union-find
static std::set<Perm> orbit_oracle(const std::vector<int>& tuple,
                                   const Perm& sigma,
                                   const std::vector<std::vector<char>>& dis) {
  auto perms = all_perms((int)sigma.size());
  std::map<Perm, int> id;
  for (size_t i = 0; i < perms.size(); ++i) id[perms[i]] = (int)i;
  std::vector<int> parent(perms.size());
  for (size_t i = 0; i < perms.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int n = (int)sigma.size();
  for (const Perm& p : perms) {
    Perm inv = perm_inverse(p);
    for (int k = 0; k + 1 < n; ++k) {
      if (!dis[tuple[inv[k]]][tuple[inv[k + 1]]]) continue;
      Perm q = p;
      q[inv[k]] = k + 1;
      q[inv[k + 1]] = k;
      parent[find(id[p])] = find(id[q]);
    }
  }
  std::set<Perm> out;
  int root = find(id[sigma]);
  for (const Perm& p : perms)
    if (find(id[p]) == root) out.insert(p);
  return out;
}

TEST_CASE("perm_orbit: closure matches the union-find oracle") {
  std::mt19937 rng(5);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      int ncol = 3;
      std::vector<int> tuple(n);
      for (int& c : tuple) c = (int)(rng() % ncol);
      std::vector<std::vector<char>> dis(ncol, std::vector<char>(ncol, 0));
      for (int a = 0; a < ncol; ++a)
        for (int b = 0; b <= a; ++b)
          dis[a][b] = dis[b][a] = (char)(rng() % 2);
      Perm sigma = perm_id(n);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      auto rel = [&](int a, int b) { return dis[a][b] != 0; };
      auto got = perm_orbit(tuple, sigma, rel);
      auto want = orbit_oracle(tuple, sigma, dis);
      CHECK(std::set<Perm>(got.begin(), got.end()) == want);
      // representative independence
      for (const Perm& s2 : got) {
        auto again = perm_orbit(tuple, s2, rel);
        CHECK(std::set<Perm>(again.begin(), again.end()) == want);
        CHECK(canonical_rep(tuple, s2, rel) == *want.begin());
      }
    }
  }
}

TEST_CASE("perm_orbit: extreme relations") {
  auto none = [](int, int) { return false; };
  auto full = [](int, int) { return true; };
  Perm s{2, 0, 1};
  CHECK(perm_orbit({0, 1, 2}, s, none) == std::vector<Perm>{s});
  CHECK(perm_orbit({0, 1, 2}, s, full).size() == 6);
}

TEST_CASE("associative operad: n! operations, axioms pass") {
  ColoredOperad o = associative_operad(3);
  CHECK(o.ops({0}, 0).size() == 1);
  CHECK(o.ops({0, 0}, 0).size() == 2);
  CHECK(o.ops({0, 0, 0}, 0).size() == 6);
  CHECK(o.ops({}, 0).size() == 1);
  Report r = check_operad_axioms(o);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
}

TEST_CASE("terminal operad: one operation per arity, axioms pass") {
  ColoredOperad o = terminal_operad(3);
  for (int n = 0; n <= 3; ++n)
    CHECK(o.ops(std::vector<int>(n, 0), 0).size() == 1);
  CHECK(check_operad_axioms(o).ok());
}

TEST_CASE("orbit sizes partition n! for every admissible signature") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    int ncol = 3;
    ColoredOperad o;
    o.ncolors = ncol;
    o.arity_cap = 3;
    o.adm.assign(ncol, std::vector<char>(ncol, 0));
    for (int a = 0; a < ncol; ++a) o.adm[a][a] = 1;
    for (int a = 0; a < ncol; ++a)
      for (int b = 0; b < ncol; ++b)
        if (rng() % 2) o.adm[a][b] = 1;
    for (int k = 0; k < ncol; ++k)  // transitive closure (composability)
      for (int a = 0; a < ncol; ++a)
        for (int b = 0; b < ncol; ++b)
          if (o.adm[a][k] && o.adm[k][b]) o.adm[a][b] = 1;
    o.disjoint.assign(ncol, std::vector<char>(ncol, 0));
    for (int a = 0; a < ncol; ++a)
      for (int b = 0; b <= a; ++b)
        o.disjoint[a][b] = o.disjoint[b][a] = (char)(rng() % 2);
    // inherit disjointness along admissible 1-ary morphisms (as causal
    // disjointness does), otherwise the orbit quotient is not a congruence
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 0; a < ncol; ++a)
        for (int b = 0; b < ncol; ++b)
          for (int c = 0; c < ncol; ++c)
            for (int d = 0; d < ncol; ++d)
              if (o.adm[a][c] && o.adm[b][d] && o.disjoint[c][d] &&
                  !o.disjoint[a][b]) {
                o.disjoint[a][b] = 1;
                changed = true;
              }
    }

    for (const Op& op : all_ops(o)) {
      int n = (int)op.src.size();
      if (n == 0) continue;
      auto rel = [&](int a, int b) { return o.disjoint[a][b] != 0; };
      size_t total = 0;
      for (const Op& rep : o.ops(op.src, op.tgt))
        total += perm_orbit(op.src, rep.perm, rel).size();
      size_t fact = 1;
      for (int k = 2; k <= n; ++k) fact *= k;
      CHECK(total == fact);
    }
    Report r = check_operad_axioms(o);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
  }
}

TEST_CASE("fault injection: corrupted composite is pinpointed") {
  ColoredOperad o = associative_operad(3);
  o.tamper = [](Op& op) {
    if (op.src.size() == 3 && op.perm == perm_id(3))
      std::swap(op.perm[0], op.perm[1]);
  };
  Report r = check_operad_axioms(o);
  CHECK_FALSE(r.ok());
  bool named = false;
  for (const auto& f : r.failures)
    if (f.find("failed") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("multifunctor: identity passes, wrong signature is reported") {
  ColoredOperad o = associative_operad(3);
  Multifunctor idf;
  idf.source = &o;
  idf.target = &o;
  idf.color_map = {0};
  idf.op_map = [](const Op& op) { return op; };
  CHECK(check_multifunctor(idf).ok());

  Multifunctor bad = idf;
  bad.op_map = [](const Op& op) {
    Op r = op;
    if (op.src.size() == 2) r.src.push_back(0);  // wrong arity image
    return r;
  };
  Report r = check_multifunctor(bad);
  CHECK_FALSE(r.ok());
  bool mism = false;
  for (const auto& f : r.failures)
    if (f.find("signature mismatch") != std::string::npos) mism = true;
  CHECK(mism);

  Multifunctor untotal = idf;
  untotal.color_map = {};
  CHECK_THROWS_AS(check_multifunctor(untotal), std::invalid_argument);
}

TEST_CASE("tuple payload: at most one operation per signature") {
  ColoredOperad o;
  o.payload = Payload::to_tuple;
  o.ncolors = 2;
  o.arity_cap = 3;
  o.adm = {{1, 1}, {0, 1}};
  o.tuple_ok = [](const std::vector<int>& src, int) {
    return src.size() < 2 || src[0] != src[1];  // toy gate
  };
  CHECK(o.ops({0, 1}, 1).size() == 1);
  CHECK(o.ops({0, 0}, 1).empty());
  CHECK(o.ops({}, 1).size() == 1);
  CHECK(o.perm_action(o.ops({0, 1}, 1)[0], Perm{1, 0}).src ==
        std::vector<int>{1, 0});
}
