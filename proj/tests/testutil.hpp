#ifndef TESTUTIL_HPP
#define TESTUTIL_HPP

// Shared test helpers: deterministic random corpus generation and the
// independent pointwise/arrangement-grid oracles the library is checked
// against. Everything here deliberately avoids the library's own region
// algebra where a more naive computation exists.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "geom.hpp"
#include "site.hpp"

namespace tu {

using namespace rcop;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  long pick(long lo, long hi) {
    return lo + (long)(rng() % (uint64_t)(hi - lo + 1));
  }
  Rat rat() {
    static const long dens[] = {1, 2, 3, 4};
    long den = dens[rng() % 4];
    long num = pick(-8 * den, 8 * den);
    return Rat(num, den);
  }
  Rect rect() {
    for (;;) {
      Rat a = rat(), b = rat(), c = rat(), d = rat();
      if (a == b || c == d) continue;
      return Rect{Ext(std::min(a, b)), Ext(std::max(a, b)),
                  Ext(std::min(c, d)), Ext(std::max(c, d))};
    }
  }
  Region region(int max_rects) {
    int n = 1 + (int)(rng() % (uint64_t)max_rects);
    std::vector<Rect> rs;
    for (int i = 0; i < n; ++i) rs.push_back(rect());
    return normalize(rs);
  }
};

// Sample representatives: one point per cell of the arrangement of the given
// regions, refined once by midpoints so samples do not sit only on the
// library's own grid.
inline std::vector<Rat> refine_axis(std::vector<Rat> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rat> out;
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (i) out.push_back((cuts[i - 1] + cuts[i]) / 2);
    out.push_back(cuts[i]);
  }
  if (!cuts.empty()) {
    out.insert(out.begin(), cuts.front() - 1);
    out.push_back(cuts.back() + 1);
  }
  return out;
}

inline Grid sample_grid(const std::vector<const Region*>& parts) {
  std::vector<Rat> us, vs;
  for (const Region* p : parts)
    for (const Rect& r : p->rects) {
      if (r.u_lo.finite()) us.push_back(r.u_lo.q);
      if (r.u_hi.finite()) us.push_back(r.u_hi.q);
      if (r.v_lo.finite()) vs.push_back(r.v_lo.q);
      if (r.v_hi.finite()) vs.push_back(r.v_hi.q);
    }
  Grid g;
  g.u.cuts = refine_axis(us);
  g.v.cuts = refine_axis(vs);
  return g;
}

inline std::vector<std::pair<Rat, Rat>> sample_points(
    const std::vector<const Region*>& parts) {
  Grid g = sample_grid(parts);
  std::vector<std::pair<Rat, Rat>> pts;
  for (int i = 0; i < g.nu(); ++i)
    for (int j = 0; j < g.nv(); ++j)
      pts.emplace_back(g.u.rep(i), g.v.rep(j));
  return pts;
}

// ---- pointwise oracles ----------------------------------------------------

// exists a in A with a <= p (A open, so <= and < coincide pointwise)
inline bool o_future_contains(const Region& a, const Rat& pu, const Rat& pv) {
  Ext u(pu), v(pv);
  for (const Rect& r : a.rects)
    if (r.u_lo < u && r.v_lo < v) return true;
  return false;
}
inline bool o_past_contains(const Region& a, const Rat& pu, const Rat& pv) {
  Ext u(pu), v(pv);
  for (const Rect& r : a.rects)
    if (u < r.u_hi && v < r.v_hi) return true;
  return false;
}

// exists x in a, y in b with x <= y (a causal curve from a into b)
inline bool o_comparable(const Region& a, const Region& b) {
  for (const Rect& r : a.rects)
    for (const Rect& s : b.rects)
      if (r.u_lo < s.u_hi && r.v_lo < s.v_hi) return true;
  return false;
}

inline bool o_causally_disjoint(const Region& a, const Region& b) {
  return !o_comparable(a, b) && !o_comparable(b, a);
}

// order-convexity by exhaustive middle-point search on the sample grid
inline bool o_causally_convex(const Region& u) {
  for (auto& [pu, pv] : sample_points({&u})) {
    if (region_contains(u, pu, pv)) continue;
    if (o_future_contains(u, pu, pv) && o_past_contains(u, pu, pv))
      return false;  // strictly between two points of u but outside it
  }
  return true;
}

// valid time-ordering per the definition (first entry future-most)
inline bool o_ordering_valid(const std::vector<Region>& tuple,
                             const std::vector<int>& rho) {
  for (size_t i = 0; i < rho.size(); ++i)
    for (size_t j = i + 1; j < rho.size(); ++j)
      if (o_comparable(tuple[rho[i]], tuple[rho[j]])) return false;
  return true;
}
inline bool o_time_orderable(const std::vector<Region>& tuple) {
  std::vector<int> rho(tuple.size());
  for (size_t i = 0; i < rho.size(); ++i) rho[i] = (int)i;
  std::sort(rho.begin(), rho.end());
  do {
    if (o_ordering_valid(tuple, rho)) return true;
  } while (std::next_permutation(rho.begin(), rho.end()));
  return false;
}

// Second, independent development computation: midpoint-refined grid and a
// memoized depth-first search instead of the library's reverse BFS.
struct DevOracle {
  Grid g;
  Cells m, u;
  std::vector<int8_t> memo[2];  // 0: future dir, 1: past dir

  DevOracle(const Region& uu, const Region& mm) {
    g = sample_grid({&uu, &mm});
    std::vector<Rect> mr = mm.rects, ur = uu.rects;
    m = Cells(g.size(), 0);
    u = Cells(g.size(), 0);
    for (int i = 0; i < g.nu(); ++i)
      for (int j = 0; j < g.nv(); ++j) {
        Rat pu = g.u.rep(i), pv = g.v.rep(j);
        if (region_contains(mm, pu, pv)) m[g.idx(i, j)] = 1;
        if (region_contains(uu, pu, pv)) u[g.idx(i, j)] = 1;
      }
    memo[0].assign(g.size(), -1);
    memo[1].assign(g.size(), -1);
  }

  bool esc(int i, int j, int dirbit) {
    int c = g.idx(i, j);
    if (memo[dirbit][c] >= 0) return memo[dirbit][c] != 0;
    memo[dirbit][c] = 0;  // monotone moves cannot cycle; placeholder
    int dir = dirbit == 0 ? 1 : -1;
    bool out = (dir > 0 ? (i == g.nu() - 1 || j == g.nv() - 1)
                        : (i == 0 || j == 0));
    std::vector<std::pair<int, int>> tgts;
    if (i + dir >= 0 && i + dir < g.nu()) tgts.push_back({i + dir, j});
    if (j + dir >= 0 && j + dir < g.nv()) tgts.push_back({i, j + dir});
    bool fc = i % 2 == 0 && j % 2 == 0, vc = i % 2 == 1 && j % 2 == 1;
    if ((fc || vc) && i + dir >= 0 && i + dir < g.nu() && j + dir >= 0 &&
        j + dir < g.nv())
      tgts.push_back({i + dir, j + dir});
    for (auto& [a, b] : tgts) {
      int t = g.idx(a, b);
      if (!m[t]) { out = true; break; }
      if (!u[t] && esc(a, b, dirbit)) { out = true; break; }
    }
    memo[dirbit][c] = out ? 1 : 0;
    return out;
  }

  // membership of the sample point of cell (i,j) in D_M(U)
  bool in_dev(int i, int j) {
    int c = g.idx(i, j);
    if (!m[c]) return false;
    if (u[c]) return true;
    return !(esc(i, j, 0) && esc(i, j, 1));
  }
};

// a three-step staircase band inside the given box, Cauchy in it
inline Region stair_band(const Rect& b) {
  Rat du = b.u_hi.q - b.u_lo.q, dv = b.v_hi.q - b.v_lo.q;
  auto su = [&](const char* f) { return Ext(b.u_lo.q + du * Rat(f)); };
  auto sv = [&](const char* f) { return Ext(b.v_lo.q + dv * Rat(f)); };
  return make_region({box(su("0"), su("3/8"), sv("5/8"), sv("1")),
                      box(su("1/4"), su("3/4"), sv("1/4"), sv("3/4")),
                      box(su("5/8"), su("1"), sv("0"), sv("3/8"))});
}

inline Rect ibox(long a, long b, long c, long d) {
  return box(Ext(Rat(a)), Ext(Rat(b)), Ext(Rat(c)), Ext(Rat(d)));
}

// shared fixtures mirroring the bundled scenarios: an ambient square with a
// Cauchy staircase band and a causally disjoint rc diamond pair
inline Site staircase_site(int depth = 2, SiteOptions opt = {}) {
  Rect m = ibox(-4, 4, -4, 4);
  Site s = build_site(make_region({m}),
                      {{"M", make_region({m})},
                       {"S", stair_band(m)},
                       {"A", make_region({ibox(1, 2, -2, -1)})},
                       {"B", make_region({ibox(-2, -1, 1, 2)})}},
                      {}, opt);
  return saturate(s, depth);
}

// two overlapping rc bands whose pair is not time-orderable, plus a Cauchy
// staircase with a diamond outside its causal future (shifting the staircase
// to the ambient breaks orderability of the shifted pair)
inline Site crossing_site(SiteOptions opt = {}) {
  Rect m = ibox(-2, 2, -2, 2);
  Rect p = box(Ext(Rat(-7, 4)), Ext(Rat(-3, 2)), Ext(Rat(-7, 4)),
               Ext(Rat(-3, 2)));
  return build_site(make_region({m}),
                    {{"M", make_region({m})},
                     {"U1", make_region({ibox(0, 1, -1, 1)})},
                     {"U2", make_region({ibox(-1, 1, 0, 1)})},
                     {"S", stair_band(m)},
                     {"P", make_region({p})}},
                    {}, opt);
}

// two overlapping diamonds whose Cauchy staircases are set-disjoint and
// time-orderable: the pair itself is not orderable but shrinks to one that is
inline Site shrink_site(SiteOptions opt = {}) {
  Rect m = ibox(-8, 8, -8, 8);
  Rect v1 = ibox(-4, 1, -4, 1), v2 = ibox(-1, 4, -1, 4);
  return build_site(make_region({m}),
                    {{"M", make_region({m})},
                     {"V1", make_region({v1})},
                     {"V2", make_region({v2})},
                     {"S1", stair_band(v1)},
                     {"S2", stair_band(v2)}},
                    {}, opt);
}

// causally disjoint diamonds carrying genuine staircase Cauchy shrinks
inline Site disjoint_shrink_site(SiteOptions opt = {}) {
  Rect m = ibox(-8, 8, -8, 8);
  Rect w1 = ibox(1, 3, -3, -1), w2 = ibox(-3, -1, 1, 3);
  return build_site(make_region({m}),
                    {{"M", make_region({m})},
                     {"W1", make_region({w1})},
                     {"W2", make_region({w2})},
                     {"T1", stair_band(w1)},
                     {"T2", stair_band(w2)}},
                    {}, opt);
}

}  // namespace tu

#endif
