#include "geom.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace rcop {

Ext ninf() { return Ext::neg_inf(); }
Ext pinf() { return Ext::pos_inf(); }
Rect box(const Ext& ulo, const Ext& uhi, const Ext& vlo, const Ext& vhi) {
  return Rect{ulo, uhi, vlo, vhi};
}

std::string to_string(const Ext& e) {
  if (e.inf < 0) return "-inf";
  if (e.inf > 0) return "inf";
  return e.q.str();
}

bool operator==(const Rect& a, const Rect& b) {
  return a.u_lo == b.u_lo && a.u_hi == b.u_hi && a.v_lo == b.v_lo &&
         a.v_hi == b.v_hi;
}
static int ext_cmp(const Ext& a, const Ext& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}
bool operator<(const Rect& a, const Rect& b) {
  int c = ext_cmp(a.u_lo, b.u_lo);
  if (c) return c < 0;
  c = ext_cmp(a.u_hi, b.u_hi);
  if (c) return c < 0;
  c = ext_cmp(a.v_lo, b.v_lo);
  if (c) return c < 0;
  return a.v_hi < b.v_hi;
}

bool operator==(const Region& a, const Region& b) { return a.rects == b.rects; }
bool operator!=(const Region& a, const Region& b) { return !(a == b); }
bool operator<(const Region& a, const Region& b) {
  return std::lexicographical_compare(a.rects.begin(), a.rects.end(),
                                      b.rects.begin(), b.rects.end());
}
bool operator==(const ClosedRegion& a, const ClosedRegion& b) {
  return a.rects == b.rects;
}

std::string region_to_string(const Region& r) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < r.rects.size(); ++i) {
    const Rect& t = r.rects[i];
    if (i) os << " u ";
    os << "(" << to_string(t.u_lo) << "," << to_string(t.u_hi) << ")x("
       << to_string(t.v_lo) << "," << to_string(t.v_hi) << ")";
  }
  os << "}";
  return os.str();
}

// --------------------------------------------------------------- Axis/Grid

Ext Axis::lo(int cell) const {
  if (cell % 2 == 1) return Ext(cuts[(cell - 1) / 2]);
  if (cell == 0) return Ext::neg_inf();
  return Ext(cuts[cell / 2 - 1]);
}
Ext Axis::hi(int cell) const {
  if (cell % 2 == 1) return Ext(cuts[(cell - 1) / 2]);
  if (cell == ncells() - 1) return Ext::pos_inf();
  return Ext(cuts[cell / 2]);
}
Rat Axis::rep(int cell) const {
  if (cell % 2 == 1) return cuts[(cell - 1) / 2];
  Ext a = lo(cell), b = hi(cell);
  if (a.finite() && b.finite()) return (a.q + b.q) / 2;
  if (a.finite()) return a.q + 1;
  if (b.finite()) return b.q - 1;
  return Rat(0);
}
int Axis::locate(const Rat& x) const {
  auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
  int i = (int)(it - cuts.begin());
  if (it != cuts.end() && *it == x) return 2 * i + 1;
  return 2 * i;
}
bool Axis::in_open(int cell, const Ext& a, const Ext& b) const {
  if (cell % 2 == 1) {
    Ext p = lo(cell);
    return a < p && p < b;
  }
  return a <= lo(cell) && hi(cell) <= b;
}
bool Axis::in_closed(int cell, const Ext& a, const Ext& b) const {
  if (cell % 2 == 1) {
    Ext p = lo(cell);
    return a <= p && p <= b;
  }
  return a <= lo(cell) && hi(cell) <= b;
}

Grid make_grid(const std::vector<const std::vector<Rect>*>& parts,
               const std::vector<Rat>& extra_u, const std::vector<Rat>& extra_v) {
  std::vector<Rat> us = extra_u, vs = extra_v;
  for (const auto* p : parts)
    for (const Rect& r : *p) {
      if (r.u_lo.finite()) us.push_back(r.u_lo.q);
      if (r.u_hi.finite()) us.push_back(r.u_hi.q);
      if (r.v_lo.finite()) vs.push_back(r.v_lo.q);
      if (r.v_hi.finite()) vs.push_back(r.v_hi.q);
    }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  Grid g;
  g.u.cuts = std::move(us);
  g.v.cuts = std::move(vs);
  return g;
}

template <bool Closed>
static Cells cover_impl(const Grid& g, const std::vector<Rect>& rects) {
  Cells s(g.size(), 0);
  std::vector<char> uin(g.nu()), vin(g.nv());
  for (const Rect& r : rects) {
    for (int i = 0; i < g.nu(); ++i)
      uin[i] = Closed ? g.u.in_closed(i, r.u_lo, r.u_hi)
                      : g.u.in_open(i, r.u_lo, r.u_hi);
    for (int j = 0; j < g.nv(); ++j)
      vin[j] = Closed ? g.v.in_closed(j, r.v_lo, r.v_hi)
                      : g.v.in_open(j, r.v_lo, r.v_hi);
    for (int i = 0; i < g.nu(); ++i) {
      if (!uin[i]) continue;
      for (int j = 0; j < g.nv(); ++j)
        if (vin[j]) s[g.idx(i, j)] = 1;
    }
  }
  return s;
}
Cells cover_open(const Grid& g, const std::vector<Rect>& rects) {
  return cover_impl<false>(g, rects);
}
Cells cover_closed(const Grid& g, const std::vector<Rect>& rects) {
  return cover_impl<true>(g, rects);
}

Cells cells_and(const Cells& a, const Cells& b) {
  Cells r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}
Cells cells_or(const Cells& a, const Cells& b) {
  Cells r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}
Cells cells_minus(const Cells& a, const Cells& b) {
  Cells r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] && !b[i];
  return r;
}
bool cells_subset(const Cells& a, const Cells& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}
bool cells_empty(const Cells& a) {
  for (char c : a)
    if (c) return false;
  return true;
}

Cells interior_cells(const Grid& g, const Cells& s) {
  Cells r(s.size(), 0);
  for (int i = 0; i < g.nu(); ++i)
    for (int j = 0; j < g.nv(); ++j) {
      if (!s[g.idx(i, j)]) continue;
      bool iu_pt = i % 2 == 1, iv_pt = j % 2 == 1;
      bool ok = true;
      for (int di = -(int)iu_pt; di <= (int)iu_pt && ok; ++di)
        for (int dj = -(int)iv_pt; dj <= (int)iv_pt && ok; ++dj)
          if (!s[g.idx(i + di, j + dj)]) ok = false;
      if (ok) r[g.idx(i, j)] = 1;
    }
  return r;
}

Cells closure_cells(const Grid& g, const Cells& s) {
  Cells r(s.size(), 0);
  for (int i = 0; i < g.nu(); ++i)
    for (int j = 0; j < g.nv(); ++j) {
      if (!s[g.idx(i, j)]) continue;
      int ispan = i % 2 == 0, jspan = j % 2 == 0;
      for (int di = -ispan; di <= ispan; ++di)
        for (int dj = -jspan; dj <= jspan; ++dj) {
          int a = i + di, b = j + dj;
          if (a >= 0 && a < g.nu() && b >= 0 && b < g.nv())
            r[g.idx(a, b)] = 1;
        }
    }
  return r;
}

// Extract all maximal boxes contained in a cell set. Open mode: open
// rectangles (ends of cell ranges are interval cells). Closed mode: closed
// boxes (ends are breakpoint cells or unbounded outer cells).
static std::vector<Rect> extract_boxes(const Grid& g, const Cells& s,
                                       bool closed) {
  auto valid_lo = [&](int i, int n) {
    (void)n;
    return closed ? (i % 2 == 1 || i == 0) : i % 2 == 0;
  };
  auto valid_hi = [&](int i, int n) {
    return closed ? (i % 2 == 1 || i == n - 1) : i % 2 == 0;
  };
  int nu = g.nu(), nv = g.nv();
  std::vector<Rect> out;
  std::vector<char> col(nv);
  for (int i1 = 0; i1 < nu; ++i1) {
    if (!valid_lo(i1, nu)) continue;
    std::fill(col.begin(), col.end(), 1);
    for (int i2 = i1; i2 < nu; ++i2) {
      for (int j = 0; j < nv; ++j) col[j] = col[j] && s[g.idx(i2, j)];
      if (!valid_hi(i2, nu)) continue;
      // maximal runs of covered v-cells
      for (int j = 0; j < nv;) {
        if (!col[j]) {
          ++j;
          continue;
        }
        int j1 = j;
        while (j < nv && col[j]) ++j;
        int j2 = j - 1;
        // trim ends to valid parity for this mode
        int a = j1, b = j2;
        if (!valid_lo(a, nv)) ++a;
        if (!valid_hi(b, nv)) --b;
        if (a > b) continue;
        // u-maximality: try the minimal valid widening on each side
        auto widen_ok = [&](int from, int to) {  // cells (to..from-1 side)
          int lo = std::min(from, to), hi = std::max(from, to);
          for (int ii = lo; ii <= hi; ++ii)
            for (int jj = a; jj <= b; ++jj)
              if (!s[g.idx(ii, jj)]) return false;
          return true;
        };
        bool maximal = true;
        for (int d = i1 - 1; d >= 0; --d)
          if (valid_lo(d, nu)) {
            if (widen_ok(i1 - 1, d)) maximal = false;
            break;
          }
        if (maximal)
          for (int d = i2 + 1; d < nu; ++d)
            if (valid_hi(d, nu)) {
              if (widen_ok(i2 + 1, d)) maximal = false;
              break;
            }
        if (maximal)
          out.push_back(Rect{g.u.lo(i1), g.u.hi(i2), g.v.lo(a), g.v.hi(b)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Region cells_to_region(const Grid& g, const Cells& s) {
  if (interior_cells(g, s) != s)
    throw std::logic_error("cells_to_region: cell set is not open");
  Region r;
  r.rects = extract_boxes(g, s, false);
  return r;
}
ClosedRegion cells_to_closed(const Grid& g, const Cells& s) {
  ClosedRegion r;
  r.rects = extract_boxes(g, s, true);
  return r;
}

// ----------------------------------------------------------- region algebra

Region normalize(const std::vector<Rect>& raw) {
  for (size_t i = 0; i < raw.size(); ++i)
    if (!(raw[i].u_lo < raw[i].u_hi) || !(raw[i].v_lo < raw[i].v_hi))
      throw std::invalid_argument("degenerate rectangle at index " +
                                  std::to_string(i));
  Grid g = make_grid({&raw});
  return cells_to_region(g, cover_open(g, raw));
}
Region make_region(std::initializer_list<Rect> rs) {
  return normalize(std::vector<Rect>(rs));
}

bool region_bounded(const Region& r) {
  for (const Rect& t : r.rects)
    if (!t.u_lo.finite() || !t.u_hi.finite() || !t.v_lo.finite() ||
        !t.v_hi.finite())
      return false;
  return true;
}

bool region_contains(const Region& r, const Rat& u, const Rat& v) {
  Ext eu(u), ev(v);
  for (const Rect& t : r.rects)
    if (t.u_lo < eu && eu < t.u_hi && t.v_lo < ev && ev < t.v_hi) return true;
  return false;
}
bool closed_contains(const ClosedRegion& r, const Rat& u, const Rat& v) {
  Ext eu(u), ev(v);
  for (const Rect& t : r.rects)
    if (t.u_lo <= eu && eu <= t.u_hi && t.v_lo <= ev && ev <= t.v_hi)
      return true;
  return false;
}

bool region_subset(const Region& a, const Region& b) {
  Grid g = make_grid({&a.rects, &b.rects});
  return cells_subset(cover_open(g, a.rects), cover_open(g, b.rects));
}

Region region_union(const Region& a, const Region& b) {
  Grid g = make_grid({&a.rects, &b.rects});
  return cells_to_region(g, cells_or(cover_open(g, a.rects),
                                     cover_open(g, b.rects)));
}
Region region_intersect(const Region& a, const Region& b) {
  Grid g = make_grid({&a.rects, &b.rects});
  return cells_to_region(g, cells_and(cover_open(g, a.rects),
                                      cover_open(g, b.rects)));
}
Region region_difference(const Region& a, const Region& b,
                         bool* boundary_discarded) {
  Grid g = make_grid({&a.rects, &b.rects});
  Cells diff = cells_minus(cover_open(g, a.rects), cover_open(g, b.rects));
  Cells in = interior_cells(g, diff);
  if (boundary_discarded) *boundary_discarded = (in != diff);
  return cells_to_region(g, in);
}

ClosedRegion closure(const Region& r) {
  Grid g = make_grid({&r.rects});
  return cells_to_closed(g, closure_cells(g, cover_open(g, r.rects)));
}

// --------------------------------------------------------- causal structure

Region causal_future(const Region& a) {
  std::vector<Rect> quads;
  for (const Rect& t : a.rects)
    quads.push_back(Rect{t.u_lo, pinf(), t.v_lo, pinf()});
  return quads.empty() ? Region{} : normalize(quads);
}
Region causal_past(const Region& a) {
  std::vector<Rect> quads;
  for (const Rect& t : a.rects)
    quads.push_back(Rect{ninf(), t.u_hi, ninf(), t.v_hi});
  return quads.empty() ? Region{} : normalize(quads);
}

Region causally_convex_hull(const Region& u) {
  if (u.empty()) return Region{};
  Region h = region_intersect(causal_future(u), causal_past(u));
  if (!region_subset(u, h))
    throw std::logic_error("hull does not contain its argument");
  return h;
}

bool is_causally_convex(const Region& u) {
  if (u.empty()) return true;
  return u == causally_convex_hull(u);
}

bool are_causally_disjoint(const Region& a, const Region& b) {
  if (a.empty() || b.empty()) return true;
  Region link = region_union(causal_future(a), causal_past(a));
  return region_intersect(link, b).empty();
}

std::optional<std::vector<int>> time_ordering(const std::vector<Region>& tuple,
                                              const Region* ambient) {
  int n = (int)tuple.size();
  std::vector<Region> futs(n);
  for (int i = 0; i < n; ++i) {
    futs[i] = causal_future(tuple[i]);
    if (ambient) futs[i] = region_intersect(futs[i], *ambient);
  }
  // edge j -> i: i's future meets j, so j has to sit earlier than i
  std::vector<std::vector<char>> before(n, std::vector<char>(n, 0));
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!region_intersect(futs[i], tuple[j]).empty()) {
        before[j][i] = 1;
        ++indeg[i];
      }
    }
  std::vector<int> rho;
  std::vector<char> placed(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (!placed[i] && indeg[i] == 0) {
        pick = i;
        break;
      }
    if (pick < 0) return std::nullopt;  // cycle
    placed[pick] = 1;
    rho.push_back(pick);
    for (int j = 0; j < n; ++j)
      if (before[pick][j]) --indeg[j];
  }
  // verify against the definition before returning
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!region_intersect(futs[rho[a]], tuple[rho[b]]).empty())
        return std::nullopt;
  return rho;
}

// Escape-set computation for developments. dir=+1 looks for future escapes,
// dir=-1 for past escapes. Moves are monotone steps between adjacent cells;
// the diagonal step exists only between a 2-cell and the vertex at its
// corner (a causal curve can pass a corner only through that vertex).
static Cells escape_set(const Grid& g, const Cells& m, const Cells& free,
                        int dir) {
  int nu = g.nu(), nv = g.nv();
  auto moves = [&](int i, int j, auto&& fn) {
    int tu = i + dir, tv = j + dir;
    if (tu >= 0 && tu < nu) fn(tu, j);
    if (tv >= 0 && tv < nv) fn(i, tv);
    bool face = i % 2 == 0 && j % 2 == 0;
    bool vert = i % 2 == 1 && j % 2 == 1;
    if ((face || vert) && tu >= 0 && tu < nu && tv >= 0 && tv < nv) fn(tu, tv);
  };
  Cells esc(g.size(), 0);
  std::deque<int> queue;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      int c = g.idx(i, j);
      if (!free[c]) continue;
      bool out = false;
      // a cell unbounded in the escape direction is itself inextendible
      if (dir > 0 ? (i == nu - 1 || j == nv - 1) : (i == 0 || j == 0))
        out = true;
      moves(i, j, [&](int a, int b) {
        if (!m[g.idx(a, b)]) out = true;
      });
      if (out) {
        esc[c] = 1;
        queue.push_back(c);
      }
    }
  // walk backwards: a free cell with a move into the escape set escapes
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    int i = c / nv, j = c % nv;
    // predecessors of (i,j) under dir are successors under -dir
    auto preds = [&](int a, int b, auto&& fn) {
      int tu = a - dir, tv = b - dir;
      if (tu >= 0 && tu < nu) fn(tu, b);
      if (tv >= 0 && tv < nv) fn(a, tv);
      bool face = a % 2 == 0 && b % 2 == 0;
      bool vert = a % 2 == 1 && b % 2 == 1;
      if ((face || vert) && tu >= 0 && tu < nu && tv >= 0 && tv < nv)
        fn(tu, tv);
    };
    preds(i, j, [&](int a, int b) {
      int p = g.idx(a, b);
      if (free[p] && !esc[p]) {
        esc[p] = 1;
        queue.push_back(p);
      }
    });
  }
  return esc;
}

static Cells development_cells(const Grid& g, const Cells& m,
                               const Cells& obstacle) {
  Cells free = cells_minus(m, obstacle);
  Cells fut = escape_set(g, m, free, +1);
  Cells past = escape_set(g, m, free, -1);
  Cells trapped = cells_minus(m, cells_and(fut, past));
  return trapped;
}

Region cauchy_development(const Region& u, const Region& m) {
  if (!region_subset(u, m))
    throw std::invalid_argument("cauchy_development: U not contained in M");
  if (!is_causally_convex(u) || !is_causally_convex(m))
    throw std::invalid_argument("cauchy_development: inputs must be causally convex");
  Grid g = make_grid({&u.rects, &m.rects});
  Cells d = development_cells(g, cover_open(g, m.rects),
                              cover_open(g, u.rects));
  return cells_to_region(g, d);
}

Cells cauchy_development_closed(const ClosedRegion& k, const Region& m,
                                Grid* gout) {
  Grid g = make_grid({&k.rects, &m.rects});
  Cells mc = cover_open(g, m.rects);
  Cells kc = cells_and(cover_closed(g, k.rects), mc);
  Cells d = development_cells(g, mc, kc);
  if (gout) *gout = g;
  return d;
}

bool is_closed_in(const Grid& g, const Cells& s, const Cells& ambient) {
  return cells_and(closure_cells(g, s), ambient) == s;
}

InclusionClass classify_inclusion(const Region& u, const Region& v) {
  if (!region_subset(u, v))
    throw std::invalid_argument("classify_inclusion: U not contained in V");
  InclusionClass c;
  c.cauchy = (cauchy_development(u, v) == v);
  if (region_bounded(u)) {
    Grid g = make_grid({&u.rects, &v.rects});
    Cells cl = closure_cells(g, cover_open(g, u.rects));
    c.relatively_compact = cells_subset(cl, cover_open(g, v.rects));
  }
  return c;
}

}  // namespace rcop
