#ifndef GEOM_HPP
#define GEOM_HPP

// Exact causal geometry of the 1+1 Minkowski plane in null coordinates
// u = t - x, v = t + x. Causal precedence is the coordinatewise product
// order; causally convex opens are order-convex finite unions of open
// rectangles. All arithmetic is exact rational.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcop {

using Rat = boost::multiprecision::cpp_rational;

// Rational extended with -inf/+inf, used only as rectangle endpoints.
struct Ext {
  int8_t inf = 0;  // -1: -infinity, 0: finite, +1: +infinity
  Rat q;

  Ext() = default;
  Ext(const Rat& r) : inf(0), q(r) {}
  Ext(long n) : inf(0), q(n) {}
  static Ext neg_inf() { Ext e; e.inf = -1; return e; }
  static Ext pos_inf() { Ext e; e.inf = 1; return e; }
  bool finite() const { return inf == 0; }
};

inline bool operator==(const Ext& a, const Ext& b) {
  if (a.inf != b.inf) return false;
  return a.inf != 0 || a.q == b.q;
}
inline bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
inline bool operator<(const Ext& a, const Ext& b) {
  if (a.inf != b.inf) return a.inf < b.inf;
  return a.inf == 0 && a.q < b.q;
}
inline bool operator<=(const Ext& a, const Ext& b) { return a < b || a == b; }
inline bool operator>(const Ext& a, const Ext& b) { return b < a; }
inline bool operator>=(const Ext& a, const Ext& b) { return b <= a; }

std::string to_string(const Ext& e);

// Open box (u_lo,u_hi) x (v_lo,v_hi); for ClosedRegion the same struct
// denotes the closed box with infinite endpoints meaning an unbounded side.
struct Rect {
  Ext u_lo, u_hi, v_lo, v_hi;
};
bool operator==(const Rect& a, const Rect& b);
bool operator<(const Rect& a, const Rect& b);  // canonical sort order

// Canonical form: sorted list of ALL maximal open rectangles contained in
// the union. Two Regions denote the same point set iff rects are identical.
struct Region {
  std::vector<Rect> rects;
  bool empty() const { return rects.empty(); }
};
bool operator==(const Region& a, const Region& b);
bool operator!=(const Region& a, const Region& b);
bool operator<(const Region& a, const Region& b);

struct ClosedRegion {
  std::vector<Rect> rects;  // maximal closed boxes, sorted
  bool empty() const { return rects.empty(); }
};
bool operator==(const ClosedRegion& a, const ClosedRegion& b);

struct InclusionClass {
  bool cauchy = false;
  bool relatively_compact = false;
  bool admissible() const { return cauchy || relatively_compact; }
};

// ---------------------------------------------------------------------------
// Arrangement machinery. An Axis holds the sorted finite breakpoints of a
// coordinate; cells are indexed 0..2k: even index = open interval between
// consecutive breakpoints (outermost ones unbounded), odd index = breakpoint.
// ---------------------------------------------------------------------------

struct Axis {
  std::vector<Rat> cuts;  // sorted, unique, finite

  int ncells() const { return 2 * (int)cuts.size() + 1; }
  Ext lo(int cell) const;        // lower end of cell (as interval)
  Ext hi(int cell) const;        // upper end
  bool is_point(int cell) const { return cell % 2 == 1; }
  Rat rep(int cell) const;       // a representative point inside the cell
  int locate(const Rat& x) const;
  // cell lies inside the open interval (a,b)
  bool in_open(int cell, const Ext& a, const Ext& b) const;
  // cell lies inside the closed interval [a,b] (infinite end = unbounded)
  bool in_closed(int cell, const Ext& a, const Ext& b) const;
};

struct Grid {
  Axis u, v;
  int nu() const { return u.ncells(); }
  int nv() const { return v.ncells(); }
  int size() const { return nu() * nv(); }
  int idx(int iu, int iv) const { return iu * nv() + iv; }
};

using Cells = std::vector<char>;  // bitmap over Grid cells

// Build the joint arrangement of several rect lists (open or closed alike;
// only the endpoint coordinates matter). Extra cut values may be appended.
Grid make_grid(const std::vector<const std::vector<Rect>*>& parts,
               const std::vector<Rat>& extra_u = {},
               const std::vector<Rat>& extra_v = {});

Cells cover_open(const Grid& g, const std::vector<Rect>& rects);
Cells cover_closed(const Grid& g, const std::vector<Rect>& rects);

Cells cells_and(const Cells& a, const Cells& b);
Cells cells_or(const Cells& a, const Cells& b);
Cells cells_minus(const Cells& a, const Cells& b);
bool cells_subset(const Cells& a, const Cells& b);
bool cells_empty(const Cells& a);

// Topological interior / closure of a cell set, within the grid.
Cells interior_cells(const Grid& g, const Cells& s);
Cells closure_cells(const Grid& g, const Cells& s);

// Reconstruct canonical forms from a cell set. cells_to_region requires the
// cell set to be open (equal to its interior); throws otherwise.
Region cells_to_region(const Grid& g, const Cells& s);
ClosedRegion cells_to_closed(const Grid& g, const Cells& s);

// ---------------------------------------------------------------------------
// Region algebra
// ---------------------------------------------------------------------------

// Canonicalize; throws std::invalid_argument on a degenerate rectangle.
Region normalize(const std::vector<Rect>& raw);
Region make_region(std::initializer_list<Rect> rs);

bool region_bounded(const Region& r);
bool region_contains(const Region& r, const Rat& u, const Rat& v);
bool region_subset(const Region& a, const Region& b);

Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
// Difference of opens: returns the open interior of a\b; *boundary_discarded
// is set when interiorizing dropped any arrangement cell.
Region region_difference(const Region& a, const Region& b,
                         bool* boundary_discarded = nullptr);

ClosedRegion closure(const Region& r);
bool closed_contains(const ClosedRegion& r, const Rat& u, const Rat& v);

// ---------------------------------------------------------------------------
// Causal structure
// ---------------------------------------------------------------------------

Region causal_future(const Region& a);
Region causal_past(const Region& a);

bool is_causally_convex(const Region& u);
Region causally_convex_hull(const Region& u);
bool are_causally_disjoint(const Region& a, const Region& b);

// Permutation rho (as the list rho(1)..rho(n) of 0-based source indices)
// with J+(U_{rho(i)}) /\ U_{rho(j)} = empty for i < j; futures are taken
// relative to the ambient when one is supplied. First entry is future-most.
std::optional<std::vector<int>> time_ordering(
    const std::vector<Region>& tuple, const Region* ambient = nullptr);

// Cauchy development of the open U inside M; both order-convex, U inside M.
Region cauchy_development(const Region& u, const Region& m);
// Closed-obstacle variant (for the closedness lemma): development of the
// closed set K inside the open M, returned as a cell set on the grid *gout.
Cells cauchy_development_closed(const ClosedRegion& k, const Region& m,
                                Grid* gout);
bool is_closed_in(const Grid& g, const Cells& s, const Cells& ambient);

InclusionClass classify_inclusion(const Region& u, const Region& v);

// Convenience literals
Ext ninf();
Ext pinf();
Rect box(const Ext& ulo, const Ext& uhi, const Ext& vlo, const Ext& vhi);

std::string region_to_string(const Region& r);

}  // namespace rcop

#endif
