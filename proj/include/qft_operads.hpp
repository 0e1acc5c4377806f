#ifndef QFT_OPERADS_HPP
#define QFT_OPERADS_HPP

// The two operads attached to a validated site, the comparison multifunctor
// between them, and the Cauchy 1-ary operation set W.

#include "operad.hpp"
#include "site.hpp"

namespace rcop {

// n-ary operations (U_1..U_n) -> V are the permutation classes of Sigma_n
// modulo adjacent swaps of causally disjoint entries, present iff every
// inclusion U_i into V is Cauchy or relatively compact.
ColoredOperad build_O_M(const Site& site, int arity_cap = 3);

// At most one operation per tuple: it exists iff every inclusion is
// admissible and the tuple is time-orderable inside the target.
ColoredOperad build_tP_M(const Site& site, int arity_cap = 3);

// Identity on colors; a time-orderable tuple goes to the permutation class
// of its time-ordering. Every valid ordering is enumerated and all must land
// in a single orbit; a split would make the map ill-defined and throws
// std::logic_error.
Multifunctor build_Phi_M(const ColoredOperad& tp, const ColoredOperad& om,
                         const Site& site);

// The 1-ary operations whose inclusion classifies Cauchy.
std::vector<Op> cauchy_ops(const ColoredOperad& o, const Site& site);

// meets[i][j][t]: the causal future of object i taken inside object t
// reaches object j. Shared precomputation for orderability questions.
std::vector<std::vector<std::vector<char>>> future_meets(const Site& site);

// All sequences ord (positions -> slots) making the tuple time-ordered in
// tgt, future-most first, computed from the meets table.
std::vector<std::vector<int>> all_time_orderings(
    const std::vector<std::vector<std::vector<char>>>& meets,
    const std::vector<int>& src, int tgt);

}  // namespace rcop

#endif
