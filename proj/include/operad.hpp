#ifndef OPERAD_HPP
#define OPERAD_HPP

// Finitely-enumerated colored operads: permutation utilities, orbit closure
// under adjacent-disjoint swaps, operation sets per signature, block
// composition, symmetric actions, axiom checking, and multifunctors.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rcop {

// Permutations are image vectors: p maps letter i to position p[i].
using Perm = std::vector<int>;

Perm perm_id(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a o b)[i] = a[b[i]]
Perm perm_inverse(const Perm& p);
std::vector<Perm> all_perms(int n);
// Direct sum: acts blockwise, block i with its own permutation.
Perm perm_dsum(const std::vector<Perm>& ps);
// Block permutation: n blocks of the given sizes (in input order) are moved
// as s moves letters; letter (block i, offset r) goes to the start of the
// chunk at output position s[i], plus r.
Perm block_perm(const Perm& s, const std::vector<int>& sizes);

// Closure of sigma under "swap positions k, k+1 of the permuted tuple when
// the two colors there are disjoint"; position k of the permuted tuple holds
// tuple[sigma^-1(k)]. Returns the full equivalence class, sorted.
std::vector<Perm> perm_orbit(const std::vector<int>& tuple, const Perm& sigma,
                             const std::function<bool(int, int)>& disjoint);
// Lexicographically least member of perm_orbit.
Perm canonical_rep(const std::vector<int>& tuple, const Perm& sigma,
                   const std::function<bool(int, int)>& disjoint);

struct Op {
  std::vector<int> src;  // source colors, in slot order
  int tgt = 0;
  Perm perm;  // canonical orbit representative; empty for tuple payloads
};
bool operator==(const Op& a, const Op& b);
bool operator<(const Op& a, const Op& b);
std::string op_to_string(const Op& op);

enum class Payload { perm_class, to_tuple, formal_perm_class };

// One concrete representation covers every operad in play: operations per
// signature are either the time-orderable-tuple marker (at most one) or the
// permutation classes of Sigma_n modulo adjacent-disjoint swaps. Specific
// operads differ only in the admissibility/disjointness data.
struct ColoredOperad {
  Payload payload = Payload::perm_class;
  int ncolors = 0;
  int arity_cap = 3;
  // adm[c][t]: the 1-ary morphism c -> t exists (drives all signatures)
  std::vector<std::vector<char>> adm;
  // orbit relation between colors (ignored for to_tuple payloads); the
  // quotient composition is well-defined only when disjointness is inherited
  // along admissible 1-ary morphisms (adm[a][c], adm[b][d], disjoint[c][d]
  // imply disjoint[a][b]), which causal disjointness satisfies; violations
  // surface in check_operad_axioms
  std::vector<std::vector<char>> disjoint;
  // extra per-signature gate (time-orderability for tPFA operads)
  std::function<bool(const std::vector<int>&, int)> tuple_ok;
  // test-only fault injection applied to every composite
  std::function<void(Op&)> tamper;

  bool signature_ok(const std::vector<int>& src, int tgt) const;
  std::vector<Op> ops(const std::vector<int>& src, int tgt) const;
  bool has_op(const Op& op) const;
  Op unit(int color) const;
  // Block composition; nullopt when shapes mismatch or the composite
  // signature escapes the operad.
  std::optional<Op> compose(const Op& outer, const std::vector<Op>& inner) const;
  Op perm_action(const Op& op, const Perm& tau) const;
};

// One color, every tuple admissible, nothing disjoint: n! operations per
// arity, composition is plain block composition of permutations.
ColoredOperad associative_operad(int arity_cap);
// One color, everything disjoint: a single operation per arity.
ColoredOperad terminal_operad(int arity_cap);

struct Report {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustive unit/equivariance/associativity verification on all operations
// of arity <= arity_cap (composites included while they stay under the cap).
Report check_operad_axioms(const ColoredOperad& o);

struct Multifunctor {
  const ColoredOperad* source = nullptr;
  const ColoredOperad* target = nullptr;
  std::vector<int> color_map;
  std::function<Op(const Op&)> op_map;
};

// Verifies signature coherence, identity/composition/equivariance
// preservation on all enumerated data. Throws std::invalid_argument when the
// color map is not total.
Report check_multifunctor(const Multifunctor& f);

// Deterministic enumeration of every operation with arity <= cap.
std::vector<Op> all_ops(const ColoredOperad& o);

}  // namespace rcop

#endif
