#ifndef ALGEBRA_HPP
#define ALGEBRA_HPP

// Finite-dimensional exact-rational operad algebras: multilinear maps over
// tensor-product bases, axiom checking, pullback along multifunctors, strict
// time-slice, the inverse construction from factorization products, and the
// decomposition/assembly pair on nested sites.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "operad.hpp"
#include "site.hpp"

namespace rcop {

// Multilinear map (x_1 .. x_n) -> target, coefficients over the tensor basis
// with slot 0 most significant: col = ((i_1 * d_2 + i_2) * d_3 + ...).
struct MultilinearMap {
  std::vector<int> src;  // source dimensions in slot order
  int tgt = 0;
  std::vector<Rat> coeff;  // row-major, tgt rows x prod(src) columns

  long cols() const;
};
bool operator==(const MultilinearMap& a, const MultilinearMap& b);

MultilinearMap mm_identity(int d);
MultilinearMap mm_zero(const std::vector<int>& src, int tgt);
// Operadic composition: plug the inners into the outer's slots.
MultilinearMap mm_compose(const MultilinearMap& outer,
                          const std::vector<MultilinearMap>& inner);
// Source-slot permutation matching Op::perm_action: result slot i carries
// the old slot tau[i].
MultilinearMap mm_perm(const MultilinearMap& f, const Perm& tau);
bool mm_invertible(const MultilinearMap& f);
std::optional<MultilinearMap> mm_inverse(const MultilinearMap& f);

struct OperadAlgebra {
  ColoredOperad operad;   // owned copy; colors index dims
  std::vector<int> dims;  // carrier dimension per color
  std::function<MultilinearMap(const Op&)> action;
};

// Exhaustive verification at the operad's arity cap: unit actions, source
// permutations, and partial composites all match on the matrix level.
// Colors without a self-inclusion (masked out by restriction) are skipped.
Report check_algebra(const OperadAlgebra& a);

// Carrier and action composed with the multifunctor.
OperadAlgebra pullback(const Multifunctor& f, const OperadAlgebra& a);

// Every W-action is a square invertible matrix (exact rank).
bool strict_timeslice(const OperadAlgebra& a, const std::vector<Op>& w);

// From a tuple-operad algebra with strict time-slice, build the algebra over
// the classes operad: carriers and 1-ary actions are kept, each object's
// multiplication is the factorization product of its designated pair
// conjugated by the inverses of the pair-inclusion actions, and objects
// without a usable pair inherit multiplication through an invertible
// inclusion action into an object that has one. Throws std::invalid_argument
// when a multiplication cannot be derived for some object, and
// std::logic_error when the result fails its own axiom check (verify=true).
OperadAlgebra invert_comparison(const OperadAlgebra& f,
                                const ColoredOperad& om, const Site& site,
                                bool verify = true);

// Actions of causally disjoint inclusions into a common object have
// commuting images under the object's multiplication.
Report check_einstein_causality(const OperadAlgebra& a, const Site& site);

// Zero out all signatures touching inactive colors; the quotient data is
// unchanged on the survivors.
ColoredOperad restrict_operad(const ColoredOperad& o,
                              const std::vector<char>& active);

struct GlobalFamily {
  std::vector<int> members;            // color indices carrying local data
  std::vector<OperadAlgebra> locals;   // one per member, restricted operad
  // alpha[(m, n)][u]: component at color u of the comparison iso from the
  // local at m to the pullback of the local at n, for member inclusions
  std::map<std::pair<int, int>, std::vector<MultilinearMap>> alpha;
};

// Coherence of a family: locals pass their checks, comparison components are
// invertible, cocycle squares commute, components are natural in operations.
Report check_family(const GlobalFamily& fam, const Site& site);

// Restrict to every object's sub-site; comparison components are identities
// because site inclusions restrict to identities on common objects.
GlobalFamily decompose(const OperadAlgebra& a, const Site& site);

// Evaluate each local at its top object and transport sources through the
// comparison components. Throws std::invalid_argument citing the failed
// square when the family is incoherent.
OperadAlgebra assemble(const GlobalFamily& fam, const Site& site);

// Components (alpha at the identity inclusion of u into m) exhibiting
// decompose(assemble(fam)) as isomorphic to fam; empty report on success.
Report check_reassembly_iso(const GlobalFamily& fam, const Site& site);

}  // namespace rcop

#endif
