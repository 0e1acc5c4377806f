#ifndef OPERATORS_HPP
#define OPERATORS_HPP

// Categories of operators over pointed finite sets, the W^tensor morphism
// class, and strict homotopy fibers of the localization-comparison functor
// over 0- and 1-simplices.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "operad.hpp"

namespace rcop {

// Morphism (phi, ops): phi[i] in 0..m sends source entry i to target entry
// phi[i]-1, with 0 the basepoint; ops[j] is the operadic operation from the
// tuple of surviving source colors (in index order) to target color j.
struct OpcMor {
  int src = -1, tgt = -1;  // object indices
  std::vector<int> phi;
  std::vector<Op> ops;
};
bool operator==(const OpcMor& a, const OpcMor& b);
bool operator<(const OpcMor& a, const OpcMor& b);
std::string opcmor_to_string(const OpcMor& m);

// Objects are all color tuples of length <= cap, morphisms are generated on
// demand. Projection to pointed finite sets is the phi component.
struct OperatorCategory {
  const ColoredOperad* o = nullptr;
  int cap = 3;
  std::vector<std::vector<int>> objects;  // by length, then lexicographic

  int index_of(const std::vector<int>& colors) const;  // -1 if absent
  OpcMor identity(int a) const;
  std::vector<OpcMor> hom(int a, int b) const;
  bool is_morphism(const OpcMor& f) const;
  // g after f; nullopt when an operadic composite escapes the operad
  std::optional<OpcMor> compose(const OpcMor& g, const OpcMor& f) const;
};

// Throws std::overflow_error when cap exceeds the operad's arity cap, since
// preimage tuples of that length could not be given operations.
OperatorCategory category_of_operators(const ColoredOperad& o, int cap = 3);

// The (sigma, w-tuple) morphisms: pointed bijections decorated by W-entries.
bool in_w_tensor(const OperatorCategory& oc, const OpcMor& f,
                 const std::set<Op>& w);
std::vector<OpcMor> w_tensor(const OperatorCategory& oc,
                             const std::vector<Op>& w);

// Exhaustive categorical calculus-of-left-fractions check for (oc, W^tensor)
// over the enumerated objects.
Report check_w_tensor_clf(const OperatorCategory& oc,
                          const std::vector<Op>& w);

// A functor between operator categories acting color-preservingly on
// operations (image objects carry the same color tuples).
struct OperatorFunctor {
  const OperatorCategory* source = nullptr;
  const OperatorCategory* target = nullptr;
  std::function<Op(const Op&)> op_map;
  OpcMor map(const OpcMor& f) const;
};

// Operator-category image of the comparison multifunctor into the localized
// operad's category of operators.
OperatorFunctor l_tensor(const OperatorCategory& tp,
                         const OperatorCategory& loc,
                         const Multifunctor& phi);

// A lift of the base simplex: a tuple-operad morphism f: x -> y (absent for
// 0-simplices) with isomorphism decorations u, v in the localized operator
// category closing the comparison square.
struct FiberLift {
  int x = -1, y = -1;
  OpcMor f;     // n = 1 only
  OpcMor u, v;  // v unused for n = 0
};

struct FiberCategory {
  int n = 0;
  std::vector<FiberLift> objects;
  // undirected connectivity: a W^tensor arrow (pair of arrows for n = 1)
  // commuting with the decorations
  std::vector<std::pair<int, int>> edges;
};

// n = 0: the base simplex is psi's source object; n = 1: psi itself.
// Lifts are enumerated exhaustively over the source category; decorations
// re-verify their commuting squares on insertion.
FiberCategory hinich_fiber(int n, const OpcMor& psi,
                           const OperatorCategory& tp,
                           const OperatorCategory& loc,
                           const OperatorFunctor& l,
                           const std::vector<Op>& w);

struct FiberAnalysis {
  bool empty = true;
  int components = 0;
  std::vector<int> component_sizes;  // by stable component id
};
FiberAnalysis analyze_fiber(const FiberCategory& f);

// All isomorphisms of the operator category landing on the given object
// (pointed bijections decorated with invertible 1-ary operations).
std::vector<OpcMor> isos_into(const OperatorCategory& oc, int t);

}  // namespace rcop

#endif
