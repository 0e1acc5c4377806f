#ifndef SITE_HPP
#define SITE_HPP

// Finite validated universe of causally convex opens inside one ambient
// region: the object set shared by all operads, with cached inclusion
// classifications, the causal-disjointness orthogonality relation, and the
// designated factorization pairs used by the algebra layer.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geom.hpp"

namespace rcop {

// Disjoint time-orderable pair of admissible sub-objects of an object V,
// with the causally later member first. No bounded V can host two disjoint
// subregions that are each Cauchy in it (a Cauchy subregion of a finite
// rectangle union always fills an open corner box at V's past-most null
// extreme, so two of them overlap there), so the members are merely required
// admissible; the algebra layer separately demands that its actions on the
// two inclusions are invertible before using the pair.
struct MultPair {
  Region later;    // carries the first factor of the constructed product
  Region earlier;
};

struct SiteOptions {
  int object_cap = 64;
  bool auto_mult_pairs = false;  // derive pairs for bounded objects
};

struct Site {
  Region ambient;
  std::vector<std::string> names;
  std::vector<Region> objects;
  // incl[i][j]: classification of objects[i] into objects[j]; present iff
  // the inclusion holds and is Cauchy or relatively compact
  std::vector<std::vector<std::optional<InclusionClass>>> incl;
  std::vector<std::vector<char>> subset;  // raw containment
  std::vector<std::vector<char>> orth;    // causal disjointness
  std::map<int, MultPair> mult_pairs;
  SiteOptions options;

  int n() const { return (int)objects.size(); }
  int index_of(const std::string& name) const;  // -1 if absent
  bool admissible(int i, int j) const { return incl[i][j].has_value(); }
  bool is_cauchy(int i, int j) const {
    return incl[i][j] && incl[i][j]->cauchy;
  }
};

// Validates everything; throws std::invalid_argument naming the offender.
Site build_site(const Region& ambient,
                const std::vector<std::pair<std::string, Region>>& objects,
                const std::map<std::string, MultPair>& mult_pairs = {},
                const SiteOptions& options = {});

// Close the object set under ambient developments, causally convex hulls of
// pairwise unions, and mult-pair members, up to the given depth. Throws on
// exceeding options.object_cap.
Site saturate(const Site& site, int depth);

// Two timelike-separated relatively compact sub-diamonds placed in the first
// bounded rectangle of v; nullopt when v has no bounded rectangle.
std::optional<MultPair> auto_mult_pair(const Region& v);

}  // namespace rcop

#endif
