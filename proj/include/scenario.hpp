#ifndef SCENARIO_HPP
#define SCENARIO_HPP

// Bundled universes, the reference corpus of strict-time-slice algebras over
// them, and JSON serialization for sites, operads, algebras, and scenarios.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "site.hpp"

namespace rcop {

// insertion-ordered so serialized sites keep their object order on reparse
using json = nlohmann::ordered_json;

struct Scenario {
  std::string name;
  std::string describes;  // one-line metadata note
  Site site;
  // commuting-sector regions for the noncommutative corpus entries: actions
  // out of these regions are forced into a commutative subalgebra so that
  // causally disjoint images commute
  std::vector<Region> blocks;
  int saturation_depth = 1;  // depth used for localization cross-checks
};

std::vector<std::string> bundled_scenario_names();
Scenario bundled_scenario(const std::string& name);  // throws on unknown

// Deterministic reference corpus: >= 10 distinct strict-time-slice algebras
// with carrier dimension <= 3, including noncommutative ones when blocks are
// given. Every entry satisfies the algebra axioms over om.
std::vector<std::pair<std::string, OperadAlgebra>> algebra_corpus(
    const ColoredOperad& om, const Site& site,
    const std::vector<Region>& blocks);

// ---- JSON ------------------------------------------------------------------
// Parse errors throw SchemaError carrying a JSON-pointer-style path.

struct SchemaError : std::runtime_error {
  std::string path;
  SchemaError(const std::string& p, const std::string& what)
      : std::runtime_error(p + ": " + what), path(p) {}
};

json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j, const std::string& path);
json region_to_json(const Region& r);
Region region_from_json(const json& j, const std::string& path);
json site_to_json(const Site& s);
Site site_from_json(const json& j, const std::string& path = "/site");
json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

// Stable operation key used by operad dumps and algebra files.
std::string op_id(const Op& op);
json operad_to_json(const ColoredOperad& o, const Site& s);
json algebra_to_json(const OperadAlgebra& a, const Site& s);
// Actions become a finite table keyed by op_id; evaluating the resulting
// algebra on an unlisted operation throws std::out_of_range.
OperadAlgebra algebra_from_json(const json& j, const ColoredOperad& o,
                                const Site& s, const std::string& path = "");

}  // namespace rcop

#endif
