#include "site.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rcop {

int Site::index_of(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (names[i] == name) return i;
  return -1;
}

static Rect scale_rect(const Rect& unit, const Rect& v) {
  auto mapu = [&](const Rat& x) { return v.u_lo.q + (v.u_hi.q - v.u_lo.q) * x; };
  auto mapv = [&](const Rat& x) { return v.v_lo.q + (v.v_hi.q - v.v_lo.q) * x; };
  return Rect{Ext(mapu(unit.u_lo.q)), Ext(mapu(unit.u_hi.q)),
              Ext(mapv(unit.v_lo.q)), Ext(mapv(unit.v_hi.q))};
}

std::optional<MultPair> auto_mult_pair(const Region& v) {
  const Rect* host = nullptr;
  for (const Rect& r : v.rects)
    if (r.u_lo.finite() && r.u_hi.finite() && r.v_lo.finite() &&
        r.v_hi.finite()) {
      host = &r;
      break;
    }
  if (!host) return std::nullopt;
  auto rq = [&](const char* a, const char* bb, const char* c, const char* d) {
    return scale_rect(Rect{Ext(Rat(a)), Ext(Rat(bb)), Ext(Rat(c)), Ext(Rat(d))},
                      *host);
  };
  // two timelike-separated diamonds in the host rectangle, the upper one
  // strictly in the future of the lower one
  Region upper = make_region({rq("1/2", "7/8", "1/2", "7/8")});
  Region lower = make_region({rq("1/8", "1/2", "1/8", "1/2")});
  return MultPair{upper, lower};
}

static void validate_mult_pair(const std::string& name, const Region& v,
                               const MultPair& mp) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("mult_pair for '" + name + "': " + why);
  };
  for (const Region* r : {&mp.later, &mp.earlier}) {
    if (r->empty()) fail("member is empty");
    if (!is_causally_convex(*r)) fail("member not causally convex");
    if (!region_subset(*r, v)) fail("member not contained in the object");
    if (!classify_inclusion(*r, v).admissible())
      fail("member inclusion is neither Cauchy nor relatively compact");
  }
  if (!region_intersect(mp.later, mp.earlier).empty())
    fail("members are not disjoint");
  auto rho = time_ordering({mp.later, mp.earlier}, &v);
  if (!rho) fail("pair is not time-orderable in the object");
  if ((*rho)[0] != 0)
    fail("pair is ordered with 'later' second; swap the members");
}

Site build_site(const Region& ambient,
                const std::vector<std::pair<std::string, Region>>& objects,
                const std::map<std::string, MultPair>& mult_pairs,
                const SiteOptions& options) {
  if (!is_causally_convex(ambient))
    throw std::invalid_argument("ambient region is not causally convex");
  Site s;
  s.ambient = ambient;
  s.options = options;
  std::set<std::string> seen;
  for (auto& [name, reg] : objects) {
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate object name '" + name + "'");
    if (!is_causally_convex(reg))
      throw std::invalid_argument("object '" + name + "' is not causally convex");
    if (!region_subset(reg, ambient))
      throw std::invalid_argument("object '" + name + "' not contained in ambient");
    if (!classify_inclusion(reg, ambient).admissible())
      throw std::invalid_argument("object '" + name +
                                  "' is neither Cauchy nor relatively compact in ambient");
    s.names.push_back(name);
    s.objects.push_back(reg);
  }
  if ((int)s.objects.size() > options.object_cap)
    throw std::runtime_error("object cap exceeded while building site");

  int n = s.n();
  s.incl.assign(n, std::vector<std::optional<InclusionClass>>(n));
  s.subset.assign(n, std::vector<char>(n, 0));
  s.orth.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (region_subset(s.objects[i], s.objects[j])) {
        s.subset[i][j] = 1;
        InclusionClass c = classify_inclusion(s.objects[i], s.objects[j]);
        if (c.admissible()) s.incl[i][j] = c;
      }
      if (i < j)
        s.orth[i][j] = are_causally_disjoint(s.objects[i], s.objects[j]);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) s.orth[i][j] = s.orth[j][i];

  // composition closure of the classification table (integrity invariant)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!s.admissible(i, j) || !s.admissible(j, k)) continue;
        if (!s.admissible(i, k))
          throw std::logic_error("inclusion table not closed under composition");
        const InclusionClass &a = *s.incl[i][j], &b = *s.incl[j][k];
        if (a.cauchy && b.cauchy && !s.incl[i][k]->cauchy)
          throw std::logic_error("Cauchy o Cauchy failed to classify Cauchy");
        if ((a.relatively_compact || b.relatively_compact) &&
            !s.incl[i][k]->relatively_compact)
          throw std::logic_error("rc leg failed to classify rc");
      }

  for (auto& [name, mp] : mult_pairs) {
    int i = s.index_of(name);
    if (i < 0)
      throw std::invalid_argument("mult_pair names unknown object '" + name + "'");
    validate_mult_pair(name, s.objects[i], mp);
    s.mult_pairs[i] = mp;
  }
  if (options.auto_mult_pairs)
    for (int i = 0; i < n; ++i) {
      if (s.mult_pairs.count(i)) continue;
      if (auto mp = auto_mult_pair(s.objects[i])) {
        validate_mult_pair(s.names[i], s.objects[i], *mp);
        s.mult_pairs[i] = *mp;
      }
    }
  return s;
}

Site saturate(const Site& site, int depth) {
  Site cur = site;
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<std::string, Region>> objs;
    for (int i = 0; i < cur.n(); ++i) objs.emplace_back(cur.names[i], cur.objects[i]);
    auto have = [&](const Region& r) {
      for (auto& [nm, reg] : objs)
        if (reg == r) return true;
      return false;
    };
    auto add = [&](const std::string& nm, const Region& r) {
      if (r.empty() || have(r)) return;
      if (!classify_inclusion(r, cur.ambient).admissible()) return;  // defensive
      std::string name = nm;
      int bump = 0;
      auto taken = [&](const std::string& c) {
        for (auto& [x, reg] : objs)
          if (x == c) return true;
        return false;
      };
      while (taken(name)) name = nm + "'" + std::to_string(++bump);
      objs.emplace_back(name, r);
      if ((int)objs.size() > cur.options.object_cap)
        throw std::runtime_error("saturation exceeded object cap adding " + nm);
    };
    int base = cur.n();
    for (int i = 0; i < base; ++i)
      add("D(" + cur.names[i] + ")", cauchy_development(cur.objects[i], cur.ambient));
    for (int i = 0; i < base; ++i)
      for (int j = i + 1; j < base; ++j)
        add("H(" + cur.names[i] + "," + cur.names[j] + ")",
            causally_convex_hull(region_union(cur.objects[i], cur.objects[j])));
    for (auto& [i, mp] : cur.mult_pairs) {
      add("Cp(" + cur.names[i] + ")", mp.later);
      add("Cm(" + cur.names[i] + ")", mp.earlier);
    }
    if ((int)objs.size() == cur.n()) break;  // fixpoint
    std::map<std::string, MultPair> pairs;
    for (auto& [i, mp] : cur.mult_pairs) pairs[cur.names[i]] = mp;
    cur = build_site(cur.ambient, objs, pairs, cur.options);
  }
  return cur;
}

}  // namespace rcop
