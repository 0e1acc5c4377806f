#include "scenario.hpp"

#include <memory>
#include <stdexcept>

#include "qft_operads.hpp"

namespace rcop {

// ---- bundled universes ------------------------------------------------------

static Rect ibox(long a, long b, long c, long d) {
  return box(Ext(Rat(a)), Ext(Rat(b)), Ext(Rat(c)), Ext(Rat(d)));
}

// three-step staircase band spanning the given box, Cauchy in it
static Region stair_band(const Rect& b) {
  Rat du = b.u_hi.q - b.u_lo.q, dv = b.v_hi.q - b.v_lo.q;
  auto su = [&](const char* f) { return Ext(b.u_lo.q + du * Rat(f)); };
  auto sv = [&](const char* f) { return Ext(b.v_lo.q + dv * Rat(f)); };
  return make_region({box(su("0"), su("3/8"), sv("5/8"), sv("1")),
                      box(su("1/4"), su("3/4"), sv("1/4"), sv("3/4")),
                      box(su("5/8"), su("1"), sv("0"), sv("3/8"))});
}

// add the object's derived factorization pair as two named objects and
// designate it
static void with_pair(std::vector<std::pair<std::string, Region>>& objs,
                      std::map<std::string, MultPair>& pairs,
                      const std::string& name, const Region& r) {
  MultPair mp = *auto_mult_pair(r);
  objs.emplace_back("Cp" + name, mp.later);
  objs.emplace_back("Cm" + name, mp.earlier);
  pairs[name] = mp;
}

std::vector<std::string> bundled_scenario_names() {
  return {"staircase-universe", "crossing-bands", "remark-nested-diamonds"};
}

Scenario bundled_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "staircase-universe") {
    Rect m = ibox(-4, 4, -4, 4), a = ibox(1, 2, -2, -1), b = ibox(-2, -1, 1, 2);
    Region M = make_region({m}), A = make_region({a}), B = make_region({b});
    std::vector<std::pair<std::string, Region>> objs{
        {"M", M}, {"S", stair_band(m)}, {"A", A}, {"B", B}};
    std::map<std::string, MultPair> pairs;
    with_pair(objs, pairs, "M", M);
    with_pair(objs, pairs, "A", A);
    with_pair(objs, pairs, "B", B);
    sc.site = build_site(M, objs, pairs, {});
    sc.blocks = {A, B};
    sc.describes =
        "ambient square with a Cauchy staircase band, a causally disjoint "
        "diamond pair, and designated factorization pairs";
  } else if (name == "crossing-bands") {
    Rect m = ibox(-2, 2, -2, 2);
    Rect p = box(Ext(Rat(-7, 4)), Ext(Rat(-3, 2)), Ext(Rat(-7, 4)),
                 Ext(Rat(-3, 2)));
    Region M = make_region({m});
    std::vector<std::pair<std::string, Region>> objs{
        {"M", M},
        {"U1", make_region({ibox(0, 1, -1, 1)})},
        {"U2", make_region({ibox(-1, 1, 0, 1)})},
        {"S", stair_band(m)},
        {"P", make_region({p})}};
    std::map<std::string, MultPair> pairs;
    with_pair(objs, pairs, "M", M);
    sc.site = build_site(M, objs, pairs, {});
    sc.describes =
        "two overlapping bands whose pair is not time-orderable, plus a "
        "Cauchy staircase whose ambient shift is not orderable either";
  } else if (name == "remark-nested-diamonds") {
    Rect m = ibox(-8, 8, -8, 8), w1 = ibox(1, 3, -3, -1), w2 = ibox(-3, -1, 1, 3);
    Region M = make_region({m}), W1 = make_region({w1}), W2 = make_region({w2});
    std::vector<std::pair<std::string, Region>> objs{
        {"M", M}, {"W1", W1}, {"W2", W2},
        {"T1", stair_band(w1)}, {"T2", stair_band(w2)}};
    std::map<std::string, MultPair> pairs;
    with_pair(objs, pairs, "M", M);
    with_pair(objs, pairs, "W1", W1);
    with_pair(objs, pairs, "W2", W2);
    sc.site = build_site(M, objs, pairs, {});
    sc.blocks = {W1, W2};
    sc.describes =
        "causally disjoint diamonds with staircase Cauchy shrinks, nested "
        "three levels deep";
  } else {
    throw std::invalid_argument("unknown bundled scenario '" + name + "'");
  }
  return sc;
}

// ---- algebra corpus ---------------------------------------------------------

namespace {

MultilinearMap matrix(int d, std::vector<Rat> rows) {
  MultilinearMap m{{d}, d, std::move(rows)};
  return m;
}

struct Carrier {
  int dim;
  MultilinearMap mul;   // (d, d) -> d
  MultilinearMap unit;  // () -> d
};

Carrier carrier_q1() {
  return {1, {{1, 1}, 1, {Rat(1)}}, {{}, 1, {Rat(1)}}};
}

// group algebra of the two-element group, basis {e, s}
Carrier carrier_z2() {
  MultilinearMap mul = mm_zero({2, 2}, 2);
  auto at = [&](int r, int i, int j) -> Rat& { return mul.coeff[r * 4 + i * 2 + j]; };
  at(0, 0, 0) = 1; at(0, 1, 1) = 1;
  at(1, 0, 1) = 1; at(1, 1, 0) = 1;
  return {2, mul, {{}, 2, {Rat(1), Rat(0)}}};
}

// componentwise product on three copies of the rationals
Carrier carrier_q3() {
  MultilinearMap mul = mm_zero({3, 3}, 3);
  for (int k = 0; k < 3; ++k) mul.coeff[k * 9 + k * 3 + k] = 1;
  return {3, mul, {{}, 3, {Rat(1), Rat(1), Rat(1)}}};
}

// upper-triangular two-by-two matrices, basis {e11, e22, e12}
Carrier carrier_t2() {
  MultilinearMap mul = mm_zero({3, 3}, 3);
  auto at = [&](int r, int i, int j) -> Rat& { return mul.coeff[r * 9 + i * 3 + j]; };
  at(0, 0, 0) = 1;
  at(1, 1, 1) = 1;
  at(2, 0, 2) = 1;  // e11 * e12 = e12
  at(2, 2, 1) = 1;  // e12 * e22 = e12
  return {3, mul, {{}, 3, {Rat(1), Rat(1), Rat(0)}}};
}

// shared immutable data captured by a corpus algebra's action
struct CorpusData {
  Carrier car;
  std::vector<MultilinearMap> theta;  // ncolors * ncolors, row-major
  std::vector<Rat> omega;             // per color; empty means all 1
  int ncolors;
  const MultilinearMap& th(int u, int v) const {
    return theta[(size_t)u * ncolors + v];
  }
};

OperadAlgebra corpus_algebra(
    const ColoredOperad& om, const Carrier& car,
    const std::function<MultilinearMap(int, int)>& theta,
    const std::vector<Rat>& omega) {
  auto data = std::make_shared<CorpusData>();
  data->car = car;
  data->omega = omega;
  data->ncolors = om.ncolors;
  data->theta.reserve((size_t)om.ncolors * om.ncolors);
  for (int u = 0; u < om.ncolors; ++u)
    for (int v = 0; v < om.ncolors; ++v) data->theta.push_back(theta(u, v));

  OperadAlgebra a;
  a.operad = om;
  a.dims.assign(om.ncolors, car.dim);
  a.action = [data](const Op& op) {
    int n = (int)op.src.size();
    MultilinearMap out;
    if (n == 0) {
      out = data->car.unit;
    } else {
      Perm pos = op.perm.empty() ? perm_id(n) : perm_inverse(op.perm);
      // multiply the transported factors in time order, future-most first
      MultilinearMap g = data->th(op.src[pos[0]], op.tgt);
      for (int k = 1; k < n; ++k)
        g = mm_compose(data->car.mul, {g, data->th(op.src[pos[k]], op.tgt)});
      out = (n >= 2 && !op.perm.empty()) ? mm_perm(g, op.perm) : g;
    }
    if (!data->omega.empty()) {
      Rat lam = data->omega[op.tgt];
      for (int c : op.src) lam /= data->omega[c];
      for (Rat& x : out.coeff) x *= lam;
    }
    return out;
  };
  return a;
}

}  // namespace

std::vector<std::pair<std::string, OperadAlgebra>> algebra_corpus(
    const ColoredOperad& om, const Site& site,
    const std::vector<Region>& blocks) {
  int nc = om.ncolors;
  auto ident = [](int d) {
    return [d](int, int) { return mm_identity(d); };
  };
  // weight schedules: any nonzero rationals work, these are just distinct
  auto w1 = [](int c) { return Rat(c + 1); };
  auto w2 = [](int c) { return Rat(1, c + 2); };
  auto w3 = [](int c) { return Rat(2 * c + 3, 2); };
  auto w4 = [](int c) { return Rat(c % 4 + 1, c % 3 + 1); };
  auto sched = [&](const std::function<Rat(int)>& w) {
    std::vector<Rat> v;
    for (int c = 0; c < nc; ++c) v.push_back(w(c));
    return v;
  };

  // sign automorphism of the group algebra, graded by a per-color bit
  auto z2_theta = [&](const std::function<int(int)>& g) {
    return [g](int u, int v) {
      MultilinearMap m = mm_identity(2);
      if (((g(v) - g(u)) % 2 + 2) % 2) m.coeff[3] = -1;
      return m;
    };
  };
  // basis-permutation automorphisms of the componentwise product
  auto q3_theta = [&](const std::function<int(int)>& pi) {
    return [pi](int u, int v) {
      std::vector<Perm> ps = all_perms(3);
      Perm p = perm_compose(ps[pi(v) % 6], perm_inverse(ps[pi(u) % 6]));
      MultilinearMap m = mm_zero({3}, 3);
      for (int i = 0; i < 3; ++i) m.coeff[(size_t)p[i] * 3 + i] = 1;
      return m;
    };
  };
  // sector projection: actions leaving a block land in the diagonal (hence
  // commutative) subalgebra, so causally disjoint images commute
  auto inside = [&](int u) {
    for (const Region& b : blocks)
      if (region_subset(site.objects[u], b)) return true;
    return false;
  };
  auto t2_theta = [&](int u, int v) {
    MultilinearMap m = mm_identity(3);
    if (inside(u) && !inside(v)) m.coeff[8] = 0;  // kill e12
    return m;
  };

  std::vector<std::pair<std::string, OperadAlgebra>> out;
  auto add = [&](const std::string& nm, const Carrier& car,
                 const std::function<MultilinearMap(int, int)>& th,
                 const std::vector<Rat>& omega) {
    out.emplace_back(nm, corpus_algebra(om, car, th, omega));
  };
  add("weight-1", carrier_q1(), ident(1), sched(w1));
  add("weight-2", carrier_q1(), ident(1), sched(w2));
  add("weight-3", carrier_q1(), ident(1), sched(w3));
  add("weight-4", carrier_q1(), ident(1), sched(w4));
  add("group-z2-a", carrier_z2(), z2_theta([](int c) { return c; }), {});
  add("group-z2-b", carrier_z2(), z2_theta([](int c) { return c / 2; }), {});
  add("group-z2-w", carrier_z2(), z2_theta([](int c) { return c; }), sched(w1));
  add("perm-q3-a", carrier_q3(), q3_theta([](int c) { return c; }), {});
  add("perm-q3-b", carrier_q3(), q3_theta([](int c) { return 5 * c + 1; }), {});
  add("perm-q3-w", carrier_q3(), q3_theta([](int c) { return c; }), sched(w2));
  add("t2-sectors", carrier_t2(), t2_theta, {});
  add("t2-sectors-w", carrier_t2(), t2_theta, sched(w3));
  return out;
}

// ---- JSON -------------------------------------------------------------------

json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j, const std::string& path) {
  if (!j.is_string() && !j.is_number_integer())
    throw SchemaError(path, "expected a rational string or integer");
  try {
    if (j.is_number_integer()) return Rat((long)j.get<int64_t>());
    return Rat(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(path, "unparseable rational '" + j.dump() + "'");
  }
}

static json ext_to_json(const Ext& e) { return to_string(e); }

static Ext ext_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "-inf") return Ext::neg_inf();
    if (s == "inf") return Ext::pos_inf();
  }
  return Ext(rat_from_json(j, path));
}

json region_to_json(const Region& r) {
  json out = json::array();
  for (const Rect& t : r.rects)
    out.push_back({ext_to_json(t.u_lo), ext_to_json(t.u_hi),
                   ext_to_json(t.v_lo), ext_to_json(t.v_hi)});
  return {{"rects", out}};
}

Region region_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("rects") || !j["rects"].is_array())
    throw SchemaError(path, "expected {\"rects\": [...]}");
  std::vector<Rect> rects;
  for (size_t i = 0; i < j["rects"].size(); ++i) {
    const json& r = j["rects"][i];
    std::string p = path + "/rects/" + std::to_string(i);
    if (!r.is_array() || r.size() != 4)
      throw SchemaError(p, "expected [u_lo, u_hi, v_lo, v_hi]");
    rects.push_back(box(ext_from_json(r[0], p + "/0"), ext_from_json(r[1], p + "/1"),
                        ext_from_json(r[2], p + "/2"), ext_from_json(r[3], p + "/3")));
  }
  return normalize(rects);
}

json site_to_json(const Site& s) {
  json objs = json::object(), pairs = json::object();
  for (int i = 0; i < s.n(); ++i) objs[s.names[i]] = region_to_json(s.objects[i]);
  for (auto& [i, mp] : s.mult_pairs)
    pairs[s.names[i]] = {region_to_json(mp.later), region_to_json(mp.earlier)};
  return {{"ambient", region_to_json(s.ambient)},
          {"objects", objs},
          {"mult_pairs", pairs},
          {"options",
           {{"object_cap", s.options.object_cap},
            {"auto_mult_pairs", s.options.auto_mult_pairs}}}};
}

Site site_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a site object");
  if (!j.contains("ambient")) throw SchemaError(path + "/ambient", "missing");
  Region ambient = region_from_json(j["ambient"], path + "/ambient");
  std::vector<std::pair<std::string, Region>> objs;
  if (j.contains("objects")) {
    if (!j["objects"].is_object())
      throw SchemaError(path + "/objects", "expected name -> region map");
    for (auto& [name, reg] : j["objects"].items())
      objs.emplace_back(name, region_from_json(reg, path + "/objects/" + name));
  }
  std::map<std::string, MultPair> pairs;
  if (j.contains("mult_pairs")) {
    if (!j["mult_pairs"].is_object())
      throw SchemaError(path + "/mult_pairs", "expected name -> pair map");
    for (auto& [name, pr] : j["mult_pairs"].items()) {
      std::string p = path + "/mult_pairs/" + name;
      if (!pr.is_array() || pr.size() != 2)
        throw SchemaError(p, "expected [later, earlier]");
      pairs[name] = MultPair{region_from_json(pr[0], p + "/0"),
                             region_from_json(pr[1], p + "/1")};
    }
  }
  SiteOptions opt;
  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) throw SchemaError(path + "/options", "expected an object");
    if (o.contains("object_cap")) {
      if (!o["object_cap"].is_number_integer())
        throw SchemaError(path + "/options/object_cap", "expected an integer");
      opt.object_cap = o["object_cap"].get<int>();
    }
    if (o.contains("auto_mult_pairs")) {
      if (!o["auto_mult_pairs"].is_boolean())
        throw SchemaError(path + "/options/auto_mult_pairs", "expected a boolean");
      opt.auto_mult_pairs = o["auto_mult_pairs"].get<bool>();
    }
  }
  return build_site(ambient, objs, pairs, opt);
}

json scenario_to_json(const Scenario& s) {
  json blocks = json::array();
  for (const Region& b : s.blocks) blocks.push_back(region_to_json(b));
  return {{"name", s.name},
          {"metadata", {{"describes", s.describes}}},
          {"site", site_to_json(s.site)},
          {"blocks", blocks},
          {"saturation_depth", s.saturation_depth}};
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("", "expected a scenario object");
  Scenario sc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("/name", "expected a string");
    sc.name = j["name"].get<std::string>();
  }
  if (j.contains("metadata") && j["metadata"].is_object() &&
      j["metadata"].contains("describes"))
    sc.describes = j["metadata"]["describes"].get<std::string>();
  if (!j.contains("site")) throw SchemaError("/site", "missing");
  sc.site = site_from_json(j["site"], "/site");
  if (j.contains("blocks")) {
    if (!j["blocks"].is_array())
      throw SchemaError("/blocks", "expected an array of regions");
    for (size_t i = 0; i < j["blocks"].size(); ++i)
      sc.blocks.push_back(
          region_from_json(j["blocks"][i], "/blocks/" + std::to_string(i)));
  }
  if (j.contains("saturation_depth")) {
    if (!j["saturation_depth"].is_number_integer())
      throw SchemaError("/saturation_depth", "expected an integer");
    sc.saturation_depth = j["saturation_depth"].get<int>();
  }
  return sc;
}

std::string op_id(const Op& op) { return op_to_string(op); }

json operad_to_json(const ColoredOperad& o, const Site& s) {
  const char* payload = o.payload == Payload::perm_class      ? "perm_class"
                        : o.payload == Payload::to_tuple      ? "to_tuple"
                                                              : "formal_perm_class";
  json colors = json::array();
  for (const std::string& n : s.names) colors.push_back(n);
  json ops = json::array();
  for (const Op& op : all_ops(o)) {
    json srcs = json::array();
    for (int c : op.src) srcs.push_back(s.names[c]);
    ops.push_back({{"id", op_id(op)},
                   {"src", srcs},
                   {"tgt", s.names[op.tgt]},
                   {"perm", op.perm}});
  }
  return {{"payload", payload},
          {"arity_cap", o.arity_cap},
          {"colors", colors},
          {"ops", ops}};
}

json algebra_to_json(const OperadAlgebra& a, const Site& s) {
  json carriers = json::object();
  for (int c = 0; c < a.operad.ncolors; ++c) carriers[s.names[c]] = a.dims[c];
  json actions = json::object();
  for (const Op& op : all_ops(a.operad)) {
    MultilinearMap m = a.action(op);
    json rows = json::array();
    for (int r = 0; r < m.tgt; ++r) {
      json row = json::array();
      for (long c = 0; c < m.cols(); ++c)
        row.push_back(rat_to_json(m.coeff[(size_t)r * m.cols() + c]));
      rows.push_back(row);
    }
    actions[op_id(op)] = rows;
  }
  return {{"carriers", carriers}, {"actions", actions}};
}

OperadAlgebra algebra_from_json(const json& j, const ColoredOperad& o,
                                const Site& s, const std::string& path) {
  if (!j.is_object() || !j.contains("carriers") || !j.contains("actions"))
    throw SchemaError(path, "expected {carriers, actions}");
  OperadAlgebra a;
  a.operad = o;
  a.dims.assign(o.ncolors, -1);
  for (auto& [name, d] : j["carriers"].items()) {
    int c = s.index_of(name);
    if (c < 0) throw SchemaError(path + "/carriers/" + name, "unknown object");
    if (!d.is_number_integer() || d.get<int>() < 0)
      throw SchemaError(path + "/carriers/" + name, "expected a dimension");
    a.dims[c] = d.get<int>();
  }
  for (int c = 0; c < o.ncolors; ++c)
    if (a.dims[c] < 0)
      throw SchemaError(path + "/carriers", "missing carrier for " + s.names[c]);

  auto table = std::make_shared<std::map<std::string, MultilinearMap>>();
  for (const Op& op : all_ops(o)) {
    std::string id = op_id(op);
    if (!j["actions"].contains(id)) continue;  // detected lazily on use
    const json& rows = j["actions"][id];
    MultilinearMap m;
    for (int c : op.src) m.src.push_back(a.dims[c]);
    m.tgt = a.dims[op.tgt];
    std::string p = path + "/actions/" + id;
    if (!rows.is_array() || (int)rows.size() != m.tgt)
      throw SchemaError(p, "expected " + std::to_string(m.tgt) + " rows");
    for (int r = 0; r < m.tgt; ++r) {
      if (!rows[r].is_array() || (long)rows[r].size() != m.cols())
        throw SchemaError(p + "/" + std::to_string(r),
                          "expected " + std::to_string(m.cols()) + " entries");
      for (long c = 0; c < m.cols(); ++c)
        m.coeff.push_back(rat_from_json(rows[r][c], p));
    }
    (*table)[id] = std::move(m);
  }
  a.action = [table](const Op& op) {
    auto it = table->find(op_id(op));
    if (it == table->end())
      throw std::out_of_range("no action entry for operation " + op_id(op));
    return it->second;
  };
  return a;
}

}  // namespace rcop
