// Batch front door: scenario ingestion, pipeline orchestration, and report
// emission. Exit codes: 0 success, 1 property failure (report embedded),
// 2 schema violation (JSON pointer path on stderr).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "algebra.hpp"
#include "localization.hpp"
#include "operators.hpp"
#include "qft_operads.hpp"
#include "scenario.hpp"

using namespace rcop;

namespace {

struct Flags {
  int arity_cap = 3;
  int saturation_depth = 2;
  bool saturation_set = false;  // flag given explicitly
  long seed = 0;
  int object_cap = 0;  // 0: keep the scenario's cap
  std::string out;
  std::string operad;   // dump-operad / clf-check selector
  std::string algebra;  // algebra file for algebra-check
  int n = 0;            // hinich-scan simplex dimension
};

Scenario load_scenario(const std::string& arg) {
  std::string base = arg;
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json" &&
      !std::filesystem::exists(base))
    base = base.substr(0, base.size() - 5);
  for (const std::string& n : bundled_scenario_names())
    if (base == n) return bundled_scenario(n);
  std::ifstream in(arg);
  if (!in) throw SchemaError("", "cannot open scenario " + arg);
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("", e.what());
  }
  if (j.is_object() && j.contains("site")) return scenario_from_json(j);
  // bare site file: wrap it with the filename as the scenario name
  Scenario sc;
  sc.name = std::filesystem::path(arg).stem().string();
  sc.site = site_from_json(j, "");
  return sc;
}

void emit(const json& report, const Flags& fl) {
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!fl.out.empty()) {
    std::ofstream o(fl.out);
    o << text;
  }
}

json report_head(const std::string& cmd, const Scenario& sc, const Flags& fl) {
  return {{"command", cmd},
          {"scenario", sc.name},
          {"arity_cap", fl.arity_cap},
          {"seed", fl.seed}};
}

json verdict_json(const CLFVerdict& v) {
  const char* s = v.state == Verdict::pass      ? "pass"
                  : v.state == Verdict::refuted ? "refuted"
                                                : "inconclusive";
  json out = {{"state", s}, {"saturation_limited", v.saturation_limited}};
  if (!v.detail.empty()) out["detail"] = v.detail;
  json cex = json::array();
  for (const Op& op : v.cex) cex.push_back(op_id(op));
  if (!cex.empty()) out["counterexample"] = cex;
  return out;
}

json clf_json(const CLFReport& r) {
  return {{"identities_in_w", verdict_json(r.p1)},
          {"w_closed_under_composition", verdict_json(r.p2)},
          {"square_filling", verdict_json(r.p3)},
          {"coequalization", verdict_json(r.p4)},
          {"square_instances", r.instances3},
          {"parallel_pair_instances", r.instances4}};
}

int cmd_validate_site(const Scenario& sc, const Flags& fl) {
  json rep = report_head("validate-site", sc, fl);
  rep["site"] = site_to_json(sc.site);
  json cls = json::object();
  for (int i = 0; i < sc.site.n(); ++i)
    for (int j = 0; j < sc.site.n(); ++j)
      if (i != j && sc.site.admissible(i, j))
        cls[sc.site.names[i] + " -> " + sc.site.names[j]] =
            sc.site.is_cauchy(i, j) ? "cauchy" : "rc";
  rep["inclusions"] = cls;
  json orth = json::array();
  for (int i = 0; i < sc.site.n(); ++i)
    for (int j = i + 1; j < sc.site.n(); ++j)
      if (sc.site.orth[i][j])
        orth.push_back(sc.site.names[i] + " | " + sc.site.names[j]);
  rep["causally_disjoint"] = orth;
  rep["valid"] = true;
  emit(rep, fl);
  return 0;
}

ColoredOperad pick_operad(const std::string& which, const Site& s, int cap) {
  if (which == "tP_M" || which == "tpfa") return build_tP_M(s, cap);
  if (which == "localized") return build_localized_O_M(s, cap);
  return build_O_M(s, cap);
}

int cmd_dump_operad(const Scenario& sc, const Flags& fl) {
  std::string which = fl.operad.empty() ? "O_M" : fl.operad;
  if (which != "O_M" && which != "tP_M" && which != "localized")
    throw SchemaError("/flags/operad", "expected O_M, tP_M, or localized");
  json rep = report_head("dump-operad", sc, fl);
  rep["operad"] = which;
  rep["dump"] = operad_to_json(pick_operad(which, sc.site, fl.arity_cap), sc.site);
  emit(rep, fl);
  return 0;
}

int cmd_clf_check(const Scenario& sc, const Flags& fl) {
  std::string which = fl.operad.empty() ? "aqft" : fl.operad;
  if (which != "aqft" && which != "tpfa")
    throw SchemaError("/flags/operad", "expected aqft or tpfa");
  ColoredOperad o = which == "aqft" ? build_O_M(sc.site, fl.arity_cap)
                                    : build_tP_M(sc.site, fl.arity_cap);
  CLFReport r = clf_check(o, cauchy_ops(o, sc.site), &sc.site);
  json rep = report_head("clf-check", sc, fl);
  rep["operad"] = which;
  rep["report"] = clf_json(r);
  rep["all_pass"] = r.all_pass();
  emit(rep, fl);
  return r.all_pass() ? 0 : 1;
}

int cmd_localize(const Scenario& sc, const Flags& fl) {
  int depth = fl.saturation_set ? fl.saturation_depth : sc.saturation_depth;
  Site s = sc.site;
  if (fl.object_cap > 0) s.options.object_cap = fl.object_cap;
  s = saturate(s, depth);
  ColoredOperad loc = build_localized_O_M(s, fl.arity_cap);
  GZCategory gz = gz_localize_category(s);

  json rep = report_head("localize", sc, fl);
  rep["saturation_depth"] = depth;
  rep["objects"] = s.n();
  rep["dump"] = operad_to_json(loc, s);

  std::vector<std::string> failures(gz.unresolved);
  Region amb = s.ambient;
  for (int u = 0; u < s.n(); ++u)
    for (int v = 0; v < s.n(); ++v) {
      auto hom = loc.ops({u}, v);
      if (hom.size() > 1)
        failures.push_back("hom " + s.names[u] + " -> " + s.names[v] +
                           " is not thin");
      bool frac = gz.hom[u][v].has_value();
      if (frac != !hom.empty())
        failures.push_back("fraction category disagrees at " + s.names[u] +
                           " -> " + s.names[v]);
      Region dev = cauchy_development(s.objects[v], amb);
      bool crit = region_subset(s.objects[u], dev) &&
                  classify_inclusion(s.objects[u], dev).admissible();
      if (crit != !hom.empty())
        failures.push_back("development criterion disagrees at " +
                           s.names[u] + " -> " + s.names[v]);
    }
  rep["failures"] = failures;
  rep["consistent"] = failures.empty();
  emit(rep, fl);
  return failures.empty() ? 0 : 1;
}

int cmd_hinich_scan(const Scenario& sc, const Flags& fl) {
  if (fl.n != 0 && fl.n != 1)
    throw SchemaError("/flags/n", "expected 0 or 1");
  const Site& s = sc.site;
  int cap = std::min(fl.arity_cap, 2);  // fibers over tuples up to pairs
  ColoredOperad tp = build_tP_M(s, cap);
  ColoredOperad om = build_O_M(s, cap);
  ColoredOperad lo = build_localized_O_M(s, cap);
  OperatorCategory tpc = category_of_operators(tp, cap);
  OperatorCategory loc = category_of_operators(lo, cap);
  Multifunctor phi = build_Phi_M(tp, om, s);
  OperatorFunctor l = l_tensor(tpc, loc, phi);
  std::vector<Op> w = cauchy_ops(tp, s);

  std::vector<OpcMor> psis;
  if (fl.n == 0) {
    for (int t = 0; t < (int)loc.objects.size(); ++t)
      psis.push_back(loc.identity(t));
  } else {
    // 1-simplices: every binary operation class, viewed as a morphism
    // collapsing its pair onto a singleton
    for (int a = 0; a < lo.ncolors; ++a)
      for (int b = 0; b < lo.ncolors; ++b)
        for (int t = 0; t < lo.ncolors; ++t)
          for (const Op& op : lo.ops({a, b}, t))
            psis.push_back(
                {loc.index_of({a, b}), loc.index_of({t}), {1, 1}, {op}});
  }

  json records = json::array();
  bool any_empty_n0 = false;
  for (const OpcMor& psi : psis) {
    FiberAnalysis r = analyze_fiber(hinich_fiber(fl.n, psi, tpc, loc, l, w));
    if (fl.n == 0 && (r.empty || r.components != 1)) any_empty_n0 = true;
    records.push_back({{"psi", opcmor_to_string(psi)},
                       {"n", fl.n},
                       {"empty", r.empty},
                       {"components", r.components}});
  }
  json rep = report_head("hinich-scan", sc, fl);
  rep["n"] = fl.n;
  rep["fibers"] = records;
  emit(rep, fl);
  return fl.n == 0 && any_empty_n0 ? 1 : 0;
}

int cmd_algebra_check(const Scenario& sc, const Flags& fl) {
  ColoredOperad om = build_O_M(sc.site, fl.arity_cap);
  std::vector<std::pair<std::string, OperadAlgebra>> entries;
  if (!fl.algebra.empty()) {
    std::ifstream in(fl.algebra);
    if (!in) throw SchemaError("", "cannot open algebra " + fl.algebra);
    json j;
    try {
      j = json::parse(in);
    } catch (const std::exception& e) {
      throw SchemaError("", e.what());
    }
    entries.emplace_back(std::filesystem::path(fl.algebra).stem().string(),
                         algebra_from_json(j, om, sc.site));
  } else {
    entries = algebra_corpus(om, sc.site, sc.blocks);
  }
  std::vector<Op> w = cauchy_ops(om, sc.site);
  json results = json::array();
  bool all = true;
  for (auto& [name, a] : entries) {
    Report ax = check_algebra(a);
    bool ts = strict_timeslice(a, w);
    Report ec = check_einstein_causality(a, sc.site);
    bool ok = ax.ok() && ts && ec.ok();
    all = all && ok;
    json r = {{"algebra", name},
              {"axioms", ax.ok()},
              {"time_slice", ts},
              {"einstein_causality", ec.ok()}};
    json fs = json::array();
    for (const auto& f : ax.failures) fs.push_back(f);
    for (const auto& f : ec.failures) fs.push_back(f);
    if (!fs.empty()) r["failures"] = fs;
    results.push_back(r);
  }
  json rep = report_head("algebra-check", sc, fl);
  rep["results"] = results;
  rep["all_pass"] = all;
  emit(rep, fl);
  return all ? 0 : 1;
}

int cmd_roundtrip(const Scenario& sc, const Flags& fl) {
  int cap = std::min(fl.arity_cap, 2);  // exact either way; 2 keeps it quick
  ColoredOperad om = build_O_M(sc.site, cap);
  ColoredOperad tp = build_tP_M(sc.site, cap);
  Multifunctor phi = build_Phi_M(tp, om, sc.site);
  auto om_ops = all_ops(om);
  auto tp_ops = all_ops(tp);
  json results = json::array();
  bool all = true;
  for (auto& [name, b] : algebra_corpus(om, sc.site, sc.blocks)) {
    OperadAlgebra f = pullback(phi, b);
    OperadAlgebra back = invert_comparison(f, om, sc.site, false);
    bool inv_then = true, then_inv = true;
    for (const Op& op : om_ops)
      if (!(back.action(op) == b.action(op))) inv_then = false;
    OperadAlgebra fwd = pullback(phi, back);
    for (const Op& op : tp_ops)
      if (!(fwd.action(op) == f.action(op))) then_inv = false;
    all = all && inv_then && then_inv;
    results.push_back({{"algebra", name},
                       {"invert_after_pullback_is_id", inv_then},
                       {"pullback_after_invert_is_id", then_inv}});
  }
  json rep = report_head("roundtrip", sc, fl);
  rep["results"] = results;
  rep["all_pass"] = all;
  emit(rep, fl);
  return all ? 0 : 1;
}

int cmd_dcas(const Scenario& sc, const Flags& fl) {
  int cap = std::min(fl.arity_cap, 2);
  ColoredOperad om = build_O_M(sc.site, cap);
  auto ops = all_ops(om);
  json results = json::array();
  bool all = true;
  for (auto& [name, a] : algebra_corpus(om, sc.site, sc.blocks)) {
    GlobalFamily fam = decompose(a, sc.site);
    bool coherent = check_family(fam, sc.site).ok();
    OperadAlgebra back = assemble(fam, sc.site);
    bool exact = back.dims == a.dims;
    for (const Op& op : ops)
      if (exact && !(back.action(op) == a.action(op))) exact = false;
    bool iso = check_reassembly_iso(fam, sc.site).ok();
    all = all && coherent && exact && iso;
    results.push_back({{"algebra", name},
                       {"family_coherent", coherent},
                       {"assemble_decompose_id", exact},
                       {"reassembly_iso", iso}});
  }
  json rep = report_head("dcas", sc, fl);
  rep["results"] = results;
  rep["all_pass"] = all;
  emit(rep, fl);
  return all ? 0 : 1;
}

int cmd_paper_suite(const Flags& fl) {
  json scenarios = json::array();
  std::ostringstream lines;
  bool all = true;
  for (const std::string& name : bundled_scenario_names()) {
    Scenario sc = bundled_scenario(name);
    const Site& s = sc.site;
    std::vector<std::string> bad;
    auto expect = [&](bool cond, const std::string& what) {
      if (!cond) bad.push_back(what);
    };

    ColoredOperad om = build_O_M(s, 2);
    ColoredOperad tp = build_tP_M(s, 2);
    ColoredOperad lo = build_localized_O_M(s, 2);
    Multifunctor phi = build_Phi_M(tp, om, s);
    expect(check_operad_axioms(om).ok(), "classes operad axioms");
    expect(check_operad_axioms(tp).ok(), "tuple operad axioms");
    expect(check_operad_axioms(lo).ok(), "localized operad axioms");
    expect(check_multifunctor(phi).ok(), "comparison multifunctor");
    expect(check_multifunctor(localization_multifunctor(om, lo, s)).ok(),
           "localization multifunctor");

    // localization cross-checks on the saturated copy
    Site sat = saturate(s, sc.saturation_depth);
    ColoredOperad satloc = build_localized_O_M(sat, 1);
    GZCategory gz = gz_localize_category(sat);
    expect(gz.unresolved.empty(), "fraction category thinness");
    bool agree = true;
    for (int u = 0; u < sat.n(); ++u)
      for (int v = 0; v < sat.n(); ++v) {
        auto hom = satloc.ops({u}, v);
        if (hom.size() > 1 || gz.hom[u][v].has_value() != !hom.empty())
          agree = false;
        Region dev = cauchy_development(sat.objects[v], sat.ambient);
        bool crit = region_subset(sat.objects[u], dev) &&
                    classify_inclusion(sat.objects[u], dev).admissible();
        if (crit != !hom.empty()) agree = false;
      }
    expect(agree, "localized homs match the fraction category");

    if (name == "staircase-universe") {
      CLFReport r = clf_check(om, cauchy_ops(om, s), &s);
      expect(r.all_pass(), "left fractions for the classes operad");
    }
    if (name == "crossing-bands") {
      CLFReport r = clf_check(tp, cauchy_ops(tp, s), &s);
      expect(r.p3.state == Verdict::refuted && !r.p3.cex.empty(),
             "square filling refuted for the tuple operad");

      OperatorCategory tpc = category_of_operators(tp, 2);
      OperatorCategory loc = category_of_operators(lo, 2);
      OperatorFunctor l = l_tensor(tpc, loc, phi);
      int i1 = s.index_of("U1"), i2 = s.index_of("U2"), iM = s.index_of("M");
      auto classes = lo.ops({i1, i2}, iM);
      expect(classes.size() == 2, "two crossing binary classes");
      for (const Op& c : classes) {
        OpcMor psi{loc.index_of({i1, i2}), loc.index_of({iM}), {1, 1}, {c}};
        FiberAnalysis r1 = analyze_fiber(
            hinich_fiber(1, psi, tpc, loc, l, cauchy_ops(tp, s)));
        expect(r1.empty, "empty fiber over the crossing operation");
      }
    }

    // algebra pipeline: corpus validity, both round trips, reassembly
    std::vector<Op> w = cauchy_ops(om, s);
    auto om_ops = all_ops(om);
    auto tp_ops = all_ops(tp);
    auto corpus = algebra_corpus(om, s, sc.blocks);
    expect(corpus.size() >= 10, "corpus size");
    for (auto& [nm, a] : corpus) {
      bool ok = check_algebra(a).ok() && strict_timeslice(a, w) &&
                check_einstein_causality(a, s).ok();
      expect(ok, "algebra " + nm);
      OperadAlgebra f = pullback(phi, a);
      OperadAlgebra back = invert_comparison(f, om, s, false);
      bool round = true;
      for (const Op& op : om_ops)
        if (!(back.action(op) == a.action(op))) round = false;
      OperadAlgebra fwd = pullback(phi, back);
      for (const Op& op : tp_ops)
        if (!(fwd.action(op) == f.action(op))) round = false;
      expect(round, "round trips for " + nm);
    }
    {
      GlobalFamily fam = decompose(corpus[0].second, s);
      OperadAlgebra back = assemble(fam, s);
      bool exact = true;
      for (const Op& op : om_ops)
        if (!(back.action(op) == corpus[0].second.action(op))) exact = false;
      expect(exact && check_family(fam, s).ok() &&
                 check_reassembly_iso(fam, s).ok(),
             "decompose/assemble");
    }

    bool pass = bad.empty();
    all = all && pass;
    lines << (pass ? "PASS " : "FAIL ") << name << "\n";
    json entry = {{"scenario", name}, {"pass", pass}};
    if (!bad.empty()) {
      json b = json::array();
      for (const auto& x : bad) b.push_back(x);
      entry["failures"] = b;
    }
    scenarios.push_back(entry);
  }
  std::cout << lines.str();
  json rep = {{"command", "paper-suite"},
              {"seed", fl.seed},
              {"scenarios", scenarios},
              {"all_pass", all}};
  emit(rep, fl);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"region-causal operad pipeline"};
  app.require_subcommand(1);

  Flags fl;
  std::string scenario;
  auto add_common = [&](CLI::App* c, bool needs_scenario) {
    if (needs_scenario)
      c->add_option("scenario", scenario,
                    "scenario file or bundled scenario name")
          ->required();
    c->add_option("--arity-cap", fl.arity_cap, "operad arity cap");
    c->add_option("--saturation-depth", fl.saturation_depth,
                  "site saturation depth")
        ->each([&](const std::string&) { fl.saturation_set = true; });
    c->add_option("--seed", fl.seed, "seed recorded in the report");
    c->add_option("--object-cap", fl.object_cap, "site object cap override");
    c->add_option("--out", fl.out, "also write the report to this file");
    return c;
  };

  auto* validate = add_common(app.add_subcommand("validate-site"), true);
  auto* dump = add_common(app.add_subcommand("dump-operad"), true);
  dump->add_option("--operad", fl.operad, "O_M | tP_M | localized");
  auto* clf = add_common(app.add_subcommand("clf-check"), true);
  clf->add_option("--operad", fl.operad, "aqft | tpfa");
  auto* localize = add_common(app.add_subcommand("localize"), true);
  auto* hinich = add_common(app.add_subcommand("hinich-scan"), true);
  hinich->add_option("--n", fl.n, "simplex dimension, 0 or 1");
  auto* algcheck = add_common(app.add_subcommand("algebra-check"), true);
  algcheck->add_option("--algebra", fl.algebra, "algebra file (JSON)");
  auto* roundtrip = add_common(app.add_subcommand("roundtrip"), true);
  auto* dcas = add_common(app.add_subcommand("dcas"), true);
  auto* suite = add_common(app.add_subcommand("paper-suite"), false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) return cmd_paper_suite(fl);
    Scenario sc = load_scenario(scenario);
    if (validate->parsed()) return cmd_validate_site(sc, fl);
    if (dump->parsed()) return cmd_dump_operad(sc, fl);
    if (clf->parsed()) return cmd_clf_check(sc, fl);
    if (localize->parsed()) return cmd_localize(sc, fl);
    if (hinich->parsed()) return cmd_hinich_scan(sc, fl);
    if (algcheck->parsed()) return cmd_algebra_check(sc, fl);
    if (roundtrip->parsed()) return cmd_roundtrip(sc, fl);
    if (dcas->parsed()) return cmd_dcas(sc, fl);
  } catch (const SchemaError& e) {
    std::cerr << "schema violation at " << (e.path.empty() ? "/" : e.path)
              << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json rep = {{"error", e.what()}};
    std::cout << rep.dump(2) << "\n";
    return 1;
  }
  return 0;
}
