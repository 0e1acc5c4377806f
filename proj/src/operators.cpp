#include "operators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rcop {

bool operator==(const OpcMor& a, const OpcMor& b) {
  return a.src == b.src && a.tgt == b.tgt && a.phi == b.phi && a.ops == b.ops;
}

bool operator<(const OpcMor& a, const OpcMor& b) {
  if (a.src != b.src) return a.src < b.src;
  if (a.tgt != b.tgt) return a.tgt < b.tgt;
  if (a.phi != b.phi) return a.phi < b.phi;
  return a.ops < b.ops;
}

std::string opcmor_to_string(const OpcMor& m) {
  std::ostringstream s;
  s << "#" << m.src << "->#" << m.tgt << " phi[";
  for (size_t i = 0; i < m.phi.size(); ++i) s << (i ? "," : "") << m.phi[i];
  s << "]";
  for (const Op& op : m.ops) s << " " << op_to_string(op);
  return s.str();
}

int OperatorCategory::index_of(const std::vector<int>& colors) const {
  auto it = std::lower_bound(
      objects.begin(), objects.end(), colors,
      [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
      });
  if (it == objects.end() || *it != colors) return -1;
  return (int)(it - objects.begin());
}

OpcMor OperatorCategory::identity(int a) const {
  OpcMor m;
  m.src = m.tgt = a;
  const auto& A = objects[a];
  m.phi.resize(A.size());
  for (size_t i = 0; i < A.size(); ++i) {
    m.phi[i] = (int)i + 1;
    m.ops.push_back(o->unit(A[i]));
  }
  return m;
}

std::vector<OpcMor> OperatorCategory::hom(int a, int b) const {
  const auto& A = objects[a];
  const auto& B = objects[b];
  int n = (int)A.size(), m = (int)B.size();
  std::vector<OpcMor> out;
  std::vector<int> phi(n, 0);
  for (;;) {
    std::vector<std::vector<Op>> cand(m);
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      std::vector<int> pre;
      for (int i = 0; i < n; ++i)
        if (phi[i] == j + 1) pre.push_back(A[i]);
      cand[j] = o->ops(pre, B[j]);
      if (cand[j].empty()) ok = false;
    }
    if (ok) {
      std::vector<size_t> pick(m, 0);
      for (;;) {
        OpcMor f{a, b, phi, {}};
        for (int j = 0; j < m; ++j) f.ops.push_back(cand[j][pick[j]]);
        out.push_back(f);
        int j = 0;
        while (j < m && ++pick[j] == cand[j].size()) pick[j++] = 0;
        if (j == m) break;
      }
    }
    int i = 0;
    while (i < n && ++phi[i] > m) phi[i++] = 0;
    if (i == n) break;
  }
  return out;
}

bool OperatorCategory::is_morphism(const OpcMor& f) const {
  if (f.src < 0 || f.tgt < 0 || f.src >= (int)objects.size() ||
      f.tgt >= (int)objects.size())
    return false;
  const auto& A = objects[f.src];
  const auto& B = objects[f.tgt];
  int n = (int)A.size(), m = (int)B.size();
  if ((int)f.phi.size() != n || (int)f.ops.size() != m) return false;
  for (int x : f.phi)
    if (x < 0 || x > m) return false;
  for (int j = 0; j < m; ++j) {
    std::vector<int> pre;
    for (int i = 0; i < n; ++i)
      if (f.phi[i] == j + 1) pre.push_back(A[i]);
    if (f.ops[j].src != pre || f.ops[j].tgt != B[j] || !o->has_op(f.ops[j]))
      return false;
  }
  return true;
}

std::optional<OpcMor> OperatorCategory::compose(const OpcMor& g,
                                                const OpcMor& f) const {
  if (f.tgt != g.src) return std::nullopt;
  const auto& B = objects[f.tgt];
  const auto& C = objects[g.tgt];
  int n = (int)f.phi.size(), m = (int)B.size(), l = (int)C.size();
  OpcMor r;
  r.src = f.src;
  r.tgt = g.tgt;
  r.phi.resize(n);
  for (int i = 0; i < n; ++i)
    r.phi[i] = f.phi[i] == 0 ? 0 : g.phi[f.phi[i] - 1];
  for (int k = 0; k < l; ++k) {
    std::vector<Op> inner;
    std::vector<int> concat;  // source entries in inner-slot order
    for (int j = 0; j < m; ++j) {
      if (g.phi[j] != k + 1) continue;
      inner.push_back(f.ops[j]);
      for (int i = 0; i < n; ++i)
        if (f.phi[i] == j + 1) concat.push_back(i);
    }
    auto raw = o->compose(g.ops[k], inner);
    if (!raw) return std::nullopt;
    // reorder the concatenated preimages into natural index order
    std::vector<int> natural = concat;
    std::sort(natural.begin(), natural.end());
    Perm tau(concat.size());
    for (size_t t = 0; t < natural.size(); ++t)
      tau[t] = (int)(std::find(concat.begin(), concat.end(), natural[t]) -
                     concat.begin());
    Op fixed = o->perm_action(*raw, tau);
    if (!o->has_op(fixed)) return std::nullopt;
    r.ops.push_back(fixed);
  }
  return r;
}

OperatorCategory category_of_operators(const ColoredOperad& o, int cap) {
  if (cap > o.arity_cap)
    throw std::overflow_error(
        "operator-category cap exceeds the operad arity cap; preimage "
        "tuples would have no operations");
  OperatorCategory oc;
  oc.o = &o;
  oc.cap = cap;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int len) {
    if ((int)cur.size() == len) {
      oc.objects.push_back(cur);
      return;
    }
    for (int c = 0; c < o.ncolors; ++c) {
      cur.push_back(c);
      gen(len);
      cur.pop_back();
    }
  };
  for (int len = 0; len <= cap; ++len) gen(len);
  return oc;
}

bool in_w_tensor(const OperatorCategory& oc, const OpcMor& f,
                 const std::set<Op>& w) {
  const auto& A = oc.objects[f.src];
  const auto& B = oc.objects[f.tgt];
  if (A.size() != B.size()) return false;
  std::vector<char> hit(B.size(), 0);
  for (int x : f.phi) {
    if (x == 0 || hit[x - 1]) return false;
    hit[x - 1] = 1;
  }
  for (const Op& op : f.ops)
    if (!w.count(op)) return false;
  return true;
}

std::vector<OpcMor> w_tensor(const OperatorCategory& oc,
                             const std::vector<Op>& w) {
  std::vector<std::vector<Op>> w_from(oc.o->ncolors);
  for (const Op& a : w) w_from[a.src[0]].push_back(a);
  std::vector<OpcMor> out;
  for (int a = 0; a < (int)oc.objects.size(); ++a) {
    const auto& A = oc.objects[a];
    int n = (int)A.size();
    for (const Perm& sigma : all_perms(n)) {
      std::vector<size_t> pick(n, 0), lims(n);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        lims[i] = w_from[A[i]].size();
        if (!lims[i]) ok = false;
      }
      if (!ok) continue;
      for (;;) {
        OpcMor f;
        f.src = a;
        f.phi.resize(n);
        f.ops.resize(n);
        std::vector<int> B(n);
        for (int i = 0; i < n; ++i) {
          const Op& wi = w_from[A[i]][pick[i]];
          f.phi[i] = sigma[i] + 1;
          B[sigma[i]] = wi.tgt;
          f.ops[sigma[i]] = wi;
        }
        f.tgt = oc.index_of(B);
        out.push_back(f);
        int i = 0;
        while (i < n && ++pick[i] == lims[i]) pick[i++] = 0;
        if (i == n) break;
      }
    }
  }
  return out;
}

Report check_w_tensor_clf(const OperatorCategory& oc,
                          const std::vector<Op>& w) {
  Report rep;
  std::set<Op> wset(w.begin(), w.end());
  std::vector<OpcMor> wt = w_tensor(oc, w);
  std::set<OpcMor> wtset(wt.begin(), wt.end());
  auto fail = [&](const std::string& s) {
    if (rep.failures.size() < 50) rep.failures.push_back(s);
  };

  // (1) identities
  for (int a = 0; a < (int)oc.objects.size(); ++a)
    if (!wtset.count(oc.identity(a)))
      fail("identity of object " + std::to_string(a) + " not in W^tensor");

  // (2) closure under composition
  std::map<int, std::vector<const OpcMor*>> wt_from, wt_to;
  for (const OpcMor& m : wt) {
    wt_from[m.src].push_back(&m);
    wt_to[m.tgt].push_back(&m);
  }
  for (const OpcMor& m : wt)
    for (const OpcMor* m2 : wt_from[m.tgt]) {
      auto comp = oc.compose(*m2, m);
      if (!comp || !wtset.count(*comp))
        fail("W^tensor not closed under composition: " + opcmor_to_string(m) +
             " then " + opcmor_to_string(*m2));
    }

  // (3) square filling and (4) coequalization over all enumerated morphisms
  std::map<std::pair<int, int>, std::vector<OpcMor>> hom_memo;
  auto homs_of = [&](int a, int b) -> const std::vector<OpcMor>& {
    auto it = hom_memo.find({a, b});
    if (it == hom_memo.end())
      it = hom_memo.emplace(std::make_pair(a, b), oc.hom(a, b)).first;
    return it->second;
  };
  for (int a = 0; a < (int)oc.objects.size(); ++a)
    for (int b = 0; b < (int)oc.objects.size(); ++b) {
      const std::vector<OpcMor>& homs = homs_of(a, b);
      for (const OpcMor& psi : homs)
        for (const OpcMor* wa : wt_from[a]) {
          bool filled = false;
          for (const OpcMor* wb : wt_from[b]) {
            auto lhs = oc.compose(*wb, psi);
            if (!lhs) continue;
            for (const OpcMor& psip : homs_of(wa->tgt, wb->tgt)) {
              auto rhs = oc.compose(psip, *wa);
              if (rhs && *rhs == *lhs) { filled = true; break; }
            }
            if (filled) break;
          }
          if (!filled)
            fail("no square filling for " + opcmor_to_string(psi) +
                 " along " + opcmor_to_string(*wa));
        }
      for (size_t p = 0; p < homs.size(); ++p)
        for (size_t q = p + 1; q < homs.size(); ++q)
          for (const OpcMor* wa : wt_to[a]) {
            auto c1 = oc.compose(homs[p], *wa);
            auto c2 = oc.compose(homs[q], *wa);
            if (!c1 || !c2 || !(*c1 == *c2)) continue;
            bool coeq = false;
            for (const OpcMor* wb : wt_from[b]) {
              auto d1 = oc.compose(*wb, homs[p]);
              auto d2 = oc.compose(*wb, homs[q]);
              if (d1 && d2 && *d1 == *d2) { coeq = true; break; }
            }
            if (!coeq)
              fail("no coequalizer for " + opcmor_to_string(homs[p]) +
                   " vs " + opcmor_to_string(homs[q]) + " merged by " +
                   opcmor_to_string(*wa));
          }
    }
  return rep;
}

OpcMor OperatorFunctor::map(const OpcMor& f) const {
  OpcMor r = f;
  for (Op& op : r.ops) op = op_map(op);
  return r;
}

OperatorFunctor l_tensor(const OperatorCategory& tp,
                         const OperatorCategory& loc,
                         const Multifunctor& phi) {
  if (tp.o->ncolors != loc.o->ncolors || tp.cap != loc.cap)
    throw std::invalid_argument("operator categories do not match");
  OperatorFunctor f;
  f.source = &tp;
  f.target = &loc;
  f.op_map = phi.op_map;
  return f;
}

std::vector<OpcMor> isos_into(const OperatorCategory& oc, int t) {
  const auto& T = oc.objects[t];
  int m = (int)T.size();
  // per slot: colors with invertible 1-ary operations into the slot color
  std::vector<std::vector<std::pair<int, Op>>> partner(m);
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < oc.o->ncolors; ++c) {
      if (oc.o->ops({T[j]}, c).empty()) continue;
      for (const Op& op : oc.o->ops({c}, T[j])) partner[j].push_back({c, op});
    }
  std::vector<OpcMor> out;
  for (const Perm& sigma : all_perms(m)) {
    std::vector<size_t> pick(m, 0), lims(m);
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      lims[j] = partner[j].size();
      if (!lims[j]) ok = false;
    }
    if (!ok) continue;
    Perm inv = perm_inverse(sigma);
    for (;;) {
      OpcMor u;
      u.tgt = t;
      u.phi.resize(m);
      u.ops.resize(m);
      std::vector<int> X(m);
      for (int j = 0; j < m; ++j) {
        X[inv[j]] = partner[j][pick[j]].first;  // slot inv[j] lands on j
        u.phi[inv[j]] = j + 1;
        u.ops[j] = partner[j][pick[j]].second;
      }
      u.src = oc.index_of(X);
      out.push_back(u);
      int j = 0;
      while (j < m && ++pick[j] == lims[j]) pick[j++] = 0;
      if (j == m) break;
    }
  }
  return out;
}

// W^tensor arrows out of object x, as (sigma, w-tuple) data.
static std::vector<OpcMor> w_arrows_from(
    const OperatorCategory& oc, const std::vector<std::vector<Op>>& w_from,
    int x) {
  const auto& X = oc.objects[x];
  int n = (int)X.size();
  std::vector<OpcMor> out;
  for (const Perm& sigma : all_perms(n)) {
    std::vector<size_t> pick(n, 0), lims(n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      lims[i] = w_from[X[i]].size();
      if (!lims[i]) ok = false;
    }
    if (!ok) continue;
    for (;;) {
      OpcMor h;
      h.src = x;
      h.phi.resize(n);
      h.ops.resize(n);
      std::vector<int> Y(n);
      for (int i = 0; i < n; ++i) {
        const Op& wi = w_from[X[i]][pick[i]];
        h.phi[i] = sigma[i] + 1;
        Y[sigma[i]] = wi.tgt;
        h.ops[sigma[i]] = wi;
      }
      h.tgt = oc.index_of(Y);
      out.push_back(h);
      int i = 0;
      while (i < n && ++pick[i] == lims[i]) pick[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

FiberCategory hinich_fiber(int n, const OpcMor& psi,
                           const OperatorCategory& tp,
                           const OperatorCategory& loc,
                           const OperatorFunctor& l,
                           const std::vector<Op>& w) {
  if (n != 0 && n != 1) throw std::invalid_argument("n must be 0 or 1");
  FiberCategory fc;
  fc.n = n;
  std::vector<std::vector<Op>> w_from(tp.o->ncolors);
  for (const Op& a : w) w_from[a.src[0]].push_back(a);

  if (n == 0) {
    for (const OpcMor& u : isos_into(loc, psi.src)) {
      FiberLift lift;
      lift.x = u.src;
      lift.u = u;
      fc.objects.push_back(lift);
    }
    for (size_t a = 0; a < fc.objects.size(); ++a)
      for (size_t b = 0; b < fc.objects.size(); ++b) {
        if (a == b) continue;
        for (const OpcMor& h :
             w_arrows_from(tp, w_from, fc.objects[a].x)) {
          if (h.tgt != fc.objects[b].x) continue;
          auto down = loc.compose(fc.objects[b].u, l.map(h));
          if (down && *down == fc.objects[a].u) {
            fc.edges.push_back({(int)a, (int)b});
            break;
          }
        }
      }
    return fc;
  }

  auto rhs_of = [&](const OpcMor& u) { return loc.compose(psi, u); };
  for (const OpcMor& u : isos_into(loc, psi.src)) {
    auto rhs = rhs_of(u);
    if (!rhs) continue;
    for (const OpcMor& v : isos_into(loc, psi.tgt))
      for (const OpcMor& f : tp.hom(u.src, v.src)) {
        auto lhs = loc.compose(v, l.map(f));
        if (!lhs || !(*lhs == *rhs)) continue;
        FiberLift lift;
        lift.x = u.src;
        lift.y = v.src;
        lift.f = f;
        lift.u = u;
        lift.v = v;
        fc.objects.push_back(lift);
      }
  }
  for (size_t a = 0; a < fc.objects.size(); ++a)
    for (size_t b = 0; b < fc.objects.size(); ++b) {
      if (a == b) continue;
      const FiberLift& A = fc.objects[a];
      const FiberLift& B = fc.objects[b];
      bool found = false;
      for (const OpcMor& h : w_arrows_from(tp, w_from, A.x)) {
        if (h.tgt != B.x) continue;
        auto du = loc.compose(B.u, l.map(h));
        if (!du || !(*du == A.u)) continue;
        for (const OpcMor& k : w_arrows_from(tp, w_from, A.y)) {
          if (k.tgt != B.y) continue;
          auto dv = loc.compose(B.v, l.map(k));
          if (!dv || !(*dv == A.v)) continue;
          auto left = tp.compose(k, A.f);
          auto right = tp.compose(B.f, h);
          if (left && right && *left == *right) { found = true; break; }
        }
        if (found) break;
      }
      if (found) fc.edges.push_back({(int)a, (int)b});
    }
  return fc;
}

FiberAnalysis analyze_fiber(const FiberCategory& f) {
  FiberAnalysis r;
  int n = (int)f.objects.size();
  r.empty = n == 0;
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> root = [&](int a) {
    while (comp[a] != a) a = comp[a] = comp[comp[a]];
    return a;
  };
  for (auto& [a, b] : f.edges) comp[root(a)] = root(b);
  std::map<int, int> ids;  // stable: by least member index
  for (int i = 0; i < n; ++i) {
    int rt = root(i);
    if (!ids.count(rt)) {
      ids[rt] = (int)r.component_sizes.size();
      r.component_sizes.push_back(0);
    }
    ++r.component_sizes[ids[rt]];
  }
  r.components = (int)r.component_sizes.size();
  return r;
}

}  // namespace rcop
