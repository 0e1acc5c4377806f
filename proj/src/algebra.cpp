#include "algebra.hpp"

#include <memory>
#include <set>
#include <stdexcept>

#include "qft_operads.hpp"

namespace rcop {

long MultilinearMap::cols() const {
  long c = 1;
  for (int d : src) c *= d;
  return c;
}

bool operator==(const MultilinearMap& a, const MultilinearMap& b) {
  return a.src == b.src && a.tgt == b.tgt && a.coeff == b.coeff;
}

MultilinearMap mm_identity(int d) {
  MultilinearMap m{{d}, d, std::vector<Rat>((size_t)d * d, Rat(0))};
  for (int i = 0; i < d; ++i) m.coeff[(size_t)i * d + i] = 1;
  return m;
}

MultilinearMap mm_zero(const std::vector<int>& src, int tgt) {
  MultilinearMap m{src, tgt, {}};
  m.coeff.assign((size_t)tgt * m.cols(), Rat(0));
  return m;
}

// Kronecker block of the inner maps, slot 0 most significant on both sides.
static std::vector<Rat> kron(const std::vector<MultilinearMap>& fs, long& rows,
                             long& cols) {
  rows = 1;
  cols = 1;
  std::vector<Rat> k{Rat(1)};
  for (const MultilinearMap& f : fs) {
    long fr = f.tgt, fc = f.cols();
    std::vector<Rat> next((size_t)(rows * fr) * (cols * fc), Rat(0));
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) {
        const Rat& base = k[(size_t)r * cols + c];
        if (base == 0) continue;
        for (long i = 0; i < fr; ++i)
          for (long j = 0; j < fc; ++j) {
            const Rat& x = f.coeff[(size_t)i * fc + j];
            if (x == 0) continue;
            next[(size_t)(r * fr + i) * (cols * fc) + (c * fc + j)] = base * x;
          }
      }
    k.swap(next);
    rows *= fr;
    cols *= fc;
  }
  return k;
}

MultilinearMap mm_compose(const MultilinearMap& outer,
                          const std::vector<MultilinearMap>& inner) {
  if ((size_t)outer.src.size() != inner.size())
    throw std::invalid_argument("mm_compose: slot count mismatch");
  for (size_t i = 0; i < inner.size(); ++i)
    if (inner[i].tgt != outer.src[i])
      throw std::invalid_argument("mm_compose: target/slot dimension mismatch");
  std::vector<int> src;
  for (const MultilinearMap& f : inner)
    src.insert(src.end(), f.src.begin(), f.src.end());
  MultilinearMap out = mm_zero(src, outer.tgt);
  long mid, cols;
  std::vector<Rat> k = kron(inner, mid, cols);
  for (int r = 0; r < outer.tgt; ++r)
    for (long j = 0; j < mid; ++j) {
      const Rat& a = outer.coeff[(size_t)r * mid + j];
      if (a == 0) continue;
      for (long c = 0; c < cols; ++c) {
        const Rat& b = k[(size_t)j * cols + c];
        if (b != 0) out.coeff[(size_t)r * cols + c] += a * b;
      }
    }
  return out;
}

MultilinearMap mm_perm(const MultilinearMap& f, const Perm& tau) {
  int n = (int)f.src.size();
  if ((int)tau.size() != n)
    throw std::invalid_argument("mm_perm: permutation length mismatch");
  std::vector<int> src(n);
  for (int i = 0; i < n; ++i) src[i] = f.src[tau[i]];
  MultilinearMap g = mm_zero(src, f.tgt);
  long cols = g.cols();
  std::vector<int> xd(n), yd(n);
  for (long c = 0; c < cols; ++c) {
    long rest = c;
    for (int i = n - 1; i >= 0; --i) {
      xd[i] = (int)(rest % src[i]);
      rest /= src[i];
    }
    // result slot i carries the old slot tau[i]
    for (int i = 0; i < n; ++i) yd[tau[i]] = xd[i];
    long fc = 0;
    for (int j = 0; j < n; ++j) fc = fc * f.src[j] + yd[j];
    for (int r = 0; r < f.tgt; ++r)
      g.coeff[(size_t)r * cols + c] = f.coeff[(size_t)r * f.cols() + fc];
  }
  return g;
}

std::optional<MultilinearMap> mm_inverse(const MultilinearMap& f) {
  if (f.src.size() != 1 || f.src[0] != f.tgt) return std::nullopt;
  int d = f.tgt;
  // Gauss-Jordan on [f | id]
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(2 * d, Rat(0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[i][j] = f.coeff[(size_t)i * d + j];
    m[i][d + i] = 1;
  }
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    Rat p = m[col][col];
    for (int j = 0; j < 2 * d; ++j) m[col][j] /= p;
    for (int r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat fac = m[r][col];
      for (int j = 0; j < 2 * d; ++j) m[r][j] -= fac * m[col][j];
    }
  }
  MultilinearMap inv = mm_zero({d}, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv.coeff[(size_t)i * d + j] = m[i][d + j];
  return inv;
}

bool mm_invertible(const MultilinearMap& f) { return mm_inverse(f).has_value(); }

// ---------------------------------------------------------------------------

Report check_algebra(const OperadAlgebra& a) {
  Report rep;
  auto fail = [&](const std::string& m) {
    if (rep.failures.size() < 100) rep.failures.push_back(m);
  };
  const ColoredOperad& o = a.operad;
  std::map<Op, MultilinearMap> memo;
  auto act = [&](const Op& op) -> const MultilinearMap& {
    auto it = memo.find(op);
    if (it == memo.end()) it = memo.emplace(op, a.action(op)).first;
    return it->second;
  };

  std::vector<Op> ops = all_ops(o);
  std::vector<std::vector<const Op*>> by_tgt(o.ncolors);
  for (const Op& op : ops) {
    const MultilinearMap& m = act(op);
    bool shape = m.tgt == a.dims[op.tgt] && m.src.size() == op.src.size() &&
                 (long)m.coeff.size() == m.tgt * m.cols();
    for (size_t i = 0; shape && i < op.src.size(); ++i)
      shape = m.src[i] == a.dims[op.src[i]];
    if (!shape) fail("action shape mismatch at " + op_to_string(op));
    by_tgt[op.tgt].push_back(&op);
  }

  for (int c = 0; c < o.ncolors; ++c) {
    if (!o.signature_ok({c}, c)) continue;  // masked out by restriction
    if (!(act(o.unit(c)) == mm_identity(a.dims[c])))
      fail("unit action is not the identity at color " + std::to_string(c));
  }

  // adjacent transpositions generate the symmetric actions
  for (const Op& op : ops) {
    int n = (int)op.src.size();
    for (int k = 0; k + 1 < n; ++k) {
      Perm tau = perm_id(n);
      std::swap(tau[k], tau[k + 1]);
      if (!(act(o.perm_action(op, tau)) == mm_perm(act(op), tau)))
        fail("equivariance failed at " + op_to_string(op) + " swapping slots " +
             std::to_string(k) + "," + std::to_string(k + 1));
    }
  }

  // slot-wise composition against every inner operation (units included)
  for (const Op& outer : ops) {
    int n = (int)outer.src.size();
    std::vector<Op> units;
    for (int c : outer.src) units.push_back(o.unit(c));
    for (int i = 0; i < n; ++i)
      for (const Op* innp : by_tgt[outer.src[i]]) {
        std::vector<Op> inner = units;
        inner[i] = *innp;
        if (n - 1 + (int)innp->src.size() > o.arity_cap) continue;
        auto gamma = o.compose(outer, inner);
        if (!gamma) continue;
        std::vector<MultilinearMap> mats;
        for (const Op& f : inner) mats.push_back(act(f));
        if (!(mm_compose(act(outer), mats) == act(*gamma)))
          fail("composition failed plugging " + op_to_string(*innp) +
               " into slot " + std::to_string(i) + " of " + op_to_string(outer));
      }
  }
  return rep;
}

OperadAlgebra pullback(const Multifunctor& f, const OperadAlgebra& a) {
  if (!f.source || (int)f.color_map.size() != f.source->ncolors)
    throw std::invalid_argument("pullback: multifunctor color map not total");
  OperadAlgebra out;
  out.operad = *f.source;
  out.dims.resize(f.source->ncolors);
  for (int c = 0; c < f.source->ncolors; ++c)
    out.dims[c] = a.dims[f.color_map[c]];
  out.action = [om = f.op_map, act = a.action](const Op& op) {
    return act(om(op));
  };
  return out;
}

bool strict_timeslice(const OperadAlgebra& a, const std::vector<Op>& w) {
  for (const Op& op : w)
    if (!mm_invertible(a.action(op))) return false;
  return true;
}

// ---------------------------------------------------------------------------

static Op tuple_op(const std::vector<int>& src, int tgt) {
  return Op{src, tgt, {}};
}

OperadAlgebra invert_comparison(const OperadAlgebra& f,
                                const ColoredOperad& om, const Site& site,
                                bool verify) {
  const ColoredOperad& tp = f.operad;
  if (tp.payload != Payload::to_tuple)
    throw std::invalid_argument("invert_comparison: expected a tuple-operad algebra");
  if (tp.ncolors != om.ncolors || tp.ncolors != site.n())
    throw std::invalid_argument("invert_comparison: color count mismatch");
  if (!strict_timeslice(f, cauchy_ops(tp, site)))
    throw std::invalid_argument(
        "invert_comparison: the algebra does not satisfy strict time-slice");

  auto object_index = [&](const Region& r) {
    for (int i = 0; i < site.n(); ++i)
      if (site.objects[i] == r) return i;
    return -1;
  };

  // Per-object multiplications: factorization product of the designated pair
  // conjugated by the inverted pair-inclusion actions where available, then
  // transported backwards through invertible inclusion actions.
  auto mu = std::make_shared<std::map<int, MultilinearMap>>();
  for (auto& [v, mp] : site.mult_pairs) {
    int cp = object_index(mp.later), cm = object_index(mp.earlier);
    if (cp < 0 || cm < 0) continue;
    Op pair_op = tuple_op({cp, cm}, v);
    if (!tp.has_op(pair_op)) continue;
    auto ip = mm_inverse(f.action(tuple_op({cp}, v)));
    auto im = mm_inverse(f.action(tuple_op({cm}, v)));
    if (!ip || !im) continue;
    (*mu)[v] = mm_compose(f.action(pair_op), {*ip, *im});
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (int v = 0; v < site.n(); ++v) {
      if (mu->count(v)) continue;
      for (int p = 0; p < site.n(); ++p) {
        if (p == v || !mu->count(p) || !site.admissible(v, p)) continue;
        MultilinearMap a = f.action(tuple_op({v}, p));
        auto ainv = mm_inverse(a);
        if (!ainv) continue;
        (*mu)[v] = mm_compose(*ainv, {mm_compose(mu->at(p), {a, a})});
        grew = true;
        break;
      }
    }
  }
  std::string stuck;
  for (int v = 0; v < site.n(); ++v)
    if (!mu->count(v)) stuck += (stuck.empty() ? "" : ", ") + site.names[v];
  if (!stuck.empty())
    throw std::invalid_argument(
        "invert_comparison: no multiplication derivable for: " + stuck);

  OperadAlgebra out;
  out.operad = om;
  out.dims = f.dims;
  out.action = [mu, fact = f.action](const Op& op) {
    int n = (int)op.src.size();
    if (n <= 1) return fact(tuple_op(op.src, op.tgt));
    // multiply the 1-ary images in time order, future-most factor first
    Perm pos = perm_inverse(op.perm);  // letter at each time position
    auto iota = [&](int k) {
      return fact(tuple_op({op.src[pos[k]]}, op.tgt));
    };
    MultilinearMap g = iota(0);
    for (int k = 1; k < n; ++k) g = mm_compose(mu->at(op.tgt), {g, iota(k)});
    return mm_perm(g, op.perm);
  };
  if (verify) {
    Report rep = check_algebra(out);
    if (!rep.ok())
      throw std::logic_error("invert_comparison: constructed algebra is inconsistent: " +
                             rep.failures.front());
  }
  return out;
}

Report check_einstein_causality(const OperadAlgebra& a, const Site& site) {
  Report rep;
  const ColoredOperad& o = a.operad;
  for (int i = 0; i < site.n(); ++i)
    for (int j = 0; j < site.n(); ++j) {
      if (i == j || !site.orth[i][j]) continue;
      for (int v = 0; v < o.ncolors; ++v) {
        std::vector<Op> fw = o.ops({i, j}, v);
        if (fw.empty()) continue;
        if (fw.size() != 1) {
          rep.failures.push_back("causally disjoint pair " + site.names[i] +
                                 "," + site.names[j] +
                                 " has unmerged operations into " +
                                 site.names[v]);
          continue;
        }
        std::vector<Op> bw = o.ops({j, i}, v);
        if (!(a.action(bw.at(0)) == mm_perm(a.action(fw[0]), {1, 0})))
          rep.failures.push_back("order dependence across " + site.names[i] +
                                 " _|_ " + site.names[j] + " inside " +
                                 site.names[v]);
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------

ColoredOperad restrict_operad(const ColoredOperad& o,
                              const std::vector<char>& active) {
  if ((int)active.size() != o.ncolors)
    throw std::invalid_argument("restrict_operad: mask length mismatch");
  ColoredOperad r = o;
  for (int i = 0; i < o.ncolors; ++i)
    for (int j = 0; j < o.ncolors; ++j)
      if (!active[i] || !active[j]) r.adm[i][j] = 0;
  return r;
}

static std::string square(const Site& site, int m, int n, int l, int u) {
  return "alpha cocycle square " + site.names[m] + " -> " + site.names[n] +
         " -> " + site.names[l] + " at " + site.names[u];
}

// Cocycle, unit, and invertibility conditions shared by assemble and
// check_family; throws when asked to.
static Report alpha_coherence(const GlobalFamily& fam, const Site& site,
                              bool throwing) {
  Report rep;
  auto fail = [&](const std::string& m) {
    if (throwing) throw std::invalid_argument("assemble: " + m);
    rep.failures.push_back(m);
  };
  // invertibility and identity components
  for (auto& [mn, comps] : fam.alpha) {
    auto [m, n] = mn;
    for (int u = 0; u < site.n(); ++u) {
      if (!site.admissible(u, m)) continue;
      const MultilinearMap& c = comps.at(u);
      if (!mm_invertible(c))
        fail("comparison component at " + site.names[u] + " for " +
             site.names[m] + " -> " + site.names[n] + " is not invertible");
      if (m == n && !(c == mm_identity(c.tgt)))
        fail("identity inclusion of " + site.names[m] +
             " has a non-identity component at " + site.names[u]);
    }
  }
  for (int m : fam.members)
    for (int n : fam.members) {
      if (!site.admissible(m, n)) continue;
      for (int l : fam.members) {
        if (!site.admissible(n, l)) continue;
        for (int u = 0; u < site.n(); ++u) {
          if (!site.admissible(u, m)) continue;
          const MultilinearMap& a1 = fam.alpha.at({m, n}).at(u);
          const MultilinearMap& a2 = fam.alpha.at({n, l}).at(u);
          if (!(mm_compose(a2, {a1}) == fam.alpha.at({m, l}).at(u)))
            fail(square(site, m, n, l, u) + " does not commute");
        }
      }
    }
  return rep;
}

Report check_family(const GlobalFamily& fam, const Site& site) {
  Report rep = alpha_coherence(fam, site, false);
  // naturality: components intertwine the local actions
  auto midx = [&](int m) {
    for (size_t k = 0; k < fam.members.size(); ++k)
      if (fam.members[k] == m) return (int)k;
    return -1;
  };
  for (int m : fam.members)
    for (int n : fam.members) {
      if (!site.admissible(m, n)) continue;
      const OperadAlgebra& am = fam.locals[midx(m)];
      const OperadAlgebra& an = fam.locals[midx(n)];
      const auto& comps = fam.alpha.at({m, n});
      for (const Op& op : all_ops(am.operad)) {
        std::vector<MultilinearMap> srcs;
        for (int u : op.src) srcs.push_back(comps.at(u));
        if (!(mm_compose(comps.at(op.tgt), {am.action(op)}) ==
              mm_compose(an.action(op), srcs)))
          rep.failures.push_back("component not natural at " +
                                 op_to_string(op) + " along " + site.names[m] +
                                 " -> " + site.names[n]);
      }
    }
  return rep;
}

GlobalFamily decompose(const OperadAlgebra& a, const Site& site) {
  if (a.operad.ncolors != site.n())
    throw std::invalid_argument("decompose: algebra colors do not match the site");
  GlobalFamily fam;
  for (int m = 0; m < site.n(); ++m) {
    fam.members.push_back(m);
    std::vector<char> active(site.n(), 0);
    for (int u = 0; u < site.n(); ++u) active[u] = site.admissible(u, m);
    OperadAlgebra local;
    local.operad = restrict_operad(a.operad, active);
    local.dims = a.dims;
    local.action = a.action;
    fam.locals.push_back(std::move(local));
  }
  // inclusions restrict to identities on common objects
  for (int m = 0; m < site.n(); ++m)
    for (int n = 0; n < site.n(); ++n) {
      if (!site.admissible(m, n)) continue;
      std::vector<MultilinearMap> comps(site.n());
      for (int u = 0; u < site.n(); ++u)
        if (site.admissible(u, m)) comps[u] = mm_identity(a.dims[u]);
      fam.alpha[{m, n}] = std::move(comps);
    }
  return fam;
}

OperadAlgebra assemble(const GlobalFamily& fam, const Site& site) {
  if (fam.members.size() != fam.locals.size() || fam.members.empty())
    throw std::invalid_argument("assemble: malformed family");
  alpha_coherence(fam, site, true);
  int top = -1;
  for (size_t k = 0; k < fam.members.size(); ++k) {
    bool all = true;
    for (int x : fam.members)
      if (!site.admissible(x, fam.members[k])) all = false;
    if (all) {
      top = (int)k;
      break;
    }
  }
  if (top < 0)
    throw std::invalid_argument("assemble: no member contains every member");

  auto data = std::make_shared<GlobalFamily>(fam);
  auto midx = std::make_shared<std::vector<int>>(site.n(), -1);
  for (size_t k = 0; k < fam.members.size(); ++k)
    (*midx)[fam.members[k]] = (int)k;

  OperadAlgebra out;
  std::vector<char> active(site.n(), 0);
  for (int m : fam.members) active[m] = 1;
  out.operad = restrict_operad(fam.locals[top].operad, active);
  out.dims.assign(site.n(), 0);
  for (size_t k = 0; k < fam.members.size(); ++k)
    out.dims[fam.members[k]] = fam.locals[k].dims[fam.members[k]];
  out.action = [data, midx](const Op& op) {
    const OperadAlgebra& local = data->locals[(size_t)(*midx)[op.tgt]];
    std::vector<MultilinearMap> comps;
    for (int u : op.src) comps.push_back(data->alpha.at({u, op.tgt}).at(u));
    return mm_compose(local.action(op), comps);
  };
  return out;
}

Report check_reassembly_iso(const GlobalFamily& fam, const Site& site) {
  Report rep;
  GlobalFamily back = decompose(assemble(fam, site), site);
  auto midx = [&](int m) {
    for (size_t k = 0; k < fam.members.size(); ++k)
      if (fam.members[k] == m) return (int)k;
    return -1;
  };
  for (int m : fam.members) {
    int km = midx(m), kb = -1;
    for (size_t k = 0; k < back.members.size(); ++k)
      if (back.members[k] == m) kb = (int)k;
    if (kb < 0) {
      rep.failures.push_back("reassembly lost the member " + site.names[m]);
      continue;
    }
    const OperadAlgebra& orig = fam.locals[km];
    const OperadAlgebra& re = back.locals[kb];
    // components at u: the original comparison along the inclusion of u in m
    auto zeta = [&](int u) -> const MultilinearMap& {
      return fam.alpha.at({u, m}).at(u);
    };
    for (const Op& op : all_ops(orig.operad)) {
      std::vector<MultilinearMap> srcs;
      for (int u : op.src) srcs.push_back(zeta(u));
      if (!(mm_compose(zeta(op.tgt), {re.action(op)}) ==
            mm_compose(orig.action(op), srcs)))
        rep.failures.push_back("reassembly comparison not natural at " +
                               op_to_string(op) + " in the local at " +
                               site.names[m]);
    }
  }
  return rep;
}

}  // namespace rcop
