#include "operad.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rcop {

Perm perm_id(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
  return r;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_id(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm perm_dsum(const std::vector<Perm>& ps) {
  Perm r;
  int off = 0;
  for (const Perm& p : ps) {
    for (int x : p) r.push_back(off + x);
    off += (int)p.size();
  }
  return r;
}

Perm block_perm(const Perm& s, const std::vector<int>& sizes) {
  int n = (int)s.size();
  // output chunk at position j holds block s^-1(j)
  Perm sinv = perm_inverse(s);
  std::vector<int> chunk_off(n + 1, 0);
  for (int j = 0; j < n; ++j) chunk_off[j + 1] = chunk_off[j] + sizes[sinv[j]];
  Perm r;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < sizes[i]; ++k) r.push_back(chunk_off[s[i]] + k);
  return r;
}

std::vector<Perm> perm_orbit(const std::vector<int>& tuple, const Perm& sigma,
                             const std::function<bool(int, int)>& disjoint) {
  int n = (int)sigma.size();
  std::set<Perm> seen{sigma};
  std::vector<Perm> queue{sigma};
  for (size_t q = 0; q < queue.size(); ++q) {
    Perm cur = queue[q];
    Perm inv = perm_inverse(cur);
    for (int k = 0; k + 1 < n; ++k) {
      if (!disjoint(tuple[inv[k]], tuple[inv[k + 1]])) continue;
      Perm next = cur;
      next[inv[k]] = k + 1;
      next[inv[k + 1]] = k;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return std::vector<Perm>(seen.begin(), seen.end());
}

Perm canonical_rep(const std::vector<int>& tuple, const Perm& sigma,
                   const std::function<bool(int, int)>& disjoint) {
  auto orb = perm_orbit(tuple, sigma, disjoint);
  return orb.front();  // set iteration is sorted, front is lex-least
}

bool operator==(const Op& a, const Op& b) {
  return a.tgt == b.tgt && a.src == b.src && a.perm == b.perm;
}
bool operator<(const Op& a, const Op& b) {
  if (a.src != b.src) return a.src < b.src;
  if (a.tgt != b.tgt) return a.tgt < b.tgt;
  return a.perm < b.perm;
}

std::string op_to_string(const Op& op) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < op.src.size(); ++i)
    os << (i ? "," : "") << op.src[i];
  os << ")->" << op.tgt;
  if (!op.perm.empty()) {
    os << " [";
    for (size_t i = 0; i < op.perm.size(); ++i)
      os << (i ? " " : "") << op.perm[i];
    os << "]";
  }
  return os.str();
}

bool ColoredOperad::signature_ok(const std::vector<int>& src, int tgt) const {
  if (!adm[tgt][tgt]) return false;  // color masked out by restriction
  for (int c : src)
    if (!adm[c][tgt]) return false;
  return !tuple_ok || tuple_ok(src, tgt);
}

std::vector<Op> ColoredOperad::ops(const std::vector<int>& src, int tgt) const {
  std::vector<Op> out;
  if (!signature_ok(src, tgt)) return out;
  if (payload == Payload::to_tuple) {
    out.push_back(Op{src, tgt, {}});
    return out;
  }
  auto rel = [&](int a, int b) { return disjoint[a][b] != 0; };
  std::set<Perm> reps;
  for (const Perm& s : all_perms((int)src.size()))
    reps.insert(canonical_rep(src, s, rel));
  for (const Perm& r : reps) out.push_back(Op{src, tgt, r});
  return out;
}

bool ColoredOperad::has_op(const Op& op) const {
  auto all = ops(op.src, op.tgt);
  return std::find(all.begin(), all.end(), op) != all.end();
}

Op ColoredOperad::unit(int color) const {
  return Op{{color}, color,
            payload == Payload::to_tuple ? Perm{} : perm_id(1)};
}

std::optional<Op> ColoredOperad::compose(const Op& outer,
                                         const std::vector<Op>& inner) const {
  if (outer.src.size() != inner.size()) return std::nullopt;
  std::vector<int> src;
  std::vector<int> sizes;
  std::vector<Perm> perms;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (inner[i].tgt != outer.src[i]) return std::nullopt;
    src.insert(src.end(), inner[i].src.begin(), inner[i].src.end());
    sizes.push_back((int)inner[i].src.size());
    perms.push_back(inner[i].perm.empty() ? perm_id((int)inner[i].src.size())
                                          : inner[i].perm);
  }
  if (!signature_ok(src, outer.tgt)) return std::nullopt;
  Op result{src, outer.tgt, {}};
  if (payload != Payload::to_tuple) {
    Perm raw = perm_compose(
        block_perm(outer.perm.empty() ? perm_id((int)sizes.size()) : outer.perm,
                   sizes),
        perm_dsum(perms));
    auto rel = [&](int a, int b) { return disjoint[a][b] != 0; };
    result.perm = canonical_rep(src, raw, rel);
  }
  if (tamper) tamper(result);
  return result;
}

Op ColoredOperad::perm_action(const Op& op, const Perm& tau) const {
  int n = (int)op.src.size();
  std::vector<int> src(n);
  for (int i = 0; i < n; ++i) src[i] = op.src[tau[i]];
  Op r{src, op.tgt, {}};
  if (payload != Payload::to_tuple) {
    auto rel = [&](int a, int b) { return disjoint[a][b] != 0; };
    r.perm = canonical_rep(src, perm_compose(op.perm, tau), rel);
  }
  return r;
}

static ColoredOperad one_color(int cap, bool all_disjoint) {
  ColoredOperad o;
  o.payload = Payload::perm_class;
  o.ncolors = 1;
  o.arity_cap = cap;
  o.adm = {{1}};
  o.disjoint = {{all_disjoint ? (char)1 : (char)0}};
  return o;
}

ColoredOperad associative_operad(int cap) { return one_color(cap, false); }
ColoredOperad terminal_operad(int cap) { return one_color(cap, true); }

std::vector<Op> all_ops(const ColoredOperad& o) {
  std::vector<Op> out;
  for (int n = 0; n <= o.arity_cap; ++n) {
    std::vector<int> src(n, 0);
    while (true) {
      for (int t = 0; t < o.ncolors; ++t)
        for (const Op& op : o.ops(src, t)) out.push_back(op);
      int k = n - 1;
      while (k >= 0 && src[k] == o.ncolors - 1) src[k--] = 0;
      if (k < 0) break;
      ++src[k];
    }
  }
  return out;
}

// gamma with units everywhere except slot i
static std::optional<Op> compose_at(const ColoredOperad& o, const Op& outer,
                                    int i, const Op& phi) {
  std::vector<Op> inner;
  for (size_t k = 0; k < outer.src.size(); ++k)
    inner.push_back((int)k == i ? phi : o.unit(outer.src[k]));
  return o.compose(outer, inner);
}

static std::string show(const std::optional<Op>& op) {
  return op ? op_to_string(*op) : "<undefined>";
}

Report check_operad_axioms(const ColoredOperad& o) {
  Report rep;
  auto fail = [&](const std::string& m) {
    if (rep.failures.size() < 200) rep.failures.push_back(m);
  };
  std::vector<Op> ops = all_ops(o);
  std::vector<std::vector<const Op*>> by_tgt(o.ncolors);
  for (const Op& op : ops) by_tgt[op.tgt].push_back(&op);

  // units compose to the identity on both sides
  for (const Op& psi : ops) {
    std::vector<Op> units;
    for (int c : psi.src) units.push_back(o.unit(c));
    auto r = o.compose(psi, units);
    if (!r || !(*r == psi))
      fail("right unit law failed at " + op_to_string(psi));
    auto l = compose_at(o, o.unit(psi.tgt), 0, psi);
    if (!l || !(*l == psi))
      fail("left unit law failed at " + op_to_string(psi));
  }

  // the symmetric action is a group action
  for (const Op& psi : ops) {
    int n = (int)psi.src.size();
    if (n == 0) continue;
    if (!(o.perm_action(psi, perm_id(n)) == psi))
      fail("identity action failed at " + op_to_string(psi));
    for (const Perm& t1 : all_perms(n))
      for (const Perm& t2 : all_perms(n)) {
        Op a = o.perm_action(o.perm_action(psi, t1), t2);
        Op b = o.perm_action(psi, perm_compose(t1, t2));
        if (!(a == b))
          fail("action composition failed at " + op_to_string(psi));
      }
  }

  // equivariance and associativity over single-slot compositions
  for (const Op& psi : ops) {
    int n = (int)psi.src.size();
    for (int i = 0; i < n; ++i)
      for (const Op* phip : by_tgt[psi.src[i]]) {
        const Op& phi = *phip;
        int m = (int)phi.src.size();
        if (n + m - 1 > o.arity_cap) continue;
        auto base = compose_at(o, psi, i, phi);
        if (!base) {
          fail("composition escaped the operad: " + op_to_string(psi) +
               " slot " + std::to_string(i) + " with " + op_to_string(phi));
          continue;
        }

        // inner equivariance: gamma(psi; phi.tau) = gamma(psi; phi).dsum(tau)
        for (const Perm& t : all_perms(m)) {
          auto lhs = compose_at(o, psi, i, o.perm_action(phi, t));
          std::vector<Perm> blocks;
          for (int k = 0; k < n; ++k)
            blocks.push_back(k == i ? t : perm_id(1));
          Op rhs = o.perm_action(*base, perm_dsum(blocks));
          if (!lhs || !(*lhs == rhs))
            fail("inner equivariance failed: " + op_to_string(psi) + " slot " +
                 std::to_string(i) + " with " + op_to_string(phi));
        }

        // outer equivariance:
        // gamma(psi.tau; phi_tau(1)..phi_tau(n)) =
        //   gamma(psi; phi_1..phi_n) . blockperm(tau, permuted sizes)
        for (const Perm& tau : all_perms(n)) {
          std::vector<Op> in0, in1;
          std::vector<int> sizes1;
          for (int k = 0; k < n; ++k) in0.push_back(k == i ? phi : o.unit(psi.src[k]));
          for (int k = 0; k < n; ++k) {
            in1.push_back(in0[tau[k]]);
            sizes1.push_back((int)in0[tau[k]].src.size());
          }
          auto lhs = o.compose(o.perm_action(psi, tau), in1);
          Op rhs = o.perm_action(*base, block_perm(tau, sizes1));
          if (!lhs || !(*lhs == rhs))
            fail("outer equivariance failed: " + op_to_string(psi) + " tau " +
                 op_to_string(Op{{}, 0, tau}));
        }

        // associativity: nested slots
        for (int j = 0; j < m; ++j)
          for (const Op* thp : by_tgt[phi.src[j]]) {
            const Op& th = *thp;
            int k = (int)th.src.size();
            if (n + m + k - 2 > o.arity_cap) continue;
            auto lhs = compose_at(o, *base, i + j, th);
            auto mid = compose_at(o, phi, j, th);
            auto rhs = mid ? compose_at(o, psi, i, *mid) : std::nullopt;
            if (!(lhs.has_value() == rhs.has_value()) ||
                (lhs && !(*lhs == *rhs)))
              fail("associativity (nested) failed: " + op_to_string(psi) +
                   " / " + op_to_string(phi) + " / " + op_to_string(th) +
                   " got " + show(lhs) + " vs " + show(rhs));
          }

        // associativity: parallel slots
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          for (const Op* thp : by_tgt[psi.src[j]]) {
            const Op& th = *thp;
            int k = (int)th.src.size();
            if (n + m + k - 2 > o.arity_cap) continue;
            int j_in_base = j < i ? j : j + m - 1;
            auto lhs = compose_at(o, *base, j_in_base, th);
            auto other = compose_at(o, psi, j, th);
            int i_in_other = i < j ? i : i + k - 1;
            auto rhs = other ? compose_at(o, *other, i_in_other, phi)
                             : std::nullopt;
            if (!(lhs.has_value() == rhs.has_value()) ||
                (lhs && !(*lhs == *rhs)))
              fail("associativity (parallel) failed: " + op_to_string(psi) +
                   " / " + op_to_string(phi) + " / " + op_to_string(th) +
                   " got " + show(lhs) + " vs " + show(rhs));
          }
        }
      }
  }
  return rep;
}

Report check_multifunctor(const Multifunctor& f) {
  if (!f.source || !f.target || !f.op_map)
    throw std::invalid_argument("multifunctor is missing source/target/op map");
  if ((int)f.color_map.size() != f.source->ncolors)
    throw std::invalid_argument("multifunctor color map is not total");
  Report rep;
  auto fail = [&](const std::string& m) {
    if (rep.failures.size() < 200) rep.failures.push_back(m);
  };
  const ColoredOperad& S = *f.source;
  const ColoredOperad& T = *f.target;
  std::vector<Op> ops = all_ops(S);
  std::vector<std::vector<const Op*>> by_tgt(S.ncolors);
  for (const Op& op : ops) by_tgt[op.tgt].push_back(&op);

  for (int c = 0; c < S.ncolors; ++c)
    if (!(f.op_map(S.unit(c)) == T.unit(f.color_map[c])))
      fail("identity not preserved at color " + std::to_string(c));

  for (const Op& psi : ops) {
    Op im = f.op_map(psi);
    std::vector<int> want;
    for (int c : psi.src) want.push_back(f.color_map[c]);
    if (im.src != want || im.tgt != f.color_map[psi.tgt]) {
      fail("signature mismatch at " + op_to_string(psi) + " -> " +
           op_to_string(im));
      continue;
    }
    if (!T.has_op(im))
      fail("image is not an operation of the target: " + op_to_string(psi));
    int n = (int)psi.src.size();
    for (const Perm& tau : all_perms(n))
      if (!(f.op_map(S.perm_action(psi, tau)) == T.perm_action(im, tau)))
        fail("equivariance not preserved at " + op_to_string(psi));
    for (int i = 0; i < n; ++i)
      for (const Op* phip : by_tgt[psi.src[i]]) {
        const Op& phi = *phip;
        if (n + (int)phi.src.size() - 1 > S.arity_cap) continue;
        auto c = compose_at(S, psi, i, phi);
        auto tc = compose_at(T, im, i, f.op_map(phi));
        if (!c || !tc || !(f.op_map(*c) == *tc))
          fail("composition not preserved: " + op_to_string(psi) + " slot " +
               std::to_string(i) + " with " + op_to_string(phi));
      }
  }
  return rep;
}

}  // namespace rcop
