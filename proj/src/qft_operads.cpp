#include "qft_operads.hpp"

#include <memory>
#include <stdexcept>

namespace rcop {

static std::vector<std::vector<char>> adm_table(const Site& site) {
  int n = site.n();
  std::vector<std::vector<char>> adm(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adm[i][j] = site.admissible(i, j) ? 1 : 0;
  return adm;
}

std::vector<std::vector<std::vector<char>>> future_meets(const Site& site) {
  int n = site.n();
  std::vector<std::vector<std::vector<char>>> meets(
      n, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (int i = 0; i < n; ++i) {
    Region fut = causal_future(site.objects[i]);
    for (int t = 0; t < n; ++t) {
      Region fut_t = region_intersect(fut, site.objects[t]);
      if (fut_t.empty()) continue;
      for (int j = 0; j < n; ++j)
        meets[i][j][t] =
            region_intersect(fut_t, site.objects[j]).empty() ? 0 : 1;
    }
  }
  return meets;
}

std::vector<std::vector<int>> all_time_orderings(
    const std::vector<std::vector<std::vector<char>>>& meets,
    const std::vector<int>& src, int tgt) {
  int n = (int)src.size();
  std::vector<int> ord(n);
  for (int i = 0; i < n; ++i) ord[i] = i;
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        if (meets[src[ord[a]]][src[ord[b]]][tgt]) ok = false;
    if (ok) out.push_back(ord);
  } while (std::next_permutation(ord.begin(), ord.end()));
  return out;
}

ColoredOperad build_O_M(const Site& site, int arity_cap) {
  ColoredOperad o;
  o.payload = Payload::perm_class;
  o.ncolors = site.n();
  o.arity_cap = arity_cap;
  o.adm = adm_table(site);
  o.disjoint = site.orth;
  return o;
}

ColoredOperad build_tP_M(const Site& site, int arity_cap) {
  ColoredOperad o;
  o.payload = Payload::to_tuple;
  o.ncolors = site.n();
  o.arity_cap = arity_cap;
  o.adm = adm_table(site);
  o.disjoint = site.orth;
  auto meets = std::make_shared<std::vector<std::vector<std::vector<char>>>>(
      future_meets(site));
  o.tuple_ok = [meets](const std::vector<int>& src, int tgt) {
    // Kahn toposort of the "has to sit later" digraph
    int n = (int)src.size();
    std::vector<char> placed(n, 0);
    for (int step = 0; step < n; ++step) {
      int pick = -1;
      for (int i = 0; i < n && pick < 0; ++i) {
        if (placed[i]) continue;
        bool free = true;
        for (int j = 0; j < n; ++j)
          if (!placed[j] && j != i && (*meets)[src[i]][src[j]][tgt])
            free = false;
        if (free) pick = i;
      }
      if (pick < 0) return false;
      placed[pick] = 1;
    }
    return true;
  };
  return o;
}

Multifunctor build_Phi_M(const ColoredOperad& tp, const ColoredOperad& om,
                         const Site& site) {
  Multifunctor f;
  f.source = &tp;
  f.target = &om;
  f.color_map.resize(site.n());
  for (int i = 0; i < site.n(); ++i) f.color_map[i] = i;
  auto meets = std::make_shared<std::vector<std::vector<std::vector<char>>>>(
      future_meets(site));
  auto orth = site.orth;
  f.op_map = [meets, orth](const Op& op) {
    auto rel = [&](int a, int b) { return orth[a][b] != 0; };
    auto ords = all_time_orderings(*meets, op.src, op.tgt);
    if (ords.empty())
      throw std::logic_error("tuple is not time-orderable: " +
                             op_to_string(op));
    std::optional<Perm> canon;
    for (const auto& ord : ords) {
      Perm sigma(ord.size());
      for (size_t k = 0; k < ord.size(); ++k) sigma[ord[k]] = (int)k;
      Perm c = canonical_rep(op.src, sigma, rel);
      if (!canon)
        canon = c;
      else if (!(*canon == c))
        throw std::logic_error("time-orderings split into distinct classes: " +
                               op_to_string(op));
    }
    return Op{op.src, op.tgt, *canon};
  };
  return f;
}

std::vector<Op> cauchy_ops(const ColoredOperad& o, const Site& site) {
  std::vector<Op> out;
  for (int i = 0; i < site.n(); ++i)
    for (int j = 0; j < site.n(); ++j)
      if (site.is_cauchy(i, j))
        out.push_back(Op{{i}, j,
                         o.payload == Payload::to_tuple ? Perm{} : perm_id(1)});
  return out;
}

}  // namespace rcop
