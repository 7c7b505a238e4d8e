#include "virtmod/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "virtmod/vss.hpp"

namespace virtmod::oracle {

namespace {

// Small-integer prime factorization (orders are <= the oracle bound).
std::map<long long, int> factor_small(long long n) {
  std::map<long long, int> out;
  for (long long p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

long long radical_of(long long n) {
  long long r = 1;
  for (const auto& [p, e] : factor_small(n)) r *= p;
  return r;
}

StructureDescriptor chain_from_primary(
    const std::map<long long, std::vector<int>>& components) {
  std::size_t chain_len = 0;
  for (const auto& [p, es] : components)
    chain_len = std::max(chain_len, es.size());
  std::vector<Element> chain;
  for (std::size_t i = 0; i < chain_len; ++i) {
    Int d = 1;
    for (const auto& [p, es] : components) {
      long long idx = static_cast<long long>(es.size()) -
                      static_cast<long long>(chain_len) +
                      static_cast<long long>(i);
      if (idx >= 0) {
        for (int rep = 0; rep < es[static_cast<std::size_t>(idx)]; ++rep)
          d *= p;
      }
    }
    chain.push_back(Element::integer(d));
  }
  return StructureDescriptor::make(RingTag::integers(), 0, std::move(chain));
}

// Isomorphism type from the torsion profile: count(p, k) is the number of
// elements killed by p^k. The conjugate partition at p is the jump sequence
// of log_p count(p, k).
template <class CountFn>
StructureDescriptor descriptor_from_counts(std::size_t total, CountFn count) {
  if (total <= 1)
    return StructureDescriptor::zero_module(RingTag::integers());
  std::map<long long, std::vector<int>> components;
  for (const auto& [p, e] : factor_small(static_cast<long long>(total))) {
    std::vector<int> conjugate;
    long long prev = 1;
    long long pk = 1;
    for (;;) {
      pk *= p;
      long long c = count(p, pk);
      if (c % prev != 0) throw Error("torsion counts are not p-power graded");
      long long ratio = c / prev;
      int jump = 0;
      while (ratio > 1) {
        if (ratio % p != 0) throw Error("torsion count is not a p-power");
        ratio /= p;
        ++jump;
      }
      if (jump == 0) break;
      conjugate.push_back(jump);
      prev = c;
    }
    if (conjugate.empty()) continue;
    int m = conjugate[0];
    std::vector<int> exps;
    for (int i = m; i >= 1; --i) {
      int e_i = static_cast<int>(std::count_if(
          conjugate.begin(), conjugate.end(), [i](int l) { return l >= i; }));
      exps.push_back(e_i);  // ascending once i runs downward
    }
    components[p] = exps;
  }
  return chain_from_primary(components);
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteModule
// ---------------------------------------------------------------------------

FiniteModule::FiniteModule(std::vector<int> orders, std::size_t bound)
    : orders_(std::move(orders)) {
  std::size_t n = 1;
  for (int o : orders_) {
    if (o < 2) throw Error("cyclic orders must be at least 2");
    n *= static_cast<std::size_t>(o);
    if (n > bound) {
      throw BoundExceededError("group order exceeds the oracle bound " +
                               std::to_string(bound));
    }
  }
  order_ = n;
  strides_.resize(orders_.size());
  std::size_t s = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    strides_[i] = static_cast<int>(s);
    s *= static_cast<std::size_t>(orders_[i]);
  }
  add_table_.resize(order_ * order_);
  neg_table_.resize(order_);
  for (std::size_t a = 0; a < order_; ++a) {
    std::vector<int> ca = coords(static_cast<int>(a));
    for (std::size_t i = 0; i < orders_.size(); ++i)
      ca[i] = (orders_[i] - ca[i]) % orders_[i];
    neg_table_[a] = from_coords(ca);
    for (std::size_t b = 0; b < order_; ++b) {
      std::vector<int> cb = coords(static_cast<int>(b));
      std::vector<int> cc = coords(static_cast<int>(a));
      for (std::size_t i = 0; i < orders_.size(); ++i)
        cc[i] = (cc[i] + cb[i]) % orders_[i];
      add_table_[a * order_ + b] = from_coords(cc);
    }
  }
}

int FiniteModule::mul(long long k, int a) const {
  std::vector<int> c = coords(a);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    long long kk = k % orders_[i];
    if (kk < 0) kk += orders_[i];
    c[i] = static_cast<int>((kk * c[i]) % orders_[i]);
  }
  return from_coords(c);
}

std::vector<int> FiniteModule::coords(int e) const {
  std::vector<int> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i)
    c[i] = (e / strides_[i]) % orders_[i];
  return c;
}

int FiniteModule::from_coords(const std::vector<int>& c) const {
  int e = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) e += c[i] * strides_[i];
  return e;
}

int FiniteModule::unit(std::size_t i) const { return strides_[i]; }

int FiniteModule::element_order(int e) const {
  std::vector<int> c = coords(e);
  long long ord = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    long long oi = orders_[i] / std::gcd<long long>(orders_[i], c[i]);
    ord = std::lcm(ord, oi);
  }
  return static_cast<int>(ord);
}

StructureDescriptor FiniteModule::descriptor() const {
  std::map<long long, std::vector<int>> components;
  for (int o : orders_) {
    for (const auto& [p, e] : factor_small(o)) components[p].push_back(e);
  }
  for (auto& [p, es] : components) std::sort(es.begin(), es.end());
  return chain_from_primary(components);
}

bool Submodule::contains(int e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

// ---------------------------------------------------------------------------
// Subgroup machinery
// ---------------------------------------------------------------------------

namespace {

std::vector<int> cyclic_set(const FiniteModule& g, int e) {
  std::vector<int> out{0};
  int x = e;
  while (x != 0) {
    out.push_back(x);
    x = g.add(x, e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sum_set(const FiniteModule& g, const std::vector<int>& a,
                         const std::vector<int>& b) {
  std::vector<char> seen(g.order(), 0);
  for (int x : a)
    for (int y : b) seen[static_cast<std::size_t>(g.add(x, y))] = 1;
  std::vector<int> out;
  for (std::size_t e = 0; e < g.order(); ++e)
    if (seen[e]) out.push_back(static_cast<int>(e));
  return out;  // ascending by construction
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// |a cap b| given sorted vectors.
std::size_t intersection_size(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::size_t n = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<int> intersection_of(const std::vector<int>& a,
                                 const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// All subgroup element sets inside a given subgroup universe, by closing
// cyclic subgroups under pairwise joins (H + C is already a subgroup for
// abelian groups).
std::vector<std::vector<int>> subgroup_sets(const FiniteModule& g,
                                            const std::vector<int>& universe) {
  std::vector<std::vector<int>> cyclics;
  std::map<std::vector<int>, bool> known;
  for (int e : universe) {
    std::vector<int> c = cyclic_set(g, e);
    if (known.emplace(c, true).second) cyclics.push_back(c);
  }
  std::vector<std::vector<int>> queue = cyclics;
  while (!queue.empty()) {
    std::vector<int> h = std::move(queue.back());
    queue.pop_back();
    for (const auto& c : cyclics) {
      if (subset_of(c, h)) continue;
      std::vector<int> j = sum_set(g, h, c);
      if (known.emplace(j, true).second) queue.push_back(j);
    }
  }
  std::vector<std::vector<int>> out;
  out.reserve(known.size());
  for (const auto& [s, _] : known) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> whole_set(const FiniteModule& g) {
  std::vector<int> u(g.order());
  std::iota(u.begin(), u.end(), 0);
  return u;
}

// Canonical (deterministic) generating set: repeatedly adjoin the smallest
// element of maximal order outside the running span.
std::vector<int> greedy_generators(const FiniteModule& g,
                                   const std::vector<int>& elements) {
  std::vector<int> gens;
  std::vector<int> span{0};
  while (span.size() < elements.size()) {
    int best = -1, best_order = 0;
    for (int e : elements) {
      if (std::binary_search(span.begin(), span.end(), e)) continue;
      int o = g.element_order(e);
      if (o > best_order) {
        best = e;
        best_order = o;
      }
    }
    gens.push_back(best);
    span = sum_set(g, span, cyclic_set(g, best));
  }
  return gens;
}

}  // namespace

StructureDescriptor descriptor_of_subset(const FiniteModule& g,
                                         const std::vector<int>& elements) {
  return descriptor_from_counts(
      elements.size(), [&](long long p, long long pk) {
        long long c = 0;
        for (int e : elements)
          if (g.mul(pk, e) == 0) ++c;
        return c;
      });
}

StructureDescriptor descriptor_of_quotient(const FiniteModule& g,
                                           const std::vector<int>& subgroup) {
  const long long a = static_cast<long long>(subgroup.size());
  return descriptor_from_counts(
      g.order() / subgroup.size(), [&](long long p, long long pk) {
        long long c = 0;
        for (std::size_t e = 0; e < g.order(); ++e) {
          int img = g.mul(pk, static_cast<int>(e));
          if (std::binary_search(subgroup.begin(), subgroup.end(), img)) ++c;
        }
        return c / a;
      });
}

std::vector<Submodule> enumerate_submodules(const FiniteModule& g) {
  std::vector<Submodule> out;
  for (auto& s : subgroup_sets(g, whole_set(g))) {
    std::vector<int> gens = greedy_generators(g, s);
    StructureDescriptor d = descriptor_of_subset(g, s);
    out.emplace_back(std::move(s), std::move(gens), std::move(d));
  }
  return out;
}

std::vector<int> independent_basis(const FiniteModule& g,
                                   const std::vector<int>& elements) {
  if (elements.size() <= 1) return {};
  int best = -1, best_order = 0;
  for (int e : elements) {
    int o = g.element_order(e);
    if (o > best_order) {
      best = e;
      best_order = o;
    }
  }
  std::vector<int> ca = cyclic_set(g, best);
  if (ca.size() == elements.size()) return {best};
  // A maximal-order cyclic subgroup is a direct summand; pick the first
  // complement in canonical order and recurse.
  std::size_t target = elements.size() / ca.size();
  for (const auto& c : subgroup_sets(g, elements)) {
    if (c.size() != target) continue;
    if (intersection_size(c, ca) != 1) continue;
    std::vector<int> rest = independent_basis(g, c);
    rest.insert(rest.begin(), best);
    return rest;
  }
  throw Error("maximal-order cyclic subgroup without complement");
}

// ---------------------------------------------------------------------------
// Summand types
// ---------------------------------------------------------------------------

namespace {

struct DescriptorLess {
  bool operator()(const StructureDescriptor& a,
                  const StructureDescriptor& b) const {
    return compare_descriptors(a, b) < 0;
  }
};

std::vector<StructureDescriptor> sorted_unique_types(
    std::vector<StructureDescriptor> types) {
  std::sort(types.begin(), types.end(), DescriptorLess{});
  types.erase(std::unique(types.begin(), types.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              types.end());
  return types;
}

std::vector<int> scaled_set(const FiniteModule& g, const std::vector<int>& s,
                            long long k) {
  std::vector<char> seen(g.order(), 0);
  for (int e : s) seen[static_cast<std::size_t>(g.mul(k, e))] = 1;
  std::vector<int> out;
  for (std::size_t e = 0; e < g.order(); ++e)
    if (seen[e]) out.push_back(static_cast<int>(e));
  return out;
}

bool is_pure_subgroup(const FiniteModule& g, const std::vector<int>& whole,
                      const std::vector<int>& a) {
  for (const auto& [p, vmax] : factor_small(static_cast<long long>(g.order()))) {
    long long pk = 1;
    for (int k = 1; k <= vmax; ++k) {
      pk *= p;
      std::vector<int> pkg = scaled_set(g, whole, pk);
      if (pkg.size() == 1) break;  // p^k G = 0, nothing left to compare
      std::vector<int> pka = scaled_set(g, a, pk);
      if (intersection_of(a, pkg) != pka) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<StructureDescriptor> summand_types_by_complement(
    const FiniteModule& g) {
  auto sets = subgroup_sets(g, whole_set(g));
  std::vector<StructureDescriptor> types;
  for (const auto& a : sets) {
    for (const auto& b : sets) {
      if (a.size() * b.size() != g.order()) continue;
      if (intersection_size(a, b) != 1) continue;
      types.push_back(descriptor_of_subset(g, a));
      break;
    }
  }
  return sorted_unique_types(std::move(types));
}

std::vector<StructureDescriptor> summand_types_by_purity(
    const FiniteModule& g) {
  auto sets = subgroup_sets(g, whole_set(g));
  std::vector<int> whole = whole_set(g);
  std::vector<StructureDescriptor> types;
  for (const auto& a : sets) {
    if (is_pure_subgroup(g, whole, a)) types.push_back(descriptor_of_subset(g, a));
  }
  return sorted_unique_types(std::move(types));
}

std::vector<StructureDescriptor> summand_types(const FiniteModule& g,
                                               std::size_t complement_bound) {
  if (g.order() <= complement_bound) return summand_types_by_complement(g);
  return summand_types_by_purity(g);
}

// ---------------------------------------------------------------------------
// Definitional predicates
// ---------------------------------------------------------------------------

bool is_vss_bruteforce(const FiniteModule& g) {
  std::vector<StructureDescriptor> types = summand_types(g);
  for (const auto& s : subgroup_sets(g, whole_set(g))) {
    StructureDescriptor d = descriptor_of_subset(g, s);
    if (!std::binary_search(types.begin(), types.end(), d, DescriptorLess{}))
      return false;
  }
  return true;
}

bool is_virtually_simple_bruteforce(const FiniteModule& g) {
  if (g.order() < 2) return false;
  StructureDescriptor whole = g.descriptor();
  for (const auto& s : subgroup_sets(g, whole_set(g))) {
    if (s.size() == 1) continue;
    if (!(descriptor_of_subset(g, s) == whole)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Embedding search
// ---------------------------------------------------------------------------

namespace {

std::vector<int> p_part_orders(const FiniteModule& g, long long p) {
  std::vector<int> out;
  for (int o : g.cyclic_orders()) {
    int q = 1;
    while (o % p == 0) {
      q *= static_cast<int>(p);
      o /= static_cast<int>(p);
    }
    if (q > 1) out.push_back(q);
  }
  return out;
}

long long torsion_count(const FiniteModule& g, long long d) {
  long long c = 0;
  for (std::size_t e = 0; e < g.order(); ++e)
    if (g.mul(d, static_cast<int>(e)) == 0) ++c;
  return c;
}

bool dfs_embed(const FiniteModule& gp, const FiniteModule& hp,
               const std::vector<int>& gen_orders, std::size_t level,
               const std::vector<int>& image_elems,
               const std::vector<std::vector<int>>& torsion_sets) {
  if (level == gen_orders.size()) return true;
  const int o = gen_orders[level];
  for (int y : torsion_sets[level]) {
    std::vector<char> seen(hp.order(), 0);
    std::vector<int> next;
    next.reserve(image_elems.size() * static_cast<std::size_t>(o));
    bool injective = true;
    for (int v : image_elems) {
      int x = v;
      for (int t = 0; t < o && injective; ++t) {
        if (seen[static_cast<std::size_t>(x)]) {
          injective = false;
          break;
        }
        seen[static_cast<std::size_t>(x)] = 1;
        next.push_back(x);
        x = hp.add(x, y);
      }
      if (!injective) break;
    }
    if (!injective) continue;
    if (dfs_embed(gp, hp, gen_orders, level + 1, next, torsion_sets))
      return true;
  }
  return false;
}

bool embeds_p_group(const FiniteModule& gp, const FiniteModule& hp) {
  if (gp.order() == 1) return true;
  if (gp.order() > hp.order()) return false;
  std::vector<int> gen_orders = gp.cyclic_orders();
  std::sort(gen_orders.rbegin(), gen_orders.rend());
  for (int o : gen_orders) {
    if (torsion_count(gp, o) > torsion_count(hp, o)) return false;
  }
  std::vector<std::vector<int>> torsion_sets;
  for (int o : gen_orders) {
    std::vector<int> t;
    for (std::size_t e = 0; e < hp.order(); ++e)
      if (hp.mul(o, static_cast<int>(e)) == 0) t.push_back(static_cast<int>(e));
    torsion_sets.push_back(std::move(t));
  }
  return dfs_embed(gp, hp, gen_orders, 0, {0}, torsion_sets);
}

}  // namespace

bool embeds_bruteforce(const FiniteModule& g, const FiniteModule& h) {
  if (g.order() == 1) return true;
  for (const auto& [p, e] : factor_small(static_cast<long long>(g.order()))) {
    FiniteModule gp(p_part_orders(g, p), g.order());
    FiniteModule hp(p_part_orders(h, p), std::max<std::size_t>(h.order(), 1));
    if (!embeds_p_group(gp, hp)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Quasi-injectivity
// ---------------------------------------------------------------------------

namespace {

// Extend the partial homomorphism (map over the subgroup dom) to all of g,
// one generator at a time, backtracking over the candidate images.
bool extension_exists(const FiniteModule& g, std::vector<int>& map,
                      std::vector<int>& dom) {
  if (dom.size() == g.order()) return true;
  int x = -1;
  for (std::size_t e = 0; e < g.order(); ++e) {
    if (map[e] < 0) {
      x = static_cast<int>(e);
      break;
    }
  }
  // Minimal c >= 1 with c*x inside the domain.
  int c = 1;
  while (map[static_cast<std::size_t>(g.mul(c, x))] < 0) ++c;
  const int v = map[static_cast<std::size_t>(g.mul(c, x))];
  for (std::size_t y = 0; y < g.order(); ++y) {
    if (g.mul(c, static_cast<int>(y)) != v) continue;
    std::vector<int> saved_map = map;
    std::vector<int> saved_dom = dom;
    for (int s : saved_dom) {
      int sx = s, fy = map[static_cast<std::size_t>(s)];
      for (int t = 1; t < c; ++t) {
        sx = g.add(sx, x);
        fy = g.add(fy, static_cast<int>(y));
        map[static_cast<std::size_t>(sx)] = fy;
        dom.push_back(sx);
      }
      // t = c lands back inside the old domain; consistency holds by the
      // choice c*y = v.
    }
    // include t = 1..c-1 shifts of x itself via s = 0 path above; x = 0 + 1*x
    std::sort(dom.begin(), dom.end());
    if (extension_exists(g, map, dom)) return true;
    map = std::move(saved_map);
    dom = std::move(saved_dom);
  }
  return false;
}

}  // namespace

bool quasi_injective_by_extension_search(const FiniteModule& g,
                                         std::size_t cap) {
  if (g.order() > cap) {
    throw BoundExceededError(
        "literal quasi-injectivity search capped at order " +
        std::to_string(cap));
  }
  if (g.order() <= 1) return true;
  auto subs = enumerate_submodules(g);
  for (const auto& a : subs) {
    if (a.size() == g.order()) continue;  // a hom from G extends as itself
    std::vector<int> basis = independent_basis(g, a.elements());
    std::vector<int> basis_orders;
    for (int b : basis) basis_orders.push_back(g.element_order(b));
    std::vector<std::vector<int>> candidates;
    for (int o : basis_orders) {
      std::vector<int> t;
      for (std::size_t e = 0; e < g.order(); ++e)
        if (g.mul(o, static_cast<int>(e)) == 0)
          t.push_back(static_cast<int>(e));
      candidates.push_back(std::move(t));
    }
    // Odometer over every homomorphism a -> g.
    std::vector<std::size_t> pick(basis.size(), 0);
    for (;;) {
      std::vector<int> map(g.order(), -1);
      std::vector<int> dom;
      // Images of the whole subgroup from the independent basis images.
      std::vector<int> tuple(basis.size(), 0);
      for (;;) {
        int src = 0, dst = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          src = g.add(src, g.mul(tuple[i], basis[i]));
          dst = g.add(dst, g.mul(tuple[i], candidates[i][pick[i]]));
        }
        map[static_cast<std::size_t>(src)] = dst;
        dom.push_back(src);
        std::size_t i = 0;
        for (; i < basis.size(); ++i) {
          if (++tuple[i] < basis_orders[i]) break;
          tuple[i] = 0;
        }
        if (i == basis.size()) break;
      }
      std::sort(dom.begin(), dom.end());
      if (basis.empty()) break;
      if (!extension_exists(g, map, dom)) return false;
      std::size_t i = 0;
      for (; i < basis.size(); ++i) {
        if (++pick[i] < candidates[i].size()) break;
        pick[i] = 0;
      }
      if (i == basis.size()) break;
    }
  }
  return true;
}

bool quasi_injective_by_hom_counting(const FiniteModule& g) {
  if (g.order() <= 1) return true;
  Int end_count = 1;
  for (int o : g.cyclic_orders()) end_count *= torsion_count(g, o);
  for (const auto& s : subgroup_sets(g, whole_set(g))) {
    StructureDescriptor da = descriptor_of_subset(g, s);
    Int hom_a = 1;
    for (const Element& d : da.invariant_factors())
      hom_a *= torsion_count(g, to_small_int(d));
    StructureDescriptor dq = descriptor_of_quotient(g, s);
    Int hom_q = 1;
    for (const Element& d : dq.invariant_factors())
      hom_q *= torsion_count(g, to_small_int(d));
    // |Hom(A,G)| * |Hom(G/A,G)| = |End(G)| iff End(G) -> Hom(A,G) is onto.
    if (hom_a * hom_q != end_count) return false;
  }
  return true;
}

bool is_quasi_injective_bruteforce(const FiniteModule& g) {
  if (g.order() <= kDefaultLiteralQiBound)
    return quasi_injective_by_extension_search(g);
  return quasi_injective_by_hom_counting(g);
}

// ---------------------------------------------------------------------------
// Essential / closed subgroups and the extending property
// ---------------------------------------------------------------------------

std::vector<int> socle_of(const FiniteModule& g, const std::vector<int>& k) {
  long long r = radical_of(static_cast<long long>(g.order()));
  std::vector<int> out;
  for (int e : k)
    if (g.mul(r, e) == 0) out.push_back(e);
  return out;
}

bool essential_in(const FiniteModule& g, const std::vector<int>& n,
                  const std::vector<int>& k) {
  // N is essential in K iff N contains every minimal subgroup of K, i.e.
  // Soc(K) <= N.
  std::vector<int> soc = socle_of(g, k);
  return subset_of(soc, n);
}

bool essential_in_literal(const FiniteModule& g,
                          const std::vector<Submodule>& all_subgroups,
                          const std::vector<int>& n,
                          const std::vector<int>& k) {
  for (const auto& s : all_subgroups) {
    if (s.size() <= 1) continue;
    if (!subset_of(s.elements(), k)) continue;
    if (intersection_size(s.elements(), n) == 1) return false;
  }
  return true;
}

std::optional<Submodule> extending_witness(const FiniteModule& g) {
  auto subs = enumerate_submodules(g);
  std::vector<std::vector<int>> socles;
  socles.reserve(subs.size());
  for (const auto& s : subs) socles.push_back(socle_of(g, s.elements()));
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& n = subs[i].elements();
    bool closed = true;
    for (std::size_t j = 0; j < subs.size() && closed; ++j) {
      if (subs[j].size() <= n.size()) continue;
      if (!subset_of(n, subs[j].elements())) continue;
      if (subset_of(socles[j], n)) closed = false;  // essential extension
    }
    if (!closed) continue;
    bool summand = false;
    for (const auto& b : subs) {
      if (n.size() * b.size() != g.order()) continue;
      if (intersection_size(n, b.elements()) == 1) {
        summand = true;
        break;
      }
    }
    if (!summand) return subs[i];
  }
  return std::nullopt;
}

bool is_extending_bruteforce(const FiniteModule& g) {
  return !extending_witness(g).has_value();
}

// ---------------------------------------------------------------------------
// Quasi-prime definitional search
// ---------------------------------------------------------------------------

bool quasi_prime_by_definition(long long d) {
  if (d < 0) d = -d;
  if (d == 0) return true;
  if (d == 1) throw UnitIdealError();
  const long long d2 = d * d;
  std::vector<long long> divisors;
  for (long long a = 1; a * a <= d2; ++a) {
    if (d2 % a == 0) {
      divisors.push_back(a);
      if (a != d2 / a) divisors.push_back(d2 / a);
    }
  }
  for (long long a : divisors) {
    for (long long b : divisors) {
      // (a)(b) <= (d) <= (a) cap (b) must force (a) <= (d) or (b) <= (d).
      if ((a * b) % d != 0) continue;
      if (d % a != 0 || d % b != 0) continue;
      if (a % d != 0 && b % d != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Group enumeration and validation harness
// ---------------------------------------------------------------------------

namespace {

void gen_partitions(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  return out;
}

long long ipow(long long p, int e) {
  long long r = 1;
  while (e-- > 0) r *= p;
  return r;
}

}  // namespace

std::vector<FiniteModule> all_abelian_groups(std::size_t max_order) {
  std::vector<FiniteModule> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    if (n == 1) {
      out.emplace_back(std::vector<int>{}, max_order);
      continue;
    }
    auto primes = factor_small(static_cast<long long>(n));
    std::vector<std::vector<std::vector<int>>> per_prime;
    for (const auto& [p, e] : primes) per_prime.push_back(partitions_of(e));
    std::vector<std::size_t> pick(per_prime.size(), 0);
    for (;;) {
      std::vector<int> orders;
      std::size_t pi = 0;
      for (const auto& [p, e] : primes) {
        for (int part : per_prime[pi][pick[pi]])
          orders.push_back(static_cast<int>(ipow(p, part)));
        ++pi;
      }
      out.emplace_back(std::move(orders), max_order);
      std::size_t i = 0;
      for (; i < per_prime.size(); ++i) {
        if (++pick[i] < per_prime[i].size()) break;
        pick[i] = 0;
      }
      if (i == per_prime.size()) break;
    }
  }
  return out;
}

FiniteModule from_descriptor(const StructureDescriptor& s) {
  if (!(s.ring() == RingTag::integers()) || s.free_rank() != 0)
    throw Error("only torsion descriptors over Z describe finite modules");
  std::vector<int> orders;
  std::size_t n = 1;
  for (const Element& d : s.invariant_factors()) {
    long long o = to_small_int(d);
    orders.push_back(static_cast<int>(o));
    n *= static_cast<std::size_t>(o);
  }
  return FiniteModule(std::move(orders), std::max<std::size_t>(n, 1));
}

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

using GroupCheck = bool (*)(const FiniteModule&);

void run_group_comparison(ValidationReport& report, std::size_t bound,
                          bool (*fast)(const StructureDescriptor&),
                          GroupCheck slow) {
  for (const FiniteModule& g : all_abelian_groups(bound)) {
    ++report.checked;
    bool f = fast(g.descriptor());
    bool s = slow(g);
    if (f != s) {
      report.mismatches.push_back(g.descriptor().to_string() + ": fast=" +
                                  yes_no(f) + " oracle=" + yes_no(s));
    }
  }
}

}  // namespace

std::vector<std::string> registered_predicates() {
  return {"virtually_semisimple",
          "virtually_simple",
          "embeds",
          "quasi_injective",
          "summand_via_purity",
          "fully_virtually_semisimple",
          "completely_virtually_semisimple",
          "quasi_prime"};
}

ValidationReport validate(const std::string& predicate, std::size_t bound) {
  ValidationReport report{predicate, bound, 0, {}};
  if (predicate == "virtually_semisimple") {
    run_group_comparison(report, bound, &is_virtually_semisimple,
                         &is_vss_bruteforce);
  } else if (predicate == "virtually_simple") {
    run_group_comparison(report, bound, &is_virtually_simple,
                         &is_virtually_simple_bruteforce);
  } else if (predicate == "quasi_injective") {
    run_group_comparison(report, bound, &is_quasi_injective,
                         &is_quasi_injective_bruteforce);
  } else if (predicate == "summand_via_purity") {
    for (const FiniteModule& g : all_abelian_groups(bound)) {
      ++report.checked;
      auto via_complement = summand_types_by_complement(g);
      auto via_purity = summand_types_by_purity(g);
      if (!(via_complement.size() == via_purity.size() &&
            std::equal(via_complement.begin(), via_complement.end(),
                       via_purity.begin(),
                       [](const auto& a, const auto& b) { return a == b; }))) {
        report.mismatches.push_back(g.descriptor().to_string() +
                                    ": complement and purity summand types "
                                    "differ");
      }
    }
  } else if (predicate == "fully_virtually_semisimple") {
    for (const FiniteModule& g : all_abelian_groups(bound)) {
      ++report.checked;
      bool fast = is_fully_virtually_semisimple(g.descriptor());
      bool slow = true;
      for (const auto& s : subgroup_sets(g, whole_set(g))) {
        StructureDescriptor q = descriptor_of_quotient(g, s);
        if (!is_vss_bruteforce(from_descriptor(q))) {
          slow = false;
          break;
        }
      }
      if (fast != slow) {
        report.mismatches.push_back(g.descriptor().to_string() + ": fast=" +
                                    yes_no(fast) + " oracle=" + yes_no(slow));
      }
    }
  } else if (predicate == "completely_virtually_semisimple") {
    for (const FiniteModule& g : all_abelian_groups(bound)) {
      ++report.checked;
      bool fast = is_completely_virtually_semisimple(g.descriptor());
      bool slow = true;
      for (const auto& s : subgroup_sets(g, whole_set(g))) {
        if (!is_vss_bruteforce(from_descriptor(descriptor_of_subset(g, s)))) {
          slow = false;
          break;
        }
      }
      if (fast != slow) {
        report.mismatches.push_back(g.descriptor().to_string() + ": fast=" +
                                    yes_no(fast) + " oracle=" + yes_no(slow));
      }
    }
  } else if (predicate == "embeds") {
    std::vector<FiniteModule> groups = all_abelian_groups(bound);
    std::vector<long long> primes;
    for (std::size_t p = 2; p <= bound; ++p) {
      if (is_prime_u64(p)) primes.push_back(static_cast<long long>(p));
    }
    for (long long p : primes) {
      std::vector<const FiniteModule*> p_groups;
      for (const FiniteModule& g : groups) {
        if (g.order() < 2) continue;
        std::size_t n = g.order();
        while (n % static_cast<std::size_t>(p) == 0)
          n /= static_cast<std::size_t>(p);
        if (n == 1) p_groups.push_back(&g);
      }
      for (const FiniteModule* a : p_groups) {
        for (const FiniteModule* b : p_groups) {
          ++report.checked;
          bool fast = embeds(a->descriptor(), b->descriptor());
          bool slow = embeds_bruteforce(*a, *b);
          if (fast != slow) {
            report.mismatches.push_back(
                a->descriptor().to_string() + " -> " +
                b->descriptor().to_string() + ": fast=" + yes_no(fast) +
                " oracle=" + yes_no(slow));
          }
        }
      }
    }
  } else if (predicate == "quasi_prime") {
    for (long long d = 0; d <= static_cast<long long>(bound); ++d) {
      if (d == 1) continue;
      ++report.checked;
      bool fast = is_quasi_prime_ideal(Element::integer(Int(d)));
      bool slow = quasi_prime_by_definition(d);
      if (fast != slow) {
        report.mismatches.push_back("d=" + std::to_string(d) + ": fast=" +
                                    yes_no(fast) + " oracle=" + yes_no(slow));
      }
    }
  } else {
    throw UnknownPredicateError(predicate);
  }
  return report;
}

}  // namespace virtmod::oracle
