#include "cayspec/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "cayspec/error.hpp"
#include "cayspec/numeric.hpp"

namespace cayspec {

struct FiniteGroup::Impl {
  GroupKind kind = GroupKind::cyclic;
  std::size_t order = 1;
  std::vector<int> params;
  std::vector<Elem> generators;

  // Split kinds: element a*m + b is h_a k^b. A null complement is trivial.
  std::int64_t m = 1;
  std::shared_ptr<const Impl> h;
  std::size_t l = 1;
  std::vector<std::int64_t> unit;      // h_a k h_a^{-1} = k^{unit[a]}
  std::vector<std::int64_t> unit_inv;  // h_a^{-1} k h_a = k^{unit_inv[a]}
  std::optional<int> r;

  // Permutation kind.
  int degree = 0;
  std::vector<std::vector<int>> perms;
  std::map<std::vector<int>, Elem> perm_index;
  std::vector<Elem> table;  // n*n product table, filled for small n
  std::vector<Elem> inverses;

  bool split() const { return kind != GroupKind::permutation; }
};

namespace {

using Impl = FiniteGroup::Impl;

Elem mul(const Impl& g, Elem x, Elem y);
Elem inv(const Impl& g, Elem x);

Elem mul(const Impl& g, Elem x, Elem y) {
  if (g.split()) {
    const auto m = static_cast<Elem>(g.m);
    const Elem a1 = x / m, a2 = y / m;
    const auto b1 = static_cast<std::int64_t>(x % m), b2 = static_cast<std::int64_t>(y % m);
    const Elem a = g.h ? mul(*g.h, a1, a2) : 0;
    // (h1 k^b1)(h2 k^b2) = h1 h2 (h2^{-1} k^b1 h2) k^b2
    const std::int64_t b = (b1 * g.unit_inv[a2] + b2) % g.m;
    return a * m + static_cast<Elem>(b);
  }
  if (!g.table.empty()) return g.table[x * g.order + y];
  const auto& px = g.perms[x];
  const auto& py = g.perms[y];
  std::vector<int> out(px.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = px[static_cast<std::size_t>(py[i])];
  return g.perm_index.at(out);
}

Elem inv(const Impl& g, Elem x) {
  if (g.split()) {
    const auto m = static_cast<Elem>(g.m);
    const Elem a = x / m;
    const auto b = static_cast<std::int64_t>(x % m);
    // (h k^b)^{-1} = h^{-1} k^{-b u(h)}
    const Elem ai = g.h ? inv(*g.h, a) : 0;
    return ai * m + static_cast<Elem>(mod(-b * g.unit[a], g.m));
  }
  return g.inverses[x];
}

Encoding encode_impl(const Impl& g, Elem x) {
  if (!g.split()) return g.perms[x];
  const auto m = static_cast<Elem>(g.m);
  Encoding out;
  if (g.h) out = encode_impl(*g.h, x / m);
  out.push_back(static_cast<int>(x % m));
  return out;
}

Elem decode_impl(const Impl& g, std::span<const int> enc) {
  if (!g.split()) {
    std::vector<int> p(enc.begin(), enc.end());
    auto it = g.perm_index.find(p);
    if (it == g.perm_index.end()) throw InvalidElement("permutation is not an element of the group");
    return it->second;
  }
  if (enc.empty()) throw InvalidElement("empty element encoding");
  const int b = enc.back();
  if (b < 0 || b >= g.m) {
    throw InvalidElement("exponent " + std::to_string(b) + " outside [0, " + std::to_string(g.m) + ")");
  }
  Elem a = 0;
  if (g.h) {
    a = decode_impl(*g.h, enc.first(enc.size() - 1));
  } else if (enc.size() != 1) {
    throw InvalidElement("encoding has " + std::to_string(enc.size()) + " entries, expected 1");
  }
  return a * static_cast<Elem>(g.m) + static_cast<Elem>(b);
}

std::string power_string(const std::string& symbol, std::int64_t e) {
  if (e == 0) return "";
  if (e == 1) return symbol;
  return symbol + "^" + std::to_string(e);
}

std::string format_impl(const Impl& g, Elem x) {
  if (x == 0) return "e";
  if (!g.split()) {
    // Cycle notation on 0-based points.
    const auto& p = g.perms[x];
    std::vector<bool> seen(p.size(), false);
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == static_cast<int>(i)) continue;
      os << '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) os << ' ';
        os << j;
        first = false;
        j = static_cast<std::size_t>(p[j]);
      }
      os << ')';
    }
    return os.str();
  }
  const auto m = static_cast<Elem>(g.m);
  const Elem a = x / m;
  const auto b = static_cast<std::int64_t>(x % m);
  switch (g.kind) {
    case GroupKind::abelian: {
      std::ostringstream os;
      const auto enc = encode_impl(g, x);
      os << '(';
      for (std::size_t i = 0; i < enc.size(); ++i) os << (i ? "," : "") << enc[i];
      os << ')';
      return os.str();
    }
    case GroupKind::dihedral: {
      std::string s = power_string("s", static_cast<std::int64_t>(a));
      const std::string rot = power_string("r", b);
      if (!s.empty() && !rot.empty()) s += ' ';
      return s + rot;
    }
    case GroupKind::semidirect: {
      std::string s = a == 0 ? "" : "[" + format_impl(*g.h, a) + "]";
      const std::string kp = power_string("k", b);
      if (!s.empty() && !kp.empty()) s += ' ';
      return s + kp;
    }
    default: {
      std::string s = power_string("h", static_cast<std::int64_t>(a));
      const std::string kp = power_string("k", b);
      if (!s.empty() && !kp.empty()) s += ' ';
      return s + kp;
    }
  }
}

void check_capacity(std::int64_t n, const GroupLimits& limits) {
  if (n > static_cast<std::int64_t>(limits.max_order)) {
    throw CapacityExceeded("group order " + std::to_string(n) + " exceeds the cap of " +
                           std::to_string(limits.max_order));
  }
}

void require_positive(int v, const char* what) {
  if (v < 1) throw InvalidParameter(std::string(what) + " must be at least 1, got " + std::to_string(v));
}

const std::shared_ptr<const Impl>& trivial_impl() {
  static const std::shared_ptr<const Impl> t = [] {
    auto i = std::make_shared<Impl>();
    i->kind = GroupKind::cyclic;
    i->order = 1;
    i->params = {1};
    i->m = 1;
    i->unit = {0};
    i->unit_inv = {0};
    return i;
  }();
  return t;
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::abelian: return "abelian";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::metacyclic: return "metacyclic";
    case GroupKind::semidirect: return "semidirect";
    case GroupKind::permutation: return "permutation";
  }
  return "unknown";
}

FiniteGroup FiniteGroup::make_split(GroupKind kind, int m, std::shared_ptr<const Impl> h,
                                    std::vector<int> action, std::vector<int> params,
                                    std::optional<int> r, GroupLimits limits) {
  require_positive(m, "order of K");
  const std::size_t l = h ? h->order : 1;
  check_capacity(static_cast<std::int64_t>(m) * static_cast<std::int64_t>(l), limits);

  auto g = std::make_shared<Impl>();
  g->kind = kind;
  g->m = m;
  g->h = h;
  g->l = l;
  g->order = static_cast<std::size_t>(m) * l;
  g->params = std::move(params);
  g->r = r;

  // The action is read off H's generators and propagated over H. A second
  // path to the same element with a different unit means some relation of
  // H is not respected.
  g->unit.assign(l, -1);
  g->unit[0] = 1 % m;
  if (h) {
    if (action.size() != h->generators.size()) {
      throw InvalidAction("action lists " + std::to_string(action.size()) + " images but H has " +
                          std::to_string(h->generators.size()) + " generators");
    }
    for (int u : action) {
      if (gcd(u, m) != 1) {
        throw InvalidAction("action image " + std::to_string(u) + " is not a unit modulo " +
                            std::to_string(m));
      }
    }
    std::deque<Elem> queue{0};
    while (!queue.empty()) {
      const Elem x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < h->generators.size(); ++i) {
        const Elem y = mul(*h, x, h->generators[i]);
        const std::int64_t value = g->unit[x] * mod(action[i], m) % m;
        if (g->unit[y] < 0) {
          g->unit[y] = value;
          queue.push_back(y);
        } else if (g->unit[y] != value) {
          throw InvalidAction("action does not respect the relations of H: element " +
                              format_impl(*h, y) + " would act as both " +
                              std::to_string(g->unit[y]) + " and " + std::to_string(value));
        }
      }
    }
  }
  g->unit_inv.resize(l);
  for (std::size_t a = 0; a < l; ++a) g->unit_inv[a] = mod_inverse(g->unit[a], m);

  const auto k_gen = m > 1 ? std::optional<Elem>(1) : std::nullopt;
  std::vector<Elem> h_gens;
  if (h) {
    for (Elem x : h->generators) h_gens.push_back(x * static_cast<Elem>(m));
  }
  if (kind == GroupKind::abelian) {
    g->generators = h_gens;
    if (k_gen) g->generators.push_back(*k_gen);
  } else {
    if (k_gen) g->generators.push_back(*k_gen);
    g->generators.insert(g->generators.end(), h_gens.begin(), h_gens.end());
  }
  return FiniteGroup(std::move(g));
}

FiniteGroup FiniteGroup::cyclic(int n, GroupLimits limits) {
  require_positive(n, "n");
  return make_split(GroupKind::cyclic, n, nullptr, {}, {n}, std::nullopt, limits);
}

FiniteGroup FiniteGroup::abelian(std::vector<int> orders, GroupLimits limits) {
  if (orders.empty()) throw InvalidParameter("abelian group needs at least one factor");
  std::int64_t n = 1;
  for (int o : orders) {
    require_positive(o, "factor order");
    n *= o;
    check_capacity(n, limits);
  }
  std::shared_ptr<const Impl> h;
  if (orders.size() > 1) {
    std::vector<int> rest(orders.begin(), orders.end() - 1);
    h = abelian(rest, limits).impl_;
  }
  const std::vector<int> trivial_action(h ? h->generators.size() : 0, 1);
  return make_split(GroupKind::abelian, orders.back(), h, trivial_action, orders, std::nullopt,
                    limits);
}

FiniteGroup FiniteGroup::dihedral(int n, GroupLimits limits) {
  if (n < 3) throw InvalidParameter("dihedral group D_n needs n >= 3, got " + std::to_string(n));
  return make_split(GroupKind::dihedral, n, cyclic(2, limits).impl_, {n - 1}, {n}, n - 1, limits);
}

FiniteGroup FiniteGroup::metacyclic(int m, int l, int r, GroupLimits limits) {
  require_positive(m, "m");
  require_positive(l, "l");
  if (gcd(r, m) != 1) {
    throw InvalidAction("gcd(r, m) = gcd(" + std::to_string(r) + ", " + std::to_string(m) + ") != 1");
  }
  if (mod_pow(r, l, m) != 1 % m) {
    throw InvalidAction("r^l = " + std::to_string(r) + "^" + std::to_string(l) + " = " +
                        std::to_string(mod_pow(r, l, m)) + " (mod " + std::to_string(m) +
                        "), expected 1");
  }
  check_capacity(static_cast<std::int64_t>(m) * l, limits);
  return make_split(GroupKind::metacyclic, m, cyclic(l, limits).impl_,
                    l > 1 ? std::vector<int>{r} : std::vector<int>{}, {m, l, r},
                    static_cast<int>(mod(r, m)), limits);
}

FiniteGroup FiniteGroup::semidirect(int m, const FiniteGroup& h, std::vector<int> action,
                                    GroupLimits limits) {
  if (h.kind() != GroupKind::cyclic && h.kind() != GroupKind::dihedral &&
      h.kind() != GroupKind::abelian) {
    throw InvalidParameter("semidirect complement must be cyclic, dihedral or abelian, got " +
                           to_string(h.kind()));
  }
  std::vector<int> params{m};
  params.insert(params.end(), action.begin(), action.end());
  return make_split(GroupKind::semidirect, m, h.impl_, std::move(action), std::move(params),
                    std::nullopt, limits);
}

FiniteGroup FiniteGroup::permutation(int degree, const std::vector<std::vector<int>>& generators,
                                     GroupLimits limits) {
  require_positive(degree, "degree");
  for (const auto& p : generators) {
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(static_cast<std::size_t>(degree));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw InvalidElement("generator is not a permutation of 0.." + std::to_string(degree - 1));
  }

  std::vector<int> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, bool> seen{{id, true}};
  std::deque<std::vector<int>> queue{id};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      std::vector<int> y(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = gen[static_cast<std::size_t>(x[i])];
      if (seen.emplace(y, true).second) {
        check_capacity(static_cast<std::int64_t>(seen.size()), limits);
        queue.push_back(std::move(y));
      }
    }
  }

  auto g = std::make_shared<Impl>();
  g->kind = GroupKind::permutation;
  g->degree = degree;
  g->params = {degree};
  g->order = seen.size();
  for (const auto& [p, _] : seen) {  // lexicographic, identity first
    g->perm_index.emplace(p, g->perms.size());
    g->perms.push_back(p);
  }
  for (const auto& gen : generators) {
    const Elem x = g->perm_index.at(gen);
    if (x != 0 && std::find(g->generators.begin(), g->generators.end(), x) == g->generators.end()) {
      g->generators.push_back(x);
    }
  }
  g->inverses.resize(g->order);
  for (Elem x = 0; x < g->order; ++x) {
    std::vector<int> q(static_cast<std::size_t>(degree));
    for (std::size_t i = 0; i < q.size(); ++i) q[static_cast<std::size_t>(g->perms[x][i])] = static_cast<int>(i);
    g->inverses[x] = g->perm_index.at(q);
  }
  if (g->order <= 2048) {
    std::vector<Elem> table(g->order * g->order);
    for (Elem x = 0; x < g->order; ++x) {
      for (Elem y = 0; y < g->order; ++y) table[x * g->order + y] = mul(*g, x, y);
    }
    g->table = std::move(table);
  }
  return FiniteGroup(std::move(g));
}

GroupKind FiniteGroup::kind() const { return impl_->kind; }
std::size_t FiniteGroup::order() const { return impl_->order; }
Elem FiniteGroup::multiply(Elem x, Elem y) const { return mul(*impl_, x, y); }
Elem FiniteGroup::inverse(Elem x) const { return inv(*impl_, x); }

Elem FiniteGroup::power(Elem x, long long exponent) const {
  if (exponent < 0) {
    x = inverse(x);
    exponent = -exponent;
  }
  Elem result = identity();
  while (exponent > 0) {
    if (exponent & 1) result = multiply(result, x);
    x = multiply(x, x);
    exponent >>= 1;
  }
  return result;
}

const std::vector<Elem>& FiniteGroup::generators() const { return impl_->generators; }
Encoding FiniteGroup::encode(Elem x) const { return encode_impl(*impl_, x); }
Elem FiniteGroup::decode(std::span<const int> encoding) const { return decode_impl(*impl_, encoding); }
std::string FiniteGroup::format(Elem x) const { return format_impl(*impl_, x); }

bool FiniteGroup::has_split_structure() const { return impl_->split(); }
int FiniteGroup::k_order() const { return static_cast<int>(impl_->m); }
int FiniteGroup::h_order() const { return static_cast<int>(impl_->l); }

FiniteGroup FiniteGroup::complement() const {
  if (!impl_->split()) throw InvalidParameter("permutation groups carry no built-in split structure");
  return FiniteGroup(impl_->h ? impl_->h : trivial_impl());
}

Elem FiniteGroup::compose(Elem h_index, int k_exponent) const {
  return h_index * static_cast<Elem>(impl_->m) + static_cast<Elem>(mod(k_exponent, impl_->m));
}
Elem FiniteGroup::h_part(Elem x) const { return x / static_cast<Elem>(impl_->m); }
int FiniteGroup::k_part(Elem x) const { return static_cast<int>(x % static_cast<Elem>(impl_->m)); }
int FiniteGroup::action_unit(Elem h_index) const { return static_cast<int>(impl_->unit.at(h_index)); }
std::optional<int> FiniteGroup::metacyclic_r() const { return impl_->r; }
std::vector<int> FiniteGroup::parameters() const { return impl_->params; }

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> assigned(n, false);
  std::vector<ConjugacyClass> classes;
  std::vector<Elem> gen_inv;
  for (Elem s : g.generators()) gen_inv.push_back(g.inverse(s));
  for (Elem x = 0; x < n; ++x) {
    if (assigned[x]) continue;
    ConjugacyClass c{x, {x}};
    assigned[x] = true;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      const Elem y = c.members[i];
      for (std::size_t j = 0; j < gen_inv.size(); ++j) {
        const Elem z = g.multiply(g.multiply(g.generators()[j], y), gen_inv[j]);
        if (!assigned[z]) {
          assigned[z] = true;
          c.members.push_back(z);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    classes.push_back(std::move(c));
  }
  return classes;
}

std::vector<std::size_t> class_index(const FiniteGroup& g, const std::vector<ConjugacyClass>& classes) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (Elem x : classes[c].members) out[x] = c;
  }
  return out;
}

std::vector<Elem> subgroup_closure(const FiniteGroup& g, std::span<const Elem> generators) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> out{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem s : generators) {
      const Elem y = g.multiply(out[i], s);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GenerationResult is_generating_set(const FiniteGroup& g, std::span<const Elem> s) {
  const auto closure = subgroup_closure(g, s);
  return {closure.size() == g.order(), closure.size()};
}

SplitExtension SplitExtension::of(const FiniteGroup& g) {
  if (!g.has_split_structure()) {
    throw InvalidParameter("group has no built-in split structure; give K and H generators");
  }
  SplitExtension ext{g, {}, {}};
  for (int b = 0; b < g.k_order(); ++b) ext.k_elements.push_back(g.compose(0, b));
  for (int a = 0; a < g.h_order(); ++a) ext.h_elements.push_back(g.compose(static_cast<Elem>(a), 0));
  return ext;
}

SplitExtension SplitExtension::from_subgroups(const FiniteGroup& g, std::span<const Elem> k_generators,
                                              std::span<const Elem> h_generators) {
  SplitExtension ext{g, subgroup_closure(g, k_generators), subgroup_closure(g, h_generators)};
  if (ext.k_elements.size() * ext.h_elements.size() != g.order()) {
    throw InvalidAction("|K| * |H| = " + std::to_string(ext.k_elements.size()) + " * " +
                        std::to_string(ext.h_elements.size()) + " differs from |G| = " +
                        std::to_string(g.order()));
  }
  std::vector<bool> in_k(g.order(), false);
  for (Elem k : ext.k_elements) in_k[k] = true;
  for (Elem h : ext.h_elements) {
    if (h != g.identity() && in_k[h]) {
      throw InvalidAction("K and H intersect in " + g.format(h));
    }
  }
  for (Elem s : g.generators()) {
    for (Elem k : ext.k_elements) {
      if (!in_k[g.conjugate(s, k)]) {
        throw InvalidAction("K is not normal: " + g.format(s) + " conjugates " + g.format(k) +
                            " outside K");
      }
    }
  }
  return ext;
}

std::vector<ConjugationOrbit> conjugation_orbits_on_k(const SplitExtension& ext) {
  const FiniteGroup& g = ext.group;
  std::vector<bool> assigned(g.order(), false);
  std::vector<ConjugationOrbit> orbits;
  for (Elem root : ext.k_elements) {
    if (assigned[root]) continue;
    ConjugationOrbit orbit{{root}, {g.identity()}};
    assigned[root] = true;
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
      for (Elem s : g.generators()) {
        const Elem y = g.conjugate(s, orbit.members[i]);
        if (!assigned[y]) {
          assigned[y] = true;
          orbit.members.push_back(y);
          orbit.conjugators.push_back(g.multiply(s, orbit.conjugators[i]));
        }
      }
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Transversal left_transversal_ordering(const SplitExtension& ext) {
  const FiniteGroup& g = ext.group;
  Transversal t;
  t.m = ext.k_elements.size();
  t.l = ext.h_elements.size();
  t.h_elements = ext.h_elements;
  t.k_elements = ext.k_elements;
  t.positions.assign(g.order(), 0);
  for (Elem h : ext.h_elements) {
    for (Elem k : ext.k_elements) {
      const Elem x = g.multiply(h, k);
      t.positions[x] = t.vertices.size();
      t.vertices.push_back(x);
    }
  }
  return t;
}

std::vector<Elem> canonical_ordering(const FiniteGroup& g) {
  std::vector<Elem> out(g.order());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

}  // namespace cayspec
