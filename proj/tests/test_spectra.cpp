#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "cayspec/error.hpp"
#include "cayspec/spectra.hpp"

using namespace cayspec;

namespace {

Elem mc(const FiniteGroup& g, int a, int b) { return g.decode(std::vector<int>{a, b}); }

const SpectralLine& line_at(const Spectrum& s, int u, int v) {
  for (const auto& line : s.lines) {
    if (line.u == u && line.v == v) return line;
  }
  FAIL("missing line (" << u << ", " << v << ")");
  return s.lines.front();
}

FiniteGroup c7_d3() { return FiniteGroup::semidirect(7, FiniteGroup::dihedral(3), {1, 6}); }

/// (C_7 \ {e}) u {three reflections}
ColorFunction c7_d3_alpha(const FiniteGroup& g) {
  std::vector<Elem> s;
  for (int b = 1; b < 7; ++b) s.push_back(g.decode(std::vector<int>{0, 0, b}));
  for (int rot = 0; rot < 3; ++rot) s.push_back(g.decode(std::vector<int>{1, rot, 0}));
  return color_from_set(g, s);
}

ColorFunction random_class_function(const FiniteGroup& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> small(-4, 4);
  std::vector<cd> v(g.order());
  for (const auto& cls : conjugacy_classes(g)) {
    const cd value(small(rng), small(rng));
    for (Elem x : cls.members) v[x] = value;
  }
  return ColorFunction(g, v);
}

FiniteGroup s4() { return FiniteGroup::permutation(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}); }

}  // namespace

TEST_CASE("hypotheses fail on S4 with a separating class function") {
  const auto g = s4();
  const std::vector<Elem> k_gens = {g.decode(std::vector<int>{1, 2, 0, 3}), g.decode(std::vector<int>{0, 2, 3, 1})};
  const std::vector<Elem> h_gens = {g.decode(std::vector<int>{1, 0, 2, 3})};
  const auto ext = SplitExtension::from_subgroups(g, k_gens, h_gens);

  std::vector<cd> values(g.order());
  const auto classes = conjugacy_classes(g);
  const auto index = class_index(g, classes);
  for (Elem x = 0; x < g.order(); ++x) values[x] = static_cast<double>(10 * (index[x] + 1));
  const ColorFunction alpha(g, values);
  REQUIRE(alpha.is_class_function());

  const auto report = check_split_hypotheses(ext, alpha);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.condition_a);
  REQUIRE(report.witness_a.has_value());
  const auto& w = *report.witness_a;
  CHECK(alpha(g.multiply(w.h, g.conjugate(w.g, w.k))) == w.lhs);
  CHECK(alpha(g.multiply(w.h, w.k)) == w.rhs);
  CHECK(w.lhs != w.rhs);

  // The quadruple h = (12), g = (1432), k = (234), written 0-based.
  const std::vector<int> h = {1, 0, 2, 3}, gg = {3, 0, 1, 2}, k = {0, 2, 3, 1};
  const auto lhs = oracle::perm_compose(h, oracle::perm_compose(gg, oracle::perm_compose(k, oracle::perm_inverse(gg))));
  CHECK(lhs == std::vector<int>{0, 2, 1, 3});  // (23)
  CHECK(oracle::perm_compose(h, k) == std::vector<int>{1, 2, 3, 0});  // (1234)
  CHECK(alpha(g.decode(lhs)) != alpha(g.decode(oracle::perm_compose(h, k))));
  CHECK(alpha(g.multiply(g.decode(h), g.conjugate(g.decode(gg), g.decode(k)))) == alpha(g.decode(lhs)));
}

TEST_CASE("hypotheses pass") {
  const auto ab = FiniteGroup::abelian({3, 4});
  std::mt19937 rng(3);
  std::vector<cd> v(ab.order());
  for (auto& x : v) x = static_cast<double>(rng() % 7);
  CHECK(check_split_hypotheses(SplitExtension::of(ab), ColorFunction(ab, v)).passed());

  const auto fam = family_nonnormal(7, 3, 2);
  CHECK(check_split_hypotheses(SplitExtension::of(fam.group), color_from_set(fam.group, fam.connection.elements))
            .passed());

  const auto g = FiniteGroup::metacyclic(7, 3, 2);
  const auto bad = color_from_set(g, {mc(g, 0, 1), mc(g, 0, 6)});
  const auto report = check_split_hypotheses(SplitExtension::of(g), bad);
  CHECK_FALSE(report.condition_a);
  CHECK(report.condition_b);
}

TEST_CASE("normal formula") {
  for (int n : {2, 5, 9}) {
    const auto g = FiniteGroup::cyclic(n);
    std::vector<Elem> s;
    for (Elem x = 1; x < g.order(); ++x) s.push_back(x);
    const auto spec = spectrum_normal(color_from_set(g, s), irreps_cyclic(n));
    CHECK(oracle::same_multiset(expanded_eigenvalues(spec), oracle::expand({{n - 1.0, 1}, {-1.0, n - 1}}), 1e-12));
  }
  const auto c4 = FiniteGroup::cyclic(4);
  const auto cycle = spectrum_normal(color_from_set(c4, {1, 3}), irreps_cyclic(4));
  CHECK(oracle::same_multiset(expanded_eigenvalues(cycle), oracle::expand({{2, 1}, {0, 2}, {-2, 1}}), 1e-12));

  const auto d5 = FiniteGroup::dihedral(5);
  const auto all = spectrum_normal(ColorFunction(d5, std::vector<cd>(10, 1.0)), irreps_dihedral(5));
  CHECK(std::abs(all.lines.front().eigenvalue - 10.0) < 1e-12);
  for (std::size_t i = 1; i < all.lines.size(); ++i) CHECK(std::abs(all.lines[i].eigenvalue) < 1e-12);
  CHECK(all.total_multiplicity() == 10);

  const auto fam = family_nonnormal(7, 3, 2);
  CHECK_THROWS_AS(spectrum_normal(color_from_set(fam.group, fam.connection.elements), irreps_metacyclic(7, 3, 2)),
                  NotClassFunction);
}

TEST_CASE("normal formula against a dense eigensolver") {
  const std::vector<FiniteGroup> groups = {FiniteGroup::metacyclic(7, 3, 2), FiniteGroup::metacyclic(13, 4, 5),
                                           FiniteGroup::dihedral(6), FiniteGroup::abelian({2, 6})};
  unsigned seed = 1;
  for (const auto& g : groups) {
    const auto alpha = random_class_function(g, seed++);
    const auto spec = spectrum_normal(alpha, *builtin_irreps(g));
    const auto dense = oracle::dense_eigenvalues(adjacency_matrix(alpha).matrix);
    CHECK(oracle::same_multiset(expanded_eigenvalues(spec), dense, 1e-8));
  }
}

TEST_CASE("structural formula on C7 x| D3") {
  const auto g = c7_d3();
  const auto alpha = c7_d3_alpha(g);
  const auto spec = spectrum_split(alpha);
  CHECK(spec.lines.size() == 21);
  CHECK(spec.total_multiplicity() == 42);
  auto expect = [&](int u, int v, double value, int mult) {
    const auto& line = line_at(spec, u, v);
    CHECK(std::abs(line.eigenvalue - value) < 1e-12);
    CHECK(line.multiplicity == mult);
    CHECK(line.eigenvectors.size() == static_cast<std::size_t>(mult));
  };
  expect(0, 0, 9, 1);
  expect(1, 0, 3, 1);
  expect(2, 0, 6, 4);
  for (int v = 1; v < 7; ++v) {
    expect(0, v, 2, 1);
    expect(1, v, -4, 1);
    expect(2, v, -1, 4);
  }

  // sigma values per H-class {e}, {rotations}, {reflections}
  const auto& l1 = line_at(spec, 2, 3);
  REQUIRE(l1.sigma_k.size() == 3);
  CHECK(std::abs(l1.sigma_k[0] + 1.0) < 1e-12);
  CHECK(std::abs(l1.sigma_k[1]) < 1e-12);
  CHECK(std::abs(l1.sigma_k[2] - 1.0) < 1e-12);

  const auto zero = spectrum_split(ColorFunction::zero(g));
  for (const auto& line : zero.lines) CHECK(line.eigenvalue == cd{});
}

TEST_CASE("structural formula enforces its hypotheses") {
  const auto g = FiniteGroup::metacyclic(7, 3, 2);
  const auto bad = color_from_set(g, {mc(g, 0, 1), mc(g, 0, 6)});
  CHECK_THROWS_AS(spectrum_split(bad), HypothesesViolated);
  try {
    spectrum_split(bad);
  } catch (const HypothesesViolated& e) {
    CHECK_FALSE(e.report().condition_a);
  }
  SpectrumOptions opts;
  opts.override_hypotheses = true;
  const auto spec = spectrum_split(bad, opts);
  CHECK_FALSE(spec.hypotheses_verified);
  CHECK(spec.total_multiplicity() == 21);
}

TEST_CASE("exponential-sum formula") {
  const auto prism = spectrum_metacyclic(3, 2, 2, {{1, 2}, {0}});
  CHECK(oracle::same_multiset(expanded_eigenvalues(prism), oracle::expand({{3, 1}, {1, 1}, {0, 2}, {-2, 2}}), 1e-12));

  const auto hexagon = spectrum_metacyclic(6, 1, 1, {{1, 5}});
  CHECK(oracle::same_multiset(expanded_eigenvalues(hexagon), oracle::expand({{2, 1}, {1, 2}, {-1, 2}, {-2, 1}}),
                              1e-12));

  const auto fam = spectrum_metacyclic(7, 3, 2, {{1, 2, 3, 4, 5, 6}, {0}, {0}});
  CHECK(oracle::same_multiset(expanded_eigenvalues(fam), oracle::expand({{8, 1}, {5, 2}, {1, 6}, {-2, 12}}), 1e-12));
  cd sum{}, sum_sq{};
  for (const auto& line : fam.lines) {
    sum += line.eigenvalue;
    sum_sq += line.eigenvalue * line.eigenvalue;
  }
  CHECK(std::abs(sum) < 1e-12);
  CHECK(std::abs(sum_sq - 168.0) < 1e-10);

  CHECK_THROWS_AS(spectrum_metacyclic(5, 3, 2, {{}, {}, {}}), InvalidAction);
  try {
    spectrum_metacyclic(7, 3, 2, {{1, 6}, {}, {}});
    FAIL("expected LayerNotInvariant");
  } catch (const LayerNotInvariant& e) {
    CHECK(e.layer() == 0);
    CHECK(e.exponent() == 1);
  }
}

TEST_CASE("structural and exponential-sum formulas agree on metacyclic groups") {
  const auto fam = family_nonnormal(7, 3, 2);
  const auto alpha = color_from_set(fam.group, fam.connection.elements);
  const auto a = spectrum_split(alpha);
  const auto b = spectrum_metacyclic(7, 3, 2, fam.layers);
  for (const auto& line : b.lines) CHECK(std::abs(line_at(a, line.u, line.v).eigenvalue - line.eigenvalue) < 1e-12);
}

TEST_CASE("block diagonalization") {
  const auto d4 = FiniteGroup::dihedral(4);
  const auto alpha = random_class_function(d4, 9);
  const auto irreps = irreps_dihedral(4);
  const auto normal = spectrum_normal(alpha, irreps);
  const auto bd = block_diagonalize(alpha, irreps);
  CHECK(bd.reconstruction_deviation < 1e-12);
  for (std::size_t u = 0; u < irreps.size(); ++u) {
    const auto d = irreps[u].degree();
    const cd lambda = line_at(normal, static_cast<int>(u), 0).eigenvalue;
    CHECK((bd.blocks[u].matrix - lambda * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
  }

  const auto delta = block_diagonalize(color_from_set(d4, {d4.identity()}), irreps);
  for (const auto& b : delta.blocks) CHECK(b.matrix.isIdentity(0.0));
  CHECK(delta.reconstruction_deviation < 1e-14);

  // Prism on D3: the 2-dimensional block carries the structural values.
  const auto d3 = FiniteGroup::dihedral(3);
  const auto prism = color_from_set(d3, {d3.decode(std::vector<int>{0, 1}), d3.decode(std::vector<int>{0, 2}),
                                         d3.decode(std::vector<int>{1, 0})});
  const auto blocks = spectrum_blocks(prism, irreps_dihedral(3));
  const auto split = spectrum_split(prism);
  CHECK(oracle::same_multiset(expanded_eigenvalues(blocks), expanded_eigenvalues(split), 1e-12));
  CHECK(blocks.total_multiplicity() == 6);

  const auto g21 = FiniteGroup::metacyclic(7, 3, 2);
  CHECK_THROWS_AS(spectrum_blocks(random_class_function(g21, 1), irreps_metacyclic(7, 3, 2)), InvalidParameter);
}

TEST_CASE("multiset clustering") {
  const auto entries = cluster_values({cd{1.0 + 1e-12, 0}, cd{2, 0}, cd{1, 0}}, 1e-9);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].count == 2);
  CHECK(std::abs(entries[0].value - 1.0) < 1e-11);
  CHECK(entries[1].count == 1);
}
