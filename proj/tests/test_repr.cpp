#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"

#include "cayspec/error.hpp"
#include "cayspec/numeric.hpp"
#include "cayspec/repr.hpp"

using namespace cayspec;

namespace {

const UnitaryIrrep& with_param(const IrrepSet& set, int v) {
  for (const auto& rho : set) {
    if (rho.params().at(0) == v) return rho;
  }
  FAIL("no irrep with parameter " << v);
  return set.front();
}

cd expi(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

std::vector<int> degrees(const IrrepSet& set) {
  std::vector<int> out;
  for (const auto& rho : set) out.push_back(rho.degree());
  return out;
}

/// Every metacyclic(m, l, r) with m <= max_m, l <= max_l.
std::vector<std::tuple<int, int, int>> metacyclic_params(int max_m, int max_l, int max_order) {
  std::vector<std::tuple<int, int, int>> out;
  for (int m = 1; m <= max_m; ++m) {
    for (int l = 1; l <= max_l; ++l) {
      if (m * l > max_order) continue;
      for (int r = 1; r < std::max(m, 2); ++r) {
        if (m > 1 && cayspec::gcd(r, m) != 1) continue;
        if (mod_pow(r, l, m) != 1 % m) continue;
        out.emplace_back(m, l, r);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("cyclic characters") {
  CHECK(irreps_cyclic(1).size() == 1);
  CHECK(irreps_cyclic(1)[0].character(0) == cd{1.0, 0.0});

  const auto c4 = irreps_cyclic(4);
  CHECK(std::abs(with_param(c4, 1).character(2) - cd{-1.0, 0.0}) < 1e-15);

  const auto c7 = irreps_cyclic(7);
  CHECK(std::abs(with_param(c7, 3).character(5) - expi(1.0 / 7.0)) < 1e-14);
}

TEST_CASE("abelian characters") {
  const auto klein = irreps_abelian({2, 2});
  REQUIRE(klein.size() == 4);
  for (const auto& rho : klein) {
    for (Elem x = 0; x < 4; ++x) {
      const cd c = rho.character(x);
      CHECK((std::abs(c - 1.0) < 1e-15 || std::abs(c + 1.0) < 1e-15));
    }
  }

  // C_2 x C_3 against C_6 through the CRT correspondence (x1, x2) -> 3 x1 + 4 x2.
  const auto g23 = FiniteGroup::abelian({2, 3});
  const auto a23 = irreps_abelian({2, 3});
  const auto c6 = irreps_cyclic(6);
  REQUIRE(a23.size() == 6);
  for (const auto& rho : a23) {
    bool matched = false;
    for (const auto& chi : c6) {
      bool same = true;
      for (Elem x = 0; x < 6; ++x) {
        const auto e = g23.encode(x);
        const Elem j = static_cast<Elem>((3 * e[0] + 4 * e[1]) % 6);
        same = same && std::abs(rho.character(x) - chi.character(j)) < 1e-12;
      }
      matched = matched || same;
    }
    CHECK(matched);
  }

  CHECK(irreps_abelian({1}).size() == 1);
}

TEST_CASE("dihedral irreps") {
  CHECK(degrees(irreps_dihedral(3)) == std::vector<int>{1, 1, 2});
  CHECK(degrees(irreps_dihedral(4)) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(degrees(irreps_dihedral(7)) == std::vector<int>{1, 1, 2, 2, 2});

  const auto d3 = FiniteGroup::dihedral(3);
  const auto set = irreps_dihedral(3);
  const Elem rot = d3.decode(std::vector<int>{0, 1});
  CHECK(std::abs(set[2].character(rot) - cd{-1.0, 0.0}) < 1e-14);

  // Reflection maps to the exchange matrix.
  const Elem s = d3.decode(std::vector<int>{1, 0});
  CHECK(std::abs(set[2].coefficient(s, 0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(set[2].coefficient(s, 0, 0)) < 1e-15);
}

TEST_CASE("built-in irreps validate") {
  std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(1),        FiniteGroup::cyclic(12),
                                     FiniteGroup::abelian({2, 2}),  FiniteGroup::abelian({3, 4, 2}),
                                     FiniteGroup::dihedral(3),      FiniteGroup::dihedral(8),
                                     FiniteGroup::dihedral(15),     FiniteGroup::metacyclic(7, 3, 2),
                                     FiniteGroup::metacyclic(3, 2, 2)};
  for (auto [m, l, r] : metacyclic_params(24, 6, 60)) groups.push_back(FiniteGroup::metacyclic(m, l, r));
  for (const auto& g : groups) {
    const auto set = builtin_irreps(g);
    REQUIRE(set.has_value());
    const auto report = validate_irrep_set(g, *set);
    INFO(to_string(g.kind()) << " order " << g.order() << ": " << report.summary());
    CHECK(report.passed());
    std::size_t sum = 0;
    for (const auto& rho : *set) sum += static_cast<std::size_t>(rho.degree() * rho.degree());
    CHECK(sum == g.order());
  }
  CHECK_FALSE(builtin_irreps(FiniteGroup::permutation(3, {{1, 0, 2}, {1, 2, 0}})).has_value());
}

TEST_CASE("validation failures") {
  const auto d3 = FiniteGroup::dihedral(3);
  auto set = irreps_dihedral(3);

  SUBCASE("reducible") {
    // trivial + sign as a 2-dimensional diagonal representation
    std::vector<cd> data(6 * 4);
    for (Elem x = 0; x < 6; ++x) {
      data[x * 4 + 0] = set[0].character(x);
      data[x * 4 + 3] = set[1].character(x);
    }
    IrrepSet bad = {set[0], set[1], UnitaryIrrep("sum", 2, {}, data)};
    const auto report = validate_irrep_set(d3, bad);
    CHECK_FALSE(report.passed());
    bool found = false;
    for (const auto& f : report.failures) {
      if (f.invariant == "irreducibility") {
        found = true;
        CHECK(f.value == doctest::Approx(2.0));
      }
    }
    CHECK(found);
  }

  SUBCASE("scaled matrix") {
    const Elem x = 4;
    std::vector<cd> data;
    for (Elem y = 0; y < 6; ++y) {
      for (int c = 0; c < 2; ++c) {
        for (int r = 0; r < 2; ++r) data.push_back(set[2].coefficient(y, r, c) * (y == x ? 2.0 : 1.0));
      }
    }
    IrrepSet bad = {set[0], set[1], UnitaryIrrep("scaled", 2, {1}, data)};
    const auto report = validate_irrep_set(d3, bad);
    bool found = false;
    for (const auto& f : report.failures) {
      if (f.invariant == "unitarity") {
        found = true;
        CHECK(f.witness == d3.format(x));
      }
    }
    CHECK(found);
  }

  SUBCASE("incomplete") {
    IrrepSet partial = {set[0], set[2]};
    const auto report = validate_irrep_set(d3, partial);
    CHECK_FALSE(report.passed());
    CHECK(report.failures.front().invariant == "completeness");
  }

  CHECK_THROWS_AS(build_p_matrix(d3, IrrepSet{set[0]}, canonical_ordering(d3)), IrrepValidationFailed);
}

TEST_CASE("fourier transform") {
  const auto set = irreps_metacyclic(7, 3, 2);
  std::vector<cd> delta(21), ones(21, cd{1.0, 0.0}), indicator(21);
  delta[0] = 1.0;
  for (Elem x : {1, 2, 7}) indicator[x] = 1.0;
  for (const auto& rho : set) {
    const auto d = rho.degree();
    CHECK((fourier_transform(delta, rho).matrix - Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-14);
    if (&rho != &set.front()) CHECK(fourier_transform(ones, rho).matrix.norm() < 1e-12);
  }
  CHECK(std::abs(fourier_transform(indicator, set.front()).matrix(0, 0) - 3.0) < 1e-14);
}

TEST_CASE("P matrix") {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto p2 = build_p_matrix(c2, irreps_cyclic(2), canonical_ordering(c2));
  Eigen::MatrixXcd expected2(2, 2);
  expected2 << 1, 1, 1, -1;
  expected2 /= std::sqrt(2.0);
  CHECK((p2.matrix - expected2).cwiseAbs().maxCoeff() < 1e-15);

  const auto c3 = FiniteGroup::cyclic(3);
  const auto p3 = build_p_matrix(c3, irreps_cyclic(3), canonical_ordering(c3));
  for (int s = 0; s < 3; ++s) {
    for (int v = 0; v < 3; ++v) CHECK(std::abs(p3.matrix(s, v) - expi(v * s / 3.0) / std::sqrt(3.0)) < 1e-15);
  }

  std::vector<FiniteGroup> groups = {FiniteGroup::dihedral(50), FiniteGroup::abelian({5, 6, 6}),
                                     FiniteGroup::cyclic(200)};
  for (auto [m, l, r] : metacyclic_params(40, 8, 200)) {
    if (m * l >= 100) groups.push_back(FiniteGroup::metacyclic(m, l, r));
  }
  for (const auto& g : groups) {
    const auto p = build_p_matrix(g, *builtin_irreps(g), canonical_ordering(g));
    const auto n = static_cast<Eigen::Index>(g.order());
    const double dev = (p.matrix.adjoint() * p.matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    INFO("order " << g.order());
    CHECK(dev <= 1e-9);
  }
}
