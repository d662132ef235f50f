#include "blockspec/generators.hpp"

#include "blockspec/reduction.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace blockspec;

TEST_CASE("su2 laplacian power symbol blocks") {
  const auto s = su2_laplacian_power_symbol(4.0);

  // l = 0
  CHECK(s.block(0)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.multiplicity(0) == 1);

  // l = 1/2: (1 + 3/4)^-2 = 16/49, weight (2l+1)^2 = 4
  CHECK(s.block(1)(0, 0).real() ==
        doctest::Approx(16.0 / 49.0).epsilon(1e-15));
  CHECK(s.multiplicity(1) == 4);

  CHECK(s.partition().label(0) == "0");
  CHECK(s.partition().label(1) == "1/2");
  CHECK(s.partition().label(2) == "1");
  CHECK(s.partition().label(3) == "3/2");

  CHECK_THROWS_AS(su2_laplacian_power_symbol(0.0), DomainError);
  CHECK_THROWS_AS(su2_laplacian_power_symbol(-1.0), DomainError);
}

TEST_CASE("su2 partial sum over the first two blocks") {
  // alpha = 4, p = 1: 1 + 4 * 16/49 = 1 + 64/49
  const auto s = su2_laplacian_power_symbol(4.0);
  TruncationPolicy t{1, 0.0, 1};
  const auto est = schatten_norm(s, 1.0, t);
  CHECK(est.value == doctest::Approx(1.0 + 64.0 / 49.0).epsilon(1e-14));
  CHECK(est.blocks_used == 2);
}

TEST_CASE("su2 series convergence by alpha*p") {
  TruncationPolicy t{400, 1e-8, 3};
  SUBCASE("convergent exponents fire the stopping rule by block 400") {
    for (double q : {3.5, 4.0, 8.0}) {
      const auto est = schatten_norm(su2_laplacian_power_symbol(q), 1.0, t);
      CHECK(est.converged);
      CHECK(est.last_increment <= 1e-8);
      CHECK(est.blocks_used < 400);
    }
  }
  SUBCASE("divergent and critical exponents do not converge at the budget") {
    for (double q : {2.0, 2.5, 3.0}) {
      const auto est = schatten_norm(su2_laplacian_power_symbol(q), 1.0, t);
      CHECK_FALSE(est.converged);
      CHECK(est.blocks_used == 401);
    }
  }
}

TEST_CASE("su2 tensor norm") {
  TruncationPolicy t{400, 1e-8, 3};

  SUBCASE("alpha = beta = 4, p = 1 converges and matches the rectangle sum") {
    const auto est = su2_tensor_norm(4.0, 4.0, 1.0, t);
    CHECK(est.combined.converged);

    // independent direct double summation over the scanned rectangle
    NeumaierSum sa, sb;
    for (Index ta = 0; ta < est.factors[0].blocks_used; ++ta) {
      const double l = 0.5 * static_cast<double>(ta);
      sa.add(std::pow(static_cast<double>(ta + 1), 2.0) *
             std::pow(1.0 + l * (l + 1.0), -2.0));
    }
    for (Index tb = 0; tb < est.factors[1].blocks_used; ++tb) {
      const double l = 0.5 * static_cast<double>(tb);
      sb.add(std::pow(static_cast<double>(tb + 1), 2.0) *
             std::pow(1.0 + l * (l + 1.0), -2.0));
    }
    long double rect = 0.0L;
    for (Index ta = 0; ta < est.factors[0].blocks_used; ++ta) {
      const double la = 0.5 * static_cast<double>(ta);
      const double term_a = std::pow(static_cast<double>(ta + 1), 2.0) *
                            std::pow(1.0 + la * (la + 1.0), -2.0);
      for (Index tb = 0; tb < est.factors[1].blocks_used; ++tb) {
        const double lb = 0.5 * static_cast<double>(tb);
        rect += term_a * std::pow(static_cast<double>(tb + 1), 2.0) *
                std::pow(1.0 + lb * (lb + 1.0), -2.0);
      }
    }
    CHECK(est.combined.value ==
          doctest::Approx(static_cast<double>(rect)).epsilon(1e-8));
    CHECK(est.combined.value ==
          doctest::Approx(sa.value() * sb.value()).epsilon(1e-10));
  }

  SUBCASE("alpha = beta = 2, p = 1 reports non-convergence, sums increase") {
    const auto est = su2_tensor_norm(2.0, 2.0, 1.0, t);
    CHECK_FALSE(est.combined.converged);

    const auto s = su2_laplacian_power_symbol(2.0);
    double prev = 0.0;
    NeumaierSum partial;
    for (Index tb = 0; tb <= 400; ++tb) {
      const double l = 0.5 * static_cast<double>(tb);
      partial.add(std::pow(static_cast<double>(tb + 1), 2.0) *
                  std::pow(1.0 + l * (l + 1.0), -1.0));
      CHECK(partial.value() > prev);
      prev = partial.value();
    }
  }

  SUBCASE("asymmetric exponents stop at different depths") {
    const auto est = su2_tensor_norm(4.0, 6.0, 1.0, t);
    CHECK(est.combined.converged);
    CHECK(est.factors[0].blocks_used > est.factors[1].blocks_used);
    CHECK(est.combined.value ==
          doctest::Approx(est.factors[0].value * est.factors[1].value));
  }

  SUBCASE("p = 2 with alpha = beta: factors agree by symmetry") {
    const auto est = su2_tensor_norm(4.0, 4.0, 2.0, t);
    CHECK(est.factors[0].value == est.factors[1].value);
    CHECK(est.combined.value ==
          doctest::Approx(est.factors[0].value * est.factors[1].value));
    CHECK(est.combined.converged);
  }

  CHECK_THROWS_AS(su2_tensor_norm(-1.0, 4.0, 1.0, t), DomainError);
  CHECK_THROWS_AS(su2_tensor_norm(4.0, 4.0, 0.0, t), DomainError);
}

TEST_CASE("so3 schrodinger symbol") {
  SUBCASE("l = 0 block is (1)") {
    const auto s = so3_schrodinger_symbol(0.7);
    const Matrix b = s.block(0);
    CHECK(b.rows() == 1);
    CHECK(b(0, 0) == Complex(1, 0));
  }

  SUBCASE("l = 1, gamma = 1 gives diag(1, 3, 3)") {
    const auto s = so3_schrodinger_symbol(1.0);
    const Matrix b = s.block(1);
    REQUIRE(b.rows() == 3);
    CHECK(b(0, 0) == Complex(1, 0));
    CHECK(b(1, 1) == Complex(3, 0));
    CHECK(b(2, 2) == Complex(3, 0));
  }

  SUBCASE("l = 1, gamma = 2 gives diag(2, 5, 4)") {
    const auto s = so3_schrodinger_symbol(2.0);
    const Matrix b = s.block(1);
    CHECK(b(0, 0) == Complex(2, 0));
    CHECK(b(1, 1) == Complex(5, 0));
    CHECK(b(2, 2) == Complex(4, 0));
  }

  SUBCASE("blocks up to l = 50 are exactly real diagonal") {
    const auto s = so3_schrodinger_symbol(0.31);
    for (Index l = 0; l <= 50; ++l) {
      const Matrix b = s.block(l);
      CHECK(b.rows() == 2 * l + 1);
      for (Index r = 0; r < b.rows(); ++r)
        for (Index c = 0; c < b.cols(); ++c) {
          if (r != c) CHECK(b(r, c) == Complex(0, 0));
          CHECK(b(r, c).imag() == 0.0);
        }
    }
  }

  CHECK_THROWS_AS(so3_schrodinger_symbol(0.0), DomainError);
}

TEST_CASE("diagonal map forms negative powers of the so3 family") {
  const auto s = so3_schrodinger_symbol(1.0);
  const auto inv = map_diagonal(
      s, [](Complex c) { return std::pow(c, Complex(-2.0, 0.0)); });
  const Matrix b = inv.block(1);  // diag(1, 3, 3) -> diag(1, 1/9, 1/9)
  CHECK(b(0, 0).real() == doctest::Approx(1.0));
  CHECK(b(1, 1).real() == doctest::Approx(1.0 / 9.0));
  CHECK(b(2, 2).real() == doctest::Approx(1.0 / 9.0));
  CHECK(b(0, 1) == Complex(0, 0));

  oracles::Rng rng(6);
  auto general = oracles::random_symbol(rng, 2, 2);
  CHECK_THROWS_AS(map_diagonal(general, [](Complex c) { return c; }),
                  DomainError);
}

TEST_CASE("torus lattice enumeration") {
  SUBCASE("one dimension") {
    const auto pts = torus_lattice_enumeration(1, 2);
    REQUIRE(pts.size() == 5);
    CHECK(pts[0] == std::vector<long>{0});
    CHECK(pts[1] == std::vector<long>{-1});
    CHECK(pts[2] == std::vector<long>{1});
    CHECK(pts[3] == std::vector<long>{-2});
    CHECK(pts[4] == std::vector<long>{2});
  }

  SUBCASE("two dimensions, shells then lexicographic") {
    const auto pts = torus_lattice_enumeration(2, 1);
    REQUIRE(pts.size() == 9);
    CHECK(pts[0] == std::vector<long>({0, 0}));
    CHECK(pts[1] == std::vector<long>({-1, -1}));
    CHECK(pts[2] == std::vector<long>({-1, 0}));
    CHECK(pts[3] == std::vector<long>({-1, 1}));
    CHECK(pts[4] == std::vector<long>({0, -1}));
    CHECK(pts[5] == std::vector<long>({0, 1}));
    CHECK(pts[6] == std::vector<long>({1, -1}));
    CHECK(pts[7] == std::vector<long>({1, 0}));
    CHECK(pts[8] == std::vector<long>({1, 1}));
  }
}

TEST_CASE("torus multiplier symbol") {
  SUBCASE("constant multiplier") {
    const auto s = torus_multiplier_symbol(
        [](const std::vector<long>&) { return Complex(1, 0); }, 1, 1);
    CHECK(*s.partition().block_count() == 3);
    for (Index l = 0; l < 3; ++l) CHECK(s.block(l)(0, 0) == Complex(1, 0));
    CHECK(s.partition().label(1) == "(-1)");
  }

  SUBCASE("inverse square root at j = 1") {
    const auto s = torus_multiplier_symbol(
        [](const std::vector<long>& j) {
          const double n = static_cast<double>(j[0]) * j[0];
          return Complex(std::pow(1.0 + n, -0.5), 0.0);
        },
        1, 4);
    // enumeration: 0, -1, 1, ... so j = 1 sits at block 2
    CHECK(s.block(2)(0, 0).real() ==
          doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  }

  SUBCASE("p = 1 norm matches the direct lattice sum at radius 10^4") {
    const long radius = 10000;
    const auto s = torus_multiplier_symbol(
        [](const std::vector<long>& j) {
          const double n = static_cast<double>(j[0]) * j[0];
          return Complex(1.0 / (1.0 + n), 0.0);
        },
        1, radius);
    TruncationPolicy t{2 * radius + 1, 0.0, 1};
    const auto est = schatten_norm(s, 1.0, t);

    long double direct = 0.0L;
    for (long j = -radius; j <= radius; ++j)
      direct += 1.0L / (1.0L + static_cast<long double>(j) * j);
    CHECK(est.value ==
          doctest::Approx(static_cast<double>(direct)).epsilon(1e-10));
    CHECK(est.converged);  // exhausted the finite partition
  }
}

TEST_CASE("anharmonic schatten threshold") {
  CHECK(anharmonic_schatten_threshold(1, 1, 1, 1.0) == doctest::Approx(1.0));
  CHECK(anharmonic_schatten_threshold(1, 1, 1, 2.0) == doctest::Approx(0.5));
  CHECK(anharmonic_schatten_threshold(2, 1, 3, 1.0) == doctest::Approx(2.25));
  CHECK_THROWS_AS(anharmonic_schatten_threshold(0, 1, 1, 1.0), DomainError);
  CHECK_THROWS_AS(anharmonic_schatten_threshold(1, 1, 1, 0.0), DomainError);
}
