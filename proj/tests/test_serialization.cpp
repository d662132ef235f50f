#include "blockspec/serialization.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace blockspec;

TEST_CASE("explicit symbol round trip is bit-faithful") {
  oracles::Rng rng(555);
  auto s = oracles::random_symbol(rng, 4, 3, 3);
  const Json doc = save_symbol(s);
  const auto loaded = load_symbol(doc);

  REQUIRE(loaded.explicit_blocks()->size() == 4);
  for (Index l = 0; l < 4; ++l) {
    const Matrix a = s.block(l);
    const Matrix b = loaded.block(l);
    REQUIRE(a.rows() == b.rows());
    for (Index r = 0; r < a.rows(); ++r)
      for (Index c = 0; c < a.cols(); ++c) {
        CHECK(a(r, c).real() == b(r, c).real());  // bitwise, no tolerance
        CHECK(a(r, c).imag() == b(r, c).imag());
      }
    CHECK(s.multiplicity(l) == loaded.multiplicity(l));
  }

  // canonical re-dump is byte-identical
  CHECK(save_symbol(loaded).dump() == doc.dump());
}

TEST_CASE("explicit symbol document form") {
  const Json doc = Json::parse(R"({
    "dims": [2],
    "blocks": [[[1.0, 0.0], [0.0, 0.5], [0.0, 0.0], [2.0, 0.0]]],
    "multiplicity": [3]
  })");
  const auto s = load_symbol(doc);
  const Matrix b = s.block(0);
  CHECK(b(0, 0) == Complex(1.0, 0.0));
  CHECK(b(0, 1) == Complex(0.0, 0.5));  // row-major entry order
  CHECK(b(1, 0) == Complex(0.0, 0.0));
  CHECK(b(1, 1) == Complex(2.0, 0.0));
  CHECK(s.multiplicity(0) == 3);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(load_symbol(Json::parse(R"({"dims":[2],"blocks":[[[1,0]]]})")),
                  DomainError);
  CHECK_THROWS_AS(load_symbol(Json::parse(R"({"foo": 1})")), DomainError);
  CHECK_THROWS_AS(load_symbol(Json::parse(R"({"generator":"nope"})")),
                  DomainError);
}

TEST_CASE("generator documents") {
  SUBCASE("su2-laplacian") {
    const auto s = load_symbol(
        Json::parse(R"({"generator":"su2-laplacian","params":{"alpha":4.0}})"));
    CHECK(s.block(1)(0, 0).real() ==
          doctest::Approx(16.0 / 49.0).epsilon(1e-15));
    CHECK(s.multiplicity(1) == 4);
  }

  SUBCASE("so3-schrodinger") {
    const auto s = load_symbol(Json::parse(
        R"({"generator":"so3-schrodinger","params":{"gamma":1.0}})"));
    CHECK(s.block(1)(1, 1) == Complex(3, 0));
  }

  SUBCASE("torus-multiplier with the named family") {
    const auto s = load_symbol(Json::parse(
        R"({"generator":"torus-multiplier",
            "params":{"family":"inv-sqrt-quadratic","radius":4}})"));
    CHECK(*s.partition().block_count() == 9);
    CHECK(s.block(2)(0, 0).real() ==
          doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  }

  SUBCASE("generator symbols cannot be saved") {
    const auto s = load_symbol(
        Json::parse(R"({"generator":"su2-laplacian","params":{"alpha":4.0}})"));
    CHECK_THROWS_AS(save_symbol(s), DomainError);
  }
}

TEST_CASE("tensor symbol document is the factor list") {
  oracles::Rng rng(777);
  auto a = oracles::random_symbol(rng, 3, 2);
  auto b = oracles::random_symbol(rng, 3, 2);
  Json doc = Json::array({save_symbol(a), save_symbol(b)});
  const auto ts = load_tensor_symbol(doc);
  CHECK(ts.order() == 2);
  const Matrix expected = oracles::kron_ref(a.block(1), b.block(2));
  CHECK((ts.block({1, 2}) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("estimate serialization") {
  SchattenEstimate e;
  e.value = 2.5;
  e.p = 1.0;
  e.blocks_used = 7;
  e.last_increment = 1e-9;
  e.converged = true;
  const Json j = to_json(e);
  CHECK(j.at("value") == 2.5);
  CHECK(j.at("p") == 1.0);
  CHECK(j.at("blocks_used") == 7);
  CHECK(j.at("converged") == true);

  SchattenEstimate inf_norm;
  inf_norm.p = std::numeric_limits<double>::infinity();
  CHECK(to_json(inf_norm).at("p") == "inf");
}

TEST_CASE("beta flag parsing") {
  const auto named = parse_beta("inv-sqrt-quadratic");
  CHECK(named(1) == doctest::Approx(std::pow(2.0, -0.5)));

  const auto powered = parse_beta("inv-power:2");
  CHECK(powered(1) == doctest::Approx(0.5));

  const auto table = parse_beta(R"({"0": 5.0, "-2": 1.0})");
  CHECK(table(0) == 5.0);
  CHECK(table(-2) == 1.0);
  CHECK(table(1) == 0.0);

  CHECK_THROWS_AS(parse_beta("unknown-family"), DomainError);
}

TEST_CASE("a_hat parsing") {
  const auto a = parse_a_hat(
      Json::parse(R"({"0":[2.0,0.0],"1":[1.0,0.0],"-1":[1.0,0.0]})"));
  CHECK(a.degree() == 1);
  CHECK(a.sup_norm() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(parse_a_hat(Json::parse(R"({"1":[1.0,0.0]})")), DomainError);
}
