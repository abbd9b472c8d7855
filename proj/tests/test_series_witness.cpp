#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace schubert_kit;

namespace {

RootDatum make(const std::string &text) { return build(parse_group_spec(text)); }

TruncatedLaurentSeries series(const char *text, std::int64_t p) { return parse_series(text, ArtinRing(p)); }

// Random unit z^m (c + sum_{0<i<=d} a_i z^i) + eps * sum_{-d<=i<=d} b_i z^i with c != 0.
TruncatedLaurentSeries random_unit(std::mt19937_64 &rng, const ArtinRing &ring, int d, bool power_series) {
  const std::int64_t p = ring.characteristic();
  std::uniform_int_distribution<std::int64_t> coeff(0, p - 1), nonzero(1, p - 1);
  std::uniform_int_distribution<int> shift(-2, 2);
  const int m = power_series ? 0 : shift(rng);
  TruncatedLaurentSeries f(ring);
  f.set(m, ring.make(nonzero(rng), coeff(rng)));
  for (int i = 1; i <= d; ++i)
    f.set(m + i, ring.make(coeff(rng), coeff(rng)));
  if (!power_series)
    for (int i = 1; i <= d; ++i)
      f.set(m - i, ring.make(0, coeff(rng)));
  return f;
}

} // namespace

TEST_CASE("Artin ring arithmetic") {
  CHECK_THROWS_AS(ArtinRing(4), InvalidInput);
  CHECK_THROWS_AS(ArtinRing(1), InvalidInput);
  for (std::int64_t p : {2, 3, 5, 7}) {
    const ArtinRing r(p);
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        const DualNumber x = r.make(a, b);
        CHECK(r.is_unit(x) == (a != 0));
        CHECK(r.is_nilpotent(x) == (a == 0));
        if (a != 0)
          CHECK(r.mul(x, r.inverse(x)) == r.make(1));
        else
          CHECK(r.mul(x, x).is_zero());
      }
  }
  CHECK_THROWS_AS(ArtinRing(3).inverse(ArtinRing(3).make(0, 1)), InvalidInput);
}

TEST_CASE("series literals") {
  const ArtinRing r(3);
  const auto f = parse_series("1+e*z^-1", r);
  CHECK(f.coefficient(0) == r.make(1));
  CHECK(f.coefficient(-1) == r.make(0, 1));
  CHECK(f.to_string() == "1+e*z^-1");
  CHECK(parse_series("3*e*z^-2", ArtinRing(5)).coefficient(-2) == DualNumber{0, 3});
  CHECK(parse_series("z^2 - 2*e*z + 4", r).to_string() == "z^2+e*z+1");
  CHECK(parse_series("1 + e*e*z", r).to_string() == "1");
  CHECK(parse_series("z*z^-1", r).to_string() == "1");
  CHECK(parse_series("3", r).to_string() == "0");
  CHECK(parse_series("z^-1+e*z^-1", r).to_string() == "z^-1+e*z^-1");
  CHECK_THROWS_AS(parse_series("", r), InvalidInput);
  CHECK_THROWS_AS(parse_series("1+", r), InvalidInput);
  CHECK_THROWS_AS(parse_series("1 z", r), InvalidInput);
  CHECK_THROWS_AS(parse_series("x", r), InvalidInput);
  CHECK_THROWS_AS(parse_series("z^40", r), PrecisionError);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_unit(rng, r, 3, false);
    CHECK(parse_series(g.to_string(), r) == g);
  }
}

TEST_CASE("series precision tracking") {
  const ArtinRing r(2);
  const auto f = series("1+z", 2).truncated(3);
  CHECK_FALSE(f.exact());
  CHECK(f.known_to() == 3);
  CHECK(f.to_string() == "z+1+O(z^4)");
  CHECK_THROWS_AS(f.coefficient(4), PrecisionError);

  TruncatedLaurentSeries g(r, {-2, 2});
  CHECK_THROWS_AS(g.set(3, r.make(1)), PrecisionError);
  CHECK_THROWS_AS(g.set(-3, r.make(1)), PrecisionError);
  CHECK_THROWS_AS(TruncatedLaurentSeries(r, {1, 0}), InvalidInput);

  // (1+z)^{-1} = 1 + z + z^2 + ... over F_2, known through the window
  const auto inv = series("1+z", 2).inverse();
  CHECK_FALSE(inv.exact());
  CHECK(inv.known_to() == 16);
  for (int e = 0; e <= 16; ++e)
    CHECK(inv.coefficient(e) == r.make(1));
  CHECK((inv * series("1+z", 2)).agrees_with(TruncatedLaurentSeries::one(r)));

  // truncated product loses precision at known_to + v(other)
  const auto prod = f * series("z^2", 2);
  CHECK(prod.known_to() == 5);
}

TEST_CASE("series inverse on random units") {
  std::mt19937_64 rng(23);
  for (std::int64_t p : {2, 3, 5}) {
    const ArtinRing r(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = random_unit(rng, r, 3, false);
      CHECK((f * f.inverse()).agrees_with(TruncatedLaurentSeries::one(r)));
    }
  }
}

TEST_CASE("is_unit_laurent") {
  CHECK(is_unit_laurent(series("1+e*z^-1", 2)));
  CHECK_FALSE(is_unit_laurent(series("e", 2)));
  CHECK(is_unit_laurent(series("z^5", 2)));
  CHECK_FALSE(is_unit_laurent(series("e*z^-3+e*z", 5)));
  // only nilpotent coefficients are known
  CHECK_THROWS_AS(is_unit_laurent(series("e+z", 3).truncated(0)), PrecisionError);
}

TEST_CASE("is_unit_neg_poly") {
  CHECK(is_unit_neg_poly(series("1+e*z^-1", 2)));
  CHECK_FALSE(is_unit_neg_poly(series("1+z^-1", 2)));
  CHECK_FALSE(is_unit_neg_poly(series("e", 2)));
  CHECK(is_unit_neg_poly(series("2+e*z^-1+3*e*z^-4", 5)));
  CHECK_THROWS_AS(is_unit_neg_poly(series("1+z", 2)), InvalidInput);
}

TEST_CASE("class_mod_pk examples") {
  const WitnessClass w = class_mod_pk(series("1+e*z^-1", 2), 1);
  CHECK(w.valuation_class == 0);
  CHECK(w.tail == std::map<int, std::int64_t>{{-1, 1}});
  CHECK_FALSE(w.is_trivial());
  CHECK(w.to_string() == "(0 mod 2; tail {-1: 1})");

  CHECK(class_mod_pk(series("1+e*z^-1", 2).pow(2), 1).is_trivial());

  const WitnessClass z = class_mod_pk(series("z", 2), 1);
  CHECK(z.valuation_class == 1);
  CHECK(z.tail.empty());
  CHECK(z.to_string() == "(1 mod 2; tail {})");

  // over F_3 the square is (0, {-1: 2}); the cube is trivial
  const WitnessClass sq = class_mod_pk(series("1+e*z^-1", 3).pow(2), 1);
  CHECK(sq.tail == std::map<int, std::int64_t>{{-1, 2}});
  CHECK(class_mod_pk(series("1+e*z^-1", 3).pow(3), 1).is_trivial());

  // valuation modulo p^k
  CHECK(class_mod_pk(series("z^-6", 2), 2).valuation_class == 2);
  CHECK(class_mod_pk(series("z^-6", 2), 2).modulus() == 4);
  CHECK(class_mod_pk(series("z^9", 3), 2).valuation_class == 0);

  // the tail is h = b/a; a power-series part in h is absorbed
  const WitnessClass t = class_mod_pk(series("1+z+e*z^-2", 2), 1);
  CHECK(t.tail == std::map<int, std::int64_t>{{-2, 1}, {-1, 1}});

  CHECK_THROWS_AS(class_mod_pk(series("e*z", 2), 1), InvalidInput);
  CHECK_THROWS_AS(class_mod_pk(series("z", 2), 0), InvalidInput);
  CHECK_THROWS_AS(class_mod_pk(series("z", 2), 60), InvalidInput);
}

TEST_CASE("class_mod_pk is a homomorphism") {
  std::mt19937_64 rng(29);
  for (std::int64_t p : {2, 3, 5})
    for (int k : {1, 2}) {
      const ArtinRing r(p);
      for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_unit(rng, r, 3, false);
        const auto g = random_unit(rng, r, 3, false);
        CHECK(class_mod_pk(f * g, k) == class_mod_pk(f, k) + class_mod_pk(g, k));
      }
    }
}

TEST_CASE("class_mod_pk kills p^k-th powers times power-series units") {
  std::mt19937_64 rng(31);
  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
    const ArtinRing r(p);
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i)
      pk *= static_cast<std::uint64_t>(p);
    for (int trial = 0; trial < 30; ++trial) {
      const auto u = random_unit(rng, r, 1, false);
      const auto v = random_unit(rng, r, 4, true);
      CHECK(class_mod_pk(v, k).is_trivial());
      CHECK(class_mod_pk(u.pow(pk) * v, k).is_trivial());
    }
  }
}

TEST_CASE("kottwitz_class_pgl") {
  const ArtinRing r2(2);
  auto mat = [](std::initializer_list<std::initializer_list<const char *>> rows, std::int64_t p) {
    SeriesMatrix m;
    for (const auto &row : rows) {
      m.emplace_back();
      for (const char *entry : row)
        m.back().push_back(series(entry, p));
    }
    return m;
  };
  CHECK(kottwitz_class_pgl(2, mat({{"1", "0"}, {"0", "1"}}, 2)).is_trivial());
  const WitnessClass w = kottwitz_class_pgl(2, mat({{"1+e*z^-1", "0"}, {"0", "1"}}, 2));
  CHECK(w == WitnessClass{2, 1, 0, {{-1, 1}}});
  const WitnessClass v = kottwitz_class_pgl(2, mat({{"z", "0"}, {"0", "1"}}, 2));
  CHECK(v == WitnessClass{2, 1, 1, {}});
  // unipotent and determinant-one elements are trivial
  CHECK(kottwitz_class_pgl(2, mat({{"1", "z^-1+e*z^-3"}, {"0", "1"}}, 2)).is_trivial());
  CHECK(kottwitz_class_pgl(2, mat({{"z", "0"}, {"0", "z^-1"}}, 2)).is_trivial());
  // PGL_4 at p = 2 routes through mu_4
  const WitnessClass four = kottwitz_class_pgl(
      4, mat({{"z", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, 2));
  CHECK(four.k == 2);
  CHECK(four.valuation_class == 1);
  // PGL_6 at p = 3
  CHECK(kottwitz_class_pgl(6, mat({{"1+e*z^-1", "0", "0", "0", "0", "0"}, {"0", "1", "0", "0", "0", "0"},
                                   {"0", "0", "1", "0", "0", "0"}, {"0", "0", "0", "1", "0", "0"},
                                   {"0", "0", "0", "0", "1", "0"}, {"0", "0", "0", "0", "0", "1"}},
                                  3)) == WitnessClass{3, 1, 0, {{-1, 1}}});
  CHECK_THROWS_AS(kottwitz_class_pgl(2, mat({{"1", "0"}, {"0", "1"}}, 3)), InvalidInput);
  CHECK_THROWS_AS(kottwitz_class_pgl(2, mat({{"e", "0"}, {"0", "1"}}, 2)), InvalidInput);
  CHECK_THROWS_AS(kottwitz_class_pgl(3, mat({{"1", "0"}, {"0", "1"}}, 3)), InvalidInput);
}

TEST_CASE("reducedness examples") {
  const auto pgl2 = reducedness_oracle(make("A1:adjoint"), 2);
  CHECK_FALSE(pgl2.reduced());
  REQUIRE(pgl2.witness);
  CHECK(pgl2.witness->series.to_string() == "1+e*z^-1");
  CHECK(pgl2.witness->cls.to_string() == "(0 mod 2; tail {-1: 1})");
  CHECK(reducedness_oracle(make("A1:adjoint"), 3).reduced());
  for (std::int64_t p : {2, 3, 5, 7})
    CHECK(reducedness_oracle(make("A4:sc"), p).reduced());
  const auto gl = reducedness_oracle(make("A1:sc +T1"), 5);
  CHECK_FALSE(gl.reduced());
  CHECK_FALSE(gl.witness);
  CHECK(gl.reason == "not semisimple");
  // PGL_4 at p = 2: witness through mu_4
  const auto pgl4 = reducedness_oracle(make("A3:adjoint"), 2);
  REQUIRE(pgl4.witness);
  CHECK(pgl4.witness->k == 2);
  CHECK_THROWS_AS(reducedness_oracle(make("A1:adjoint"), 4), InvalidInput);
}

TEST_CASE("reducedness table for rank <= 4 and p <= 13") {
  const std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13};
  std::size_t rows = 0;
  for (const auto &spec : oracle::semisimple_specs(4)) {
    const RootDatum rd = build(spec);
    const BigInt order = oracle::expected_pi1_order(spec);
    for (std::int64_t p : primes) {
      const auto res = reducedness_oracle(rd, p);
      CHECK(res.reduced() == (order % p != 0));
      CHECK(res.witness.has_value() == !res.reduced());
      if (res.witness)
        CHECK_FALSE(res.witness->cls.is_trivial());
      ++rows;
    }
  }
  for (const char *text : {"A1:sc +T1", "B2:adjoint +T2", "T3"})
    for (std::int64_t p : primes)
      CHECK_FALSE(reducedness_oracle(make(text), p).reduced());
  CHECK(rows > 100);
}

TEST_CASE("ind-flat locus") {
  CHECK(ind_flat_locus(make("A1:sc")) == std::vector<std::int64_t>{});
  CHECK(ind_flat_locus(make("A1:adjoint")) == std::vector<std::int64_t>{2});
  CHECK(ind_flat_locus(make("A5:adjoint")) == std::vector<std::int64_t>{2, 3});
  CHECK_FALSE(ind_flat_locus(make("A1:sc +T1")).has_value());
  for (const auto &spec : oracle::semisimple_specs(4))
    CHECK(ind_flat_locus(build(spec)) == oracle::trial_division_primes(oracle::expected_pi1_order(spec)));
}
