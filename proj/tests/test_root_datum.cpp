#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace schubert_kit;

namespace {

RootDatum make(const std::string &text) { return build(parse_group_spec(text)); }

std::vector<BigInt> factors(std::initializer_list<int> xs) {
  std::vector<BigInt> out;
  for (int x : xs)
    out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("build: rank one conventions") {
  const RootDatum sl2 = make("A1:sc");
  CHECK(sl2.rank() == 1);
  CHECK(sl2.simple_coroots() == std::vector<IntVector>{{1}});
  CHECK(sl2.simple_roots() == std::vector<IntVector>{{2}});

  const RootDatum pgl2 = make("A1:adjoint");
  CHECK(pgl2.simple_coroots() == std::vector<IntVector>{{2}});
  CHECK(pgl2.simple_roots() == std::vector<IntVector>{{1}});
}

TEST_CASE("build: products and central torus") {
  const RootDatum rd = make("A2:sc +T1");
  CHECK(rd.rank() == 3);
  CHECK(rd.semisimple_rank() == 2);
  CHECK_FALSE(is_semisimple(rd));

  const RootDatum prod = make("A3:adjoint x D4:sc +T1");
  CHECK(prod.rank() == 8);
  CHECK(prod.semisimple_rank() == 7);
  CHECK(prod.components().size() == 2);

  const RootDatum torus = make("T2");
  CHECK(torus.rank() == 2);
  CHECK(torus.semisimple_rank() == 0);
}

TEST_CASE("build: every type reproduces its Cartan matrix") {
  for (const auto &k : oracle::simple_types(8))
    for (auto iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      const RootDatum rd = build(GroupSpec{{{k.type, k.rank, iso, std::nullopt}}, 0});
      CHECK(rd.cartan() == cartan_matrix(k.type, k.rank));
    }
}

TEST_CASE("cartan: Bourbaki conventions for the non-simply-laced types") {
  const IntMatrix b2 = cartan_matrix(SimpleType::B, 2);
  CHECK(b2(0, 1) == -1);
  CHECK(b2(1, 0) == -2);
  const IntMatrix g2 = cartan_matrix(SimpleType::G, 2);
  CHECK(g2(0, 1) == -3);
  CHECK(g2(1, 0) == -1);
  const IntMatrix f4 = cartan_matrix(SimpleType::F, 4);
  CHECK(f4(1, 2) == -1);
  CHECK(f4(2, 1) == -2);
  const IntMatrix c3 = cartan_matrix(SimpleType::C, 3);
  CHECK(c3(1, 2) == -2);
  CHECK(c3(2, 1) == -1);
  using L = std::vector<std::int64_t>;
  CHECK(root_length_symmetrizer(b2) == L{2, 1});
  CHECK(root_length_symmetrizer(g2) == L{1, 3});
  CHECK(root_length_symmetrizer(f4) == L{2, 2, 1, 1});
  CHECK(root_length_symmetrizer(c3) == L{1, 1, 2});
  CHECK(positive_roots(cartan_matrix(SimpleType::E, 8)).size() == 120);
  CHECK(positive_roots(cartan_matrix(SimpleType::F, 4)).size() == 24);
  CHECK(positive_roots(cartan_matrix(SimpleType::G, 2)).size() == 6);
  CHECK(positive_roots(cartan_matrix(SimpleType::D, 5)).size() == 20);
}

TEST_CASE("build: invalid specs are rejected") {
  CHECK_THROWS_AS(parse_group_spec("E5:sc"), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("B1:sc"), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("D2:adjoint"), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("F3:sc"), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("A2:simply"), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(""), InvalidInput);
  CHECK_THROWS_AS(parse_group_argument("{\"factors\": 3}"), InvalidInput);
}

TEST_CASE("RootDatum rejects data that is not a root datum") {
  // pairing matrix with a positive off-diagonal entry
  CHECK_THROWS_AS(RootDatum(2, {{2, 1}, {1, 2}}, {{1, 0}, {0, 1}}), InvalidInput);
  // affine A1 pairing is not of finite type
  CHECK_THROWS_AS(RootDatum(2, {{2, -2}, {-2, 2}}, {{1, 0}, {0, 1}}), InvalidInput);
}

TEST_CASE("pi1: examples") {
  for (int n = 1; n <= 8; ++n)
    CHECK(pi1(make("A" + std::to_string(n) + ":sc")).is_trivial());
  CHECK(pi1(make("A1:adjoint")).invariant_factors == factors({2}));
  CHECK(pi1(make("D4:adjoint")).invariant_factors == factors({2, 2}));
  CHECK(pi1(make("D5:adjoint")).invariant_factors == factors({4}));
  CHECK(pi1(make("A3:adjoint")).invariant_factors == factors({4}));
  CHECK(pi1(make("E6:adjoint")).invariant_factors == factors({3}));
  CHECK(pi1(make("E8:adjoint")).is_trivial());
  CHECK(pi1(make("A1:adjoint x A1:adjoint")).invariant_factors == factors({2, 2}));
  CHECK(pi1(make("A1:adjoint x A2:adjoint")).invariant_factors == factors({6}));

  const FiniteAbelianGroup gl = pi1(make("A1:sc +T1"));
  CHECK(gl.free_rank == 1);
  CHECK(gl.invariant_factors.empty());
  CHECK_FALSE(gl.is_finite());
}

TEST_CASE("derived_pi1 is the torsion part") {
  const RootDatum gl_like = make("A1:adjoint +T1");
  CHECK(derived_pi1(gl_like).invariant_factors == factors({2}));
  CHECK(derived_pi1(gl_like).free_rank == 0);
  CHECK(derived_pi1(make("C3:sc +T2")).is_trivial());
  CHECK(derived_pi1(make("A3:adjoint")).invariant_factors == factors({4}));
  const RootDatum d4 = make("D4:adjoint");
  CHECK(derived_pi1(d4) == pi1(d4));
}

TEST_CASE("isogeny_kernel") {
  CHECK(isogeny_kernel(make("A4:sc")).is_trivial());
  CHECK(isogeny_kernel(make("A1:adjoint")).invariant_factors == factors({2}));
  CHECK(isogeny_kernel(make("D4:adjoint")).invariant_factors == factors({2, 2}));
  CHECK_THROWS_AS(isogeny_kernel(make("A1:sc +T1")), InvalidInput);
  for (const auto &spec : oracle::semisimple_specs(4)) {
    const RootDatum rd = build(spec);
    CHECK(isogeny_kernel(rd).order() == pi1(rd).order());
  }
}

TEST_CASE("|pi1(adjoint)| equals the Cartan determinant (cofactor oracle)") {
  for (const auto &k : oracle::simple_types(8)) {
    const BigInt det = oracle::cofactor_determinant(cartan_matrix(k.type, k.rank));
    CHECK(determinant(matrix_cast<BigInt>(cartan_matrix(k.type, k.rank))) == det);
    CHECK(pi1(build(GroupSpec{{{k.type, k.rank, Isogeny::Adjoint, std::nullopt}}, 0})).order() == det);
  }
  // frozen table
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::A, 7)) == 8);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::B, 5)) == 2);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::C, 6)) == 2);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::D, 7)) == 4);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::E, 6)) == 3);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::E, 7)) == 2);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::F, 4)) == 1);
  CHECK(oracle::cofactor_determinant(cartan_matrix(SimpleType::G, 2)) == 1);
}

TEST_CASE("Smith normal form re-multiplies to the input") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(dim(rng)), cols = static_cast<std::size_t>(dim(rng));
    BigMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        a(i, j) = entry(rng);
    const SmithForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.diagonal);
    CHECK(s.u * s.u_inverse == BigMatrix::identity(rows));
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    const auto d = s.nonzero_diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      CHECK(d[i + 1] % d[i] == 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j)
          CHECK(s.diagonal(i, j) == 0);
  }
}

TEST_CASE("intermediate isogeny through a lattice matrix") {
  // SO(8)-type lattice for D4: Q^vee plus the coweight omega_1
  nlohmann::json j = nlohmann::json::parse(R"({"factors":[{"type":"D","rank":4,"isogeny":"intermediate",
    "lattice":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}]})");
  CHECK(pi1(build(parse_group_spec_json(j))).invariant_factors == factors({2, 2}));

  // SL4/mu2 inside PGL4: X_* generated by Q^vee and 2 omega_1
  const RootDatum a3 = make("A3:adjoint");
  nlohmann::json mid = nlohmann::json::parse(R"({"factors":[{"type":"A","rank":3,"isogeny":"intermediate",
    "lattice":[[2,-1,0,2],[-1,2,-1,0],[0,-1,2,0]]}]})");
  const RootDatum so6 = build(parse_group_spec_json(mid));
  CHECK(pi1(so6).invariant_factors == factors({2}));
  CHECK(so6.cartan() == a3.cartan());

  nlohmann::json bad = nlohmann::json::parse(R"({"factors":[{"type":"A","rank":1,"isogeny":"intermediate",
    "lattice":[[4]]}]})");
  CHECK_THROWS_AS(build(parse_group_spec_json(bad)), InvalidInput);
}

TEST_CASE("pi1 classes of representatives are distinct") {
  for (const char *text : {"A1:adjoint", "A3:adjoint", "D4:adjoint", "A1:adjoint x A2:adjoint", "B2:adjoint +T1"}) {
    const RootDatum rd = make(text);
    if (!is_semisimple(rd)) {
      CHECK_THROWS_AS(pi1_representatives(rd), InvalidInput);
      continue;
    }
    const auto reps = pi1_representatives(rd);
    CHECK(BigInt(reps.size()) == pi1(rd).order());
    std::set<std::vector<BigInt>> classes;
    for (const auto &r : reps)
      classes.insert(pi1_class(rd, r));
    CHECK(classes.size() == reps.size());
    for (const auto &c : rd.simple_coroots())
      CHECK(pi1_class(rd, c) == std::vector<BigInt>(pi1(rd).invariant_factors.size(), 0));
  }
}

TEST_CASE("prime divisors") {
  CHECK(prime_divisors(BigInt(1)).empty());
  CHECK(prime_divisors(BigInt(6)) == std::vector<std::int64_t>{2, 3});
  CHECK(prime_divisors(BigInt(16)) == std::vector<std::int64_t>{2});
  CHECK(prime_divisors(BigInt(97)) == std::vector<std::int64_t>{97});
}
