#pragma once

#include "schubert_kit/bigint.hpp"
#include "schubert_kit/cartan.hpp"
#include "schubert_kit/errors.hpp"
#include "schubert_kit/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace schubert_kit {

using IntVector = std::vector<std::int64_t>;

enum class Isogeny { SimplyConnected, Adjoint, Intermediate };

/// One simple factor of a Chevalley group.
struct FactorSpec {
  SimpleType type = SimpleType::A;
  int rank = 1;
  Isogeny isogeny = Isogeny::SimplyConnected;
  /// Intermediate only: generators (columns) of X_* in fundamental-coweight coordinates.
  std::optional<IntMatrix> lattice;
};

struct GroupSpec {
  std::vector<FactorSpec> factors;
  int central_torus_rank = 0;
};

/// Invariant-factor presentation Z/d_1 x ... x Z/d_m x Z^free_rank with d_1 | ... | d_m, d_i >= 2.
struct FiniteAbelianGroup {
  std::vector<BigInt> invariant_factors;
  int free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  BigInt torsion_order() const {
    BigInt n = 1;
    for (const auto &d : invariant_factors)
      n *= d;
    return n;
  }
  BigInt order() const {
    if (!is_finite())
      throw InvalidInput("order of an infinite group");
    return torsion_order();
  }
  friend bool operator==(const FiniteAbelianGroup &, const FiniteAbelianGroup &) = default;
};

/// Prime divisors of n in increasing order.
inline std::vector<std::int64_t> prime_divisors(BigInt n) {
  std::vector<std::int64_t> out;
  if (n < 0)
    n = -n;
  for (std::int64_t p = 2; BigInt(p) * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  if (n > 1)
    out.push_back(to_int64(n));
  return out;
}

/// Integer-lattice presentation of a split reductive group's root datum.
///
/// X^*(T) and X_*(T) are both identified with Z^rank via dual bases, so the
/// pairing <x, chi> is the ordinary dot product. Roots live in X^*, coroots in
/// X_*. The positive system is generated from the Cartan matrix at
/// construction and stored in both coordinate systems.
class RootDatum {
public:
  RootDatum(int rank, std::vector<IntVector> simple_roots, std::vector<IntVector> simple_coroots,
            std::vector<std::string> factor_names = {})
      : rank_(rank), simple_roots_(std::move(simple_roots)), simple_coroots_(std::move(simple_coroots)),
        factor_names_(std::move(factor_names)) {
    validate();
  }

  int rank() const { return rank_; }
  int cochar_rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_coroots_.size(); }
  const std::vector<IntVector> &simple_roots() const { return simple_roots_; }
  const std::vector<IntVector> &simple_coroots() const { return simple_coroots_; }
  const IntMatrix &cartan() const { return cartan_; }
  const std::vector<std::string> &factor_names() const { return factor_names_; }

  /// Positive roots in X^* coordinates, coroots in X_* coordinates, and both in simple coordinates.
  const std::vector<IntVector> &positive_roots() const { return pos_roots_; }
  const std::vector<IntVector> &positive_coroots() const { return pos_coroots_; }
  const std::vector<PositiveRoot> &positive_roots_simple() const { return pos_simple_; }

  /// Irreducible components as index sets into the simple roots.
  const std::vector<std::vector<std::size_t>> &components() const { return components_; }

  /// Coroot matrix: columns are simple coroots (rank x semisimple_rank).
  BigMatrix coroot_matrix() const {
    BigMatrix m(static_cast<std::size_t>(rank_), simple_coroots_.size());
    for (std::size_t j = 0; j < simple_coroots_.size(); ++j)
      for (std::size_t i = 0; i < static_cast<std::size_t>(rank_); ++i)
        m(i, j) = simple_coroots_[j][i];
    return m;
  }

  static std::int64_t pair(const IntVector &cochar, const IntVector &character) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < cochar.size(); ++i)
      s += cochar[i] * character[i];
    return s;
  }

private:
  void validate();

  int rank_;
  std::vector<IntVector> simple_roots_;
  std::vector<IntVector> simple_coroots_;
  std::vector<std::string> factor_names_;
  IntMatrix cartan_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<PositiveRoot> pos_simple_;
  std::vector<IntVector> pos_roots_;
  std::vector<IntVector> pos_coroots_;
};

inline void RootDatum::validate() {
  if (rank_ < 0)
    throw InvalidInput("negative rank");
  if (simple_roots_.size() != simple_coroots_.size())
    throw InvalidInput("simple roots and coroots differ in number");
  const std::size_t m = simple_roots_.size();
  if (m > static_cast<std::size_t>(rank_))
    throw InvalidInput("more simple roots than the rank");
  for (const auto &v : simple_roots_)
    if (v.size() != static_cast<std::size_t>(rank_))
      throw InvalidInput("simple root of wrong length");
  for (const auto &v : simple_coroots_)
    if (v.size() != static_cast<std::size_t>(rank_))
      throw InvalidInput("simple coroot of wrong length");

  cartan_ = IntMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      cartan_(i, j) = pair(simple_coroots_[i], simple_roots_[j]);
  for (std::size_t i = 0; i < m; ++i) {
    if (cartan_(i, i) != 2)
      throw InvalidInput("Cartan diagonal entry is not 2");
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j)
        continue;
      if (cartan_(i, j) > 0)
        throw InvalidInput("positive off-diagonal Cartan entry");
      if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))
        throw InvalidInput("Cartan matrix violates a_ij = 0 <=> a_ji = 0");
    }
  }
  components_ = dynkin_components(cartan_);
  const std::vector<std::int64_t> len = root_length_symmetrizer(cartan_);
  for (const auto &component : components_) {
    // Sylvester: leading principal minors of the symmetrized block are positive.
    for (std::size_t k = 1; k <= component.size(); ++k) {
      BigMatrix minor(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          minor(a, b) = BigInt(len[component[a]]) * cartan_(component[a], component[b]);
      if (determinant(minor) <= 0)
        throw InvalidInput("Cartan matrix is not of finite type");
    }
  }

  BigMatrix roots(static_cast<std::size_t>(rank_), m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < static_cast<std::size_t>(rank_); ++i)
      roots(i, j) = simple_roots_[j][i];
  if (schubert_kit::rank(roots) != m)
    throw InvalidInput("simple roots are linearly dependent");
  if (schubert_kit::rank(coroot_matrix()) != m)
    throw InvalidInput("simple coroots are linearly dependent");

  pos_simple_ = schubert_kit::positive_roots(cartan_);
  for (const auto &pr : pos_simple_) {
    IntVector r(static_cast<std::size_t>(rank_), 0);
    IntVector c(static_cast<std::size_t>(rank_), 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < static_cast<std::size_t>(rank_); ++k) {
        r[k] += pr.root[i] * simple_roots_[i][k];
        c[k] += pr.coroot[i] * simple_coroots_[i][k];
      }
    pos_roots_.push_back(std::move(r));
    pos_coroots_.push_back(std::move(c));
  }
}

/// Construct the root datum named by a group spec.
///
/// Basis conventions: a simply connected factor uses its simple coroots as
/// the basis of X_*; an adjoint factor uses the fundamental coweights; an
/// intermediate factor uses a basis of the supplied lattice. Central torus
/// coordinates come last.
inline RootDatum build(const GroupSpec &spec) {
  if (spec.central_torus_rank < 0)
    throw InvalidInput("negative central torus rank");
  struct Block {
    std::vector<IntVector> roots, coroots;
    std::size_t dim;
  };
  std::vector<Block> blocks;
  std::vector<std::string> names;
  for (const auto &f : spec.factors) {
    const IntMatrix c = cartan_matrix(f.type, f.rank);
    const auto r = static_cast<std::size_t>(f.rank);
    Block b{std::vector<IntVector>(r, IntVector(r, 0)), std::vector<IntVector>(r, IntVector(r, 0)), r};
    switch (f.isogeny) {
    case Isogeny::SimplyConnected:
      for (std::size_t i = 0; i < r; ++i) {
        b.coroots[i][i] = 1;
        for (std::size_t k = 0; k < r; ++k)
          b.roots[i][k] = c(k, i);
      }
      names.push_back(type_name(f.type, f.rank) + ":sc");
      break;
    case Isogeny::Adjoint:
      for (std::size_t i = 0; i < r; ++i) {
        b.roots[i][i] = 1;
        for (std::size_t k = 0; k < r; ++k)
          b.coroots[i][k] = c(i, k);
      }
      names.push_back(type_name(f.type, f.rank) + ":adjoint");
      break;
    case Isogeny::Intermediate: {
      if (!f.lattice || f.lattice->rows() != r)
        throw InvalidInput("intermediate isogeny needs a lattice matrix with " + std::to_string(r) + " rows");
      const BigMatrix basis = column_span_basis(matrix_cast<BigInt>(*f.lattice));
      if (basis.cols() != r)
        throw InvalidInput("intermediate lattice does not have full rank");
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<BigInt> coroot(r);
        for (std::size_t k = 0; k < r; ++k)
          coroot[k] = c(i, k);
        const auto coords = solve_integer(basis, coroot);
        if (!coords)
          throw InvalidInput("intermediate lattice does not contain the coroot lattice");
        for (std::size_t k = 0; k < r; ++k) {
          b.coroots[i][k] = to_int64((*coords)[k]);
          b.roots[i][k] = to_int64(basis(i, k));
        }
      }
      names.push_back(type_name(f.type, f.rank) + ":intermediate");
      break;
    }
    }
    blocks.push_back(std::move(b));
  }
  std::size_t total = static_cast<std::size_t>(spec.central_torus_rank);
  for (const auto &b : blocks)
    total += b.dim;
  std::vector<IntVector> roots, coroots;
  std::size_t offset = 0;
  for (const auto &b : blocks) {
    for (std::size_t i = 0; i < b.roots.size(); ++i) {
      IntVector r(total, 0), c(total, 0);
      for (std::size_t k = 0; k < b.dim; ++k) {
        r[offset + k] = b.roots[i][k];
        c[offset + k] = b.coroots[i][k];
      }
      roots.push_back(std::move(r));
      coroots.push_back(std::move(c));
    }
    offset += b.dim;
  }
  if (spec.central_torus_rank > 0)
    names.push_back("T" + std::to_string(spec.central_torus_rank));
  return RootDatum(static_cast<int>(total), std::move(roots), std::move(coroots), std::move(names));
}

/// pi_1(G) = X_*(T) / Q^vee.
inline FiniteAbelianGroup pi1(const RootDatum &rd) {
  FiniteAbelianGroup g;
  g.free_rank = rd.rank() - static_cast<int>(rd.semisimple_rank());
  if (rd.semisimple_rank() == 0)
    return g;
  for (const auto &d : smith_normal_form(rd.coroot_matrix()).nonzero_diagonal())
    if (d > 1)
      g.invariant_factors.push_back(d);
  return g;
}

/// pi_1 of the derived group: the torsion subgroup of X_*(T)/Q^vee.
inline FiniteAbelianGroup derived_pi1(const RootDatum &rd) {
  FiniteAbelianGroup g = pi1(rd);
  g.free_rank = 0;
  return g;
}

inline bool is_semisimple(const RootDatum &rd) {
  return rd.semisimple_rank() == static_cast<std::size_t>(rd.rank());
}

/// Z = ker(G_sc -> G) as a product of mu_{d_i}; the d_i are the invariant factors of pi_1.
inline FiniteAbelianGroup isogeny_kernel(const RootDatum &rd) {
  if (!is_semisimple(rd))
    throw InvalidInput("isogeny kernel requested for a non-semisimple root datum");
  return pi1(rd);
}

/// Coset representatives of X_*(T)/Q^vee for a semisimple datum, as cocharacters.
inline std::vector<IntVector> pi1_representatives(const RootDatum &rd) {
  if (!is_semisimple(rd))
    throw InvalidInput("pi_1 is infinite for a non-semisimple root datum");
  const auto n = static_cast<std::size_t>(rd.rank());
  if (n == 0)
    return {IntVector{}};
  const SmithForm s = smith_normal_form(rd.coroot_matrix());
  // X_* / Q^vee ~ (+)_i Z/d_i via x -> (U x)_i ; representatives u_inverse * (c_i)
  std::vector<IntVector> reps{IntVector(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = to_int64(s.diagonal(i, i));
    std::vector<IntVector> next;
    for (const auto &base : reps)
      for (std::int64_t c = 0; c < d; ++c) {
        IntVector v = base;
        for (std::size_t k = 0; k < n; ++k)
          v[k] += c * to_int64(s.u_inverse(k, i));
        next.push_back(std::move(v));
      }
    reps = std::move(next);
  }
  return reps;
}

/// Class of a cocharacter in X_*/Q^vee, in the invariant-factor coordinates of pi1(rd).
inline std::vector<BigInt> pi1_class(const RootDatum &rd, const IntVector &cochar) {
  if (rd.semisimple_rank() == 0) {
    std::vector<BigInt> out;
    for (auto x : cochar)
      out.emplace_back(x);
    return out;
  }
  const SmithForm s = smith_normal_form(rd.coroot_matrix());
  std::vector<BigInt> x(cochar.begin(), cochar.end());
  const std::vector<BigInt> ux = s.u * x;
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < ux.size(); ++i) {
    const BigInt d = i < s.diagonal.cols() ? s.diagonal(i, i) : BigInt(0);
    if (d == 1)
      continue;
    if (d == 0) {
      out.push_back(ux[i]);
      continue;
    }
    BigInt r = ux[i] % d;
    if (r < 0)
      r += d;
    out.push_back(r);
  }
  return out;
}

} // namespace schubert_kit
