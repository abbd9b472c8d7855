#pragma once

#include "schubert_kit/errors.hpp"
#include "schubert_kit/laurent_series.hpp"
#include "schubert_kit/root_datum.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schubert_kit {

/// Class of a unit f of R((z)) in R((z))^x / ((R((z))^x)^{p^k} R[[z]]^x), R = F_p[eps].
struct WitnessClass {
  std::int64_t p = 2;
  int k = 1;
  std::int64_t valuation_class = 0;   ///< in Z / p^k
  std::map<int, std::int64_t> tail;   ///< negative exponent -> F_p coefficient of the eps-tail

  std::int64_t modulus() const {
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i)
      m *= p;
    return m;
  }
  bool is_trivial() const { return valuation_class == 0 && tail.empty(); }

  WitnessClass operator+(const WitnessClass &o) const {
    if (p != o.p || k != o.k)
      throw InvalidInput("witness classes for different p^k");
    WitnessClass out{p, k, (valuation_class + o.valuation_class) % modulus(), tail};
    for (const auto &[e, c] : o.tail) {
      const std::int64_t v = (out.tail[e] + c) % p;
      if (v == 0)
        out.tail.erase(e);
      else
        out.tail[e] = v;
    }
    return out;
  }

  friend bool operator==(const WitnessClass &, const WitnessClass &) = default;

  /// `(m mod p^k; tail {exp: coeff, ...})`
  std::string to_string() const {
    std::string s = "(" + std::to_string(valuation_class) + " mod " + std::to_string(modulus()) + "; tail {";
    bool first = true;
    for (const auto &[e, c] : tail) {
      if (!first)
        s += ", ";
      first = false;
      s += std::to_string(e) + ": " + std::to_string(c);
    }
    return s + "})";
  }
};

inline bool is_unit_laurent(const TruncatedLaurentSeries &f) {
  if (f.residue_valuation())
    return true;
  if (f.exact())
    return false;
  throw PrecisionError("all known coefficients are nilpotent; cannot decide whether the series is a unit");
}

/// Unit test for a_0 + sum_{i>0} a_i z^{-i}: a_0 a unit and every a_i nilpotent.
inline bool is_unit_neg_poly(const TruncatedLaurentSeries &f) {
  if (!f.exact())
    throw InvalidInput("expected a polynomial in z^-1, got a truncated series");
  for (const auto &[e, c] : f.terms()) {
    if (e > 0)
      throw InvalidInput("expected a polynomial in z^-1, found z^" + std::to_string(e));
    if (e < 0 && c.a != 0)
      return false;
  }
  return f.coefficient(0).a != 0;
}

inline int checked_k(std::int64_t p, int k) {
  if (k < 1)
    throw InvalidInput("k must be positive");
  long double m = 1;
  for (int i = 0; i < k; ++i)
    m *= static_cast<long double>(p);
  if (m > 1e15L)
    throw InvalidInput("p^k too large");
  return k;
}

/// Writes f = z^m g (1 + eps h) with g in F_p[[z]]^x and returns (m mod p^k, negative part of h).
inline WitnessClass class_mod_pk(const TruncatedLaurentSeries &f, int k) {
  const std::int64_t p = f.ring().characteristic();
  checked_k(p, k);
  if (!is_unit_laurent(f))
    throw InvalidInput("series is not a unit");
  const TruncatedLaurentSeries a = f.residue_part();
  const int m = *a.residue_valuation();
  const TruncatedLaurentSeries h = f.nilpotent_part() * a.inverse();
  if (!h.exact() && h.known_to() < -1)
    throw PrecisionError("precision window too small to extract the negative tail");
  WitnessClass out;
  out.p = p;
  out.k = k;
  const std::int64_t mod = out.modulus();
  out.valuation_class = ((m % mod) + mod) % mod;
  for (const auto &[e, c] : h.terms())
    if (e < 0 && c.a != 0)
      out.tail[e] = c.a;
  return out;
}

inline int p_adic_valuation(std::int64_t n, std::int64_t p) {
  int k = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

using SeriesMatrix = std::vector<std::vector<TruncatedLaurentSeries>>;

inline TruncatedLaurentSeries determinant(const SeriesMatrix &m) {
  const std::size_t n = m.size();
  if (n == 0)
    throw InvalidInput("empty matrix");
  if (n > 8)
    throw BoundsError("matrix size above 8");
  for (const auto &row : m)
    if (row.size() != n)
      throw InvalidInput("matrix is not square");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const ArtinRing &ring = m[0][0].ring();
  TruncatedLaurentSeries det(ring, m[0][0].window());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j])
          ++inversions;
    TruncatedLaurentSeries term = TruncatedLaurentSeries::one(ring, m[0][0].window());
    for (std::size_t i = 0; i < n; ++i)
      term = term * m[i][perm[i]];
    det = inversions % 2 ? det - term : det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Kottwitz class of M in PGL_n(R((z))), read through det and the mu_{p^k} factor, p^k || n.
inline WitnessClass kottwitz_class_pgl(int n, const SeriesMatrix &m) {
  if (n < 1 || static_cast<std::size_t>(n) != m.size())
    throw InvalidInput("matrix size does not match n");
  const std::int64_t p = m[0][0].ring().characteristic();
  const int k = p_adic_valuation(n, p);
  if (k == 0)
    throw InvalidInput("p = " + std::to_string(p) + " does not divide n = " + std::to_string(n));
  const TruncatedLaurentSeries d = determinant(m);
  if (!is_unit_laurent(d))
    throw InvalidInput("matrix is not invertible");
  return class_mod_pk(d, k);
}

struct WitnessCertificate {
  TruncatedLaurentSeries series;
  int k;                 ///< witness routed through mu_{p^k}
  WitnessClass cls;
};

enum class Reducedness { Reduced, NonReduced };

struct ReducednessResult {
  Reducedness verdict;
  std::string reason;
  std::optional<WitnessCertificate> witness;
  bool reduced() const { return verdict == Reducedness::Reduced; }
};

inline ReducednessResult reducedness_oracle(const RootDatum &rd, std::int64_t p) {
  const ArtinRing ring(p);
  if (!is_semisimple(rd))
    return {Reducedness::NonReduced, "not semisimple", std::nullopt};
  const FiniteAbelianGroup g = pi1(rd);
  int k = 0;
  for (const BigInt &d : g.invariant_factors) {
    BigInt r = d;
    int kd = 0;
    while (r % p == 0) {
      r /= p;
      ++kd;
    }
    k = std::max(k, kd);
  }
  if (k == 0)
    return {Reducedness::Reduced, "semisimple and p does not divide |pi1|", std::nullopt};
  TruncatedLaurentSeries w = TruncatedLaurentSeries::one(ring);
  w.set(-1, ring.make(0, 1));
  const WitnessClass cls = class_mod_pk(w, k);
  const WitnessClass expected{p, k, 0, {{-1, 1}}};
  if (cls.is_trivial() || !(cls == expected))
    throw std::logic_error("witness class failed verification: " + cls.to_string());
  return {Reducedness::NonReduced, "p divides |pi1|", WitnessCertificate{w, k, cls}};
}

/// Primes excluded from the ind-flat locus; nullopt when unknown (non-semisimple).
inline std::optional<std::vector<std::int64_t>> ind_flat_locus(const RootDatum &rd) {
  if (!is_semisimple(rd))
    return std::nullopt;
  return prime_divisors(pi1(rd).order());
}

} // namespace schubert_kit
