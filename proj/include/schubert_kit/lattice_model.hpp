#pragma once

#include "schubert_kit/bigint.hpp"
#include "schubert_kit/errors.hpp"
#include "schubert_kit/galois_field.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace schubert_kit {

/// Laurent polynomial over GF(q): exponent -> nonzero field element.
using GFLaurent = std::map<int, int>;

inline int valuation(const GFLaurent &f, int infinity) { return f.empty() ? infinity : f.begin()->first; }

/// Lattice span{(z^a, 0), (f, z^b)} in F_q((z))^2 with z^N L0 <= L <= z^-N L0.
///
/// f is reduced modulo z^a, so its exponents lie in [max(-N, a+b-N), a-1].
struct Lattice2 {
  int q = 2;
  int N = 0;
  int a = 0;
  int b = 0;
  GFLaurent f;

  int index() const { return a + b; }

  /// Elementary divisors (e1 <= e2): L ~ z^e1 O + z^e2 O.
  std::pair<int, int> elementary_divisors() const {
    const int e1 = std::min({a, b, valuation(f, a)});
    return {e1, a + b - e1};
  }

  friend bool operator==(const Lattice2 &, const Lattice2 &) = default;
  friend auto operator<=>(const Lattice2 &x, const Lattice2 &y) {
    return std::tie(x.q, x.N, x.a, x.b, x.f) <=> std::tie(y.q, y.N, y.a, y.b, y.f);
  }

  std::string to_string() const {
    std::string s = "[[z^" + std::to_string(a) + ", ";
    if (f.empty())
      s += "0";
    bool first = true;
    for (const auto &[e, c] : f) {
      if (!first)
        s += "+";
      first = false;
      s += std::to_string(c) + "*z^" + std::to_string(e);
    }
    return s + "], [0, z^" + std::to_string(b) + "]]";
  }
};

inline constexpr int kMaxLatticeWindow = 6;
inline constexpr std::uint64_t kMaxLatticeCount = 4000000;

inline void check_lattice_params(int q, int N) {
  GaloisField field(q);
  (void)field;
  if (N < 0 || N > kMaxLatticeWindow)
    throw BoundsError("window N must be in [0, " + std::to_string(kMaxLatticeWindow) + "], got " + std::to_string(N));
}

inline void validate(const Lattice2 &l) {
  check_lattice_params(l.q, l.N);
  if (l.a < -l.N || l.a > l.N || l.b < -l.N || l.b > l.N)
    throw InvalidInput("diagonal exponents outside the window");
  const int lo = std::max(-l.N, l.a + l.b - l.N);
  for (const auto &[e, c] : l.f)
    if (e < lo || e >= l.a || c <= 0 || c >= l.q)
      throw InvalidInput("off-diagonal entry not in reduced form");
}

/// f ranges over GF(q)^{len} with exponents starting at `lo`.
inline std::pair<int, int> offdiagonal_range(int N, int a, int b) {
  const int lo = std::max(-N, a + b - N);
  return {lo, std::max(0, a - lo)};
}

inline std::uint64_t lattice_count(int q, int N, int index) {
  std::uint64_t total = 0;
  for (int a = -N; a <= N; ++a) {
    const int b = index - a;
    if (b < -N || b > N)
      continue;
    std::uint64_t c = 1;
    for (int i = 0; i < offdiagonal_range(N, a, b).second; ++i) {
      c *= static_cast<std::uint64_t>(q);
      if (c > kMaxLatticeCount)
        return kMaxLatticeCount + 1;
    }
    total += c;
    if (total > kMaxLatticeCount)
      return total;
  }
  return total;
}

/// All lattices of the given index in the window, ordered by a, then f.
inline std::vector<Lattice2> enumerate_lattices(int q, int N, int index) {
  check_lattice_params(q, N);
  if (std::abs(index) > 2 * N)
    throw BoundsError("|index| must be at most 2N");
  if (lattice_count(q, N, index) > kMaxLatticeCount)
    throw BoundsError("lattice enumeration exceeds " + std::to_string(kMaxLatticeCount) + " points");
  std::vector<Lattice2> out;
  for (int a = -N; a <= N; ++a) {
    const int b = index - a;
    if (b < -N || b > N)
      continue;
    const auto [lo, len] = offdiagonal_range(N, a, b);
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    for (;;) {
      Lattice2 l{q, N, a, b, {}};
      for (int i = 0; i < len; ++i)
        if (digits[static_cast<std::size_t>(i)] != 0)
          l.f[lo + i] = digits[static_cast<std::size_t>(i)];
      out.push_back(std::move(l));
      int pos = len - 1;
      while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == q)
        digits[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0)
        break;
    }
  }
  return out;
}

/// Stratum n = e2 - e1 of the elementary-divisor type.
inline int stratum_of(const Lattice2 &l) {
  const auto [e1, e2] = l.elementary_divisors();
  return e2 - e1;
}

/// Lattice index carrying the strata of parity n in the homothety quotient.
inline int stratum_index(int n) { return n % 2 == 0 ? 0 : 1; }

struct StratumCount {
  BigInt cell;    ///< points with stratum exactly n
  BigInt closure; ///< points with stratum m <= n, m = n mod 2
};

inline StratumCount stratum_point_count(int q, int N, int n) {
  if (n < 0)
    throw InvalidInput("stratum n must be nonnegative");
  if (n > 2 * N)
    throw BoundsError("stratum n must satisfy n <= 2N");
  StratumCount c{0, 0};
  for (const auto &l : enumerate_lattices(q, N, stratum_index(n))) {
    const int m = stratum_of(l);
    if (m == n)
      c.cell += 1;
    if (m <= n && (n - m) % 2 == 0)
      c.closure += 1;
  }
  return c;
}

namespace detail {

// Element of the module z^-N L0 / z^N L0: two coordinates, exponents -N..N-1.
struct WindowVector {
  std::array<std::vector<int>, 2> c;
};

class WindowArithmetic {
public:
  WindowArithmetic(const GaloisField &k, int n) : k_(k), n_(n) {}

  std::vector<int> zero_coord() const { return std::vector<int>(static_cast<std::size_t>(2 * n_), 0); }

  int val(const std::vector<int> &x) const {
    for (int i = 0; i < 2 * n_; ++i)
      if (x[static_cast<std::size_t>(i)] != 0)
        return i - n_;
    return n_;
  }

  // power series s = sum_{d>=0} s_d z^d (degrees < 2N) times a coordinate
  std::vector<int> scale(const std::vector<int> &s, const std::vector<int> &x) const {
    auto out = zero_coord();
    for (int d = 0; d < 2 * n_; ++d) {
      if (s[static_cast<std::size_t>(d)] == 0)
        continue;
      for (int i = 0; i + d < 2 * n_; ++i)
        out[static_cast<std::size_t>(i + d)] =
            k_.add(out[static_cast<std::size_t>(i + d)], k_.mul(s[static_cast<std::size_t>(d)], x[static_cast<std::size_t>(i)]));
    }
    return out;
  }

  // x * z^{-v} read as a power series, v <= val(x)
  std::vector<int> shift_to_series(const std::vector<int> &x, int v) const {
    std::vector<int> s(static_cast<std::size_t>(2 * n_), 0);
    for (int i = 0; i < 2 * n_; ++i) {
      const int e = i - n_ - v;
      if (x[static_cast<std::size_t>(i)] != 0 && e >= 0 && e < 2 * n_)
        s[static_cast<std::size_t>(e)] = x[static_cast<std::size_t>(i)];
    }
    return s;
  }

  std::vector<int> series_inverse(const std::vector<int> &s) const {
    std::vector<int> inv(s.size(), 0);
    const int lead = k_.inv(s[0]);
    for (std::size_t d = 0; d < s.size(); ++d) {
      int acc = d == 0 ? 1 : 0;
      for (std::size_t j = 1; j <= d; ++j)
        acc = k_.sub(acc, k_.mul(s[j], inv[d - j]));
      inv[d] = k_.mul(acc, lead);
    }
    return inv;
  }

  WindowVector scale(const std::vector<int> &s, const WindowVector &v) const {
    return {{scale(s, v.c[0]), scale(s, v.c[1])}};
  }
  WindowVector sub(const WindowVector &x, const WindowVector &y) const {
    WindowVector out = x;
    for (int c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < out.c[static_cast<std::size_t>(c)].size(); ++i)
        out.c[static_cast<std::size_t>(c)][i] = k_.sub(x.c[static_cast<std::size_t>(c)][i], y.c[static_cast<std::size_t>(c)][i]);
    return out;
  }

private:
  const GaloisField &k_;
  int n_;
};

} // namespace detail

/// A generator of a lattice: a column vector of Laurent polynomials.
using LatticeGenerator = std::array<GFLaurent, 2>;

/// Canonical form of the O-span of `generators` together with z^N L0.
inline Lattice2 canonicalize(int q, int N, const std::vector<LatticeGenerator> &generators) {
  check_lattice_params(q, N);
  const GaloisField k(q);
  const detail::WindowArithmetic ar(k, N);
  std::vector<detail::WindowVector> gens;
  for (const auto &g : generators) {
    detail::WindowVector v{{ar.zero_coord(), ar.zero_coord()}};
    for (int c = 0; c < 2; ++c)
      for (const auto &[e, x] : g[static_cast<std::size_t>(c)]) {
        if (x < 0 || x >= q)
          throw InvalidInput("coefficient outside GF(q)");
        if (e < -N && x != 0)
          throw InvalidInput("generator not contained in z^-N L0");
        if (e < N)
          v.c[static_cast<std::size_t>(c)][static_cast<std::size_t>(e + N)] = x;
      }
    gens.push_back(std::move(v));
  }

  // bottom pivot
  Lattice2 out{q, N, N, N, {}};
  std::size_t pivot = gens.size();
  int best = N;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int v = ar.val(gens[i].c[1]);
    if (v < best) {
      best = v;
      pivot = i;
    }
  }
  out.b = best;
  if (pivot < gens.size()) {
    const auto unit = ar.shift_to_series(gens[pivot].c[1], best);
    const detail::WindowVector v2 = ar.scale(ar.series_inverse(unit), gens[pivot]);
    std::vector<detail::WindowVector> rest;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != pivot)
        rest.push_back(ar.sub(gens[i], ar.scale(ar.shift_to_series(gens[i].c[1], best), v2)));
    // z^{N-b} v2 - (0, z^N) lies in L as well
    if (best > -N) {
      std::vector<int> shift(static_cast<std::size_t>(2 * N), 0);
      shift[static_cast<std::size_t>(N - best)] = 1;
      rest.push_back(ar.scale(shift, v2));
    }
    for (int i = 0; i < 2 * N; ++i)
      if (v2.c[0][static_cast<std::size_t>(i)] != 0)
        out.f[i - N] = v2.c[0][static_cast<std::size_t>(i)];
    gens = std::move(rest);
  }
  int a = N;
  for (const auto &g : gens)
    a = std::min(a, ar.val(g.c[0]));
  out.a = a;
  out.f.erase(out.f.lower_bound(a), out.f.end());
  validate(out);
  return out;
}

inline std::vector<LatticeGenerator> basis_of(const Lattice2 &l) {
  return {LatticeGenerator{GFLaurent{{l.a, 1}}, GFLaurent{}}, LatticeGenerator{l.f, GFLaurent{{l.b, 1}}}};
}

namespace detail {

// Rank of a matrix over GF(q), rows destroyed.
inline std::size_t gf_rank(const GaloisField &k, std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0)
      ++piv;
    if (piv == m.size())
      continue;
    std::swap(m[piv], m[rank]);
    const int inv = k.inv(m[rank][c]);
    for (auto &x : m[rank])
      x = k.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] != 0) {
        const int f = m[r][c];
        for (std::size_t j = 0; j < cols; ++j)
          m[r][j] = k.sub(m[r][j], k.mul(f, m[rank][j]));
      }
    ++rank;
  }
  return rank;
}

// Basis of {y : <y, u> = 0 for every row u}.
inline std::vector<std::vector<int>> gf_annihilator(const GaloisField &k, std::vector<std::vector<int>> m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0)
      ++piv;
    if (piv == m.size())
      continue;
    std::swap(m[piv], m[rank]);
    const int inv = k.inv(m[rank][c]);
    for (auto &x : m[rank])
      x = k.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] != 0) {
        const int f = m[r][c];
        for (std::size_t j = 0; j < cols; ++j)
          m[r][j] = k.sub(m[r][j], k.mul(f, m[rank][j]));
      }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::vector<int>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
      continue;
    std::vector<int> y(cols, 0);
    y[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      y[pivots[r]] = k.neg(m[r][free]);
    out.push_back(std::move(y));
  }
  return out;
}

} // namespace detail

/// Window [lo, hi] with z^hi L0 <= L <= z^lo L0 for every L in the closure of S_n.
inline std::pair<int, int> stratum_window(int n) {
  if (n % 2 == 0)
    return {-n / 2, n / 2};
  return {(1 - n) / 2, (n + 1) / 2};
}

/// Zariski tangent dimension at L of the determinantal model of the closure of S_n.
///
/// The model consists of z-stable subspaces U = L / z^hi L0 of V = z^lo L0 / z^hi L0
/// whose determinant stays z^index times a unit. Tangent vectors are
/// k[z]-maps phi: U -> V/U; lifting phi to C = (phi v1, phi v2) the
/// determinant condition reads: principal part of tr(B^-1 C) = 0.
inline std::size_t tangent_dim(const Lattice2 &l, int n) {
  validate(l);
  if (n < 0)
    throw InvalidInput("stratum n must be nonnegative");
  if (l.index() != stratum_index(n))
    throw InvalidInput("lattice index " + std::to_string(l.index()) + " does not match the parity of n = " + std::to_string(n));
  const int m = stratum_of(l);
  if (m > n)
    throw InvalidInput("lattice of stratum " + std::to_string(m) + " is not in the closure of S_" + std::to_string(n));
  const GaloisField k(l.q);
  const auto [lo, hi] = stratum_window(n);
  const int width = hi - lo;
  const std::size_t dim_v = static_cast<std::size_t>(2 * width);

  using Vec = std::vector<int>;
  auto coord = [&](int c, int e) { return static_cast<std::size_t>(c * width + (e - lo)); };
  // V-vector of z^s * (x, y) with x, y Laurent polynomials
  auto embed = [&](const GFLaurent &x, const GFLaurent &y, int s) {
    Vec v(dim_v, 0);
    for (int c = 0; c < 2; ++c)
      for (const auto &[e, val] : (c == 0 ? x : y)) {
        const int ee = e + s;
        if (ee < lo)
          throw InvalidInput("lattice not contained in the window of S_n");
        if (ee < hi)
          v[coord(c, ee)] = val;
      }
    return v;
  };

  std::vector<Vec> u_basis;
  for (int s = 0; s < hi - l.a; ++s)
    u_basis.push_back(embed(GFLaurent{{l.a, 1}}, {}, s));
  for (int s = 0; s < hi - l.b; ++s)
    u_basis.push_back(embed(l.f, GFLaurent{{l.b, 1}}, s));
  const auto quotient = detail::gf_annihilator(k, u_basis, dim_v);

  // unknowns: phi v1 (dim_v coordinates), then phi v2
  const std::size_t vars = 2 * dim_v;
  std::vector<Vec> rows;
  // Q (z^s * X) as a linear form in the coordinates of X, shifted by s
  auto shifted_form = [&](const Vec &qrow, int s, std::size_t offset, Vec &row, int scalar) {
    for (int c = 0; c < 2; ++c)
      for (int e = lo; e < hi; ++e) {
        const int ee = e + s;
        if (ee < hi && ee >= lo && qrow[coord(c, ee)] != 0)
          row[offset + coord(c, e)] = k.add(row[offset + coord(c, e)], k.mul(scalar, qrow[coord(c, ee)]));
      }
  };
  // relation z^{hi-a} v1 = 0
  for (const auto &qrow : quotient) {
    Vec row(vars, 0);
    shifted_form(qrow, hi - l.a, 0, row, 1);
    rows.push_back(std::move(row));
  }
  // relation z^{hi-b} v2 = g v1 with g = z^{hi-a-b} f
  for (const auto &qrow : quotient) {
    Vec row(vars, 0);
    shifted_form(qrow, hi - l.b, dim_v, row, 1);
    for (const auto &[e, val] : l.f)
      shifted_form(qrow, e + hi - l.a - l.b, 0, row, k.neg(val));
    rows.push_back(std::move(row));
  }
  // principal part of z^-a C11 - f z^{-a-b} C21 + z^-b C22
  for (int t = lo - std::max(l.a, l.b) - 2 * width; t < 0; ++t) {
    Vec row(vars, 0);
    for (int e = lo; e < hi; ++e) {
      if (e - l.a == t)
        row[coord(0, e)] = k.add(row[coord(0, e)], 1);
      if (e - l.b == t)
        row[dim_v + coord(1, e)] = k.add(row[dim_v + coord(1, e)], 1);
      for (const auto &[fe, val] : l.f)
        if (fe + e - l.a - l.b == t)
          row[coord(1, e)] = k.sub(row[coord(1, e)], val);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t solutions = vars - detail::gf_rank(k, rows);
  return solutions - 2 * u_basis.size();
}

} // namespace schubert_kit
