#pragma once

#include "schubert_kit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace schubert_kit {

inline bool is_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// a + b*eps with a, b in F_p and eps^2 = 0.
struct DualNumber {
  std::int64_t a = 0;
  std::int64_t b = 0;
  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const DualNumber &, const DualNumber &) = default;
};

/// The local Artinian ring F_p[eps]/(eps^2). Only m^2 = 0 coefficient rings are modelled.
class ArtinRing {
public:
  explicit ArtinRing(std::int64_t p) : p_(p) {
    if (!is_prime(p))
      throw InvalidInput("residue characteristic must be prime, got " + std::to_string(p));
  }
  std::int64_t characteristic() const { return p_; }

  std::int64_t reduce(std::int64_t x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  DualNumber make(std::int64_t a, std::int64_t b = 0) const { return {reduce(a), reduce(b)}; }
  DualNumber add(DualNumber x, DualNumber y) const { return {reduce(x.a + y.a), reduce(x.b + y.b)}; }
  DualNumber sub(DualNumber x, DualNumber y) const { return {reduce(x.a - y.a), reduce(x.b - y.b)}; }
  DualNumber mul(DualNumber x, DualNumber y) const { return {reduce(x.a * y.a), reduce(x.a * y.b + x.b * y.a)}; }
  bool is_unit(DualNumber x) const { return x.a != 0; }
  bool is_nilpotent(DualNumber x) const { return x.a == 0; }

  std::int64_t inverse_mod(std::int64_t a) const {
    a = reduce(a);
    if (a == 0)
      throw InvalidInput("zero has no inverse");
    std::int64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1)
        result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }
  /// (a + b eps)^{-1} = a^{-1} - b a^{-2} eps
  DualNumber inverse(DualNumber x) const {
    if (!is_unit(x))
      throw InvalidInput("nilpotent element is not invertible");
    const std::int64_t ai = inverse_mod(x.a);
    return {ai, reduce(-x.b * ai % p_ * ai)};
  }

  friend bool operator==(const ArtinRing &, const ArtinRing &) = default;

private:
  std::int64_t p_;
};

/// Exponent window [lo, hi] in which coefficients are stored.
struct SeriesWindow {
  int lo = -16;
  int hi = 16;
};

/// Laurent series over F_p[eps] known modulo z^{known_to + 1}.
///
/// Coefficients below the window are zero. An exact series is a Laurent
/// polynomial that fits in the window; arithmetic that would need
/// coefficients above `hi` drops exactness and tracks the known range
/// pessimistically.
class TruncatedLaurentSeries {
public:
  TruncatedLaurentSeries(ArtinRing ring, SeriesWindow window = {}) : ring_(ring), window_(window), known_to_(window.hi) {
    if (window.lo > window.hi)
      throw InvalidInput("empty series window");
  }

  static TruncatedLaurentSeries monomial(ArtinRing ring, DualNumber c, int exponent, SeriesWindow window = {}) {
    TruncatedLaurentSeries s(ring, window);
    s.set(exponent, c);
    return s;
  }
  static TruncatedLaurentSeries one(ArtinRing ring, SeriesWindow window = {}) {
    return monomial(ring, ring.make(1), 0, window);
  }

  const ArtinRing &ring() const { return ring_; }
  const SeriesWindow &window() const { return window_; }
  bool exact() const { return exact_; }
  int known_to() const { return known_to_; }
  const std::map<int, DualNumber> &terms() const { return coeffs_; }

  DualNumber coefficient(int exponent) const {
    if (!exact_ && exponent > known_to_)
      throw PrecisionError("coefficient of z^" + std::to_string(exponent) + " is beyond the known precision");
    const auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? DualNumber{} : it->second;
  }

  void set(int exponent, DualNumber c) {
    if (exponent < window_.lo)
      throw PrecisionError("exponent " + std::to_string(exponent) + " below the series window");
    if (exponent > window_.hi || (!exact_ && exponent > known_to_))
      throw PrecisionError("exponent " + std::to_string(exponent) + " above the series window");
    c = ring_.make(c.a, c.b);
    if (c.is_zero())
      coeffs_.erase(exponent);
    else
      coeffs_[exponent] = c;
  }

  /// Forget everything above `exponent`.
  TruncatedLaurentSeries truncated(int exponent) const {
    TruncatedLaurentSeries out = *this;
    if (out.exact_ || exponent < out.known_to_) {
      out.exact_ = false;
      out.known_to_ = std::min(exponent, out.known_to_);
      out.coeffs_.erase(out.coeffs_.upper_bound(out.known_to_), out.coeffs_.end());
    }
    return out;
  }

  /// Lowest exponent with a nonzero coefficient among the known ones.
  std::optional<int> valuation() const {
    if (coeffs_.empty())
      return std::nullopt;
    return coeffs_.begin()->first;
  }

  /// Lowest exponent whose coefficient has a unit (residue) part.
  std::optional<int> residue_valuation() const {
    for (const auto &[e, c] : coeffs_)
      if (c.a != 0)
        return e;
    return std::nullopt;
  }

  /// Residue part a(z) of f = a(z) + eps b(z), as a series over F_p (b = 0).
  TruncatedLaurentSeries residue_part() const { return component(false); }
  /// eps-part b(z), moved to the residue slot.
  TruncatedLaurentSeries nilpotent_part() const { return component(true); }

  friend TruncatedLaurentSeries operator+(const TruncatedLaurentSeries &f, const TruncatedLaurentSeries &g) {
    return combine(f, g, false);
  }
  friend TruncatedLaurentSeries operator-(const TruncatedLaurentSeries &f, const TruncatedLaurentSeries &g) {
    return combine(f, g, true);
  }

  friend TruncatedLaurentSeries operator*(const TruncatedLaurentSeries &f, const TruncatedLaurentSeries &g) {
    f.check_compatible(g);
    TruncatedLaurentSeries out(f.ring_, merged(f.window_, g.window_));
    // unknown terms of f start at z^{known_to+1}; multiplied by g they start at known_to + v(g)
    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    const int vf = f.lowest_or_unknown(), vg = g.lowest_or_unknown();
    int known = kInf;
    if (!f.exact_)
      known = std::min(known, f.known_to_ + vg);
    if (!g.exact_)
      known = std::min(known, g.known_to_ + vf);
    bool exact = f.exact_ && g.exact_;
    if (known > out.window_.hi) {
      if (!exact || known != kInf)
        exact = false;
      known = out.window_.hi;
    }
    std::map<int, DualNumber> acc;
    for (const auto &[ef, cf] : f.coeffs_)
      for (const auto &[eg, cg] : g.coeffs_) {
        const int e = ef + eg;
        if (e > known) {
          exact = false;
          continue;
        }
        acc[e] = f.ring_.add(acc[e], f.ring_.mul(cf, cg));
      }
    out.exact_ = exact;
    out.known_to_ = known;
    for (const auto &[e, c] : acc)
      if (!c.is_zero())
        out.set(e, c);
    return out;
  }

  TruncatedLaurentSeries pow(std::uint64_t n) const {
    TruncatedLaurentSeries result = one(ring_, window_);
    TruncatedLaurentSeries base = *this;
    while (n > 0) {
      if (n & 1)
        result = result * base;
      n >>= 1;
      if (n)
        base = base * base;
    }
    return result;
  }

  /// Multiplicative inverse; f must be a unit (residue part not identically zero).
  TruncatedLaurentSeries inverse() const {
    const TruncatedLaurentSeries a = residue_part();
    const auto m = a.residue_valuation();
    if (!m) {
      if (exact_)
        throw InvalidInput("series is not a unit");
      throw PrecisionError("all known coefficients are nilpotent; cannot decide invertibility");
    }
    const TruncatedLaurentSeries a_inv = a.residue_inverse(*m);
    const TruncatedLaurentSeries b = nilpotent_part();
    // (a + eps b)^{-1} = a^{-1} - eps b a^{-2}
    TruncatedLaurentSeries correction = b * a_inv * a_inv;
    TruncatedLaurentSeries eps_correction = correction.times_eps();
    return a_inv - eps_correction;
  }

  friend bool operator==(const TruncatedLaurentSeries &f, const TruncatedLaurentSeries &g) {
    return f.ring_ == g.ring_ && f.exact_ == g.exact_ && f.known_to_ == g.known_to_ && f.coeffs_ == g.coeffs_;
  }

  /// Equality of all coefficients up to a common known exponent.
  bool agrees_with(const TruncatedLaurentSeries &g) const {
    const int upto = std::min(exact_ ? window_.hi : known_to_, g.exact_ ? g.window_.hi : g.known_to_);
    const int from = std::min(window_.lo, g.window_.lo);
    for (int e = from; e <= upto; ++e)
      if (!(coefficient_or_zero(e) == g.coefficient_or_zero(e)))
        return false;
    return true;
  }

  /// Multiply by eps: residue coefficients move to the eps slot.
  TruncatedLaurentSeries times_eps() const {
    TruncatedLaurentSeries out = *this;
    out.coeffs_.clear();
    for (const auto &[e, c] : coeffs_)
      if (c.a != 0)
        out.coeffs_[e] = DualNumber{0, c.a};
    return out;
  }

  /// Terms in decreasing exponent order, e.g. `1+e*z^-1`, then `+O(z^k)` if inexact.
  std::string to_string() const;

private:
  static SeriesWindow merged(const SeriesWindow &a, const SeriesWindow &b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  }

  void check_compatible(const TruncatedLaurentSeries &g) const {
    if (!(ring_ == g.ring_))
      throw InvalidInput("series over different coefficient rings");
  }

  DualNumber coefficient_or_zero(int e) const {
    const auto it = coeffs_.find(e);
    return it == coeffs_.end() ? DualNumber{} : it->second;
  }

  int lowest_or_unknown() const {
    if (!coeffs_.empty())
      return coeffs_.begin()->first;
    return exact_ ? std::numeric_limits<int>::max() / 4 : known_to_ + 1;
  }

  static TruncatedLaurentSeries combine(const TruncatedLaurentSeries &f, const TruncatedLaurentSeries &g, bool negate) {
    f.check_compatible(g);
    TruncatedLaurentSeries out(f.ring_, merged(f.window_, g.window_));
    out.exact_ = f.exact_ && g.exact_;
    int known = out.window_.hi;
    if (!f.exact_)
      known = std::min(known, f.known_to_);
    if (!g.exact_)
      known = std::min(known, g.known_to_);
    out.known_to_ = known;
    std::map<int, DualNumber> acc = f.coeffs_;
    for (const auto &[e, c] : g.coeffs_)
      acc[e] = negate ? f.ring_.sub(acc[e], c) : f.ring_.add(acc[e], c);
    for (const auto &[e, c] : acc)
      if (e <= known && !c.is_zero())
        out.coeffs_[e] = c;
    return out;
  }

  TruncatedLaurentSeries component(bool nilpotent) const {
    TruncatedLaurentSeries out = *this;
    out.coeffs_.clear();
    for (const auto &[e, c] : coeffs_) {
      const std::int64_t v = nilpotent ? c.b : c.a;
      if (v != 0)
        out.coeffs_[e] = DualNumber{v, 0};
    }
    return out;
  }

  // Inverse of a residue-only series of valuation m: z^{-m} g^{-1} with g = z^{-m} a.
  TruncatedLaurentSeries residue_inverse(int m) const {
    const std::int64_t lead_inv = ring_.inverse_mod(coeffs_.at(m).a);
    const bool monomial = coeffs_.size() == 1;
    SeriesWindow w = window_;
    w.lo = std::min(w.lo, -m - (w.hi - w.lo));
    TruncatedLaurentSeries out(ring_, w);
    if (monomial && exact_) {
      out.set(-m, ring_.make(lead_inv));
      return out;
    }
    // g known to degree K; g^{-1} to the same degree; result exponents -m .. K - m
    const int g_known = exact_ ? window_.hi + m : known_to_ - m;
    const int result_known = std::min(g_known - m, window_.hi);
    if (result_known < -m)
      throw PrecisionError("not enough known coefficients to invert");
    out.exact_ = false;
    out.known_to_ = result_known;
    std::map<int, std::int64_t> g;
    for (const auto &[e, c] : coeffs_)
      g[e - m] = c.a;
    std::map<int, std::int64_t> inv; // degrees 0..(result_known + m)
    for (int d = 0; d <= result_known + m; ++d) {
      std::int64_t s = d == 0 ? 1 : 0;
      for (int j = 1; j <= d; ++j) {
        const auto gj = g.find(j);
        if (gj == g.end())
          continue;
        s -= gj->second * inv[d - j];
        s = ring_.reduce(s);
      }
      inv[d] = ring_.reduce(s * lead_inv);
    }
    for (const auto &[d, c] : inv)
      if (c != 0)
        out.set(d - m, ring_.make(c));
    return out;
  }

  ArtinRing ring_;
  SeriesWindow window_;
  std::map<int, DualNumber> coeffs_;
  int known_to_;
  bool exact_ = true;
};

inline std::string TruncatedLaurentSeries::to_string() const {
  std::string out;
  auto pow_text = [](int e) {
    if (e == 0)
      return std::string();
    if (e == 1)
      return std::string("z");
    return "z^" + std::to_string(e);
  };
  auto append = [&](std::string coeff, int e) {
    const std::string zp = pow_text(e);
    std::string term = zp.empty() ? coeff : coeff == "1" ? zp : coeff + "*" + zp;
    if (!out.empty())
      out += "+";
    out += term;
  };
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto &[e, c] = *it;
    if (c.a != 0)
      append(std::to_string(c.a), e);
    if (c.b != 0)
      append(c.b == 1 ? std::string("e") : std::to_string(c.b) + "*e", e);
  }
  if (out.empty())
    out = "0";
  if (!exact_)
    out += "+O(z^" + std::to_string(known_to_ + 1) + ")";
  return out;
}

/// Parse a series literal such as `1+e*z^-1` or `z^2 - 3*e*z`.
///
/// A term is a product of an optional integer, an optional `e` (the
/// nilpotent) and an optional power of `z`; terms are joined by + or -.
inline TruncatedLaurentSeries parse_series(std::string_view text, const ArtinRing &ring, SeriesWindow window = {}) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (s.empty())
    throw InvalidInput("empty series literal");
  TruncatedLaurentSeries out(ring, window);
  std::map<int, DualNumber> acc;
  std::size_t i = 0;
  auto fail = [&](const std::string &why) -> void {
    throw InvalidInput("malformed series literal '" + std::string(text) + "': " + why);
  };
  auto read_int = [&](bool allow_sign) {
    bool neg = false;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      fail("expected a number");
    std::int64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000)
        fail("number too large");
      ++i;
    }
    return neg ? -v : v;
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first)
      fail("expected + or -");
    first = false;
    std::int64_t coeff = 1;
    int eps_power = 0;
    std::int64_t exponent = 0;
    bool any_factor = false;
    for (;;) {
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coeff *= read_int(false);
      } else if (i < s.size() && s[i] == 'e') {
        ++eps_power;
        ++i;
      } else if (i < s.size() && s[i] == 'z') {
        ++i;
        std::int64_t ex = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          ex = read_int(true);
        }
        exponent += ex;
      } else {
        fail("expected a number, e or z");
      }
      any_factor = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any_factor)
      fail("empty term");
    if (eps_power >= 2)
      continue;
    const DualNumber c = eps_power == 1 ? ring.make(0, sign * coeff) : ring.make(sign * coeff, 0);
    acc[static_cast<int>(exponent)] = ring.add(acc[static_cast<int>(exponent)], c);
  }
  for (const auto &[e, c] : acc)
    if (!c.is_zero())
      out.set(e, c);
  return out;
}

} // namespace schubert_kit
