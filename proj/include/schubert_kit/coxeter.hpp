#pragma once

#include "schubert_kit/errors.hpp"
#include "schubert_kit/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace schubert_kit {

/// Sequence of generator indices (internal numbering of a CoxeterSystem).
using Word = std::vector<int>;

/// Coxeter matrix entry for m = infinity.
inline constexpr int kInfiniteOrder = 0;

/// A Coxeter system (W, S) together with an integral realization.
///
/// The realization is a generalized Cartan matrix A with a_ij * a_ji
/// encoding m_ij. W acts faithfully on the root lattice Z^S by
/// s_i(alpha_j) = alpha_j - a_ij alpha_i, which gives exact arithmetic for
/// finite and affine systems alike.
class CoxeterSystem {
public:
  CoxeterSystem() = default;

  /// From a generalized Cartan matrix (finite or affine type).
  CoxeterSystem(IntMatrix gcm, std::vector<std::string> labels) : gcm_(std::move(gcm)), labels_(std::move(labels)) {
    const std::size_t n = gcm_.rows();
    if (gcm_.cols() != n || labels_.size() != n)
      throw InvalidInput("Coxeter realization shape mismatch");
    coxeter_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          if (gcm_(i, i) != 2)
            throw InvalidInput("realization diagonal must be 2");
          coxeter_(i, j) = 1;
          continue;
        }
        const std::int64_t prod = gcm_(i, j) * gcm_(j, i);
        if (gcm_(i, j) > 0 || (gcm_(i, j) == 0) != (gcm_(j, i) == 0))
          throw InvalidInput("invalid generalized Cartan matrix");
        switch (prod) {
        case 0: coxeter_(i, j) = 2; break;
        case 1: coxeter_(i, j) = 3; break;
        case 2: coxeter_(i, j) = 4; break;
        case 3: coxeter_(i, j) = 6; break;
        default: coxeter_(i, j) = kInfiniteOrder; break;
        }
      }
  }

  /// From a Coxeter matrix with entries in {1, 2, 3, 4, 6, 0 = infinity}.
  static CoxeterSystem from_coxeter_matrix(const IntMatrix &m, std::vector<std::string> labels = {}) {
    const std::size_t n = m.rows();
    if (labels.empty())
      for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    IntMatrix gcm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j) != m(j, i))
          throw InvalidInput("Coxeter matrix must be symmetric");
        if (i == j) {
          if (m(i, i) != 1)
            throw InvalidInput("Coxeter matrix diagonal must be 1");
          gcm(i, i) = 2;
          continue;
        }
        // i < j carries the larger entry; any choice realizes the same group
        const bool lower = i < j;
        switch (m(i, j)) {
        case 2: gcm(i, j) = 0; break;
        case 3: gcm(i, j) = -1; break;
        case 4: gcm(i, j) = lower ? -1 : -2; break;
        case 6: gcm(i, j) = lower ? -1 : -3; break;
        case kInfiniteOrder: gcm(i, j) = -2; break;
        default: throw InvalidInput("unsupported Coxeter matrix entry " + std::to_string(m(i, j)));
        }
      }
    return CoxeterSystem(gcm, std::move(labels));
  }

  std::size_t size() const { return gcm_.rows(); }
  const IntMatrix &coxeter_matrix() const { return coxeter_; }
  const IntMatrix &realization() const { return gcm_; }
  const std::vector<std::string> &labels() const { return labels_; }
  int order(int i, int j) const { return static_cast<int>(coxeter_(static_cast<std::size_t>(i), static_cast<std::size_t>(j))); }

  int generator_index(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label)
        return static_cast<int>(i);
    throw InvalidInput("unknown generator '" + std::string(label) + "'");
  }

  void check_word(const Word &w) const {
    for (int g : w)
      if (g < 0 || static_cast<std::size_t>(g) >= size())
        throw InvalidInput("generator index out of range");
  }

private:
  IntMatrix gcm_;
  IntMatrix coxeter_;
  std::vector<std::string> labels_;
};

/// Space-separated generator labels, e.g. `0 1 0`.
inline Word parse_word(const CoxeterSystem &cs, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token)
    w.push_back(cs.generator_index(token));
  return w;
}

inline std::string format_word(const CoxeterSystem &cs, const Word &w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k)
      out += ' ';
    out += cs.labels()[static_cast<std::size_t>(w[k])];
  }
  return out;
}

/// Element of W stored by its action on the root lattice (and the inverse action).
class CoxeterElement {
public:
  explicit CoxeterElement(const CoxeterSystem &cs)
      : forward_(IntMatrix::identity(cs.size())), inverse_(IntMatrix::identity(cs.size())) {}

  /// this * s_i
  CoxeterElement times_generator(const CoxeterSystem &cs, int i) const {
    CoxeterElement out = *this;
    out.right_multiply(cs, i);
    return out;
  }
  /// s_i * this
  CoxeterElement generator_times(const CoxeterSystem &cs, int i) const {
    CoxeterElement out = *this;
    std::swap(out.forward_, out.inverse_);
    out.right_multiply(cs, i);
    std::swap(out.forward_, out.inverse_);
    return out;
  }

  CoxeterElement inverse() const {
    CoxeterElement out = *this;
    std::swap(out.forward_, out.inverse_);
    return out;
  }

  /// l(w s_i) < l(w)  <=>  w(alpha_i) < 0
  bool has_right_descent(int i) const { return is_negative_column(forward_, static_cast<std::size_t>(i)); }
  /// l(s_i w) < l(w)  <=>  w^{-1}(alpha_i) < 0
  bool has_left_descent(int i) const { return is_negative_column(inverse_, static_cast<std::size_t>(i)); }

  bool is_identity() const { return forward_ == IntMatrix::identity(forward_.rows()); }
  const IntMatrix &action() const { return forward_; }

  friend bool operator==(const CoxeterElement &a, const CoxeterElement &b) { return a.forward_ == b.forward_; }
  friend bool operator<(const CoxeterElement &a, const CoxeterElement &b) { return a.forward_ < b.forward_; }

private:
  static bool is_negative_column(const IntMatrix &m, std::size_t col) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, col) != 0)
        return m(r, col) < 0;
    return false;
  }

  // forward <- forward * S_i ; inverse <- S_i * inverse
  void right_multiply(const CoxeterSystem &cs, int gi) {
    const auto i = static_cast<std::size_t>(gi);
    const IntMatrix &a = cs.realization();
    const std::size_t n = cs.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t aij = a(i, j);
      if (j == i || aij == 0)
        continue;
      for (std::size_t r = 0; r < n; ++r)
        forward_(r, j) -= aij * forward_(r, i);
    }
    for (std::size_t r = 0; r < n; ++r)
      forward_(r, i) = -forward_(r, i);
    // row i of S_i * M is row_i(M) - sum_j a_ij row_j(M)
    std::vector<std::int64_t> row(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t aij = a(i, j);
      if (aij == 0)
        continue;
      for (std::size_t c = 0; c < n; ++c)
        row[c] += aij * inverse_(j, c);
    }
    for (std::size_t c = 0; c < n; ++c)
      inverse_(i, c) -= row[c];
  }

  IntMatrix forward_;
  IntMatrix inverse_;
};

inline CoxeterElement element_of(const CoxeterSystem &cs, const Word &w) {
  cs.check_word(w);
  CoxeterElement x(cs);
  for (int g : w)
    x = x.times_generator(cs, g);
  return x;
}

/// Lexicographically first reduced word, by repeatedly stripping the smallest left descent.
inline Word normal_form(const CoxeterSystem &cs, CoxeterElement x) {
  Word w;
  for (;;) {
    int found = -1;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (x.has_left_descent(static_cast<int>(i))) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0)
      return w;
    w.push_back(found);
    x = x.generator_times(cs, found);
  }
}

inline Word reduce(const CoxeterSystem &cs, const Word &w) { return normal_form(cs, element_of(cs, w)); }

inline std::size_t length(const CoxeterSystem &cs, const CoxeterElement &x) { return normal_form(cs, x).size(); }

inline std::size_t word_length(const CoxeterSystem &cs, const Word &w) { return reduce(cs, w).size(); }

inline bool is_reduced(const CoxeterSystem &cs, const Word &w) { return word_length(cs, w) == w.size(); }

/// Enumeration cutoff for Weyl balls; SCHUBERT_KIT_MAX_BALL overrides the default of 8.
inline std::size_t max_ball_radius() {
  if (const char *env = std::getenv("SCHUBERT_KIT_MAX_BALL")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0)
      return static_cast<std::size_t>(v);
  }
  return 8;
}

struct BallEntry {
  CoxeterElement element;
  Word word; ///< normal form
};

/// All elements of length <= radius, ordered by length then lexicographic normal form.
inline std::vector<BallEntry> ball(const CoxeterSystem &cs, std::size_t radius) {
  if (radius > max_ball_radius())
    throw BoundsError("ball radius " + std::to_string(radius) + " exceeds the cutoff " +
                      std::to_string(max_ball_radius()) + " (set SCHUBERT_KIT_MAX_BALL to raise it)");
  std::vector<BallEntry> out;
  std::vector<CoxeterElement> level{CoxeterElement(cs)};
  for (std::size_t len = 0;; ++len) {
    std::vector<BallEntry> sorted;
    for (const auto &x : level)
      sorted.push_back({x, normal_form(cs, x)});
    std::sort(sorted.begin(), sorted.end(), [](const BallEntry &a, const BallEntry &b) { return a.word < b.word; });
    out.insert(out.end(), sorted.begin(), sorted.end());
    if (len == radius)
      break;
    std::set<CoxeterElement> next;
    for (const auto &x : level)
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (!x.has_right_descent(static_cast<int>(i)))
          next.insert(x.times_generator(cs, static_cast<int>(i)));
    level.assign(next.begin(), next.end());
  }
  return out;
}

/// Subword property: v <= w iff v is a product of a subword of a reduced word of w.
inline bool bruhat_leq(const CoxeterSystem &cs, const Word &v, const Word &w) {
  const CoxeterElement target = element_of(cs, v);
  const Word reduced_w = reduce(cs, w);
  std::set<CoxeterElement> products{CoxeterElement(cs)};
  for (int s : reduced_w) {
    std::vector<CoxeterElement> extended;
    for (const auto &x : products)
      extended.push_back(x.times_generator(cs, s));
    products.insert(extended.begin(), extended.end());
  }
  return products.count(target) > 0;
}

/// The Bruhat interval [e, w] as normal forms sorted by length then lexicographically.
inline std::vector<Word> bruhat_interval_below(const CoxeterSystem &cs, const Word &w) {
  const Word reduced_w = reduce(cs, w);
  std::set<CoxeterElement> products{CoxeterElement(cs)};
  for (int s : reduced_w) {
    std::vector<CoxeterElement> extended;
    for (const auto &x : products)
      extended.push_back(x.times_generator(cs, s));
    products.insert(extended.begin(), extended.end());
  }
  std::vector<Word> out;
  for (const auto &x : products)
    out.push_back(normal_form(cs, x));
  std::sort(out.begin(), out.end(), [](const Word &a, const Word &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// A subset J of the generators whose parabolic subgroup W_J is finite.
class ParahoricType {
public:
  ParahoricType(const CoxeterSystem &cs, std::vector<int> generators) : generators_(std::move(generators)) {
    std::sort(generators_.begin(), generators_.end());
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    cs.check_word(generators_);
    longest_ = compute_longest(cs);
  }

  const std::vector<int> &generators() const { return generators_; }
  bool contains(int g) const { return std::binary_search(generators_.begin(), generators_.end(), g); }
  /// Longest element of W_J (reduced word).
  const Word &longest() const { return longest_; }

private:
  // Greedy ascent inside W_J. An infinite Coxeter group has no longest
  // element, so the ascent is cut off at a bound exceeding l(w_0) for every
  // finite Coxeter group of this rank.
  Word compute_longest(const CoxeterSystem &cs) const {
    const std::size_t r = generators_.size();
    const std::size_t cap = r * r + 120;
    CoxeterElement x(cs);
    Word w;
    for (;;) {
      int ascent = -1;
      for (int g : generators_)
        if (!x.has_right_descent(g)) {
          ascent = g;
          break;
        }
      if (ascent < 0)
        return w;
      x = x.times_generator(cs, ascent);
      w.push_back(ascent);
      if (w.size() > cap)
        throw InvalidInput("parahoric type generates an infinite group");
    }
  }

  std::vector<int> generators_;
  Word longest_;
};

inline ParahoricType parse_parahoric(const CoxeterSystem &cs, std::string_view text) {
  return ParahoricType(cs, parse_word(cs, text));
}

/// Unique minimal-length element of w W_J.
inline Word min_coset_rep(const CoxeterSystem &cs, const Word &w, const ParahoricType &j) {
  CoxeterElement x = element_of(cs, w);
  for (;;) {
    int descent = -1;
    for (int g : j.generators())
      if (x.has_right_descent(g)) {
        descent = g;
        break;
      }
    if (descent < 0)
      return normal_form(cs, x);
    x = x.times_generator(cs, descent);
  }
}

inline bool is_min_coset_rep(const CoxeterSystem &cs, const Word &w, const ParahoricType &j) {
  const CoxeterElement x = element_of(cs, w);
  for (int g : j.generators())
    if (x.has_right_descent(g))
      return false;
  return true;
}

inline Word longest_in_parahoric(const CoxeterSystem &, const ParahoricType &j) { return j.longest(); }

/// The lift w^J * w_0(J), indexing the preimage of a partial-flag Schubert variety.
inline Word lift_element(const CoxeterSystem &cs, const Word &w, const ParahoricType &j) {
  Word v = min_coset_rep(cs, w, j);
  const Word &w0 = j.longest();
  v.insert(v.end(), w0.begin(), w0.end());
  return v;
}

/// Reduced-word set of w closed under braid moves; throws BoundsError past cap words.
inline std::vector<Word> all_reduced_expressions(const CoxeterSystem &cs, const Word &w, std::size_t cap = 10000) {
  const Word start = reduce(cs, w);
  std::set<Word> seen{start};
  std::deque<Word> queue{start};
  while (!queue.empty()) {
    const Word cur = queue.front();
    queue.pop_front();
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      const int s = cur[pos];
      if (pos + 1 >= cur.size())
        break;
      const int t = cur[pos + 1];
      if (s == t)
        continue;
      const int m = cs.order(s, t);
      if (m == kInfiniteOrder || pos + static_cast<std::size_t>(m) > cur.size())
        continue;
      bool alternating = true;
      for (int k = 0; k < m; ++k)
        if (cur[pos + static_cast<std::size_t>(k)] != (k % 2 == 0 ? s : t)) {
          alternating = false;
          break;
        }
      if (!alternating)
        continue;
      Word next = cur;
      for (int k = 0; k < m; ++k)
        next[pos + static_cast<std::size_t>(k)] = (k % 2 == 0 ? t : s);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw BoundsError("more than " + std::to_string(cap) + " reduced expressions");
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

} // namespace schubert_kit
