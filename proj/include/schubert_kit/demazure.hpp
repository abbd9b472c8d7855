#pragma once

#include "schubert_kit/bigint.hpp"
#include "schubert_kit/coxeter.hpp"
#include "schubert_kit/iwahori_weyl.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace schubert_kit {

/// A reduced word w = s_1 ... s_q.
struct ReducedExpression {
  Word word;
  CoxeterElement element;

  static ReducedExpression make(const CoxeterSystem &cs, const Word &w) {
    if (!is_reduced(cs, w))
      throw InvalidInput("word '" + format_word(cs, w) + "' is not reduced");
    return {w, element_of(cs, w)};
  }
  std::size_t length() const { return word.size(); }
};

/// Reduced expression together with the rank-one parahoric attached to each letter.
struct DemazureWord {
  ReducedExpression expression;
  std::vector<int> minimal_parahorics; ///< P_i is the parahoric of type {s_i}

  static DemazureWord make(const CoxeterSystem &cs, const Word &w) {
    DemazureWord dw{ReducedExpression::make(cs, w), w};
    return dw;
  }
  std::size_t length() const { return expression.length(); }
};

inline constexpr int kMaxFieldSize = 32;

/// q must be a prime power in [2, 32].
inline void check_field_size(const BigInt &q) {
  if (q < 2 || q > kMaxFieldSize)
    throw InvalidInput("q must be a prime power in [2, " + std::to_string(kMaxFieldSize) + "], got " + q.str());
  int r = static_cast<int>(q);
  int p = 2;
  while (r % p != 0)
    ++p;
  while (r % p == 0)
    r /= p;
  if (r != 1)
    throw InvalidInput("q must be a prime power, got " + q.str());
}

/// |D_w(F_q)| = (q+1)^l(w): an iterated P^1-fibration.
inline BigInt demazure_point_count(const DemazureWord &dw, const BigInt &q) {
  check_field_size(q);
  return ipow(q + 1, static_cast<unsigned>(dw.length()));
}

/// One Bruhat cell C_v below w with the F_q-point count of the Demazure fiber over any of its points.
struct FiberCell {
  Word cell; ///< normal form of v
  std::size_t length;
  BigInt fiber;
};

/// Fiber counts of D_w -> S_w over every cell, by the gallery recursion.
///
/// Expands (1 + T_{s_1}) ... (1 + T_{s_q}) in the Iwahori–Hecke algebra; the
/// coefficient of T_v counts galleries of the word's type ending at a fixed
/// chamber of C_v. At each letter a term T_u either stays or moves to T_us,
/// with weight 1 if us > u and weight q if us < u (T_u T_s = (q-1) T_u + q T_us).
inline std::vector<FiberCell> demazure_fiber_cells(const CoxeterSystem &cs, const DemazureWord &dw, const BigInt &q) {
  check_field_size(q);
  std::map<CoxeterElement, BigInt> state{{CoxeterElement(cs), BigInt(1)}};
  for (int s : dw.expression.word) {
    std::map<CoxeterElement, BigInt> next;
    for (const auto &[u, weight] : state) {
      const CoxeterElement us = u.times_generator(cs, s);
      const BigInt factor = u.has_right_descent(s) ? q : BigInt(1);
      next[u] += weight * factor;
      next[us] += weight * factor;
    }
    state = std::move(next);
  }
  std::vector<FiberCell> out;
  for (const auto &[v, weight] : state) {
    Word nf = normal_form(cs, v);
    const std::size_t len = nf.size();
    out.push_back({std::move(nf), len, weight});
  }
  std::sort(out.begin(), out.end(), [](const FiberCell &a, const FiberCell &b) {
    return a.length != b.length ? a.length < b.length : a.cell < b.cell;
  });
  return out;
}

inline BigInt demazure_fiber_profile(const CoxeterSystem &cs, const DemazureWord &dw, const Word &target_cell,
                                     const BigInt &q) {
  if (!bruhat_leq(cs, target_cell, dw.expression.word))
    throw InvalidInput("target cell is not below w in the Bruhat order");
  const Word nf = reduce(cs, target_cell);
  for (const auto &c : demazure_fiber_cells(cs, dw, q))
    if (c.cell == nf)
      return c.fiber;
  throw InvalidInput("target cell missing from the fiber profile");
}

/// |S_w^J(F_q)| = sum of q^l(v) over minimal coset representatives v <= w.
inline BigInt schubert_point_count(const CoxeterSystem &cs, const Word &w, const ParahoricType &j, const BigInt &q) {
  check_field_size(q);
  if (!is_min_coset_rep(cs, w, j))
    throw InvalidInput("w is not minimal in its coset w W_J");
  BigInt total = 0;
  for (const Word &v : bruhat_interval_below(cs, w))
    if (is_min_coset_rep(cs, v, j))
      total += ipow(q, static_cast<unsigned>(v.size()));
  return total;
}

/// Schubert count for an Iwahori–Weyl element x, minimal in x W_J.
///
/// Writes x = v gamma. Right multiplication by gamma carries cells of W_aff /
/// W_{gamma J gamma^-1} onto cells of the component of x, so the count is the
/// affine-Weyl count of v for the conjugated type.
inline BigInt schubert_point_count(const RootDatum &rd, const IwahoriWeylElement &x, const std::vector<int> &j,
                                   const BigInt &q) {
  const AffineSystem sys = affine_coxeter(rd);
  const OmegaDecomposition dec = omega_decompose(rd, x);
  const std::vector<int> perm = omega_conjugation(sys, dec.gamma);
  std::vector<int> twisted;
  for (int g : j)
    twisted.push_back(perm[static_cast<std::size_t>(g)]);
  return schubert_point_count(sys.coxeter, dec.word, ParahoricType(sys.coxeter, twisted), q);
}

/// Elements of the finite Weyl group as Iwahori–Weyl elements.
inline std::vector<IwahoriWeylElement> finite_weyl_elements(const RootDatum &rd, const AffineSystem &sys) {
  std::set<IwahoriWeylElement> seen{IwahoriWeylElement::identity(rd.rank())};
  std::vector<IwahoriWeylElement> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<IwahoriWeylElement> next;
    for (const auto &x : frontier)
      for (std::size_t g = 0; g < sys.generators.size(); ++g) {
        if (sys.is_affine_node[g])
          continue;
        IwahoriWeylElement y = x * sys.generators[g];
        if (seen.insert(y).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// The element of W_J t_lambda W_J (J = finite nodes) that is longest among minimal representatives of x W_J.
inline IwahoriWeylElement grassmannian_schubert_element(const RootDatum &rd, const IntVector &lambda) {
  const AffineSystem sys = affine_coxeter(rd);
  const auto w_fin = finite_weyl_elements(rd, sys);
  const IwahoriWeylElement t = IwahoriWeylElement::pure_translation(lambda);
  std::optional<IwahoriWeylElement> best;
  std::int64_t best_len = -1;
  for (const auto &u : w_fin) {
    const IwahoriWeylElement ut = u * t;
    IwahoriWeylElement shortest = ut;
    std::int64_t shortest_len = length(rd, ut);
    for (const auto &w : w_fin) {
      IwahoriWeylElement y = ut * w;
      const std::int64_t l = length(rd, y);
      if (l < shortest_len || (l == shortest_len && y < shortest)) {
        shortest_len = l;
        shortest = std::move(y);
      }
    }
    if (shortest_len > best_len || (shortest_len == best_len && shortest < *best)) {
      best_len = shortest_len;
      best = shortest;
    }
  }
  return *best;
}

/// |S_lambda(F_q)| in the affine Grassmannian.
inline BigInt grassmannian_schubert_count(const RootDatum &rd, const IntVector &lambda, const BigInt &q) {
  const AffineSystem sys = affine_coxeter(rd);
  std::vector<int> j;
  for (std::size_t g = 0; g < sys.generators.size(); ++g)
    if (!sys.is_affine_node[g])
      j.push_back(static_cast<int>(g));
  return schubert_point_count(rd, grassmannian_schubert_element(rd, lambda), j, q);
}

} // namespace schubert_kit
