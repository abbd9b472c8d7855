#pragma once

#include "schubert_kit/coxeter.hpp"
#include "schubert_kit/root_datum.hpp"

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace schubert_kit {

/// Element t_lambda * w of X_*(T) x| W_fin, with w stored as its matrix on X_*(T).
struct IwahoriWeylElement {
  IntVector translation;
  IntMatrix finite_part;

  static IwahoriWeylElement identity(int rank) {
    return {IntVector(static_cast<std::size_t>(rank), 0), IntMatrix::identity(static_cast<std::size_t>(rank))};
  }
  static IwahoriWeylElement pure_translation(const IntVector &lambda) {
    return {lambda, IntMatrix::identity(lambda.size())};
  }

  /// (l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)
  friend IwahoriWeylElement operator*(const IwahoriWeylElement &a, const IwahoriWeylElement &b) {
    IntVector t = a.finite_part * b.translation;
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] += a.translation[i];
    return {std::move(t), a.finite_part * b.finite_part};
  }

  IwahoriWeylElement inverse() const {
    const std::size_t n = translation.size();
    IntMatrix inv(n, n);
    const BigMatrix big = matrix_cast<BigInt>(finite_part);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<BigInt> e(n, 0);
      e[k] = 1;
      const auto col = solve_integer(big, e);
      if (!col)
        throw InvalidInput("finite part is not invertible over Z");
      for (std::size_t i = 0; i < n; ++i)
        inv(i, k) = to_int64((*col)[i]);
    }
    IntVector t = inv * translation;
    for (auto &x : t)
      x = -x;
    return {std::move(t), std::move(inv)};
  }

  bool is_identity() const {
    for (auto x : translation)
      if (x != 0)
        return false;
    return finite_part == IntMatrix::identity(translation.size());
  }

  friend bool operator==(const IwahoriWeylElement &, const IwahoriWeylElement &) = default;
  friend bool operator<(const IwahoriWeylElement &a, const IwahoriWeylElement &b) {
    if (a.translation != b.translation)
      return a.translation < b.translation;
    return a.finite_part < b.finite_part;
  }
};

/// Reflection s_beta on X_*: x -> x - <x, beta> beta^vee.
inline IntMatrix reflection_matrix(const IntVector &root, const IntVector &coroot) {
  const std::size_t n = root.size();
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) -= coroot[i] * root[j];
  return m;
}

/// Coxeter system of the finite Weyl group, generators labelled 1..m.
inline CoxeterSystem finite_weyl(const RootDatum &rd) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rd.semisimple_rank(); ++i)
    labels.push_back(std::to_string(i + 1));
  return CoxeterSystem(rd.cartan(), std::move(labels));
}

/// Affine Coxeter system of a root datum plus the Iwahori–Weyl element of each generator.
///
/// Internal generator order: for each irreducible component, its affine node
/// followed by its finite nodes. Labels: finite node i is `i` (1-based over
/// all simple roots); the affine node is `0` for the first component and
/// `0_c` for component c >= 2.
struct AffineSystem {
  CoxeterSystem coxeter;
  std::vector<IwahoriWeylElement> generators;
  std::vector<bool> is_affine_node;
  std::vector<int> component_of;
};

inline AffineSystem affine_coxeter(const RootDatum &rd) {
  if (rd.semisimple_rank() == 0)
    throw InvalidInput("a torus has no affine Weyl group");
  const IntMatrix &c = rd.cartan();
  std::vector<int> order;            // internal -> simple index, or -1 - component for affine nodes
  std::vector<PositiveRoot> highest; // per component
  for (std::size_t comp = 0; comp < rd.components().size(); ++comp) {
    order.push_back(-1 - static_cast<int>(comp));
    for (std::size_t i : rd.components()[comp])
      order.push_back(static_cast<int>(i));
    highest.push_back(highest_root(c, rd.components()[comp]));
  }
  const std::size_t n = order.size();
  const std::size_t m = rd.semisimple_rank();

  // pairings with the highest root theta and its coroot, in simple coordinates
  auto theta_pair_root = [&](std::size_t comp, std::size_t j) { // <theta^vee, alpha_j>
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m; ++i)
      s += highest[comp].coroot[i] * c(i, j);
    return s;
  };
  auto coroot_pair_theta = [&](std::size_t i, std::size_t comp) { // <alpha_i^vee, theta>
    std::int64_t s = 0;
    for (std::size_t j = 0; j < m; ++j)
      s += c(i, j) * highest[comp].root[j];
    return s;
  };

  AffineSystem sys;
  IntMatrix gcm(n, n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const int oa = order[a], ob = order[b];
      if (a == b)
        gcm(a, b) = 2;
      else if (oa >= 0 && ob >= 0)
        gcm(a, b) = c(static_cast<std::size_t>(oa), static_cast<std::size_t>(ob));
      else if (oa < 0 && ob < 0)
        gcm(a, b) = 0;
      else if (oa < 0) {
        const auto comp = static_cast<std::size_t>(-1 - oa);
        gcm(a, b) = -theta_pair_root(comp, static_cast<std::size_t>(ob));
      } else {
        const auto comp = static_cast<std::size_t>(-1 - ob);
        gcm(a, b) = -coroot_pair_theta(static_cast<std::size_t>(oa), comp);
      }
    }
    if (order[a] >= 0) {
      const auto i = static_cast<std::size_t>(order[a]);
      labels.push_back(std::to_string(i + 1));
      sys.generators.push_back(
          {IntVector(static_cast<std::size_t>(rd.rank()), 0), reflection_matrix(rd.simple_roots()[i], rd.simple_coroots()[i])});
      sys.is_affine_node.push_back(false);
      std::size_t comp = 0;
      while (std::find(rd.components()[comp].begin(), rd.components()[comp].end(), i) == rd.components()[comp].end())
        ++comp;
      sys.component_of.push_back(static_cast<int>(comp));
    } else {
      const auto comp = static_cast<std::size_t>(-1 - order[a]);
      labels.push_back(comp == 0 ? "0" : "0_" + std::to_string(comp + 1));
      IntVector theta(static_cast<std::size_t>(rd.rank()), 0), theta_co(static_cast<std::size_t>(rd.rank()), 0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < theta.size(); ++k) {
          theta[k] += highest[comp].root[i] * rd.simple_roots()[i][k];
          theta_co[k] += highest[comp].coroot[i] * rd.simple_coroots()[i][k];
        }
      // s_0 = t_{theta^vee} s_theta
      sys.generators.push_back({theta_co, reflection_matrix(theta, theta_co)});
      sys.is_affine_node.push_back(true);
      sys.component_of.push_back(static_cast<int>(comp));
    }
  }
  sys.coxeter = CoxeterSystem(gcm, std::move(labels));
  return sys;
}

/// 2 rho^vee, the sum of positive coroots; pairs to 2 with every simple root.
inline IntVector two_rho_check(const RootDatum &rd) {
  IntVector v(static_cast<std::size_t>(rd.rank()), 0);
  for (const auto &c : rd.positive_coroots())
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] += c[k];
  return v;
}

/// Iwahori–Matsumoto length:
/// l(t_lambda w) = sum_{a>0, w^{-1}a>0} |<lambda,a>| + sum_{a>0, w^{-1}a<0} |<lambda,a> - 1|.
inline std::int64_t length(const RootDatum &rd, const IwahoriWeylElement &x) {
  // sign of w^{-1} a equals the sign of <w (2 rho^vee), a>
  const IntVector probe = x.finite_part * two_rho_check(rd);
  std::int64_t total = 0;
  for (const auto &alpha : rd.positive_roots()) {
    const std::int64_t pairing = RootDatum::pair(x.translation, alpha);
    if (RootDatum::pair(probe, alpha) > 0)
      total += std::llabs(pairing);
    else
      total += std::llabs(pairing - 1);
  }
  return total;
}

inline IwahoriWeylElement iw_element_of(const AffineSystem &sys, int rank, const Word &w) {
  sys.coxeter.check_word(w);
  IwahoriWeylElement x = IwahoriWeylElement::identity(rank);
  for (int g : w)
    x = x * sys.generators[static_cast<std::size_t>(g)];
  return x;
}

/// Length-zero element of the Iwahori–Weyl group.
struct OmegaElement {
  IwahoriWeylElement element;
};

struct OmegaDecomposition {
  IwahoriWeylElement v; ///< in W_aff
  Word word;            ///< reduced word of v (lexicographically first)
  OmegaElement gamma;
};

/// x = v * gamma with v in W_aff and l(gamma) = 0, by stripping left descents.
inline OmegaDecomposition omega_decompose(const RootDatum &rd, const IwahoriWeylElement &x) {
  if (rd.semisimple_rank() == 0)
    return {IwahoriWeylElement::identity(rd.rank()), {}, {x}};
  const AffineSystem sys = affine_coxeter(rd);
  Word word;
  IwahoriWeylElement rest = x;
  std::int64_t len = length(rd, rest);
  while (len > 0) {
    bool stepped = false;
    for (std::size_t g = 0; g < sys.generators.size(); ++g) {
      IwahoriWeylElement candidate = sys.generators[g] * rest;
      const std::int64_t l2 = length(rd, candidate);
      if (l2 < len) {
        word.push_back(static_cast<int>(g));
        rest = std::move(candidate);
        len = l2;
        stepped = true;
        break;
      }
    }
    if (!stepped)
      throw InvalidInput("element has positive length but no left descent");
  }
  return {iw_element_of(sys, rd.rank(), word), word, {rest}};
}

/// The finite group Omega of length-zero elements with the map gamma -> lambda mod Q^vee.
struct OmegaGroup {
  std::vector<OmegaElement> elements;
  std::vector<std::vector<BigInt>> pi1_classes;       ///< class of each element's translation
  std::vector<std::vector<std::size_t>> product_table; ///< index of elements[i] * elements[j]
};

inline OmegaGroup omega_group(const RootDatum &rd) {
  if (!is_semisimple(rd))
    throw InvalidInput("Omega is infinite for a non-semisimple root datum");
  OmegaGroup g;
  for (const auto &lambda : pi1_representatives(rd)) {
    const auto dec = omega_decompose(rd, IwahoriWeylElement::pure_translation(lambda));
    g.elements.push_back(dec.gamma);
    g.pi1_classes.push_back(pi1_class(rd, dec.gamma.element.translation));
  }
  const std::size_t n = g.elements.size();
  g.product_table.assign(n, std::vector<std::size_t>(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const IwahoriWeylElement prod = g.elements[i].element * g.elements[j].element;
      for (std::size_t k = 0; k < n; ++k)
        if (g.elements[k].element == prod) {
          g.product_table[i][j] = k;
          break;
        }
      if (g.product_table[i][j] == n)
        throw InvalidInput("Omega table is not closed under multiplication");
    }
  return g;
}

/// The permutation of affine generators induced by conjugation g -> gamma g gamma^{-1}.
inline std::vector<int> omega_conjugation(const AffineSystem &sys, const OmegaElement &gamma) {
  const IwahoriWeylElement inv = gamma.element.inverse();
  std::vector<int> perm;
  for (const auto &s : sys.generators) {
    const IwahoriWeylElement conj = gamma.element * s * inv;
    int found = -1;
    for (std::size_t k = 0; k < sys.generators.size(); ++k)
      if (sys.generators[k] == conj)
        found = static_cast<int>(k);
    if (found < 0)
      throw InvalidInput("element does not normalize the simple affine reflections");
    perm.push_back(found);
  }
  return perm;
}

} // namespace schubert_kit
