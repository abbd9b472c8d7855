#pragma once

#include "schubert_kit/errors.hpp"
#include "schubert_kit/matrix.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace schubert_kit {

enum class SimpleType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline std::string type_name(SimpleType t, int rank) { return std::string(1, static_cast<char>(t)) + std::to_string(rank); }

inline void check_type_rank(SimpleType t, int r) {
  bool ok = false;
  switch (t) {
  case SimpleType::A: ok = r >= 1; break;
  case SimpleType::B:
  case SimpleType::C: ok = r >= 2; break;
  case SimpleType::D: ok = r >= 3; break;
  case SimpleType::E: ok = r >= 6 && r <= 8; break;
  case SimpleType::F: ok = r == 4; break;
  case SimpleType::G: ok = r == 2; break;
  }
  if (!ok)
    throw InvalidInput("invalid type/rank combination " + type_name(t, r));
}

/// Cartan matrix with entries <alpha_i^vee, alpha_j>, Bourbaki numbering (0-based here).
inline IntMatrix cartan_matrix(SimpleType t, int r) {
  check_type_rank(t, r);
  const auto n = static_cast<std::size_t>(r);
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    c(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) { c(i, j) = c(j, i) = -1; };
  switch (t) {
  case SimpleType::A:
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    break;
  case SimpleType::B:
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    c(n - 1, n - 2) = -2; // alpha_n short
    break;
  case SimpleType::C:
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    c(n - 2, n - 1) = -2; // alpha_n long
    break;
  case SimpleType::D:
    for (std::size_t i = 0; i + 2 < n; ++i)
      link(i, i + 1);
    link(n - 3, n - 1);
    break;
  case SimpleType::E:
    // 1-3-4-5-6-7-8 with 2 attached to 4
    link(0, 2);
    link(1, 3);
    for (std::size_t i = 2; i + 1 < n; ++i)
      link(i, i + 1);
    break;
  case SimpleType::F:
    link(0, 1);
    link(2, 3);
    c(1, 2) = -1; // alpha_1, alpha_2 long
    c(2, 1) = -2;
    break;
  case SimpleType::G:
    c(0, 1) = -3; // alpha_1 short
    c(1, 0) = -1;
    break;
  }
  return c;
}

/// Connected components of the Dynkin diagram of a Cartan matrix, each sorted.
inline std::vector<std::vector<std::size_t>> dynkin_components(const IntMatrix &cartan) {
  const std::size_t n = cartan.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      out.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && cartan(i, j) != 0) {
          comp[j] = id;
          stack.push_back(j);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Half squared lengths l_i with l_i * a_ij == l_j * a_ji, short roots of each component scaled to 1.
inline std::vector<std::int64_t> root_length_symmetrizer(const IntMatrix &cartan) {
  const std::size_t n = cartan.rows();
  std::vector<std::int64_t> len(n, 0);
  for (const auto &component : dynkin_components(cartan)) {
    len[component.front()] = 6;
    std::vector<std::size_t> stack{component.front()};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j : component)
        if (len[j] == 0 && cartan(i, j) != 0) {
          if ((len[i] * cartan(i, j)) % cartan(j, i) != 0)
            throw InvalidInput("Cartan matrix is not symmetrizable");
          len[j] = len[i] * cartan(i, j) / cartan(j, i);
          stack.push_back(j);
        }
    }
    std::int64_t g = 0;
    for (std::size_t i : component)
      g = std::gcd(g, len[i]);
    for (std::size_t i : component)
      len[i] /= g;
  }
  return len;
}

/// A positive root in simple-root coordinates together with its coroot in simple-coroot coordinates.
struct PositiveRoot {
  std::vector<std::int64_t> root;
  std::vector<std::int64_t> coroot;
  std::int64_t height() const { return std::accumulate(root.begin(), root.end(), std::int64_t{0}); }
};

/// All positive roots of a finite-type Cartan matrix, ordered by height then lexicographically.
inline std::vector<PositiveRoot> positive_roots(const IntMatrix &cartan) {
  const std::size_t n = cartan.rows();
  const std::vector<std::int64_t> len = root_length_symmetrizer(cartan);
  std::vector<std::vector<std::int64_t>> roots;
  std::map<std::vector<std::int64_t>, bool> known;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    roots.push_back(e);
    known[e] = true;
  }
  // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i with p - q = <alpha_i^vee, beta>
  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    if (roots.size() > 10000)
      throw InvalidInput("Cartan matrix is not of finite type");
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<std::int64_t> beta = roots[idx];
      std::int64_t pairing = 0;
      for (std::size_t j = 0; j < n; ++j)
        pairing += cartan(i, j) * beta[j];
      std::int64_t p = 0;
      std::vector<std::int64_t> down = beta;
      for (;;) {
        down[i] -= 1;
        if (!known.count(down))
          break;
        ++p;
      }
      if (p - pairing > 0) {
        std::vector<std::int64_t> up = beta;
        up[i] += 1;
        if (!known.count(up)) {
          known[up] = true;
          roots.push_back(up);
        }
      }
    }
  }
  std::vector<PositiveRoot> out;
  for (const auto &beta : roots) {
    // (beta, beta) = sum_ij n_i n_j l_i a_ij ; beta^vee = sum_i n_i l_i (2 / (beta,beta)) alpha_i^vee
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        norm += beta[i] * beta[j] * len[i] * cartan(i, j);
    std::vector<std::int64_t> co(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t num = 2 * beta[i] * len[i];
      if (num % norm != 0)
        throw InvalidInput("non-integral coroot; Cartan matrix is not crystallographic");
      co[i] = num / norm;
    }
    out.push_back({beta, co});
  }
  std::stable_sort(out.begin(), out.end(), [](const PositiveRoot &a, const PositiveRoot &b) {
    if (a.height() != b.height())
      return a.height() < b.height();
    return a.root > b.root;
  });
  return out;
}

/// Highest root of an irreducible component (simple-root coordinates restricted to it).
inline PositiveRoot highest_root(const IntMatrix &cartan, const std::vector<std::size_t> &component) {
  const std::vector<PositiveRoot> roots = positive_roots(cartan);
  const PositiveRoot *best = nullptr;
  for (const auto &r : roots) {
    bool inside = true;
    for (std::size_t i = 0; i < r.root.size(); ++i)
      if (r.root[i] != 0 && std::find(component.begin(), component.end(), i) == component.end())
        inside = false;
    if (inside && (!best || r.height() > best->height()))
      best = &r;
  }
  if (!best)
    throw InvalidInput("empty Dynkin component");
  return *best;
}

} // namespace schubert_kit
