#pragma once

#include "schubert_kit/errors.hpp"

#include <string>
#include <vector>

namespace schubert_kit {

/// GF(q) for prime powers q <= 16, elements encoded 0..q-1 as base-p digit
/// strings of polynomials in the generator. The modulus is the first monic
/// irreducible polynomial of degree d in base-p order.
class GaloisField {
public:
  static constexpr int kMaxOrder = 16;

  explicit GaloisField(int q) : q_(q) {
    if (q < 2 || q > kMaxOrder)
      throw InvalidInput("field size q must be a prime power in [2, 16], got " + std::to_string(q));
    p_ = 0;
    for (int d = 2; d <= q; ++d)
      if (q % d == 0) {
        p_ = d;
        break;
      }
    int r = q;
    degree_ = 0;
    while (r % p_ == 0) {
      r /= p_;
      ++degree_;
    }
    if (r != 1)
      throw InvalidInput("field size q must be a prime power, got " + std::to_string(q));
    build_tables();
  }

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return degree_; }

  int add(int x, int y) const { return add_[x * q_ + y]; }
  int sub(int x, int y) const { return add(x, neg_[y]); }
  int neg(int x) const { return neg_[x]; }
  int mul(int x, int y) const { return mul_[x * q_ + y]; }
  int inv(int x) const {
    if (x == 0)
      throw InvalidInput("division by zero in GF(q)");
    return inv_[x];
  }

private:
  std::vector<int> digits(int x) const {
    std::vector<int> d(static_cast<std::size_t>(degree_));
    for (auto &v : d) {
      v = x % p_;
      x /= p_;
    }
    return d;
  }
  int encode(const std::vector<int> &d) const {
    int x = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it)
      x = x * p_ + *it;
    return x;
  }

  // product of digit vectors reduced modulo x^d - (low part of the modulus)
  int poly_mul(int x, int y, const std::vector<int> &modulus) const {
    const auto a = digits(x), b = digits(y);
    std::vector<int> c(static_cast<std::size_t>(2 * degree_), 0);
    for (int i = 0; i < degree_; ++i)
      for (int j = 0; j < degree_; ++j)
        c[static_cast<std::size_t>(i + j)] = (c[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p_;
    for (int k = 2 * degree_ - 1; k >= degree_; --k) {
      const int lead = c[static_cast<std::size_t>(k)];
      if (lead == 0)
        continue;
      c[static_cast<std::size_t>(k)] = 0;
      for (int i = 0; i < degree_; ++i) {
        auto &t = c[static_cast<std::size_t>(k - degree_ + i)];
        t = ((t - lead * modulus[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
      }
    }
    c.resize(static_cast<std::size_t>(degree_));
    return encode(c);
  }

  void build_tables() {
    add_.assign(static_cast<std::size_t>(q_ * q_), 0);
    neg_.assign(static_cast<std::size_t>(q_), 0);
    for (int x = 0; x < q_; ++x) {
      const auto dx = digits(x);
      std::vector<int> dn(dx.size());
      for (std::size_t i = 0; i < dx.size(); ++i)
        dn[i] = (p_ - dx[i]) % p_;
      neg_[static_cast<std::size_t>(x)] = encode(dn);
      for (int y = 0; y < q_; ++y) {
        const auto dy = digits(y);
        std::vector<int> ds(dx.size());
        for (std::size_t i = 0; i < dx.size(); ++i)
          ds[i] = (dx[i] + dy[i]) % p_;
        add_[static_cast<std::size_t>(x * q_ + y)] = encode(ds);
      }
    }
    for (int low = 0; low < q_; ++low) {
      const std::vector<int> modulus = digits(low);
      mul_.assign(static_cast<std::size_t>(q_ * q_), 0);
      inv_.assign(static_cast<std::size_t>(q_), 0);
      bool field = true;
      for (int x = 0; x < q_ && field; ++x)
        for (int y = 0; y < q_; ++y) {
          const int z = poly_mul(x, y, modulus);
          mul_[static_cast<std::size_t>(x * q_ + y)] = z;
          if (z == 1)
            inv_[static_cast<std::size_t>(x)] = y;
        }
      for (int x = 1; x < q_; ++x)
        if (inv_[static_cast<std::size_t>(x)] == 0)
          field = false;
      if (field)
        return;
    }
    throw InvalidInput("no irreducible modulus found");
  }

  int q_, p_, degree_;
  std::vector<int> add_, neg_, mul_, inv_;
};

} // namespace schubert_kit
