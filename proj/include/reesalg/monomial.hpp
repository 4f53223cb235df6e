#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "reesalg/errors.hpp"

namespace reesalg {

// Hard cap on variables, auxiliary ones included.
inline constexpr std::size_t kMaxVars = 32;

struct BiDegree {
  int x = 0;
  int y = 0;

  friend BiDegree operator+(BiDegree a, BiDegree b) { return {a.x + b.x, a.y + b.y}; }
  friend BiDegree operator-(BiDegree a, BiDegree b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(BiDegree, BiDegree) = default;
  friend auto operator<=>(BiDegree, BiDegree) = default;
  bool componentwise_le(BiDegree o) const { return x <= o.x && y <= o.y; }
};

class Monomial {
 public:
  using Exponent = std::uint8_t;

  Monomial() = default;

  static Monomial variable(std::size_t v, unsigned power = 1) {
    Monomial m;
    m.set(v, power);
    return m;
  }

  unsigned operator[](std::size_t v) const { return exps_[v]; }

  void set(std::size_t v, unsigned e) {
    if (v >= kMaxVars) fail(ErrorCode::TooManyVariables, "variable index out of range");
    if (e > 255) fail(ErrorCode::SizeOutOfRange, "exponent exceeds 255");
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[v] + e);
    exps_[v] = static_cast<Exponent>(e);
  }

  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& o) const {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] && o.exps_[i]) return false;
    return true;
  }

  std::uint32_t support_mask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i]) m |= (1u << i);
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned(a.exps_[i]) + b.exps_[i];
      if (e > 255) fail(ErrorCode::SizeOutOfRange, "exponent exceeds 255");
      r.exps_[i] = static_cast<Exponent>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
    return r;
  }

  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = static_cast<Exponent>(a.exps_[i] - b.exps_[i]);
    r.degree_ = static_cast<std::uint16_t>(a.degree_ - b.degree_);
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      d += r.exps_[i];
    }
    r.degree_ = static_cast<std::uint16_t>(d);
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
      d += r.exps_[i];
    }
    r.degree_ = static_cast<std::uint16_t>(d);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  const std::array<Exponent, kMaxVars>& exponents() const { return exps_; }

 private:
  std::array<Exponent, kMaxVars> exps_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// A monomial order: weight rows compared lexicographically, then a
// reverse-lexicographic tie-break scanning `revlex_` from its front
// (the smallest variable first).
class MonomialOrder {
 public:
  MonomialOrder() = default;

  static MonomialOrder degrevlex(std::size_t nvars) {
    std::vector<std::size_t> seq(nvars);
    std::iota(seq.begin(), seq.end(), 0);
    return degrevlex_ranked(seq);
  }

  // `ranking` lists the variables from largest to smallest.
  static MonomialOrder degrevlex_ranked(const std::vector<std::size_t>& ranking) {
    MonomialOrder o;
    o.nvars_ = ranking.size();
    std::array<int, kMaxVars> ones{};
    for (auto v : ranking) ones[v] = 1;
    o.rows_.push_back(ones);
    o.revlex_.assign(ranking.rbegin(), ranking.rend());
    o.kind_ = Kind::Degrevlex;
    return o;
  }

  // Degrevlex with variable `last` demoted to the smallest position.
  static MonomialOrder degrevlex_last(std::size_t nvars, std::size_t last) {
    std::vector<std::size_t> seq;
    for (std::size_t v = 0; v < nvars; ++v)
      if (v != last) seq.push_back(v);
    seq.push_back(last);
    return degrevlex_ranked(seq);
  }

  // Weighted degree first, then reverse-lex with variable 0 largest.
  static MonomialOrder weighted_degrevlex(const std::vector<int>& weights) {
    MonomialOrder o = degrevlex(weights.size());
    for (std::size_t v = 0; v < weights.size(); ++v) o.rows_[0][v] = weights[v];
    return o;
  }

  // Any monomial involving a `front` variable beats every monomial free of
  // them; ties are broken by degree in the front block, then degrevlex.
  static MonomialOrder elimination(std::size_t nvars, const std::vector<std::size_t>& front) {
    MonomialOrder o = degrevlex(nvars);
    std::array<int, kMaxVars> w{};
    for (auto v : front) {
      if (v >= nvars) fail(ErrorCode::UnknownVariable, "elimination block variable out of range");
      w[v] = 1;
    }
    o.rows_.insert(o.rows_.begin(), w);
    o.front_ = front;
    std::sort(o.front_.begin(), o.front_.end());
    o.kind_ = Kind::Elimination;
    return o;
  }

  std::size_t num_vars() const { return nvars_; }
  bool is_elimination() const { return kind_ == Kind::Elimination; }
  const std::vector<std::size_t>& front_block() const { return front_; }

  // >0 if a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& row : rows_) {
      long wa = 0, wb = 0;
      for (std::size_t v = 0; v < nvars_; ++v) {
        wa += long(row[v]) * a[v];
        wb += long(row[v]) * b[v];
      }
      if (wa != wb) return wa > wb ? 1 : -1;
    }
    for (auto v : revlex_) {
      if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.nvars_ == b.nvars_ && a.rows_ == b.rows_ && a.revlex_ == b.revlex_;
  }

  std::string key() const {
    std::string k = std::to_string(nvars_) + ":";
    for (const auto& row : rows_) {
      for (std::size_t v = 0; v < nvars_; ++v) k += std::to_string(row[v]) + ",";
      k += "|";
    }
    for (auto v : revlex_) k += std::to_string(v) + ",";
    return k;
  }

 private:
  enum class Kind { Degrevlex, Elimination };
  Kind kind_ = Kind::Degrevlex;
  std::size_t nvars_ = 0;
  std::vector<std::array<int, kMaxVars>> rows_;
  std::vector<std::size_t> revlex_;
  std::vector<std::size_t> front_;
};

}  // namespace reesalg
