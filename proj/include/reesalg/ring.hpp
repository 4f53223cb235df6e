#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reesalg/errors.hpp"
#include "reesalg/monomial.hpp"

namespace reesalg {

using Rational = mpq_class;
using Integer = mpz_class;

// Bigraded polynomial ring k[x_1..x_d, y_1..y_n]. Variables are indexed with
// the x-block first; the default grading sends x to (1,0) and y to (0,1).
class RingDescriptor {
 public:
  RingDescriptor(std::vector<std::string> xs, std::vector<std::string> ys,
                 std::optional<std::vector<BiDegree>> grading = std::nullopt)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() + ys_.size() > kMaxVars - 2)
      fail(ErrorCode::TooManyVariables, "at most " + std::to_string(kMaxVars - 2) + " variables");
    for (const auto& n : xs_) names_.push_back(n);
    for (const auto& n : ys_) names_.push_back(n);
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) fail(ErrorCode::ValidationError, "duplicate variable " + names_[i]);
    if (grading) {
      if (grading->size() != names_.size())
        fail(ErrorCode::ValidationError, "grading must list one bidegree per variable");
      grading_ = *grading;
    } else {
      for (std::size_t i = 0; i < xs_.size(); ++i) grading_.push_back({1, 0});
      for (std::size_t i = 0; i < ys_.size(); ++i) grading_.push_back({0, 1});
    }
    for (auto g : grading_)
      if (g.x < 0 || g.y < 0) fail(ErrorCode::ValidationError, "bidegrees must be nonnegative");
    order_ = MonomialOrder::degrevlex(names_.size());
  }

  std::size_t num_x() const { return xs_.size(); }
  std::size_t num_y() const { return ys_.size(); }
  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& x_names() const { return xs_; }
  const std::vector<std::string>& y_names() const { return ys_; }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  bool is_x(std::size_t v) const { return v < xs_.size(); }
  std::size_t x(std::size_t i) const { return i; }
  std::size_t y(std::size_t i) const { return xs_.size() + i; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  BiDegree grading(std::size_t v) const { return grading_.at(v); }
  const std::vector<BiDegree>& gradings() const { return grading_; }

  BiDegree bidegree(const Monomial& m) const {
    BiDegree d;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      d.x += grading_[v].x * int(m[v]);
      d.y += grading_[v].y * int(m[v]);
    }
    return d;
  }

  const MonomialOrder& order() const { return order_; }

  std::vector<std::size_t> x_indices() const {
    std::vector<std::size_t> r(xs_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
    return r;
  }
  std::vector<std::size_t> y_indices() const {
    std::vector<std::size_t> r(ys_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = xs_.size() + i;
    return r;
  }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.xs_ == b.xs_ && a.ys_ == b.ys_ && a.grading_ == b.grading_;
  }

 private:
  std::vector<std::string> xs_, ys_, names_;
  std::vector<BiDegree> grading_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const RingDescriptor>;

inline RingPtr make_ring(std::vector<std::string> xs, std::vector<std::string> ys,
                         std::optional<std::vector<BiDegree>> grading = std::nullopt) {
  return std::make_shared<const RingDescriptor>(std::move(xs), std::move(ys), std::move(grading));
}

// Names x1..x<dx>, y1..y<dy>.
inline RingPtr standard_ring(std::size_t dx, std::size_t dy) {
  std::vector<std::string> xs, ys;
  for (std::size_t i = 1; i <= dx; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= dy; ++i) ys.push_back("y" + std::to_string(i));
  return make_ring(std::move(xs), std::move(ys));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) fail(ErrorCode::RingMismatch, "operands live in different rings");
}

class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t v, unsigned power = 1) {
    if (v >= ring->num_vars()) fail(ErrorCode::UnknownVariable, "variable index out of range");
    Polynomial p(std::move(ring));
    p.terms_.emplace_back(Monomial::variable(v, power), Rational(1));
    return p;
  }

  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
  }

  // Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    const auto& ord = p.ring_->order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.first, b.first); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) fail(ErrorCode::ZeroPolynomial, "zero polynomial has no leading monomial");
    return terms_.front().first;
  }
  const Rational& leading_coefficient() const {
    if (terms_.empty()) fail(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
    return terms_.front().second;
  }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.first == m) return t.second;
    return 0;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.first.degree() != terms_.front().first.degree()) return false;
    return true;
  }

  bool is_bihomogeneous() const {
    if (terms_.empty()) return true;
    auto d = ring_->bidegree(terms_.front().first);
    for (const auto& t : terms_)
      if (ring_->bidegree(t.first) != d) return false;
    return true;
  }

  Polynomial monic() const {
    if (terms_.empty()) return *this;
    return *this * Rational(1 / leading_coefficient());
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Rational& c) {
    if (c == 0) return Polynomial(a.ring_);
    Polynomial r = a;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.times_term(a.terms_[0].first, a.terms_[0].second);
    if (b.size() == 1) return a.times_term(b.terms_[0].first, b.terms_[0].second);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.first * t.first] += s.second * t.second;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
      if (kv.second != 0) terms.emplace_back(kv.first, std::move(kv.second));
    return from_terms(a.ring_, std::move(terms));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial times_term(const Monomial& m, const Rational& c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  std::string to_string() const;

  // Same polynomial viewed in another ring with the same variable layout.
  Polynomial rebased(RingPtr ring) const {
    Polynomial r(std::move(ring));
    r.terms_ = terms_;
    return r;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    if (a.is_zero()) return subtract ? -b : b;
    if (b.is_zero()) return a;
    require_same_ring(a.ring_, b.ring_);
    const auto& ord = a.ring_->order();
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.compare(a.terms_[i].first, b.terms_[j].first);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? Rational(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        Rational s = subtract ? Rational(a.terms_[i].second - b.terms_[j].second)
                              : Rational(a.terms_[i].second + b.terms_[j].second);
        if (s != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(s));
        ++i, ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

inline Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  require_same_ring(a.ring(), b.ring());
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return a;
}

inline BiDegree bidegree_of(const Polynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "bidegree of the zero polynomial");
  if (!f.is_bihomogeneous()) fail(ErrorCode::NotBihomogeneous, f.to_string());
  return f.ring()->bidegree(f.leading_monomial());
}

inline Polynomial partial_derivative(const Polynomial& f, std::size_t v) {
  if (v >= f.ring()->num_vars()) fail(ErrorCode::UnknownVariable, "variable index out of range");
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    if (m[v] == 0) continue;
    Monomial q = m;
    q.set(v, m[v] - 1);
    terms.emplace_back(q, c * m[v]);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

inline Polynomial partial_derivative(const Polynomial& f, std::string_view name) {
  auto v = f.ring()->index_of(name);
  if (!v) fail(ErrorCode::UnknownVariable, std::string(name));
  return partial_derivative(f, *v);
}

// c_i = (1/D) df/dx_i, so that sum_i x_i c_i = f for f of x-degree D.
inline std::vector<Polynomial> euler_column(const Polynomial& f) {
  BiDegree d = bidegree_of(f);
  if (d.y != 0) fail(ErrorCode::MixedSupport, "expected a form in the x-variables: " + f.to_string());
  if (d.x == 0) fail(ErrorCode::ZeroXDegree, f.to_string());
  std::vector<Polynomial> col;
  for (std::size_t i = 0; i < f.ring()->num_x(); ++i)
    col.push_back(partial_derivative(f, i) * Rational(1, d.x));
  return col;
}

enum class SwapDirection {
  XToY,  // x_i -> y_i
  YToX,  // y_i -> x_i
};

inline Polynomial swap_blocks(const Polynomial& f, SwapDirection dir) {
  const auto& R = *f.ring();
  if (R.num_x() != R.num_y()) fail(ErrorCode::BlockMismatch, "x and y blocks differ in size");
  std::size_t d = R.num_x();
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    Monomial out;
    for (std::size_t i = 0; i < d; ++i) {
      unsigned ex = m[i], ey = m[d + i];
      if (dir == SwapDirection::XToY) {
        if (ey) fail(ErrorCode::MixedSupport, "expected x-only support: " + f.to_string());
        out.set(d + i, ex);
      } else {
        if (ex) fail(ErrorCode::MixedSupport, "expected y-only support: " + f.to_string());
        out.set(i, ey);
      }
    }
    terms.emplace_back(out, c);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

// Substitutes rational values for the listed variables.
inline Polynomial evaluate(const Polynomial& f, const std::vector<std::pair<std::size_t, Rational>>& values) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    Rational coef = c;
    for (const auto& [v, val] : values) {
      unsigned e = m[v];
      if (!e) continue;
      Rational p = 1;
      for (unsigned k = 0; k < e; ++k) p *= val;
      coef *= p;
      rest.set(v, 0);
    }
    if (coef != 0) terms.emplace_back(rest, coef);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

// Multivariate division that must leave no remainder.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by zero");
  require_same_ring(a.ring(), b.ring());
  if (b.size() == 1) {
    const auto& [bm, bc] = b.terms()[0];
    std::vector<Polynomial::Term> terms;
    terms.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
      if (!bm.divides(m)) fail(ErrorCode::DivisionNotExact, a.to_string() + " / " + b.to_string());
      terms.emplace_back(m / bm, c / bc);
    }
    return Polynomial::from_terms(a.ring(), std::move(terms));
  }
  const auto& ord = a.ring()->order();
  auto greater = [&ord](const Monomial& x, const Monomial& y) { return ord.greater(x, y); };
  std::map<Monomial, Rational, decltype(greater)> r(greater);
  for (const auto& [m, c] : a.terms()) r.emplace(m, c);
  std::vector<Polynomial::Term> quotient;
  const auto& lm = b.leading_monomial();
  const auto& lc = b.leading_coefficient();
  while (!r.empty()) {
    auto top = r.begin();
    if (!lm.divides(top->first)) fail(ErrorCode::DivisionNotExact, a.to_string() + " / " + b.to_string());
    Monomial q = top->first / lm;
    Rational qc = top->second / lc;
    r.erase(top);
    for (std::size_t i = 1; i < b.size(); ++i) {
      const auto& [bm, bc] = b.terms()[i];
      auto [it, fresh] = r.try_emplace(bm * q, 0);
      it->second -= qc * bc;
      if (it->second == 0) r.erase(it);
    }
    quotient.emplace_back(q, std::move(qc));
  }
  return Polynomial::from_terms(a.ring(), std::move(quotient));
}

// ---------------------------------------------------------------------------
// Text syntax: 2*x1^2-1/2*x2*x3

inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string monomial_to_string(const RingDescriptor& R, const Monomial& m) {
  std::string s;
  for (std::size_t v = 0; v < R.num_vars(); ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += '*';
    s += R.name(v);
    if (m[v] > 1) s += "^" + std::to_string(m[v]);
  }
  return s.empty() ? "1" : s;
}

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (neg) s += '-';
    else if (!first) s += '+';
    first = false;
    if (m.is_one()) {
      s += rational_to_string(a);
    } else {
      if (a != 1) s += rational_to_string(a) + "*";
      s += monomial_to_string(*ring_, m);
    }
  }
  return s;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text, std::size_t line, std::size_t col0)
      : ring_(ring), s_(text), line_(line), col0_(col0) {}

  Polynomial run() {
    if (s_.empty()) error("empty polynomial");
    std::vector<Polynomial::Term> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      terms.emplace_back(m, c * sign);
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  [[noreturn]] void error(const std::string& what) const { throw ParseError(line_, col0_ + pos_ + 1, what); }

  Polynomial::Term term() {
    Monomial m;
    Rational c = 1;
    bool any = false;
    for (;;) {
      if (pos_ >= s_.size()) error("unexpected end of polynomial");
      char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        Integer num = number();
        Integer den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
          ++pos_;
          if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected denominator");
          den = number();
          if (den == 0) error("zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        c *= q;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        auto v = ring_->index_of(name);
        if (!v) {
          pos_ = start;
          error("unknown variable '" + name + "'");
        }
        unsigned e = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected exponent");
          Integer ee = number();
          if (ee > 255) error("exponent too large");
          e = static_cast<unsigned>(ee.get_ui());
        }
        m = m * Monomial::variable(*v, e);
      } else {
        error(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) error("empty term");
    return {m, c};
  }

  Integer number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
};

}  // namespace detail

inline Polynomial Polynomial::parse(RingPtr ring, std::string_view text) {
  return detail::PolyParser(ring, text, 1, 0).run();
}

// Parse with a source position, used by the instance reader.
inline Polynomial parse_polynomial_at(const RingPtr& ring, std::string_view text, std::size_t line,
                                      std::size_t column) {
  return detail::PolyParser(ring, text, line, column).run();
}

}  // namespace reesalg
