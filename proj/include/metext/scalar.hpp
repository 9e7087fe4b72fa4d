#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace metext {

// Exact rational number. Always canonical: lowest terms, positive denominator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Scalar(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  // Accepts "n", "-n", "p/q" with decimal integers. Whitespace is not allowed.
  static Scalar parse(std::string_view text) {
    auto digits_ok = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den.front() == '-' || den.front() == '+')
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return std::string(s.front() == '+' ? s.substr(1) : s); };
    mpz_class n(strip_plus(num), 10);
    mpz_class d(strip_plus(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Scalar(n, d);
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }

  // Canonical text form: "n" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  // Truncated decimal rendering with `digits` fractional digits.
  std::string decimal(unsigned digits = 12) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = abs(q_.get_num()) * scale / q_.get_den();
    std::string body = scaled.get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = sign() < 0 ? "-" : "";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    return out;
  }

  Scalar operator-() const { return Scalar(mpq_class(-q_)); }
  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class q_;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

inline Scalar pow(const Scalar& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Scalar(n, d);
}

}  // namespace metext
