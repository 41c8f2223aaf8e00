#pragma once

// Scalars for ray coordinates: exact rationals, the quadratic extension
// Q(sqrt d), and an epsilon-compared double for trigonometric datasets.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "ksobs/errors.hpp"

namespace ksobs {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }
  double to_double() const { return v_.convert_to<double>(); }
  std::string to_string() const;

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational x, const Rational& y) { return x += y; }
  friend Rational operator-(Rational x, const Rational& y) { return x -= y; }
  friend Rational operator*(Rational x, const Rational& y) { return x *= y; }
  friend Rational operator/(Rational x, const Rational& y) { return x /= y; }

  friend bool operator==(const Rational& x, const Rational& y) { return x.v_ == y.v_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    if (x.v_ < y.v_) return std::strong_ordering::less;
    if (y.v_ < x.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  using Repr = boost::multiprecision::cpp_rational;
  explicit Rational(Repr v) : v_(std::move(v)) {}
  Repr v_;
};

bool is_square_free(std::int64_t d);

/// a + b*sqrt(d) with rational a, b. A value with d in {0, 1} is a plain
/// rational (b is folded into a) and mixes freely with any field; two values
/// over different radicals d >= 2 raise FieldMismatch.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b, std::int64_t d);
  static QuadScalar rational(Rational a) { return QuadScalar(std::move(a), Rational(), 0); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  double to_double() const;

  QuadScalar operator-() const;
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }

 private:
  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

QuadScalar inv(const QuadScalar& x);
/// Exact sign of a + b*sqrt(d); no floating point involved.
int sign(const QuadScalar& x);
inline bool is_zero(const QuadScalar& x) { return x.is_zero(); }
/// Ordering by real value.
int compare(const QuadScalar& x, const QuadScalar& y);

/// Grammar: rational ( ('+'|'-') rational 'r' )?  with rational = int ('/' posint)?
QuadScalar parse_scalar(std::string_view text, std::int64_t d);
std::string render(const QuadScalar& x);

/// Double with a tolerance; two values are equal iff they differ by at most
/// the larger of their epsilons.
class ApproxScalar {
 public:
  ApproxScalar() = default;
  ApproxScalar(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ApproxScalar(double value, double epsilon) : value_(value), epsilon_(epsilon) {}

  double value() const { return value_; }
  double epsilon() const { return epsilon_; }
  bool is_zero() const { return std::abs(value_) <= epsilon_; }
  double to_double() const { return value_; }

  ApproxScalar operator-() const { return {-value_, epsilon_}; }
  ApproxScalar& operator+=(const ApproxScalar& o) { value_ += o.value_; merge(o); return *this; }
  ApproxScalar& operator-=(const ApproxScalar& o) { value_ -= o.value_; merge(o); return *this; }
  ApproxScalar& operator*=(const ApproxScalar& o) { value_ *= o.value_; merge(o); return *this; }
  ApproxScalar& operator/=(const ApproxScalar& o);

  friend ApproxScalar operator+(ApproxScalar x, const ApproxScalar& y) { return x += y; }
  friend ApproxScalar operator-(ApproxScalar x, const ApproxScalar& y) { return x -= y; }
  friend ApproxScalar operator*(ApproxScalar x, const ApproxScalar& y) { return x *= y; }
  friend ApproxScalar operator/(ApproxScalar x, const ApproxScalar& y) { return x /= y; }

  friend bool operator==(const ApproxScalar& x, const ApproxScalar& y) {
    return std::abs(x.value_ - y.value_) <= std::max(x.epsilon_, y.epsilon_);
  }

 private:
  void merge(const ApproxScalar& o) { epsilon_ = std::max(epsilon_, o.epsilon_); }
  double value_ = 0.0;
  double epsilon_ = 0.0;
};

ApproxScalar inv(const ApproxScalar& x);
int sign(const ApproxScalar& x);
inline bool is_zero(const ApproxScalar& x) { return x.is_zero(); }
int compare(const ApproxScalar& x, const ApproxScalar& y);
ApproxScalar parse_approx(std::string_view text, double epsilon);
/// Shortest text that parses back to the identical double.
std::string render(const ApproxScalar& x);

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, QuadScalar>;

template <class S>
concept RayScalar = std::is_same_v<S, QuadScalar> || std::is_same_v<S, ApproxScalar>;

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const QuadScalar& x);
std::ostream& operator<<(std::ostream& os, const ApproxScalar& x);

}  // namespace ksobs

namespace Eigen {

template <>
struct NumTraits<ksobs::QuadScalar> : GenericNumTraits<ksobs::QuadScalar> {
  using Real = ksobs::QuadScalar;
  using NonInteger = ksobs::QuadScalar;
  using Nested = ksobs::QuadScalar;
  using Literal = ksobs::QuadScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32,
  };
  static ksobs::QuadScalar epsilon() { return 0; }
  static ksobs::QuadScalar dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<ksobs::ApproxScalar> : GenericNumTraits<ksobs::ApproxScalar> {
  using Real = ksobs::ApproxScalar;
  using NonInteger = ksobs::ApproxScalar;
  using Nested = ksobs::ApproxScalar;
  using Literal = ksobs::ApproxScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 2,
  };
  static ksobs::ApproxScalar epsilon() { return 0; }
  static ksobs::ApproxScalar dummy_precision() { return 0; }
  static int digits10() { return 15; }
};

}  // namespace Eigen
