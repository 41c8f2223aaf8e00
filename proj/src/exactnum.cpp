#include "ksobs/exactnum.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace ksobs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::FullRank: return "FullRank";
    case ErrorCode::StructureError: return "StructureError";
    case ErrorCode::NotIncluded: return "NotIncluded";
    case ErrorCode::IncompleteCandidate: return "IncompleteCandidate";
    case ErrorCode::UnknownProjector: return "UnknownProjector";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::InvalidParams: return "InvalidParams";
  }
  return "Error";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  v_ = den < 0 ? Repr(BigInt(-num), BigInt(-den)) : Repr(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::to_string() const {
  auto n = num();
  auto d = den();
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

// -------------------------------------------------------------- QuadScalar

bool is_square_free(std::int64_t d) {
  if (d < 0) return false;
  if (d < 2) return true;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

namespace {

std::int64_t common_field(const QuadScalar& x, const QuadScalar& y) {
  if (x.d() == y.d()) return x.d();
  if (x.d() < 2) return y.d();
  if (y.d() < 2) return x.d();
  throw Error(ErrorCode::FieldMismatch,
              "sqrt(" + std::to_string(x.d()) + ") vs sqrt(" + std::to_string(y.d()) + ")");
}

}  // namespace

QuadScalar::QuadScalar(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d)) {
    throw Error(ErrorCode::InvalidParams, "radicand " + std::to_string(d) + " is not square-free");
  }
  if (d == 1) {
    a_ += b_;
    b_ = Rational();
  } else if (d == 0) {
    b_ = Rational();
  }
}

double QuadScalar::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

QuadScalar QuadScalar::operator-() const {
  QuadScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  d_ = common_field(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  d_ = common_field(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  d_ = common_field(*this, o);
  // (a + b r)(c + e r) = (ac + be d) + (ae + bc) r
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d_);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) { return *this *= inv(o); }

QuadScalar inv(const QuadScalar& x) {
  if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // conjugate over the field norm a^2 - b^2 d
  Rational norm = x.a() * x.a() - x.b() * x.b() * Rational(x.d());
  return QuadScalar(x.a() / norm, -x.b() / norm, x.d());
}

int sign(const QuadScalar& x) {
  int sa = x.a().sign();
  int sb = x.b().sign();
  if (sb == 0 || x.d() == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: the larger of a^2 and b^2 d decides
  Rational lhs = x.a() * x.a();
  Rational rhs = x.b() * x.b() * Rational(x.d());
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

int compare(const QuadScalar& x, const QuadScalar& y) { return sign(x - y); }

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  QuadScalar parse(std::int64_t d) {
    if (text_.empty()) throw ParseError(0, "empty scalar");
    Rational a = rational(/*allow_sign=*/true);
    if (at_end()) return QuadScalar(a, Rational(), d);
    char c = text_[pos_];
    if (c != '+' && c != '-') throw ParseError(pos_, "expected '+', '-' or end of scalar");
    ++pos_;
    Rational b = rational(/*allow_sign=*/false);
    if (c == '-') b = -b;
    if (at_end() || text_[pos_] != 'r') throw ParseError(pos_, "expected 'r' after radical coefficient");
    ++pos_;
    if (!at_end()) throw ParseError(pos_, "trailing characters");
    return QuadScalar(a, b, d);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  BigInt digits() {
    std::size_t start = pos_;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) throw ParseError(pos_, "expected digit");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  Rational rational(bool allow_sign) {
    bool negative = false;
    if (allow_sign && !at_end() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    BigInt num = digits();
    BigInt den = 1;
    if (!at_end() && text_[pos_] == '/') {
      ++pos_;
      std::size_t den_pos = pos_;
      den = digits();
      if (den == 0) throw ParseError(den_pos, "zero denominator");
    }
    if (negative) num = -num;
    return Rational(num, den);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadScalar parse_scalar(std::string_view text, std::int64_t d) {
  return ScalarParser(text).parse(d);
}

std::string render(const QuadScalar& x) {
  if (x.b().is_zero()) return x.a().to_string();
  std::string out = x.a().to_string();
  if (x.b().sign() > 0) {
    out += "+" + x.b().to_string();
  } else {
    out += "-" + (-x.b()).to_string();
  }
  return out + "r";
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& x) { return os << render(x); }

// ------------------------------------------------------------ ApproxScalar

ApproxScalar& ApproxScalar::operator/=(const ApproxScalar& o) {
  merge(o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "approximate division by zero");
  value_ /= o.value_;
  return *this;
}

ApproxScalar inv(const ApproxScalar& x) { return ApproxScalar(1.0, x.epsilon()) / x; }

int sign(const ApproxScalar& x) {
  if (x.is_zero()) return 0;
  return x.value() > 0 ? 1 : -1;
}

int compare(const ApproxScalar& x, const ApproxScalar& y) { return sign(x - y); }

ApproxScalar parse_approx(std::string_view text, double epsilon) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || text.empty()) throw ParseError(0, "expected a decimal number");
  if (ptr != text.data() + text.size()) {
    throw ParseError(static_cast<std::size_t>(ptr - text.data()), "trailing characters");
  }
  return ApproxScalar(v, epsilon);
}

std::string render(const ApproxScalar& x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x.value());
  (void)ec;
  return std::string(buf, ptr);
}

std::ostream& operator<<(std::ostream& os, const ApproxScalar& x) { return os << render(x); }

}  // namespace ksobs
