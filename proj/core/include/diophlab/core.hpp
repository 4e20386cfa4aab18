#pragma once

// Exact integer-vector arithmetic in Z^3 = Z^2 x Z: primitive vectors
// (p, q), rational target points, Plücker triples of wedge products and the
// seminorm that reads off their contracting component.

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace diophlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation is called outside its stated domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NormChoice { sup, euclidean };

std::string_view to_string(NormChoice n);
NormChoice parse_norm(std::string_view s);

/// A primitive vector (p1, p2, q) with q > 0 and gcd(p1, p2, q) = 1.
/// q is the height |v|; p / q is the rational point it represents.
class PrimVec {
 public:
  PrimVec(Integer p1, Integer p2, Integer q);

  /// Builds without the primitivity check; q > 0 is still enforced.
  static PrimVec unchecked(Integer p1, Integer p2, Integer q);

  const Integer& p1() const { return p1_; }
  const Integer& p2() const { return p2_; }
  const Integer& q() const { return q_; }
  const Integer& height() const { return q_; }

  std::array<Integer, 3> coords() const { return {p1_, p2_, q_}; }

  friend bool operator==(const PrimVec& a, const PrimVec& b) {
    return a.p1_ == b.p1_ && a.p2_ == b.p2_ && a.q_ == b.q_;
  }

  std::string str() const;

 private:
  struct NoCheck {};
  PrimVec(Integer p1, Integer p2, Integer q, NoCheck);

  Integer p1_, p2_, q_;
};

/// An exact point of Q^2; components are kept canonical.
struct RatPoint {
  Rational x1;
  Rational x2;

  RatPoint() = default;
  RatPoint(Rational a, Rational b);

  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.x1 == b.x1 && a.x2 == b.x2;
  }

  std::string str() const;
};

/// Plücker coordinates (P12, P13, P23) of u ^ v in wedge^2 Z^3.
/// The contracting component is (P13, P23).
struct Wedge2 {
  Integer p12, p13, p23;

  friend bool operator==(const Wedge2& a, const Wedge2& b) {
    return a.p12 == b.p12 && a.p13 == b.p13 && a.p23 == b.p23;
  }
  Wedge2 operator-() const { return {-p12, -p13, -p23}; }
  Wedge2 operator+(const Wedge2& o) const {
    return {p12 + o.p12, p13 + o.p13, p23 + o.p23};
  }
  Wedge2 operator-(const Wedge2& o) const {
    return {p12 - o.p12, p13 - o.p13, p23 - o.p23};
  }
  friend Wedge2 operator*(const Integer& k, const Wedge2& w) {
    return {k * w.p12, k * w.p13, k * w.p23};
  }

  bool is_zero() const { return p12 == 0 && p13 == 0 && p23 == 0; }
  /// gcd(P12, P13, P23); the wedge is primitive when this is 1.
  Integer content() const;
  /// Sign flipped so that the first nonzero coordinate is positive.
  Wedge2 sign_normalized() const;

  std::string str() const;
};

Integer gcd3(const Integer& a, const Integer& b, const Integer& c);

/// Exact rational from "a/b" or "a".
Rational parse_rational(std::string_view s);
/// Canonical "num/den" string (den omitted when 1).
std::string to_string(const Rational& r);
/// Parses "x1,x2" into a point.
RatPoint parse_point(std::string_view s);

/// Natural log of a positive rational, safe for numerators and
/// denominators far beyond the range of double.
double log_of(const Rational& r);
double log_of(const Integer& z);

/// Rational point p / q of v.
RatPoint dot(const PrimVec& v);

Wedge2 wedge(const PrimVec& u, const PrimVec& v);
Wedge2 wedge(const std::array<Integer, 3>& u, const std::array<Integer, 3>& v);

/// det[u; v; w] = (u ^ v ^ w) / (e1 ^ e2 ^ e3).
Integer det3(const std::array<Integer, 3>& u, const std::array<Integer, 3>& v,
             const std::array<Integer, 3>& w);

/// Sup seminorm max(|P13|, |P23|). Exact integer.
Integer seminorm(const Wedge2& w);
/// Square of the seminorm under the chosen norm; exact for both norms.
Integer seminorm_squared(const Wedge2& w, NormChoice n);
/// Seminorm as a real number under the chosen norm.
double seminorm_value(const Wedge2& w, NormChoice n);

/// ||a - b|| under the sup norm on R^2.
Rational sup_dist(const RatPoint& a, const RatPoint& b);
/// ||a - b||^2 under the Euclidean norm.
Rational euclid_dist_squared(const RatPoint& a, const RatPoint& b);

/// hor_x(v) = ||q x - p|| in the sup norm.
Rational hor(const RatPoint& x, const PrimVec& v);
/// hor_x(v)^2 under the chosen norm.
Rational hor_squared(const RatPoint& x, const PrimVec& v, NormChoice n);

/// Projective distance |u ^ v| / (|u| |v|), which equals ||u. - v.|| (sup).
Rational proj_dist(const PrimVec& u, const PrimVec& v);

/// Integer floor of a rational.
Integer floor_of(const Rational& r);
/// Integer nearest to r; ties go to the lower integer.
Integer round_half_down(const Rational& r);

}  // namespace diophlab
