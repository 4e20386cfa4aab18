#include "diophlab/core.hpp"

#include <cmath>
#include <sstream>

namespace diophlab {

std::string_view to_string(NormChoice n) {
  return n == NormChoice::sup ? "sup" : "euclidean";
}

NormChoice parse_norm(std::string_view s) {
  if (s == "sup") return NormChoice::sup;
  if (s == "euclidean") return NormChoice::euclidean;
  throw PreconditionError("unknown norm '" + std::string(s) + "'");
}

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

PrimVec::PrimVec(Integer p1, Integer p2, Integer q)
    : p1_(std::move(p1)), p2_(std::move(p2)), q_(std::move(q)) {
  if (q_ <= 0) throw PreconditionError("height must be positive: " + str());
  if (gcd3(p1_, p2_, q_) != 1) throw PreconditionError("vector not primitive: " + str());
}

PrimVec::PrimVec(Integer p1, Integer p2, Integer q, NoCheck)
    : p1_(std::move(p1)), p2_(std::move(p2)), q_(std::move(q)) {
  if (q_ <= 0) throw PreconditionError("height must be positive: " + str());
}

PrimVec PrimVec::unchecked(Integer p1, Integer p2, Integer q) {
  return PrimVec(std::move(p1), std::move(p2), std::move(q), NoCheck{});
}

std::string PrimVec::str() const {
  return "((" + p1_.get_str() + "," + p2_.get_str() + ")," + q_.get_str() + ")";
}

RatPoint::RatPoint(Rational a, Rational b) : x1(std::move(a)), x2(std::move(b)) {
  x1.canonicalize();
  x2.canonicalize();
}

std::string RatPoint::str() const { return "(" + to_string(x1) + "," + to_string(x2) + ")"; }

Integer Wedge2::content() const { return gcd3(p12, p13, p23); }

Wedge2 Wedge2::sign_normalized() const {
  const Integer& lead = p12 != 0 ? p12 : (p13 != 0 ? p13 : p23);
  return lead < 0 ? -*this : *this;
}

std::string Wedge2::str() const {
  return "(" + p12.get_str() + "," + p13.get_str() + "," + p23.get_str() + ")";
}

Rational parse_rational(std::string_view s) {
  std::string text(s);
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator in '" + text + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw PreconditionError("not a rational: '" + text + "'");
  }
}

std::string to_string(const Rational& in) {
  Rational r = in;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

RatPoint parse_point(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    throw PreconditionError("point must be 'x1,x2': '" + std::string(s) + "'");
  }
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

double log_of(const Integer& z) {
  if (z <= 0) throw PreconditionError("log of nonpositive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_of(const Rational& r) {
  if (r <= 0) throw PreconditionError("log of nonpositive rational");
  return log_of(Integer(r.get_num())) - log_of(Integer(r.get_den()));
}

RatPoint dot(const PrimVec& v) { return {Rational(v.p1(), v.q()), Rational(v.p2(), v.q())}; }

Wedge2 wedge(const std::array<Integer, 3>& u, const std::array<Integer, 3>& v) {
  return {u[0] * v[1] - u[1] * v[0], u[0] * v[2] - u[2] * v[0], u[1] * v[2] - u[2] * v[1]};
}

Wedge2 wedge(const PrimVec& u, const PrimVec& v) { return wedge(u.coords(), v.coords()); }

Integer det3(const std::array<Integer, 3>& u, const std::array<Integer, 3>& v,
             const std::array<Integer, 3>& w) {
  return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
         u[2] * (v[0] * w[1] - v[1] * w[0]);
}

Integer seminorm(const Wedge2& w) {
  Integer a = abs(w.p13);
  Integer b = abs(w.p23);
  return a < b ? b : a;
}

Integer seminorm_squared(const Wedge2& w, NormChoice n) {
  if (n == NormChoice::sup) {
    Integer s = seminorm(w);
    return s * s;
  }
  return w.p13 * w.p13 + w.p23 * w.p23;
}

double seminorm_value(const Wedge2& w, NormChoice n) {
  if (n == NormChoice::sup) return seminorm(w).get_d();
  return std::sqrt(seminorm_squared(w, n).get_d());
}

Rational sup_dist(const RatPoint& a, const RatPoint& b) {
  Rational d1 = abs(a.x1 - b.x1);
  Rational d2 = abs(a.x2 - b.x2);
  return d1 < d2 ? d2 : d1;
}

Rational euclid_dist_squared(const RatPoint& a, const RatPoint& b) {
  Rational d1 = a.x1 - b.x1;
  Rational d2 = a.x2 - b.x2;
  return d1 * d1 + d2 * d2;
}

Rational hor(const RatPoint& x, const PrimVec& v) {
  Rational d1 = abs(v.q() * x.x1 - v.p1());
  Rational d2 = abs(v.q() * x.x2 - v.p2());
  return d1 < d2 ? d2 : d1;
}

Rational hor_squared(const RatPoint& x, const PrimVec& v, NormChoice n) {
  if (n == NormChoice::sup) {
    Rational h = hor(x, v);
    return h * h;
  }
  Rational d1 = v.q() * x.x1 - v.p1();
  Rational d2 = v.q() * x.x2 - v.p2();
  return d1 * d1 + d2 * d2;
}

Rational proj_dist(const PrimVec& u, const PrimVec& v) {
  Rational r(seminorm(wedge(u, v)), u.q() * v.q());
  r.canonicalize();
  return r;
}

Integer floor_of(const Rational& r) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}

Integer round_half_down(const Rational& r) {
  // nearest integer; on a tie take the smaller one
  Integer f = floor_of(r);
  Rational frac = r - f;
  if (frac > Rational(1, 2)) return f + 1;
  return f;
}

}  // namespace diophlab
