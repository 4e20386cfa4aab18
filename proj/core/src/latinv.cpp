#include "diophlab/latinv.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <vector>

namespace diophlab::latinv {
namespace {

struct V2 {
  Integer a, b;
};

Integer norm2(const V2& x) { return x.a * x.a + x.b * x.b; }
Integer dot2(const V2& x, const V2& y) { return x.a * y.a + x.b * y.b; }
Integer sup2(const V2& x) {
  Integer s = abs(x.a);
  Integer t = abs(x.b);
  return s < t ? t : s;
}
V2 comb(const Integer& i, const V2& x, const Integer& j, const V2& y) {
  return {i * x.a + j * y.a, i * x.b + j * y.b};
}
V2 contracting(const Wedge2& w) { return {w.p13, w.p23}; }

Integer exact_div(const Integer& n, const Integer& d) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

// Total order used to pick L and Lhat among primitive elements.
struct Key {
  Integer primary;
  Integer euclid;
  Wedge2 w;  // sign-normalized

  bool operator<(const Key& o) const {
    if (primary != o.primary) return primary < o.primary;
    if (euclid != o.euclid) return euclid < o.euclid;
    return std::tie(w.p23, w.p13, w.p12) < std::tie(o.w.p23, o.w.p13, o.w.p12);
  }
};

Key key_of(const Wedge2& w, NormChoice n) {
  Wedge2 s = w.sign_normalized();
  Integer e = seminorm_squared(s, NormChoice::euclidean);
  return {n == NormChoice::sup ? seminorm(s) : e, e, s};
}

Integer gauss_round(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return round_half_down(r);
}

void gauss_reduce(V2& b1, V2& b2) {
  for (;;) {
    if (norm2(b2) < norm2(b1)) std::swap(b1, b2);
    Integer m = gauss_round(dot2(b1, b2), norm2(b1));
    if (m == 0) return;
    b2 = comb(1, b2, -m, b1);
  }
}

// Two smallest keys over primitive lattice points with Euclidean length^2
// at most r2, coordinates relative to a Gauss-reduced basis (b1, b2).
std::pair<Key, Key> enumerate_two(const PrimVec& v, const V2& b1, const V2& b2,
                                  const Integer& r2, NormChoice n) {
  const Integer n1 = norm2(b1);
  const Integer d12 = dot2(b1, b2);
  const Integer det = b1.a * b2.b - b1.b * b2.a;
  const Integer det2 = det * det;
  const Integer bound = r2 * n1;
  std::vector<Key> keys;
  for (Integer j = 0; j * j * det2 <= r2 * n1; ++j) {
    // |i b1 + j b2|^2 n1 = (i n1 + j d12)^2 + j^2 det2 <= r2 n1
    Integer centre = gauss_round(-j * d12, n1);
    auto fits = [&](const Integer& i) {
      Integer t = i * n1 + j * d12;
      return t * t + j * j * det2 <= bound;
    };
    auto take = [&](const Integer& i) {
      if (j == 0 && i <= 0) return;
      Integer g;
      mpz_gcd(g.get_mpz_t(), i.get_mpz_t(), j.get_mpz_t());
      if (g != 1) return;
      V2 x = comb(i, b1, j, b2);
      keys.push_back(key_of(element(v, x.a, x.b), n));
    };
    for (Integer i = centre; fits(i); ++i) take(i);
    for (Integer i = centre - 1; fits(i); --i) take(i);
  }
  if (keys.size() < 2) throw std::logic_error("wedge lattice enumeration radius too small");
  std::partial_sort(keys.begin(), keys.begin() + 2, keys.end());
  return {keys[0], keys[1]};
}

Integer sup_on_line(const V2& base, const V2& dir, const Integer& k) {
  return sup2(comb(1, base, k, dir));
}

// Shortest element of the coset base + Z dir under the chosen key.
Key best_on_line(const PrimVec& v, const V2& base, const V2& dir, NormChoice n) {
  std::vector<Integer> ks;
  auto add_real = [&](const Integer& num, const Integer& den) {
    if (den == 0) return;
    Rational r(num, den);
    r.canonicalize();
    Integer f = floor_of(r);
    ks.push_back(f);
    ks.push_back(f + 1);
  };
  // Euclidean minimiser
  add_real(-dot2(base, dir), norm2(dir));
  if (n == NormChoice::sup) {
    add_real(-base.a, dir.a);
    add_real(-base.b, dir.b);
    add_real(-(base.a - base.b), dir.a - dir.b);
    add_real(-(base.a + base.b), dir.a + dir.b);
  }
  Integer best = ks.front();
  for (const auto& k : ks) {
    if (sup_on_line(base, dir, k) < sup_on_line(base, dir, best)) best = k;
  }
  std::vector<Integer> cand = ks;
  if (n == NormChoice::sup) {
    // {k : sup <= m} is an interval; clamp the Euclidean minimiser into it
    const Integer m = sup_on_line(base, dir, best);
    auto extent = [&](int sign) {
      Integer step = 1;
      Integer lo = best;
      while (sup_on_line(base, dir, best + sign * step) <= m) {
        lo = best + sign * step;
        step *= 2;
      }
      Integer hi = best + sign * step;  // first known outside
      while (abs(hi - lo) > 1) {
        Integer mid = (lo + hi) / 2;
        if (sup_on_line(base, dir, mid) <= m) lo = mid; else hi = mid;
      }
      return lo;
    };
    const Integer left = extent(-1);
    const Integer right = extent(1);
    Rational e(-dot2(base, dir), norm2(dir));
    e.canonicalize();
    Integer f = floor_of(e);
    cand.clear();
    for (Integer k : std::vector<Integer>{f - 1, f, f + 1, f + 2, left, right}) {
      if (k < left) k = left;
      if (k > right) k = right;
      cand.push_back(k);
    }
  }
  std::optional<Key> out;
  for (const auto& k : cand) {
    V2 x = comb(1, base, k, dir);
    Key key = key_of(element(v, x.a, x.b), n);
    if (!out || key < *out) out = key;
  }
  return *out;
}

}  // namespace

Rational Invariants::eps_cubed() const {
  Rational r(abs_l * abs_l, v.q());
  r.canonicalize();
  return r;
}

Rational Invariants::tau_arg() const {
  Rational r(abs_l, v.q() * v.q());
  r.canonicalize();
  return r;
}

double Invariants::eps() const { return std::exp(log_of(eps_cubed()) / 3.0); }
double Invariants::delta() const { return std::exp(log_of(eps_cubed()) / 2.0); }
double Invariants::tau() const { return -log_of(tau_arg()) / 3.0; }

bool in_lattice(const PrimVec& v, const Wedge2& w) {
  // the congruence P13 p2 = P23 p1 (mod q) cuts out a sublattice of index q,
  // which is the covolume of the wedge lattice, so the two coincide
  return w.p12 * v.q() == w.p13 * v.p2() - w.p23 * v.p1();
}

Wedge2 element(const PrimVec& v, const Integer& a, const Integer& b) {
  return {exact_div(a * v.p2() - b * v.p1(), v.q()), a, b};
}

LatticeBasis hermite_basis(const PrimVec& v) {
  Integer g1, s, t;
  mpz_gcdext(g1.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.q().get_mpz_t(),
             v.p1().get_mpz_t());
  // s (q, 0) + t (p1, p2) = (g1, t p2); (p1/g1)(q, 0) - (q/g1)(p1, p2) = (0, -(q/g1) p2)
  Integer g2;
  Integer y = exact_div(v.q(), g1) * v.p2();
  mpz_gcd(g2.get_mpz_t(), v.q().get_mpz_t(), y.get_mpz_t());
  Integer a2 = t * v.p2();
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a2.get_mpz_t(), g2.get_mpz_t());
  return {v, element(v, g1, r), element(v, 0, g2), false};
}

LatticeBasis reduced_basis(const PrimVec& v, NormChoice n) {
  LatticeBasis h = hermite_basis(v);
  V2 b1 = contracting(h.b1);
  V2 b2 = contracting(h.b2);
  gauss_reduce(b1, b2);
  Key first, second;
  if (norm2(b2) < 64 * norm2(b1)) {
    Integer r2;
    if (n == NormChoice::sup) {
      Integer s = std::max(sup2(b1), sup2(b2));
      r2 = 2 * s * s;
    } else {
      r2 = norm2(b2);
    }
    std::tie(first, second) = enumerate_two(v, b1, b2, r2, n);
  } else {
    // every element off the line Z b1 is over five times longer than b1
    first = key_of(element(v, b1.a, b1.b), n);
    second = best_on_line(v, b2, b1, n);
  }
  return {v, first.w, second.w, true};
}

Invariants invariants(const PrimVec& v) {
  LatticeBasis b = reduced_basis(v, NormChoice::sup);
  return {v, b.b1, b.b2, seminorm(b.b1), seminorm(b.b2)};
}

Integer shortest_squared(const PrimVec& v, NormChoice n) {
  return seminorm_squared(reduced_basis(v, n).b1, n);
}

PrimVec lift_with_height(const PrimVec& v, const Wedge2& L, const Integer& lo) {
  if (!in_lattice(v, L)) {
    throw PreconditionError("wedge " + L.str() + " is not in the lattice of " + v.str());
  }
  Integer g, s, t, h, m, nn;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.p1().get_mpz_t(),
             v.p2().get_mpz_t());
  mpz_gcdext(h.get_mpz_t(), m.get_mpz_t(), nn.get_mpz_t(), g.get_mpz_t(), v.q().get_mpz_t());
  Integer u3 = -(m * s * L.p13 + m * t * L.p23);
  // shift by k v so that the height lands in (lo, lo + q]
  Integer k;
  Integer diff = lo - u3;
  mpz_fdiv_q(k.get_mpz_t(), diff.get_mpz_t(), v.q().get_mpz_t());
  k += 1;
  u3 += k * v.q();
  Integer u1 = exact_div(L.p13 + u3 * v.p1(), v.q());
  Integer u2 = exact_div(L.p23 + u3 * v.p2(), v.q());
  if (gcd3(u1, u2, u3) != 1) {
    throw PreconditionError("no primitive vector at height " + u3.get_str() + " realising " +
                            L.str());
  }
  return PrimVec(u1, u2, u3);
}

UPair u_pm(const PrimVec& v, const Wedge2& L) {
  PrimVec plus = lift_with_height(v, L, 0);
  PrimVec minus = lift_with_height(v, -L, 0);
  const bool sums = plus.p1() + minus.p1() == v.p1() && plus.p2() + minus.p2() == v.p2() &&
                    plus.q() + minus.q() == v.q();
  const bool doubles = plus.p1() + minus.p1() == 2 * v.p1() &&
                       plus.p2() + minus.p2() == 2 * v.p2() && plus.q() + minus.q() == 2 * v.q();
  if (!sums && !doubles) {
    throw std::logic_error("u_pm dichotomy violated for " + v.str());
  }
  return {plus, minus, sums};
}

bool in_Q_eps(const Invariants& inv, const Rational& eps) {
  if (eps <= 0) throw PreconditionError("eps must be positive");
  return inv.eps_cubed() < eps * eps * eps;
}

bool in_Q_eps(const PrimVec& v, const Rational& eps) { return in_Q_eps(invariants(v), eps); }

}  // namespace diophlab::latinv
