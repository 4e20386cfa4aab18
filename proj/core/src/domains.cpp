#include "diophlab/domains.hpp"

#include <cmath>

#include "diophlab/latinv.hpp"

namespace diophlab::domains {

BallBounds ball_bounds(const PrimVec& v) {
  if (v.q() <= 1) throw PreconditionError("ball bounds need |v| > 1: " + v.str());
  const latinv::Invariants inv = latinv::invariants(v);
  Rational r(inv.abs_l, v.q() * v.q());
  r.canonicalize();
  return {dot(v), r};
}

bool in_domain(const RatPoint& x, const PrimVec& v) {
  const Rational hv = hor(x, v);
  for (Integer q = 1; q <= v.q(); ++q) {
    const Integer f1 = floor_of(q * x.x1);
    const Integer f2 = floor_of(q * x.x2);
    // every u at height q with hor_x(u) < 1 lies in this box
    for (Integer p1 = f1 - 1; p1 <= f1 + 2; ++p1) {
      for (Integer p2 = f2 - 1; p2 <= f2 + 2; ++p2) {
        if (q == v.q() && p1 == v.p1() && p2 == v.p2()) continue;
        if (gcd3(p1, p2, q) != 1) continue;
        const Rational hu = hor(x, PrimVec::unchecked(p1, p2, q));
        if (q < v.q()) {
          if (hu <= hv) return false;
        } else if (hu < hv || (hu == hv && std::tie(p1, p2) < std::tie(v.p1(), v.p2()))) {
          return false;
        }
      }
    }
  }
  return true;
}

bool in_half_domain(const RatPoint& x, const PrimVec& u, const PrimVec& v) {
  return hor(x, u) > hor(x, v);
}

double CrossingData::tau() const { return (log_of(v_height) - log_of(hor_u)) / 3.0; }

double CrossingData::eps() const { return std::exp(log_of(eps_cubed()) / 3.0); }

CrossingData crossing(const RatPoint& x, const PrimVec& u, const PrimVec& v) {
  if (!(u.q() < v.q())) throw PreconditionError("crossing needs |u| < |v|");
  const Rational hu = hor(x, u);
  if (hu == 0) throw PreconditionError("u is an exact hit; no crossing: " + u.str());
  if (!in_domain(x, v)) throw PreconditionError("target outside the domain of " + v.str());
  return {v.q(), hu};
}

Sandwich best_sandwich(const RatPoint& x, const PrimVec& u, const PrimVec& v) {
  const Rational duv = proj_dist(u, v);
  const Rational dux = sup_dist(dot(u), x);
  return {duv < 2 * dux, dux < 2 * duv};
}

bool half_domain_distance_bound(const RatPoint& x, const PrimVec& u, const PrimVec& v) {
  const RatPoint w(Rational(u.p1() + v.p1(), u.q() + v.q()),
                   Rational(u.p2() + v.p2(), u.q() + v.q()));
  return sup_dist(x, dot(u)) > sup_dist(w, dot(u));
}

std::vector<TailEntry> di_tail_check(const bestapprox::BestApproxSeq& seq,
                                     const Rational& delta) {
  if (delta <= 0) throw PreconditionError("delta must be positive");
  std::vector<TailEntry> out;
  const auto& it = seq.items;
  for (std::size_t j = 1; j < it.size(); ++j) {
    const Integer& qj = it[j].v.q();
    const Integer l = seminorm(wedge(it[j - 1].v, it[j].v));
    TailEntry e;
    e.j = j;
    e.delta_sq = qj * it[j - 1].hor * it[j - 1].hor;
    e.intrinsic_cubed = Rational(l * l, qj);
    e.intrinsic_cubed.canonicalize();
    e.below = e.delta_sq < delta * delta;
    // squares of eps_j^{3/2}/2 <= delta_j <= 2 eps_j^{3/2}
    e.bracket = e.intrinsic_cubed / 4 <= e.delta_sq && e.delta_sq <= 4 * e.intrinsic_cubed;
    out.push_back(e);
  }
  return out;
}

}  // namespace diophlab::domains
