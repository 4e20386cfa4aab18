#pragma once

// Domains of approximation Delta(v) = {x : v is a best approximation of x}:
// the ball sandwich around v., exact membership, crossing data of the
// profile and the Dirichlet-improvability tail test.

#include <vector>

#include "diophlab/bestapprox.hpp"
#include "diophlab/core.hpp"

namespace diophlab::domains {

struct BallBounds {
  RatPoint center;
  Rational r;  ///< |L(v)| / |v|^2

  Rational inner() const { return r / 2; }
  Rational outer() const { return 2 * r; }
};

/// Requires |v| > 1.
BallBounds ball_bounds(const PrimVec& v);

/// v belongs to the best-approximation sequence of x (ties at equal height
/// resolved as in best_approximations), decided by scanning every height.
bool in_domain(const RatPoint& x, const PrimVec& v);

/// hor_x(u) > hor_x(v).
bool in_half_domain(const RatPoint& x, const PrimVec& u, const PrimVec& v);

struct CrossingData {
  Integer v_height;
  Rational hor_u;

  /// eps_x(u, v)^3 = |v| hor_x(u)^2.
  Rational eps_cubed() const { return v_height * hor_u * hor_u; }
  /// tau = (1/3)(log |v| - log hor_x(u)).
  double tau() const;
  double eps() const;
};

/// Common length of u and v along the flow. Requires |u| < |v|, x in
/// Delta(v) and hor_x(u) > 0.
CrossingData crossing(const RatPoint& x, const PrimVec& u, const PrimVec& v);

/// (1/2) dist(u, v) < dist(u, x) < 2 dist(u, v).
struct Sandwich {
  bool lower = false;
  bool upper = false;
  bool ok() const { return lower && upper; }
};
Sandwich best_sandwich(const RatPoint& x, const PrimVec& u, const PrimVec& v);

/// dist(x, u) > dist(u + v, u), the bound valid on the half-domain.
bool half_domain_distance_bound(const RatPoint& x, const PrimVec& u, const PrimVec& v);

struct TailEntry {
  std::size_t j = 0;
  Rational delta_sq;         ///< delta_j^2 = |v_j| hor_x(v_{j-1})^2
  Rational intrinsic_cubed;  ///< eps_j^3 = |v_{j-1} ^ v_j|^2 / |v_j|
  bool below = false;        ///< delta_j < delta
  bool bracket = false;      ///< eps_j^{3/2} / 2 <= delta_j <= 2 eps_j^{3/2}
};

/// Per-index Dirichlet test delta_j < delta with the intrinsic proxy.
std::vector<TailEntry> di_tail_check(const bestapprox::BestApproxSeq& seq,
                                     const Rational& delta);

}  // namespace diophlab::domains
