#pragma once

// Best approximations to a rational target under the sup norm, the
// piecewise-linear profile W_x of shortest-vector lengths along the diagonal
// flow, an independent lattice-enumeration oracle for that profile, and the
// subsequence of best approximations that leave the previous plane.
//
// Time is carried exactly through E = e^{3t}. At time t the vector
// g_t h_x w has length^3 = max(E hor_x(w)^3, |w|^3 / E^2).

#include <cstdint>
#include <optional>
#include <vector>

#include "diophlab/core.hpp"

namespace diophlab::bestapprox {

struct Item {
  PrimVec v;
  Rational hor;
};

struct BestApproxSeq {
  RatPoint target;
  std::vector<Item> items;
  Integer height_bound;
  bool exact_hit = false;  ///< the last item has hor = 0
};

/// Deliberate corruption of the enumerator, used to exercise audits.
enum class Fault { none, shifted_choice };

/// All best approximations to x with height at most height_bound, ordered by
/// height. Among equal-height realisers the lexicographically smallest p wins.
BestApproxSeq best_approximations(const RatPoint& x, const Integer& height_bound,
                                  Fault fault = Fault::none);

/// Local maximum of W_x between items j-1 and j, stored as the exact pair
/// (|v_j|, hor_x(v_{j-1})).
struct Crossing {
  Integer v_height;
  Rational hor_prev;

  /// E = e^{3 tau} = |v_j| / hor_x(v_{j-1}).
  Rational e_value() const;
  /// eps^3 = |v_j| hor_x(v_{j-1})^2, the cubed common length.
  Rational eps_cubed() const;
  double tau() const;
  double log_eps() const;
};

struct PLProfile {
  RatPoint target;
  std::vector<Item> minima;
  std::vector<Crossing> maxima;  ///< maxima[j-1] sits between minima[j-1] and minima[j]
  Rational e_lo;                 ///< certified window start (E = 1, t = 0)
  std::optional<Rational> e_hi;  ///< window end; empty when the profile ends at an exact hit

  bool in_window(const Rational& e) const;
  /// exp(3 W_x(t)) at E = e^{3t}, exact. Throws outside the window.
  Rational length_cubed(const Rational& e) const;
  /// W_x(t) as a real number.
  double value(double t) const;
};

PLProfile wx_profile(const BestApproxSeq& seq);

struct OracleResult {
  std::array<Integer, 3> w;  ///< minimizing integer vector (p1, p2, q), q >= 0
  Rational sup_scaled;       ///< sup norm of (E(q x - p), q)
  Rational length_cubed;     ///< sup_scaled^3 / E^2
  std::uint64_t nodes = 0;   ///< enumeration nodes visited
};

/// Exact shortest vector of g_t h_x Z^3 at E = e^{3t} by lattice reduction
/// followed by exhaustive enumeration of the certifying ellipsoid.
OracleResult shortest_vector_oracle(const RatPoint& x, const Rational& e,
                                    std::uint64_t node_budget = 5'000'000);

/// Exact dyadic rational closest to e^{3t} in binary64.
Rational exp3_dyadic(double t);

/// Indices j of items v_j outside Z v_{j-1} + Z v_{j-2}.
std::vector<std::size_t> hat_sigma(const BestApproxSeq& seq);

/// True when w lies in the integer span of a and b.
bool in_integer_span(const PrimVec& a, const PrimVec& b, const PrimVec& w);

struct PairCheck {
  std::size_t j = 0;
  bool lower = false;      ///< |L| / (q_j (q_{j+1} + q_j)) <= ||x - p_j / q_j||
  bool upper = false;      ///< ||x - p_j / q_j|| <= 2 |L| / (q_j q_{j+1})
  bool primitive = false;  ///< gcd of the Plücker coordinates is 1
  bool ok() const { return lower && upper && primitive; }
};

/// Two-sided distance bounds and primitivity for every consecutive pair
/// whose first member is not an exact hit.
std::vector<PairCheck> audit_best_inequalities(const BestApproxSeq& seq);

struct RealiseCheck {
  bool ok = true;
  std::string witness;
};

/// Verifies every item against an exhaustive box scan of all heights up to
/// the last item: strictly better than every lower height, no worse than
/// its own height, and no record missing from the list.
RealiseCheck audit_realise(const BestApproxSeq& seq);

/// Items above height 64 mu0^2 that share their height's minimum with
/// another vector; the best approximation is unique there.
std::vector<std::size_t> tail_ties(const BestApproxSeq& seq, const Rational& mu0 = 1);

}  // namespace diophlab::bestapprox
