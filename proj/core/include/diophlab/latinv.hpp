#pragma once

// The rank-2 lattice of wedges {u ^ v : u in Z^3} attached to a primitive
// vector v, its two shortest primitive elements and the distortion
// invariants built from them.
//
// Elements are identified with their contracting component (P13, P23),
// which is injective on the lattice; P12 is recovered from the Plücker
// relation P12 q = P13 p2 - P23 p1.

#include <utility>

#include "diophlab/core.hpp"

namespace diophlab::latinv {

struct LatticeBasis {
  PrimVec v;
  Wedge2 b1;
  Wedge2 b2;
  bool reduced = false;
};

/// Exact invariants of v under the sup norm.
struct Invariants {
  PrimVec v;
  Wedge2 L;     ///< shortest primitive element, sign-normalized
  Wedge2 Lhat;  ///< shortest primitive element other than +-L
  Integer abs_l;
  Integer abs_lhat;

  /// eps(v)^3 = |L|^2 / |v|.
  Rational eps_cubed() const;
  /// delta(v)^2 = |L|^2 / |v| (coincides with eps^3 for planar targets).
  Rational delta_squared() const { return eps_cubed(); }
  /// The argument |L| / |v|^2 of tau(v) = -(1/3) log(.).
  Rational tau_arg() const;

  double eps() const;
  double delta() const;
  double tau() const;
};

/// True when w lies in the wedge lattice of v (integral Plücker relation).
bool in_lattice(const PrimVec& v, const Wedge2& w);

/// Wedge element of v with contracting component (a, b).
Wedge2 element(const PrimVec& v, const Integer& a, const Integer& b);

/// Hermite basis of the wedge lattice (not reduced).
LatticeBasis hermite_basis(const PrimVec& v);

/// Basis (L, Lhat) of successive minima under the chosen norm. Ties are
/// broken by smaller Euclidean length, then by the lexicographically smallest
/// sign-normalized (P23, P13, P12).
LatticeBasis reduced_basis(const PrimVec& v, NormChoice n = NormChoice::sup);

Invariants invariants(const PrimVec& v);

/// Squared length of the shortest nonzero element under the chosen norm.
Integer shortest_squared(const PrimVec& v, NormChoice n);

/// The vector u with u ^ v = L whose height lies in (lo, lo + |v|].
/// Throws PreconditionError if L is not in the lattice or u is imprimitive.
PrimVec lift_with_height(const PrimVec& v, const Wedge2& L, const Integer& lo);

struct UPair {
  PrimVec plus;   ///< u_+ ^ v = L
  PrimVec minus;  ///< u_- ^ v = -L
  /// v = u_+ + u_- (true) or 2 v = u_+ + u_- (false).
  bool sums_to_v;
};

/// The two vectors of height at most |v| realising +-L against v.
UPair u_pm(const PrimVec& v, const Wedge2& L);

/// eps(v) < eps, decided by exact comparison of cubes.
bool in_Q_eps(const PrimVec& v, const Rational& eps);
bool in_Q_eps(const Invariants& inv, const Rational& eps);

}  // namespace diophlab::latinv
