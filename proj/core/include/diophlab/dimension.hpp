#pragma once

// Hausdorff dimension bounds from trees of nested sets: the self-similar
// covering exponent, the local lower-bound certificate with plain or
// weighted spacing, the distorted Cantor sets C_delta and the exponents
// bracketing the sets D_N of bounded-below partial quotients.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diophlab/core.hpp"

namespace diophlab::dimension {

struct DimResult {
  double s = 0;
  double residual = 0;
  std::string method;
};

/// Closed interval with exact endpoints.
struct Interval {
  Rational lo, hi;
  Rational length() const { return hi - lo; }
};

/// A node B(alpha) of a finite cover tree. diam is exact; interval, when
/// present, supplies the default nesting and distance geometry.
struct CoverNode {
  std::string id;
  Rational diam;
  std::optional<Interval> interval;
  std::optional<Rational> rho;  ///< weight rho(alpha) for the weighted form
  std::vector<CoverNode> children;
};

/// Geometry callbacks for nodes without intervals. contains(parent, i)
/// decides B(child i) in B(parent); distance(parent, i, j) is the exact
/// distance between children i and j.
struct Geometry {
  std::function<bool(const CoverNode&, std::size_t)> contains;
  std::function<Rational(const CoverNode&, std::size_t, std::size_t)> distance;
};

/// Interval geometry: containment and gap length.
Geometry interval_geometry();

/// For each internal node the root of sum (diam'/diam)^s = 1 by bisection to
/// 1e-12; the supremum over nodes. A single child gives s = 0.
DimResult covering_s_estimate(const CoverNode& tree);

/// Smallest and largest per-node roots of sum (diam'/diam)^s = 1; the
/// unweighted local sums are >= 1 at every node exactly for s <= first.
std::pair<double, double> node_s_range(const CoverNode& tree);

struct Violation {
  std::string node;
  std::string condition;  ///< "i", "iii", "iv", "iii'" or "iv'"
  std::string detail;
};

struct NodeSum {
  std::string node;
  double diam = 0;
  double rho = 0;
  double sum = 0;  ///< sum over children of the (weighted) diameter ratios to the power s
};

struct LowerCert {
  bool pass = true;
  std::vector<Violation> violations;
  std::vector<NodeSum> sums;
  std::size_t nodes_checked = 0;
  std::size_t pairs_checked = 0;
};

struct LowerCertOptions {
  /// Uniform spacing constant; when empty, per-node rho values are used
  /// with the weighted conditions (iii') and (iv').
  std::optional<Rational> rho;
  double sum_tolerance = 1e-12;  ///< (iv) accepts sum >= 1 - tolerance
  bool check_sums = true;
  Geometry geometry = interval_geometry();
};

/// Checks (i) at least two children, all nested; (iii) or (iii') exact
/// spacing over every distinct sibling pair; (iv) or (iv') local sums.
LowerCert lower_cert(const CoverNode& tree, double s, const LowerCertOptions& opts = {});

/// Tree of depth `depth` on [0, 1] whose nodes split into a left piece of
/// relative length `left` and a right piece of relative length `right`.
CoverNode two_piece_tree(const Rational& left, const Rational& right, int depth);

/// Generation tree of C_delta: pieces delta/2 and 1/2.
CoverNode cantor_tree(const Rational& delta, int depth);

/// Root of 2^s = 1 + delta^s in (0, 1].
DimResult cantor_exact_dim(double delta);

/// The same root from (delta/2)^s + (1/2)^s = 1.
DimResult cantor_exact_dim_scaled(double delta);

struct CantorBounds {
  double h_d = 0;  ///< log(1 + delta) / log 2
  double h_g = 0;  ///< log 2 / log(2 / delta)
};

CantorBounds cantor_bounds(double delta);

struct Crossing {
  double delta = 0;
  double h = 0;
  double residual = 0;
};

/// The delta in (0, 1) where h_d = h_g.
Crossing cantor_crossing();

struct DnBounds {
  DimResult s_minus, s_plus;
};

/// s_+ : y log(4 y) = log N and s_- : y log(y / 6) = log N with
/// y = 1 / (2 s - 1), solved in (1/2, 1). Requires N >= 72.
DnBounds dn_bounds(double n);

/// The bare equations for any log N > 0, without the domain check.
DimResult solve_s_plus(double log_n);
DimResult solve_s_minus(double log_n);

}  // namespace diophlab::dimension
