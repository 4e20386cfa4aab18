#pragma once

// Continued fractions in one dimension: convergents, the neighbour
// fractions v_-, v_+ of a reduced fraction, the intervals I_N(v) of reals
// whose next partial quotient is at least N, the successor map sigma_N and
// exact audits of the resulting D_N trees.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diophlab/core.hpp"
#include "diophlab/dimension.hpp"

namespace diophlab::cfrac {

/// Reduced fraction p / q with q > 0.
struct Frac {
  Integer p, q;

  Frac(Integer p_, Integer q_);
  explicit Frac(const Rational& r);

  Rational value() const { return Rational(p, q); }
  std::string str() const;
  friend bool operator==(const Frac& a, const Frac& b) { return a.p == b.p && a.q == b.q; }
};

/// Partial quotients of the canonical expansion (last term >= 2 unless the
/// expansion has a single term).
std::vector<Integer> partial_quotients(const Rational& x);

/// Convergents of the canonical expansion, ending with x itself.
std::vector<Frac> convergents(const Rational& x);

/// (v_-, v_+) with p_+- q - p q_+- = +-1 and 0 < q_+- < q. Requires q >= 2.
std::pair<Frac, Frac> neighbors(const Frac& v);

struct IntervalIN {
  Frac v;
  Integer n;
  Rational lo, hi;
  Rational length() const { return hi - lo; }
};

/// [(Np + p_-)/(Nq + q_-), (Np + p_+)/(Nq + q_+)].
IntervalIN interval_IN(const Frac& v, const Integer& n);

/// a v + v_-, a v + v_+ for N < a <= a_max, in that order.
std::vector<Frac> dn_children(const Frac& v, const Integer& n, const Integer& a_max);

struct GapAudit {
  bool nested = true;
  bool gaps_ok = true;             ///< every sibling gap >= |I_N(v)| / (36 N)
  std::optional<Rational> min_gap_ratio;  ///< min gap / |I_N(v)|
  std::string witness;
};

/// Exact nesting and spacing of the children intervals inside I_N(v).
GapAudit audit_children(const Frac& v, const Integer& n, const std::vector<Frac>& kids);

struct DnTreeConfig {
  Integer n = 72;
  int depth = 4;
  std::optional<Integer> a_max;  ///< 2 N when empty
  std::size_t expand = 6;        ///< children expanded per node
};

struct DnLevel {
  int depth = 0;
  std::size_t parents = 0;
  std::size_t intervals = 0;
  std::size_t nested_fail = 0;
  std::size_t gap_fail = 0;
  std::optional<Rational> min_gap_ratio;
};

struct DnTree {
  dimension::CoverNode tree;  ///< diam = |I_N|, rho = 1/(36 N) at every node
  std::vector<DnLevel> levels;
  std::string witness;
  bool ok() const;
};

/// Tree of I_N intervals from the root: every node on an expanded path has
/// all of its children generated and audited; `expand` evenly spread
/// children of each node are expanded further.
DnTree dn_tree(const Frac& root, const DnTreeConfig& cfg);

}  // namespace diophlab::cfrac
