#include "diophlab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diophlab::dimension {

namespace {

/// Bisection for an increasing f with f(lo) < 0 <= f(hi), run to the
/// resolution of binary64.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 400; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

double ratio(const Rational& num, const Rational& den) { return Rational(num / den).get_d(); }

double power_sum(const std::vector<double>& ratios, double s) {
  double sum = 0;
  for (const double r : ratios) sum += std::pow(r, s);
  return sum;
}

/// Root of sum r_i^s = 1 for ratios in (0, 1).
DimResult solve_node(const std::vector<double>& ratios) {
  if (ratios.size() <= 1) return {0.0, 0.0, "bisection"};
  const auto f = [&](double s) { return 1.0 - power_sum(ratios, s); };
  double hi = 1;
  while (f(hi) < 0) hi *= 2;
  const double s = bisect_increasing(f, 0.0, hi);
  return {s, std::abs(f(s)), "bisection"};
}

void collect_s(const CoverNode& node, DimResult& best, bool& any,
               std::pair<double, double>* range = nullptr) {
  if (node.children.empty()) return;
  std::vector<double> ratios;
  ratios.reserve(node.children.size());
  for (const auto& c : node.children) {
    if (c.diam <= 0 || c.diam >= node.diam)
      throw PreconditionError("covering_s_estimate: diameter ratio outside (0,1) at " + c.id);
    ratios.push_back(ratio(c.diam, node.diam));
  }
  const DimResult r = solve_node(ratios);
  if (range) {
    range->first = any ? std::min(range->first, r.s) : r.s;
    range->second = any ? std::max(range->second, r.s) : r.s;
  }
  if (!any || r.s > best.s) best = r;
  any = true;
  for (const auto& c : node.children) collect_s(c, best, any, range);
}

std::string rat_str(const Rational& r) { return r.get_str(); }

void certify(const CoverNode& node, double s, const LowerCertOptions& opts, LowerCert& out) {
  if (node.children.empty()) return;
  ++out.nodes_checked;
  const auto fail = [&](std::string cond, std::string detail) {
    out.pass = false;
    out.violations.push_back({node.id, std::move(cond), std::move(detail)});
  };
  const bool weighted = !opts.rho.has_value();
  if (weighted && !node.rho) throw PreconditionError("lower_cert: missing rho at " + node.id);
  const Rational rho = weighted ? *node.rho : *opts.rho;

  if (node.children.size() < 2)
    fail("i", "fewer than 2 children (" + std::to_string(node.children.size()) + ")");
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (!opts.geometry.contains(node, i)) fail("i", "child " + node.children[i].id + " not nested");
  }

  const Rational bound = rho * node.diam;
  const std::string sp = weighted ? "iii'" : "iii";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    for (std::size_t j = i + 1; j < node.children.size(); ++j) {
      ++out.pairs_checked;
      const Rational d = opts.geometry.distance(node, i, j);
      if (!(d > bound)) {
        fail(sp, "dist(" + node.children[i].id + ", " + node.children[j].id + ") = " + rat_str(d) +
                     " <= " + rat_str(bound));
      }
    }
  }

  if (opts.check_sums) {
    double sum = 0;
    for (const auto& c : node.children) {
      if (weighted) {
        if (!c.rho) throw PreconditionError("lower_cert: missing rho at " + c.id);
        sum += std::pow(ratio(*c.rho * c.diam, rho * node.diam), s);
      } else {
        sum += std::pow(ratio(c.diam, node.diam), s);
      }
    }
    out.sums.push_back({node.id, node.diam.get_d(), rho.get_d(), sum});
    if (sum < 1.0 - opts.sum_tolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "local sum " << sum << " < 1";
      fail(weighted ? "iv'" : "iv", os.str());
    }
  }
  for (const auto& c : node.children) certify(c, s, opts, out);
}

void split(CoverNode& node, const Rational& left, const Rational& right, int depth) {
  if (depth == 0) return;
  const Interval& iv = *node.interval;
  const Rational len = iv.length();
  CoverNode a{node.id + "0", left * len, Interval{iv.lo, iv.lo + left * len}, std::nullopt, {}};
  CoverNode b{node.id + "1", right * len, Interval{iv.hi - right * len, iv.hi}, std::nullopt, {}};
  split(a, left, right, depth - 1);
  split(b, left, right, depth - 1);
  node.children.push_back(std::move(a));
  node.children.push_back(std::move(b));
}

}  // namespace

Geometry interval_geometry() {
  Geometry g;
  g.contains = [](const CoverNode& parent, std::size_t i) {
    const auto& c = parent.children.at(i);
    if (!parent.interval || !c.interval)
      throw PreconditionError("interval geometry: node without interval");
    return parent.interval->lo <= c.interval->lo && c.interval->hi <= parent.interval->hi;
  };
  g.distance = [](const CoverNode& parent, std::size_t i, std::size_t j) -> Rational {
    const auto& a = parent.children.at(i);
    const auto& b = parent.children.at(j);
    if (!a.interval || !b.interval) throw PreconditionError("interval geometry: node without interval");
    const Rational gap1 = b.interval->lo - a.interval->hi;
    const Rational gap2 = a.interval->lo - b.interval->hi;
    const Rational gap = gap1 > gap2 ? gap1 : gap2;
    return gap > 0 ? gap : Rational(0);
  };
  return g;
}

DimResult covering_s_estimate(const CoverNode& tree) {
  DimResult best{0.0, 0.0, "bisection"};
  bool any = false;
  collect_s(tree, best, any);
  if (!any) throw PreconditionError("covering_s_estimate: tree has no internal node");
  return best;
}

std::pair<double, double> node_s_range(const CoverNode& tree) {
  DimResult best{0.0, 0.0, "bisection"};
  bool any = false;
  std::pair<double, double> range{0.0, 0.0};
  collect_s(tree, best, any, &range);
  if (!any) throw PreconditionError("node_s_range: tree has no internal node");
  return range;
}

LowerCert lower_cert(const CoverNode& tree, double s, const LowerCertOptions& opts) {
  if (!(s > 0)) throw PreconditionError("lower_cert: s must be positive");
  if (opts.rho && *opts.rho <= 0) throw PreconditionError("lower_cert: rho must be positive");
  LowerCert out;
  certify(tree, s, opts, out);
  return out;
}

CoverNode two_piece_tree(const Rational& left, const Rational& right, int depth) {
  if (left <= 0 || right <= 0 || left + right > 1)
    throw PreconditionError("two_piece_tree: pieces must be positive and fit in the parent");
  if (depth < 0) throw PreconditionError("two_piece_tree: negative depth");
  CoverNode root{"r", Rational(1), Interval{Rational(0), Rational(1)}, std::nullopt, {}};
  split(root, left, right, depth);
  return root;
}

CoverNode cantor_tree(const Rational& delta, int depth) {
  if (delta <= 0 || delta >= 1) throw PreconditionError("cantor_tree: delta must lie in (0,1)");
  return two_piece_tree(delta / 2, Rational(1, 2), depth);
}

DimResult cantor_exact_dim(double delta) {
  if (!(delta > 0) || delta > 1) throw PreconditionError("cantor_exact_dim: delta must lie in (0,1]");
  const auto f = [delta](double s) { return std::exp2(s) - 1.0 - std::pow(delta, s); };
  if (f(1.0) <= 0) return {1.0, std::abs(f(1.0)), "bisection"};
  const double s = bisect_increasing(f, 1e-15, 1.0);
  return {s, std::abs(f(s)), "bisection"};
}

DimResult cantor_exact_dim_scaled(double delta) {
  if (!(delta > 0) || delta > 1) throw PreconditionError("cantor_exact_dim: delta must lie in (0,1]");
  const auto f = [delta](double s) { return 1.0 - std::pow(delta / 2, s) - std::exp2(-s); };
  if (f(1.0) <= 0) return {1.0, std::abs(f(1.0)), "bisection"};
  const double s = bisect_increasing(f, 1e-15, 1.0);
  return {s, std::abs(f(s)), "bisection"};
}

CantorBounds cantor_bounds(double delta) {
  if (!(delta > 0) || !(delta < 1)) throw PreconditionError("cantor_bounds: delta must lie in (0,1)");
  return {std::log1p(delta) / std::log(2.0), std::log(2.0) / std::log(2.0 / delta)};
}

Crossing cantor_crossing() {
  const auto f = [](double d) {
    const CantorBounds b = cantor_bounds(d);
    return b.h_d - b.h_g;
  };
  const double d = bisect_increasing(f, 1e-9, 0.9);
  return {d, cantor_bounds(d).h_d, std::abs(f(d))};
}

DimResult solve_s_plus(double log_n) {
  if (!(log_n > 0)) throw PreconditionError("solve_s_plus: log N must be positive");
  // decreasing in s; negate for the increasing form
  const auto f = [log_n](double s) {
    const double y = 1.0 / (2 * s - 1);
    return log_n - y * std::log(4 * y);
  };
  const double s = bisect_increasing(f, 0.5 + 1e-15, 1.0 - 1e-15);
  return {s, std::abs(f(s)), "bisection"};
}

DimResult solve_s_minus(double log_n) {
  if (!(log_n > 0)) throw PreconditionError("solve_s_minus: log N must be positive");
  const auto f = [log_n](double s) {
    const double y = 1.0 / (2 * s - 1);
    return log_n - y * std::log(y / 6);
  };
  const double s = bisect_increasing(f, 0.5 + 1e-15, 1.0 - 1e-15);
  return {s, std::abs(f(s)), "bisection"};
}

DnBounds dn_bounds(double n) {
  if (!(n >= 72)) throw PreconditionError("dn_bounds: N must be at least 72");
  const double log_n = std::log(n);
  return {solve_s_minus(log_n), solve_s_plus(log_n)};
}

}  // namespace diophlab::dimension
