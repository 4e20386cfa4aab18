#pragma once

// Constructive generation of singular vectors: the child map psi, Cantor
// trees of children, chains under fixed or shrinking parameters, the
// sandwich audit against the exact shortest-vector oracle, and slowly
// divergent chains driven by a regularized step function.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diophlab/bestapprox.hpp"
#include "diophlab/core.hpp"
#include "diophlab/latinv.hpp"

namespace diophlab::construct {

struct Slot {
  Integer a, b, c;
};

/// L' = a Lhat(u) + b L(u).
Wedge2 child_wedge(const latinv::Invariants& parent, const Integer& a, const Integer& b);

/// M_eps = eps^{-3} |L'|^2 / |u|.
Rational window_centre(const latinv::Invariants& parent, const Wedge2& lp, const Rational& eps);

/// The u' with u' ^ u = a Lhat + b L and floor(|u'| / |u|) = c.
PrimVec psi(const latinv::Invariants& parent, const Integer& a, const Integer& b,
            const Integer& c, const Rational& eps);
PrimVec psi(const PrimVec& u, const Integer& a, const Integer& b, const Integer& c,
            const Rational& eps);

/// u' in N_eps(u): u ^ u' primitive, not +-L(u), and eps^3 |u'| > |u ^ u'|^2.
bool in_N_eps(const latinv::Invariants& parent, const PrimVec& child, const Rational& eps);

/// Q'_eps = Q_eps \ Q_{eps/2}, from the exact invariants of v.
bool in_Q_eps_shell(const latinv::Invariants& inv, const Rational& eps);

/// Cheap certificate that L(v) = +-w: 2 |w|^2 < |v| forces w to be the
/// unique shortest primitive element under the sup norm.
bool certifies_shortest(const PrimVec& v, const Wedge2& w);

/// Scale r with B(u., r/2) inside Delta(u): r = |L(u)| / |u|^2, and r = 1
/// for |u| = 1.
Rational inner_scale(const latinv::Invariants& inv);
/// Upper bound for diam Delta(u): 4 r for |u| > 1, and 1 for |u| = 1.
Rational diam_bound(const latinv::Invariants& inv);

/// closure Delta(child) inside Delta(parent), certified through the ball
/// sandwich: dist(u., u'.) + 2 r' < r / 2.
bool nested(const latinv::Invariants& parent, const PrimVec& child, const Wedge2& child_l);

struct Child {
  PrimVec u;
  Slot slot;
  Wedge2 lp;  ///< u' ^ u
};

struct ChildSet {
  std::vector<Child> children;
  std::vector<std::string> inadmissible;  ///< slots without a primitive solution
  Integer total = 0;                     ///< (a, b, c) slots in the windows
};

/// sigma_eps(u): psi(u, a, b, c) for 1 <= a <= N, 0 <= b <= a, gcd(a, b) = 1,
/// 20 | c in the open window. When limit is set, at most that many children
/// per (a, b) are materialized, evenly spread over the window.
ChildSet cantor_children(const PrimVec& u, const Rational& eps, const Integer& n,
                         std::optional<std::size_t> limit = std::nullopt);

/// rho = eps^9 / (2^11 N^3).
Rational spacing_rho(const Rational& eps, const Integer& n);

/// dist(Delta(u'), Delta(u'')) > rho diam Delta(u), bounded below through
/// the outer balls.
bool verify_spacing(const latinv::Invariants& parent, const Child& c1, const Child& c2,
                    const Rational& eps, const Integer& n);

struct SpacingReport {
  std::uint64_t pairs_close = 0;  ///< pairs compared exactly after bucketing
  std::uint64_t failures = 0;
  std::string witness;
};

/// Every sibling pair checked; pairs whose centres are far apart are
/// dismissed by exact grid bucketing before the exact comparison.
SpacingReport verify_all_spacing(const latinv::Invariants& parent,
                                 const std::vector<Child>& kids, const Rational& eps,
                                 const Integer& n);

// Chains ----------------------------------------------------------------

struct ChainNode {
  PrimVec u;
  std::optional<Rational> eps_used;
  std::optional<Slot> slot;
};

struct FixedPolicy {
  Rational eps;
  Integer n = 1;
};

/// eps_k = 1 / (2^7 logloglog(k + C')), N_k = k + 1.
struct SingSchedulePolicy {
  double c_prime = 4.0e6;
};

struct SlowPolicy {
  Rational eps_prime;
};

using Policy = std::variant<FixedPolicy, SingSchedulePolicy, SlowPolicy>;

enum class ScheduleTag { fixed_eps, sing_schedule, slow };

struct Chain {
  std::vector<ChainNode> nodes;
  ScheduleTag tag = ScheduleTag::fixed_eps;
};

Chain seed_chain(const PrimVec& u0, ScheduleTag tag = ScheduleTag::fixed_eps);

/// The parameters (eps_k, N_k) of the shrinking schedule for step k.
std::pair<Rational, Integer> sing_parameters(std::size_t k, double c_prime);

/// Appends one node: the smallest (a, b, c) whose child keeps every chain
/// invariant (N_eps, nesting, growth, Q'_eps). The shrinking schedule also
/// requires eps(u') < eps(u).
Chain extend_chain(Chain chain, const Policy& policy);

struct ChainAudit {
  bool n_eps = true;     ///< every step lies in N_eps
  bool nested = true;    ///< closure Delta(u_{k+1}) in Delta(u_k)
  bool growth = true;    ///< |u_{k+1}| > eps^{-6} |u_k| whenever u_k in Q_eps
  bool shell = true;     ///< psi steps land in Q'_eps
  bool off_line = true;  ///< consecutive wedges are not proportional
  std::string witness;
  /// min |u_{k+1}| eps^6 / |u_k| over steps with u_k in Q_eps.
  std::optional<Rational> min_growth;
  bool ok() const { return n_eps && nested && growth && shell && off_line; }
};

ChainAudit audit_chain(const Chain& chain);

struct TreeConfig {
  Rational eps{1, 8};
  Integer n = 1;
  int depth = 3;
  std::size_t expand = 5;                  ///< children expanded per node
  std::optional<std::size_t> child_limit;  ///< per (a, b); all when empty
};

struct TreeLevel {
  int depth = 0;
  std::size_t parents = 0;
  Integer slots = 0;          ///< window slots over all parents
  std::size_t checked = 0;    ///< children materialized and checked
  std::size_t inadmissible = 0;
  std::size_t n_eps_fail = 0;
  std::size_t shell_fail = 0;
  std::size_t nested_fail = 0;
  std::size_t growth_checked = 0;
  std::size_t growth_fail = 0;
  std::uint64_t spacing_pairs = 0;
  std::uint64_t spacing_fail = 0;
  std::optional<Rational> min_growth;  ///< min |u'| eps^6 / |u| where checked
  std::string witness;
  bool ok() const {
    return inadmissible == 0 && n_eps_fail == 0 && shell_fail == 0 && nested_fail == 0 &&
           growth_fail == 0 && spacing_fail == 0;
  }
};

struct TreeReport {
  std::vector<TreeLevel> levels;
  Integer root_children = 0;
  bool ok() const;
};

/// Cantor tree from the seed: every materialized child is checked exactly,
/// all sibling pairs are spacing-checked, and `expand` evenly spread
/// children of each node are expanded further.
TreeReport psi_tree(const PrimVec& seed, const TreeConfig& cfg);

struct LimitBox {
  RatPoint center;
  Rational radius;
};

/// (u._last, 2 |L(u_last)| / |u_last|^2). Requires |u_last| > 1.
LimitBox limit_box(const Chain& chain);

struct SandwichSample {
  Rational e;
  Rational w_cubed;   ///< min_k ||g_t h_x u_k||'^3
  Rational wx_cubed;  ///< exact shortest length^3
  bool upper = false;  ///< W_x <= W
  bool lower = false;  ///< W + log(1 - eps^6) <= W_x
};

struct SuffReport {
  RatPoint x;
  Rational e_lo, e_hi;
  std::vector<SandwichSample> samples;
  /// Local maxima of W as eps_x(u_k, u_{k+1})^3 = |u_{k+1}| hor_x(u_k)^2.
  std::vector<Rational> maxima_cubed;
  bool maxima_ok = true;          ///< eps_x^{3/2} < 2 eps^{3/2} for every maximum
  bool maxima_literal_ok = true;  ///< eps_x <= 2 eps^{3/2} (the unnormalized reading)
  bool vacuous = false;
  bool ok() const;
};

/// Sandwich check at sample times with x = u._last, on the window between
/// tau(u_1) and tau(u_{last-1}); W_x comes from the lattice oracle. Chains
/// shorter than depth 3 pass vacuously.
SuffReport suff_audit(const Chain& chain, int t_samples, const Rational& eps,
                      std::uint64_t node_budget = 5'000'000);

// Schedules and slowly divergent chains ---------------------------------

/// Piecewise-linear interpolation of nondecreasing samples.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> ts, std::vector<double> ys);
  double operator()(double t) const;
  double front_t() const { return ts_.front(); }
  double back_t() const { return ts_.back(); }

 private:
  std::vector<double> ts_, ys_;
};

/// Nondecreasing step function f = y_k on [t_k, t_{k+1}).
struct Schedule {
  std::vector<double> t;
  std::vector<double> y;
  double delta = 0;

  double operator()(double s) const;
  /// f(t) <= F(t) at every breakpoint.
  bool below(const std::function<double(double)>& big_f) const;
  /// f(t + f(t)) <= f(t) + delta at every breakpoint.
  bool slow_growth() const;
};

/// t_k = t_{k-1} + y_{k-1}, y_k = min(F(t_k), y_{k-1} + delta), up to t_max.
Schedule regularize_schedule(const std::function<double(double)>& big_f, double delta,
                             double t0, double t_max);

struct SlowStep {
  PrimVec u;
  Rational eps_ratio_cubed;  ///< eps(u')^3 / eps'^3; log eps(u') - log eps' = log(.)/3
  Rational tau_defect_arg;   ///< tau(u') - tau(u) - 2|log eps'| - |log eps(u)| = log(.)/3
  double eps_defect() const;
  double tau_defect() const;
};

/// u' with u' ^ u = Lhat(u) and the least height exceeding eps'^{-3}|Lhat|^2.
SlowStep slow_step(const PrimVec& u, const Rational& eps_prime);

struct SlowCertificate {
  Chain chain;
  Schedule f_tilde;       ///< regularized schedule for F = -W_target; f = f_tilde / 3
  std::vector<double> eps;        ///< eps(u_k)
  std::vector<double> tau;        ///< tau(u_k)
  std::vector<double> eps_prime;  ///< eps' used at each step
  double b_measured = 0;          ///< max |f(tau(u_k)) + log eps(u_k)|
  double d_const = 0;             ///< |log(1 - 3^{-6})|
  double recursion_defect = 0;    ///< max |tau(u_{k+1}) - tau(u_k) - 3|log eps(u_k)||
  double slack = 0;               ///< max (W_target(t) - W_x(t)) over samples
  int samples = 0;
  bool eps_decreasing = true;
  bool tau_increasing = true;
  bool certificate_ok = true;     ///< slack <= 3 B + D
  bool di_type = false;           ///< eps(u_k) does not tend to zero along the run
  bool vacuous = false;           ///< fewer than two steps: nothing to certify
};

/// Chain built by slow steps with |log eps'| = f(tau(u) + |log eps(u)|) and
/// the certificate W_x >= W_target - slack on sampled times.
SlowCertificate slow_chain(const PrimVec& u0, const std::function<double(double)>& w_target,
                           double delta, int steps, int t_samples = 200,
                           std::uint64_t node_budget = 5'000'000);

/// The schedule for F = -W_target, started at the first t0 in {1, 2, 4, ...}
/// with F(t0) > 0 and computed up to t_max.
Schedule slow_schedule(const std::function<double(double)>& w_target, double delta,
                       double t_max);

/// Height-q vector minimizing |f(tau(u)) + log eps(u)| with f = f_tilde / 3,
/// over p1 < 40 and all p2.
PrimVec aligned_seed(const Integer& q, const Schedule& f_tilde);

}  // namespace diophlab::construct
