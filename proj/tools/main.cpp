#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "audit.hpp"
#include "diophlab/bestapprox.hpp"
#include "diophlab/cfrac.hpp"
#include "diophlab/construct.hpp"
#include "diophlab/dimension.hpp"
#include "diophlab/domains.hpp"
#include "diophlab/latinv.hpp"
#include "report.hpp"

namespace {

using namespace diophlab;
using namespace diophlab::cli;

struct Globals {
  std::string format = "json";
  std::string norm = "sup";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  double tol = 1e-12;
};

// best-approx -----------------------------------------------------------

struct BestArgs {
  std::string x;
  std::string qmax;
  std::string fault = "none";
};

Output cmd_best(const BestArgs& a) {
  Output out("best-approx");
  const RatPoint x = parse_point(a.x);
  const auto fault = a.fault == "shifted" ? bestapprox::Fault::shifted_choice : bestapprox::Fault::none;
  const auto seq = bestapprox::best_approximations(x, Integer(a.qmax), fault);
  out.doc["target"] = point(x);
  out.doc["height_bound"] = integer(seq.height_bound);
  out.doc["exact_hit"] = seq.exact_hit;
  out.set_columns({"j", "p1", "p2", "q", "hor"});
  for (std::size_t j = 0; j < seq.items.size(); ++j) {
    const auto& it = seq.items[j];
    out.row({j, integer(it.v.p1()), integer(it.v.p2()), integer(it.v.q()), rat(it.hor)});
  }
  if (fault != bestapprox::Fault::none) {
    const auto r = bestapprox::audit_realise(seq);
    out.check(r.ok, "realise: " + r.witness);
  }
  return out;
}

// profile ----------------------------------------------------------------

Output cmd_profile(const BestArgs& a) {
  Output out("profile");
  const RatPoint x = parse_point(a.x);
  const auto prof = bestapprox::wx_profile(bestapprox::best_approximations(x, Integer(a.qmax)));
  out.doc["target"] = point(x);
  out.doc["window"] = {{"e_lo", rat(prof.e_lo)}, {"e_hi", prof.e_hi ? rat(*prof.e_hi) : json(nullptr)}};
  json minima = json::array();
  for (const auto& m : prof.minima) minima.push_back({{"v", vec(m.v)}, {"hor", rat(m.hor)}});
  out.doc["minima"] = std::move(minima);
  out.set_columns({"j", "height", "e", "tau", "eps_cubed", "log_eps"});
  for (std::size_t j = 0; j < prof.maxima.size(); ++j) {
    const auto& c = prof.maxima[j];
    out.row({j + 1, integer(c.v_height), rat(c.e_value()), log_quantity(c.e_value(), c.tau()),
             rat(c.eps_cubed()), log_quantity(c.eps_cubed(), c.log_eps())});
  }
  return out;
}

// invariants -------------------------------------------------------------

Output cmd_invariants(const std::string& v_str, NormChoice norm) {
  Output out("invariants");
  const PrimVec v = parse_vec(v_str);
  const auto inv = latinv::invariants(v);
  const auto basis = latinv::reduced_basis(v, norm);
  out.doc["v"] = vec(v);
  out.doc["norm"] = std::string(to_string(norm));
  out.doc["basis"] = json::array({wedge(basis.b1), wedge(basis.b2)});
  out.set_columns({"name", "exact", "value"});
  out.row({"L", wedge(inv.L), nullptr});
  out.row({"Lhat", wedge(inv.Lhat), nullptr});
  out.row({"|L|", integer(inv.abs_l), nullptr});
  out.row({"|Lhat|", integer(inv.abs_lhat), nullptr});
  out.row({"eps^3", rat(inv.eps_cubed()), real(inv.eps())});
  out.row({"delta^2", rat(inv.delta_squared()), real(inv.delta())});
  out.row({"tau", log_quantity(inv.tau_arg(), inv.tau()), real(inv.tau())});
  return out;
}

// domain -----------------------------------------------------------------

Output cmd_domain(const std::string& x_str, const std::string& v_str, const std::string& u_str) {
  Output out("domain");
  const RatPoint x = parse_point(x_str);
  const PrimVec v = parse_vec(v_str);
  const auto b = domains::ball_bounds(v);
  out.doc["target"] = point(x);
  out.doc["v"] = vec(v);
  out.set_columns({"name", "value"});
  out.row({"in_domain", domains::in_domain(x, v)});
  out.row({"center", point(b.center)});
  out.row({"r", rat(b.r)});
  out.row({"inner_radius", rat(b.inner())});
  out.row({"outer_radius", rat(b.outer())});
  if (!u_str.empty()) {
    const PrimVec u = parse_vec(u_str);
    out.doc["u"] = vec(u);
    out.row({"in_half_domain", domains::in_half_domain(x, u, v)});
    const auto c = domains::crossing(x, u, v);
    out.row({"crossing_eps_cubed", rat(c.eps_cubed())});
    out.row({"crossing_tau", real(c.tau())});
    out.row({"crossing_log_eps", real(std::log(c.eps()))});
    const auto s = domains::best_sandwich(x, u, v);
    out.row({"sandwich_lower", s.lower});
    out.row({"sandwich_upper", s.upper});
  }
  return out;
}

// psi-tree ---------------------------------------------------------------

struct TreeArgs {
  std::string root = "0,0,1";
  std::string eps = "1/8";
  std::string n = "1";
  int depth = 3;
  std::size_t expand = 5;
  std::optional<std::size_t> child_limit;
  std::string growth = "literal";
};

Output cmd_psi_tree(const TreeArgs& a) {
  Output out("psi-tree");
  construct::TreeConfig cfg;
  cfg.eps = parse_rational(a.eps);
  cfg.n = Integer(a.n);
  cfg.depth = a.depth;
  cfg.expand = a.expand;
  cfg.child_limit = a.child_limit;
  const PrimVec root = parse_vec(a.root);
  const auto rep = construct::psi_tree(root, cfg);
  out.doc["root"] = vec(root);
  out.doc["eps"] = rat(cfg.eps);
  out.doc["n"] = integer(cfg.n);
  out.doc["root_children"] = integer(rep.root_children);
  out.doc["rho"] = rat(construct::spacing_rho(cfg.eps, cfg.n));
  out.doc["growth_mode"] = a.growth;
  out.set_columns({"depth", "parents", "slots", "checked", "inadmissible", "n_eps_fail", "shell_fail",
                   "nested_fail", "growth_checked", "growth_fail", "min_growth", "spacing_pairs",
                   "spacing_fail"});
  for (const auto& lv : rep.levels) {
    out.row({lv.depth, lv.parents, integer(lv.slots), lv.checked, lv.inadmissible, lv.n_eps_fail,
             lv.shell_fail, lv.nested_fail, lv.growth_checked, lv.growth_fail,
             lv.min_growth ? rat(*lv.min_growth) : json(nullptr), lv.spacing_pairs, lv.spacing_fail});
    const std::string at = "depth " + std::to_string(lv.depth) + ": ";
    out.check(lv.inadmissible == 0, at + "inadmissible slot");
    out.check(lv.n_eps_fail == 0 && lv.shell_fail == 0 && lv.nested_fail == 0 && lv.spacing_fail == 0,
              at + lv.witness);
    if (a.growth == "literal") {
      out.check(lv.growth_fail == 0, at + std::to_string(lv.growth_fail) + " children below eps^-6 |u|");
    } else if (lv.min_growth) {
      out.check(*lv.min_growth > Rational(1, 4), at + "growth ratio " + to_string(*lv.min_growth) + " <= 1/4");
    }
  }
  return out;
}

// slow-chain -------------------------------------------------------------

struct SlowArgs {
  int steps = 15;
  int samples = 200;
  double delta = 1.0;
  std::string target = "log";
  std::string seed_height = "1000";
};

Output cmd_slow_chain(const SlowArgs& a) {
  Output out("slow-chain");
  std::function<double(double)> w;
  if (a.target == "log") {
    w = [](double t) { return -std::log1p(t); };
  } else if (a.target == "loglog") {
    w = [](double t) { return -std::log1p(std::log1p(t)); };
  } else if (a.target == "sqrt") {
    w = [](double t) { return -std::sqrt(t); };
  } else {
    throw PreconditionError("unknown target: " + a.target);
  }
  const auto f = construct::slow_schedule(w, a.delta, 64);
  const PrimVec seed = construct::aligned_seed(Integer(a.seed_height), f);
  const auto c = construct::slow_chain(seed, w, a.delta, a.steps, a.samples);
  out.doc["target"] = a.target;
  out.doc["delta"] = a.delta;
  out.doc["seed"] = vec(seed);
  out.doc["certificate"] = {{"b_measured", real(c.b_measured)},       {"d_const", real(c.d_const)},
                            {"recursion_defect", real(c.recursion_defect)}, {"slack", real(c.slack)},
                            {"samples", c.samples},                    {"eps_decreasing", c.eps_decreasing},
                            {"tau_increasing", c.tau_increasing},      {"certificate_ok", c.certificate_ok},
                            {"di_type", c.di_type},                    {"vacuous", c.vacuous}};
  out.set_columns({"k", "u", "eps", "tau", "eps_prime"});
  for (std::size_t k = 0; k < c.chain.nodes.size(); ++k) {
    out.row({k, vec(c.chain.nodes[k].u), k < c.eps.size() ? real(c.eps[k]) : json(nullptr),
             k < c.tau.size() ? real(c.tau[k]) : json(nullptr),
             k < c.eps_prime.size() ? real(c.eps_prime[k]) : json(nullptr)});
  }
  std::string where;
  for (std::size_t k = 1; k < c.eps.size() && where.empty(); ++k)
    if (!(c.eps[k] < c.eps[k - 1])) where = std::to_string(k - 1) + " -> " + std::to_string(k);
  out.check(c.eps_decreasing, "eps(u_k) not strictly decreasing at steps " + where);
  out.check(c.tau_increasing, "tau(u_k) not strictly increasing");
  out.check(c.certificate_ok, "slack exceeds 3B + D");
  return out;
}

// dims -------------------------------------------------------------------

Output cmd_dims_cantor(double delta) {
  Output out("dims");
  out.doc["mode"] = "cantor";
  out.doc["delta"] = delta;
  const auto r = dimension::cantor_exact_dim(delta);
  out.set_columns({"name", "value"});
  out.row({"s", real(r.s)});
  out.row({"residual", real(r.residual)});
  out.row({"method", r.method});
  if (delta < 1) {
    const auto b = dimension::cantor_bounds(delta);
    out.row({"h_d", real(b.h_d)});
    out.row({"h_g", real(b.h_g)});
  }
  out.check(r.residual < 1e-12, "residual above 1e-12");
  return out;
}

Output cmd_dims_crossing() {
  Output out("dims");
  out.doc["mode"] = "crossing";
  const auto c = dimension::cantor_crossing();
  out.set_columns({"name", "value"});
  out.row({"delta", real(c.delta)});
  out.row({"h", real(c.h)});
  out.row({"residual", real(c.residual)});
  return out;
}

struct DimTreeArgs {
  std::string left = "1/3";
  std::string right = "1/3";
  int depth = 5;
  std::string rho = "1/4";
  std::optional<double> s;
};

Output cmd_dims_tree(const DimTreeArgs& a, double tol) {
  Output out("dims");
  out.doc["mode"] = "tree";
  const auto tree = dimension::two_piece_tree(parse_rational(a.left), parse_rational(a.right), a.depth);
  const auto est = dimension::covering_s_estimate(tree);
  const double s = a.s.value_or(est.s);
  dimension::LowerCertOptions opts;
  opts.rho = parse_rational(a.rho);
  opts.sum_tolerance = tol;
  const auto cert = dimension::lower_cert(tree, s, opts);
  out.doc["s_estimate"] = real(est.s);
  out.doc["s_certified"] = real(s);
  out.doc["pass"] = cert.pass;
  out.set_columns({"node", "diam", "rho", "sum"});
  for (const auto& n : cert.sums) out.row({n.node, real(n.diam), real(n.rho), real(n.sum)});
  if (!cert.pass) {
    const auto& v = cert.violations.front();
    out.fail(v.node + " (" + v.condition + "): " + v.detail);
  }
  return out;
}

// dn ---------------------------------------------------------------------

struct DnArgs {
  long n = 72;
  int depth = 4;
  std::optional<long> a_max;
  std::size_t expand = 6;
  std::string root = "1/2";
  bool strict_sums = false;
};

Output cmd_dn(const DnArgs& a, double tol) {
  Output out("dn");
  const auto b = dimension::dn_bounds(static_cast<double>(a.n));
  out.doc["n"] = a.n;
  out.doc["s_minus"] = {{"s", real(b.s_minus.s)}, {"residual", real(b.s_minus.residual)}};
  out.doc["s_plus"] = {{"s", real(b.s_plus.s)}, {"residual", real(b.s_plus.residual)}};
  out.set_columns({"depth", "parents", "intervals", "nested_fail", "gap_fail", "min_gap_ratio"});
  if (a.depth <= 0) return out;

  cfrac::DnTreeConfig cfg;
  cfg.n = a.n;
  cfg.depth = a.depth;
  if (a.a_max) cfg.a_max = Integer(*a.a_max);
  cfg.expand = a.expand;
  const auto t = cfrac::dn_tree(cfrac::Frac(parse_rational(a.root)), cfg);
  for (const auto& lv : t.levels) {
    out.row({lv.depth, lv.parents, lv.intervals, lv.nested_fail, lv.gap_fail,
             lv.min_gap_ratio ? rat(*lv.min_gap_ratio) : json(nullptr)});
  }
  out.check(t.ok(), t.witness);

  dimension::LowerCertOptions opts;
  opts.rho = Rational(1) / Rational(36 * a.n);
  opts.sum_tolerance = tol;
  const auto cert = dimension::lower_cert(t.tree, b.s_minus.s, opts);
  bool structural = true;
  std::string structural_witness;
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& v : cert.violations) {
    if (v.condition == "iv") continue;
    if (structural) structural_witness = v.node + " (" + v.condition + "): " + v.detail;
    structural = false;
  }
  for (const auto& n : cert.sums) {
    lo = first ? n.sum : std::min(lo, n.sum);
    hi = first ? n.sum : std::max(hi, n.sum);
    first = false;
  }
  const auto range = dimension::node_s_range(t.tree);
  const bool sums_ok = lo >= 1.0 - tol;
  out.doc["lower_cert"] = {{"rho", rat(*opts.rho)},
                           {"nodes", cert.nodes_checked},
                           {"pairs", cert.pairs_checked},
                           {"conditions_i_to_iii", structural},
                           {"sums_at_s_minus", {{"min", real(lo)}, {"max", real(hi)}, {"all_at_least_one", sums_ok}}},
                           {"local_root_range", json::array({real(range.first), real(range.second)})}};
  out.check(structural, structural_witness);
  if (a.strict_sums) out.check(sums_ok, "local sum at s_- below 1: min " + std::to_string(lo));
  return out;
}

// cf ---------------------------------------------------------------------

Output cmd_cf(const std::string& x_str, std::optional<long> n) {
  Output out("cf");
  const Rational x = parse_rational(x_str);
  const auto a = cfrac::partial_quotients(x);
  const auto c = cfrac::convergents(x);
  out.doc["x"] = rat(x);
  json pq = json::array();
  for (const auto& v : a) pq.push_back(integer(v));
  out.doc["partial_quotients"] = std::move(pq);
  const cfrac::Frac v(x);
  if (v.q >= 2) {
    const auto [m, p] = cfrac::neighbors(v);
    out.doc["v_minus"] = m.str();
    out.doc["v_plus"] = p.str();
    if (n) {
      const auto iv = cfrac::interval_IN(v, *n);
      out.doc["interval"] = {{"n", *n}, {"lo", rat(iv.lo)}, {"hi", rat(iv.hi)}, {"length", rat(iv.length())}};
    }
  }
  out.set_columns({"k", "a", "convergent"});
  for (std::size_t k = 0; k < c.size(); ++k) out.row({k, integer(a[k]), c[k].str()});
  return out;
}

// audit-all --------------------------------------------------------------

Output cmd_audit(const Globals& g, const std::string& inject) {
  Output out("audit-all");
  AuditConfig cfg;
  cfg.seed = g.seed;
  cfg.jobs = g.jobs;
  if (inject == "realise-tiebreak") {
    cfg.inject = Injection::realise_tiebreak;
  } else if (inject != "none") {
    throw PreconditionError("unknown injection: " + inject);
  }
  out.doc["seed"] = g.seed;
  out.doc["inject"] = inject;
  out.set_columns({"item", "checks", "failures", "status", "statement", "witness"});
  for (const auto& it : run_audit(cfg)) {
    out.row({it.id, it.checks, it.failures, it.ok() ? "pass" : "FAIL", it.statement, it.witness});
    out.check(it.ok(), it.id + ": " + it.witness);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for singular vectors, best approximations and dimension bounds"};
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "tsv", "table"}));
  app.add_option("--norm", g.norm, "Norm for reduced bases")->check(CLI::IsMember({"sup", "euclidean"}));
  app.add_option("--seed", g.seed, "Seed for randomized audits")->envname("DIOPHLAB_SEED");
  app.add_option("--jobs", g.jobs, "Parallel audit jobs")->check(CLI::Range(1u, 256u));
  app.add_option("--tol", g.tol, "Tolerance for local dimension sums")->check(CLI::PositiveNumber);

  std::function<Output()> action;

  BestArgs best;
  auto* c_best = app.add_subcommand("best-approx", "Best approximations to a rational point");
  c_best->add_option("--x", best.x, "Target x1,x2")->required();
  c_best->add_option("--qmax", best.qmax, "Height bound")->required();
  c_best->add_option("--fault", best.fault, "Corrupt the enumerator")->check(CLI::IsMember({"none", "shifted"}));
  c_best->callback([&] { action = [&] { return cmd_best(best); }; });

  BestArgs prof;
  auto* c_prof = app.add_subcommand("profile", "Piecewise-linear W_x and its local maxima");
  c_prof->add_option("--x", prof.x, "Target x1,x2")->required();
  c_prof->add_option("--qmax", prof.qmax, "Height bound")->required();
  c_prof->callback([&] { action = [&] { return cmd_profile(prof); }; });

  std::string inv_v;
  auto* c_inv = app.add_subcommand("invariants", "Lattice invariants of a primitive vector");
  c_inv->add_option("--v", inv_v, "Vector p1,p2,q")->required();
  c_inv->callback([&] { action = [&] { return cmd_invariants(inv_v, parse_norm(g.norm)); }; });

  std::string dom_x, dom_v, dom_u;
  auto* c_dom = app.add_subcommand("domain", "Domain of approximation membership and ball bounds");
  c_dom->add_option("--x", dom_x, "Point x1,x2")->required();
  c_dom->add_option("--v", dom_v, "Vector p1,p2,q")->required();
  c_dom->add_option("--u", dom_u, "Earlier vector p1,p2,q for half domains and crossings");
  c_dom->callback([&] { action = [&] { return cmd_domain(dom_x, dom_v, dom_u); }; });

  TreeArgs tree;
  auto* c_tree = app.add_subcommand("psi-tree", "Audited Cantor tree of psi children");
  c_tree->add_option("--root", tree.root, "Root vector p1,p2,q");
  c_tree->add_option("--eps", tree.eps, "eps as a rational");
  c_tree->add_option("--n", tree.n, "N");
  c_tree->add_option("--depth", tree.depth, "Depth")->check(CLI::Range(1, 6));
  c_tree->add_option("--expand", tree.expand, "Children expanded per node")->check(CLI::PositiveNumber);
  c_tree->add_option("--child-limit", tree.child_limit, "Children materialized per (a, b)");
  c_tree->add_option("--growth", tree.growth, "Growth check: literal eps^-6 or sup-norm eps^-6/4")
      ->check(CLI::IsMember({"literal", "sup"}));
  c_tree->callback([&] { action = [&] { return cmd_psi_tree(tree); }; });

  SlowArgs slow;
  auto* c_slow = app.add_subcommand("slow-chain", "Slowly divergent chain with certificate");
  c_slow->add_option("--steps", slow.steps, "Steps")->check(CLI::Range(0, 40));
  c_slow->add_option("--samples", slow.samples, "Certificate samples")->check(CLI::Range(2, 100000));
  c_slow->add_option("--delta", slow.delta, "Schedule growth delta")->check(CLI::PositiveNumber);
  c_slow->add_option("--target", slow.target, "W_target: log, loglog or sqrt")
      ->check(CLI::IsMember({"log", "loglog", "sqrt"}));
  c_slow->add_option("--seed-height", slow.seed_height, "Height of the seed vector");
  c_slow->callback([&] { action = [&] { return cmd_slow_chain(slow); }; });

  auto* c_dims = app.add_subcommand("dims", "Dimension solvers");
  c_dims->require_subcommand(1);
  c_dims->fallthrough();
  double cantor_delta = 0.5;
  auto* c_cantor = c_dims->add_subcommand("cantor", "Dimension of the distorted Cantor set");
  c_cantor->add_option("--delta", cantor_delta, "delta in (0, 1]")->required();
  c_cantor->callback([&] { action = [&] { return cmd_dims_cantor(cantor_delta); }; });
  auto* c_cross = c_dims->add_subcommand("crossing", "Crossing of the density and gap bounds");
  c_cross->callback([&] { action = [] { return cmd_dims_crossing(); }; });
  DimTreeArgs dtree;
  auto* c_dtree = c_dims->add_subcommand("tree", "Covering estimate and lower certificate on a two-piece tree");
  c_dtree->add_option("--left", dtree.left, "Left piece ratio");
  c_dtree->add_option("--right", dtree.right, "Right piece ratio");
  c_dtree->add_option("--depth", dtree.depth, "Depth")->check(CLI::Range(1, 14));
  c_dtree->add_option("--rho", dtree.rho, "Spacing constant");
  c_dtree->add_option("--s", dtree.s, "Exponent to certify (default: the estimate)");
  c_dtree->callback([&] { action = [&] { return cmd_dims_tree(dtree, g.tol); }; });

  DnArgs dn;
  auto* c_dn = app.add_subcommand("dn", "Exponent bounds and audited interval tree for D_N");
  c_dn->add_option("--n", dn.n, "N >= 72")->check(CLI::Range(72L, 1000000L));
  c_dn->add_option("--depth", dn.depth, "Tree depth (0 for bounds only)")->check(CLI::Range(0, 6));
  c_dn->add_option("--a-max", dn.a_max, "Largest partial quotient (default 2N)");
  c_dn->add_option("--expand", dn.expand, "Children expanded per node")->check(CLI::PositiveNumber);
  c_dn->add_option("--root", dn.root, "Root fraction with q >= 2");
  c_dn->add_flag("--strict-sums", dn.strict_sums, "Fail when a local sum at s_- is below 1");
  c_dn->callback([&] { action = [&] { return cmd_dn(dn, g.tol); }; });

  std::string cf_x;
  std::optional<long> cf_n;
  auto* c_cf = app.add_subcommand("cf", "Continued fraction, neighbours and I_N");
  c_cf->add_option("--x", cf_x, "Rational x")->required();
  c_cf->add_option("--n", cf_n, "N for I_N(x)")->check(CLI::PositiveNumber);
  c_cf->callback([&] { action = [&] { return cmd_cf(cf_x, cf_n); }; });

  std::string inject = "none";
  auto* c_audit = app.add_subcommand("audit-all", "Run the full property audit");
  c_audit->add_option("--inject", inject, "Fault injection")->check(CLI::IsMember({"none", "realise-tiebreak"}));
  c_audit->callback([&] { action = [&] { return cmd_audit(g, inject); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) {
    std::cerr << "A subcommand is required\nRun with --help for more information.\n";
    return 2;
  }

  try {
    const Output out = action();
    emit(out, parse_format(g.format), std::cout);
    if (out.failed) {
      std::cerr << "audit failure: " << out.witness << '\n';
      return 1;
    }
    return 0;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
}
