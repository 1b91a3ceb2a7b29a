#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dplab/error.hpp"
#include "dplab/experiments.hpp"
#include "dplab/regularity.hpp"
#include "dplab/transforms.hpp"

namespace dplab {

namespace {

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

Grid1D read_grid(ConfigReader& r, const std::string& section, const Grid1D& fallback, bool required,
                 bool nt_required = true) {
  Grid1D g = fallback;
  auto num = [&](const char* key, double def) {
    return required ? r.number(section, key) : r.number(section, key, def);
  };
  auto cnt = [&](const char* key, std::size_t def, bool req) {
    return req ? r.count(section, key) : r.count(section, key, def);
  };
  g.x_lo = num("x_lo", fallback.x_lo);
  g.x_hi = num("x_hi", fallback.x_hi);
  g.t_lo = num("t_lo", fallback.t_lo);
  g.t_hi = num("t_hi", fallback.t_hi);
  g.nx = cnt("nx", fallback.nx, required);
  g.nt = cnt("nt", fallback.nt, required && nt_required);
  return g;
}

void read_coefficient(ConfigReader& r, std::string& name, ParamMap& params, bool required) {
  name = required ? r.text("coefficient", "name") : r.text("coefficient", "name", name);
  const auto m = r.number_map("coefficient", {"name"});
  params = ParamMap(m.begin(), m.end());
}

ProblemSpec read_problem(ConfigReader& r, bool with_pq, bool nt_required) {
  ProblemSpec s;
  if (with_pq) {
    s.params.p = r.number("params", "p");
    s.params.q = r.number("params", "q");
  }
  s.params.beta1 = r.number("params", "beta1", 1.0);
  s.params.beta2 = r.number("params", "beta2", 1.0);
  s.params.C_f = r.number("params", "C_f", 0.0);
  read_coefficient(r, s.coefficient, s.coefficient_params, true);
  s.source = r.text("source", "name", "zero");
  const auto m = r.number_map("source", {"name"});
  s.source_params = ParamMap(m.begin(), m.end());
  s.grid = read_grid(r, "grid", s.grid, true, nt_required);
  s.data = r.text("data", "name", "smooth");
  s.amplitude = r.number("data", "amplitude", 1.0);
  return s;
}

FieldSweep read_fields(ConfigReader& r) {
  FieldSweep f;
  f.problem = read_problem(r, false, true);
  f.p_values = r.numbers("fields", "p");
  f.q_values = r.numbers("fields", "q");
  if (f.p_values.size() != f.q_values.size()) {
    r.fail(fmt::format("fields.p and fields.q must have equal length ({} vs {})", f.p_values.size(),
                       f.q_values.size()));
  }
  return f;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

void check_problem(const ProblemSpec& s) {
  s.grid.validate();
  require(contains(data_names(), s.data), fmt::format("unknown data '{}'", s.data));
  require(std::isfinite(s.amplitude), "data amplitude must be finite");
  // Build once on the given grid to surface unknown builtins and bad params.
  (void)s.build();
}

void check_fields(const FieldSweep& f) {
  require(!f.p_values.empty() && f.p_values.size() == f.q_values.size(),
          "fields need matching nonempty p and q lists");
  for (std::size_t k = 0; k < f.p_values.size(); ++k) {
    check_problem(f.problem.with(f.p_values[k], f.q_values[k], f.problem.grid.nx, f.problem.grid.nt));
  }
}

void check_counts(const std::vector<std::size_t>& v, std::size_t min, const std::string& what) {
  require(!v.empty(), what + " must not be empty");
  for (std::size_t x : v) require(x >= min, fmt::format("{} entries must be >= {}", what, min));
}

void check_positive(const std::vector<double>& v, const std::string& what) {
  require(!v.empty(), what + " must not be empty");
  for (double x : v) require(x > 0.0, what + " entries must be positive");
}

ExperimentPlan read_plan(ConfigReader& r, const std::string& kind) {
  if (kind == "solve") {
    SolveOptions o;
    o.dt_ratio = r.number("solve", "dt_ratio", o.dt_ratio);
    o.problem = read_problem(r, true, o.dt_ratio <= 0.0);
    o.nx = r.counts("solve", "nx");
    o.heat_reference = r.flag("solve", "heat_reference", o.heat_reference);
    o.max_error = r.number("solve", "max_error", o.max_error);
    o.min_order = r.number("solve", "min_order", o.min_order);
    o.output_levels = r.count("solve", "output_levels", o.output_levels);
    return o;
  }
  if (kind == "counterexample") {
    CounterexampleOptions o;
    o.p = r.number("counterexample", "p");
    o.q = r.number("counterexample", "q");
    o.eps = r.number("counterexample", "eps");
    o.h = r.number("counterexample", "h");
    o.cells = r.counts("counterexample", "cells");
    o.slope_rel_tol = r.number("counterexample", "slope_rel_tol", o.slope_rel_tol);
    o.p_change_max = r.number("counterexample", "p_change_max", o.p_change_max);
    return o;
  }
  if (kind == "compare") {
    CompareOptions o;
    o.trials = r.count("compare", "trials");
    o.seed = r.count("compare", "seed", o.seed);
    o.p_values = r.numbers("compare", "p_values");
    o.q_offsets = r.numbers("compare", "q_offsets");
    o.coefficients = r.texts("compare", "coefficients");
    o.modes = r.count("compare", "modes", o.modes);
    o.eps = r.number("compare", "eps", o.eps);
    o.tol = r.number("compare", "tol", o.tol);
    o.grid = read_grid(r, "grid", o.grid, true);
    return o;
  }
  if (kind == "barrier") {
    BarrierOptions o;
    o.p_values = r.numbers("barrier", "p_values");
    o.q_offsets = r.numbers("barrier", "q_offsets");
    o.gaps = r.numbers("barrier", "gaps");
    read_coefficient(r, o.coefficient, o.coefficient_params, false);
    o.source = r.text("source", "name", o.source);
    o.C_f = r.number("barrier", "C_f", o.C_f);
    o.osc = r.number("barrier", "osc", o.osc);
    o.L = r.number("barrier", "L", o.L);
    o.sample_nx = r.count("barrier", "sample_nx", o.sample_nx);
    o.sample_nt = r.count("barrier", "sample_nt", o.sample_nt);
    o.residual_floor = r.number("barrier", "residual_floor", o.residual_floor);
    o.scaling_factor = r.number("barrier", "scaling_factor", o.scaling_factor);
    o.heat_check = r.flag("barrier", "heat_check", o.heat_check);
    if (r.has("barrier", "heat_dims")) o.heat_dims = r.counts("barrier", "heat_dims");
    return o;
  }
  if (kind == "modulus") {
    ModulusOptions o;
    o.fields = read_fields(r);
    o.inner.x_lo = r.number("modulus", "x_lo", o.inner.x_lo);
    o.inner.x_hi = r.number("modulus", "x_hi", o.inner.x_hi);
    o.inner.t_lo = r.number("modulus", "t_lo", o.inner.t_lo);
    o.inner.t_hi = r.number("modulus", "t_hi", o.inner.t_hi);
    o.slack = r.number("modulus", "slack", o.slack);
    return o;
  }
  if (kind == "infconv") {
    InfConvOptions o;
    o.grid = read_grid(r, "grid", o.grid, false);
    o.p = r.number("infconv", "p", o.p);
    o.q = r.number("infconv", "q", o.q);
    o.ell = r.number("infconv", "ell", o.ell);
    o.omega_slope = r.number("infconv", "omega_slope", o.omega_slope);
    o.eps = r.numbers("infconv", "eps");
    o.semiconcavity_tol = r.number("infconv", "semiconcavity_tol", o.semiconcavity_tol);
    o.analytic_eps = r.number("infconv", "analytic_eps", o.analytic_eps);
    o.analytic_nx = r.count("infconv", "analytic_nx", o.analytic_nx);
    return o;
  }
  if (kind == "inequalities") {
    InequalityOptions o;
    o.r = r.numbers("inequalities", "r");
    o.pairs = r.count("inequalities", "pairs");
    o.seed = r.count("inequalities", "seed", o.seed);
    o.slack = r.number("inequalities", "slack", o.slack);
    return o;
  }
  if (kind == "class_s") {
    ClassSOptions o;
    o.fields = read_fields(r);
    o.nx = r.counts("class_s", "nx");
    o.time_power = r.number("class_s", "time_power", o.time_power);
    o.tol_constant = r.number("class_s", "tol_constant", o.tol_constant);
    return o;
  }
  if (kind == "psi_scan") {
    PsiOptions o;
    o.fields = read_fields(r);
    if (r.has("psi_scan", "profiles")) o.profiles = r.texts("psi_scan", "profiles");
    o.alpha = r.number("psi_scan", "alpha", o.alpha);
    o.beta = r.number("psi_scan", "beta", o.beta);
    o.anchors_per_axis = r.count("psi_scan", "anchors_per_axis", o.anchors_per_axis);
    o.amplitude_factor = r.number("psi_scan", "amplitude_factor", o.amplitude_factor);
    return o;
  }
  if (kind == "caccioppoli") {
    CaccioppoliOptions o;
    o.fields = read_fields(r);
    o.nx = r.counts("caccioppoli", "nx");
    o.time_power = r.number("caccioppoli", "time_power", o.time_power);
    o.cap = r.number("caccioppoli", "cap", o.cap);
    o.stability = r.number("caccioppoli", "stability", o.stability);
    o.cutoff.xc = r.number("caccioppoli", "xc", o.cutoff.xc);
    o.cutoff.rx = r.number("caccioppoli", "rx", o.cutoff.rx);
    o.cutoff.tc = r.number("caccioppoli", "tc", o.cutoff.tc);
    o.cutoff.rt = r.number("caccioppoli", "rt", o.cutoff.rt);
    return o;
  }
  if (kind == "steklov") {
    SteklovOptions o;
    o.p = r.number("steklov", "p");
    o.q = r.number("steklov", "q");
    read_coefficient(r, o.coefficient, o.coefficient_params, false);
    o.grid = read_grid(r, "grid", o.grid, false);
    o.windows = r.counts("steklov", "windows");
    o.deltas = r.numbers("steklov", "deltas");
    const std::string side = r.text("steklov", "side", "left");
    if (side != "left" && side != "right") r.fail("steklov.side must be left or right");
    o.left = side == "left";
    o.mollify_grid.nx = r.count("steklov", "mollify_nx", o.mollify_grid.nx);
    o.tol = r.number("steklov", "tol", o.tol);
    o.tail_slack = r.number("steklov", "tail_slack", o.tail_slack);
    return o;
  }
  std::string known;
  for (const auto& [k, d] : experiment_catalog()) known += (known.empty() ? "" : ", ") + k;
  throw ConfigError(fmt::format("unknown experiment kind '{}' (known: {})", kind, known));
}

struct PlanChecker {
  void operator()(const SolveOptions& o) const {
    check_problem(o.problem);
    check_counts(o.nx, 2, "solve.nx");
    require(o.output_levels >= 2, "solve.output_levels must be >= 2");
  }
  void operator()(const CounterexampleOptions& o) const {
    check_counts(o.cells, 1, "counterexample.cells");
    require(o.cells.size() >= 2, "counterexample.cells needs at least two entries");
    require(1.0 <= o.p && o.p < o.q, "counterexample needs 1 <= p < q");
    require(o.q / o.p - o.eps > 1.0, "counterexample needs q/p - eps > 1");
    require(o.h > 0.0 && o.eps > 0.0, "counterexample needs h > 0 and eps > 0");
  }
  void operator()(const CompareOptions& o) const {
    require(o.trials >= 1, "compare.trials must be >= 1");
    check_positive(o.p_values, "compare.p_values");
    require(!o.q_offsets.empty(), "compare.q_offsets must not be empty");
    for (double p : o.p_values) {
      for (double off : o.q_offsets) ExponentParams{p, p + off, 1.0, 1.0, 0.0}.validate();
    }
    for (const auto& c : o.coefficients) (void)builtin_coefficient(c);
    o.grid.validate();
    require(o.eps > 0.0 && o.tol >= 0.0, "compare needs eps > 0 and tol >= 0");
  }
  void operator()(const BarrierOptions& o) const {
    check_positive(o.p_values, "barrier.p_values");
    check_positive(o.gaps, "barrier.gaps");
    const Coefficient a = builtin_coefficient(o.coefficient, o.coefficient_params);
    for (double p : o.p_values) {
      for (double off : o.q_offsets) {
        const ExponentParams prm{p, p + off, 1.0, 1.0, o.C_f};
        prm.validate();
        (void)builtin_source(o.source, prm, a);
        for (double gap : o.gaps) {
          (void)barrier_make(p < 2.0 ? BarrierRegime::singular : BarrierRegime::degenerate, prm,
                             -gap, 0.0, o.osc, o.L);
        }
      }
    }
    require(o.sample_nx >= 2 && o.sample_nt >= 1, "barrier needs sample_nx >= 2 and sample_nt >= 1");
    for (std::size_t N : o.heat_dims) require(N >= 1 && N <= 3, "barrier.heat_dims entries must be 1, 2 or 3");
    require(o.scaling_factor >= 1.0, "barrier.scaling_factor must be >= 1");
  }
  void operator()(const ModulusOptions& o) const {
    check_fields(o.fields);
    const auto& g = o.fields.problem.grid;
    require(o.inner.x_lo > g.x_lo && o.inner.x_hi < g.x_hi && o.inner.x_lo < o.inner.x_hi &&
                o.inner.t_lo > g.t_lo && o.inner.t_hi <= g.t_hi && o.inner.t_lo < o.inner.t_hi,
            "modulus inner cylinder must lie inside the grid (strictly in x, above t_lo)");
  }
  void operator()(const InfConvOptions& o) const {
    o.grid.validate();
    check_positive(o.eps, "infconv.eps");
    require(o.omega_slope > 0.0, "infconv.omega_slope must be positive");
    const Coefficient::Modulus omega = [s = o.omega_slope](double x) { return s * x; };
    for (double e : o.eps) InfConvParams::make(o.p, o.q, e, o.ell, omega, 1.0).validate(o.p);
    require(o.analytic_eps > 0.0 && o.analytic_eps < 1.0, "infconv.analytic_eps must be in (0, 1)");
    require(o.analytic_nx >= 4 && o.analytic_nx % 2 == 0, "infconv.analytic_nx must be even and >= 4");
  }
  void operator()(const InequalityOptions& o) const {
    check_positive(o.r, "inequalities.r");
    for (double r : o.r) require(r > 1.0, "inequalities.r entries must exceed 1");
    require(o.pairs >= 1, "inequalities.pairs must be >= 1");
  }
  void operator()(const ClassSOptions& o) const {
    check_fields(o.fields);
    check_counts(o.nx, 4, "class_s.nx");
    require(o.tol_constant > 0.0, "class_s.tol_constant must be positive");
  }
  void operator()(const PsiOptions& o) const {
    check_fields(o.fields);
    require(!o.profiles.empty(), "psi_scan.profiles must not be empty");
    for (const auto& p : o.profiles) {
      require(p == "holder" || p == "lipschitz", fmt::format("unknown profile '{}'", p));
    }
    (void)PhiProfile::holder(o.alpha);
    (void)PhiProfile::lipschitz(o.beta);
    require(o.anchors_per_axis >= 1, "psi_scan.anchors_per_axis must be >= 1");
    require(o.amplitude_factor >= 1.0, "psi_scan.amplitude_factor must be >= 1");
  }
  void operator()(const CaccioppoliOptions& o) const {
    check_fields(o.fields);
    check_counts(o.nx, 4, "caccioppoli.nx");
    require(o.cutoff.rx > 0.0 && o.cutoff.rt > 0.0, "caccioppoli cutoff radii must be positive");
    require(o.cap > 0.0 && o.stability > 0.0, "caccioppoli cap and stability must be positive");
  }
  void operator()(const SteklovOptions& o) const {
    ExponentParams{o.p, o.q, 1.0, 1.0, 0.0}.validate();
    (void)builtin_coefficient(o.coefficient, o.coefficient_params);
    o.grid.validate();
    check_counts(o.windows, 1, "steklov.windows");
    for (std::size_t w : o.windows) require(w < o.grid.nt, "steklov.windows entries must be < grid.nt");
    check_positive(o.deltas, "steklov.deltas");
    require(o.mollify_grid.nx >= 8, "steklov.mollify_nx must be >= 8");
  }
};

}  // namespace

ExperimentPlan plan_from_config(const IniDocument& doc) {
  ConfigReader r(doc);
  const std::string kind = r.text("experiment", "kind");
  if (kind.empty()) {
    r.finish();  // reports the missing kind together with every stray key
    throw ConfigError(doc.origin() + ": invalid config\n  missing keys: experiment.kind");
  }
  (void)r.text("experiment", "name", "");
  ExperimentPlan plan = read_plan(r, kind);
  r.finish();
  std::visit(PlanChecker{}, plan);
  return plan;
}

std::string plan_kind(const ExperimentPlan& plan) {
  static const char* names[] = {"solve",        "counterexample", "compare", "barrier",
                                "modulus",      "infconv",        "inequalities", "class_s",
                                "psi_scan",     "caccioppoli",    "steklov"};
  return names[plan.index()];
}

ExperimentResult run_plan(ExperimentPlan plan, std::optional<std::uint64_t> seed) {
  if (seed) {
    if (auto* c = std::get_if<CompareOptions>(&plan)) c->seed = *seed;
    if (auto* i = std::get_if<InequalityOptions>(&plan)) i->seed = *seed;
  }
  return std::visit(
      [](const auto& o) -> ExperimentResult {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, SolveOptions>) return run_solve(o);
        else if constexpr (std::is_same_v<T, CounterexampleOptions>) return run_counterexample(o);
        else if constexpr (std::is_same_v<T, CompareOptions>) return run_compare(o);
        else if constexpr (std::is_same_v<T, BarrierOptions>) return run_barrier(o);
        else if constexpr (std::is_same_v<T, ModulusOptions>) return run_modulus(o);
        else if constexpr (std::is_same_v<T, InfConvOptions>) return run_infconv(o);
        else if constexpr (std::is_same_v<T, InequalityOptions>) return run_inequalities(o);
        else if constexpr (std::is_same_v<T, ClassSOptions>) return run_class_s(o);
        else if constexpr (std::is_same_v<T, PsiOptions>) return run_psi_scan(o);
        else if constexpr (std::is_same_v<T, CaccioppoliOptions>) return run_caccioppoli(o);
        else return run_steklov(o);
      },
      plan);
}

}  // namespace dplab
