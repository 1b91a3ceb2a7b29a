#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dplab/coefficient.hpp"
#include "dplab/config.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"
#include "dplab/solver.hpp"
#include "dplab/verify.hpp"

namespace dplab {

/// Rows of preformatted cells; numbers use the shortest round-trip form so
/// identical runs give byte-identical files.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

std::string cell(double v);
std::string cell(std::size_t v);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
  std::string relation = "<=";  // how value was compared against limit
};

struct PlotSpec {
  std::string title;
  std::string x;  // column names
  std::string y;
  bool logx = false;
  bool logy = false;
};

struct ExperimentResult {
  std::string kind;
  Table table;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  PlotSpec plot;

  bool passed() const;
};

/// Problem block shared by the solver-driven experiments. Initial data
/// families (scaled by amplitude, with xi = (x - x_lo)/(x_hi - x_lo)):
///   sine    sin(pi xi)
///   smooth  sin(pi xi) - 0.3 sin(2 pi xi)
/// Lateral values are the same expression, which vanishes there.
struct ProblemSpec {
  ExponentParams params;
  std::string coefficient = "constant";
  ParamMap coefficient_params;
  std::string source = "zero";
  ParamMap source_params;
  Grid1D grid{-1.0, 1.0, 32, -1.0, 0.0, 32};
  std::string data = "smooth";
  double amplitude = 1.0;

  Problem build() const;
  /// Same problem with other exponents and lattice sizes.
  ProblemSpec with(double p, double q, std::size_t nx, std::size_t nt) const;
};

std::vector<std::string> data_names();

struct SolveOptions {
  ProblemSpec problem;
  std::vector<std::size_t> nx{64, 128, 256};
  double dt_ratio = 1.0;  // ht <= dt_ratio hx^2; <= 0 keeps grid.nt
  bool heat_reference = false;
  double max_error = 1e-3;
  double min_order = 1.8;
  std::size_t output_levels = 11;
};

struct CounterexampleOptions {
  double p = 1.5;
  double q = 2.5;
  double eps = 0.1;
  double h = 0.1;
  std::vector<std::size_t> cells{1024, 2048, 4096, 8192, 16384};
  double slope_rel_tol = 0.1;
  double p_change_max = 0.05;
};

struct CompareOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::vector<double> p_values{1.5, 2.0, 3.0};
  std::vector<double> q_offsets{0.0, 0.5, 0.99};
  std::vector<std::string> coefficients{"constant", "pos_time_ramp"};
  Grid1D grid{-1.0, 1.0, 32, -1.0, 0.0, 32};
  std::size_t modes = 3;
  double eps = 0.05;
  double tol = 1e-8;
};

struct BarrierOptions {
  std::vector<double> p_values{1.5, 2.0, 3.0};
  std::vector<double> q_offsets{0.0, 0.5, 1.0};
  std::string coefficient = "constant";
  ParamMap coefficient_params;
  std::string source = "zero";
  double C_f = 0.0;
  /// Time gaps s0 - t0; two or more also test Theta ~ K^e between the first
  /// and the last.
  std::vector<double> gaps{0.25};
  double osc = 1.0;
  double L = 1.0;
  std::size_t sample_nx = 42;
  std::size_t sample_nt = 25;
  double residual_floor = -1e-10;
  double scaling_factor = 2.0;
  bool heat_check = true;
  std::vector<std::size_t> heat_dims{1, 2, 3};
};

/// Solved fields for (p_values[k], q_values[k]) pairs.
struct FieldSweep {
  ProblemSpec problem;
  std::vector<double> p_values{1.5, 2.0, 3.0};
  std::vector<double> q_values{2.0, 2.5, 3.5};
};

struct ModulusOptions {
  FieldSweep fields;
  Cylinder inner{-0.5, 0.5, -0.5, 0.0};
  double slack = 0.05;
};

struct InfConvOptions {
  Grid1D grid{-1.0, 1.0, 40, 0.0, 1.0, 40};
  double p = 2.0;
  double q = 2.0;
  double ell = 4.0;
  double omega_slope = 2.0;  // omega(s) = slope s
  std::vector<double> eps{0.8};
  double semiconcavity_tol = 1e-9;
  double analytic_eps = 0.2;
  std::size_t analytic_nx = 400;
};

struct InequalityOptions {
  std::vector<double> r{1.25, 1.5, 1.75, 2.5, 3.0, 4.0};
  std::size_t pairs = 1000000;
  std::uint64_t seed = 7;
  double slack = 1e-12;
};

struct ClassSOptions {
  FieldSweep fields;
  std::vector<std::size_t> nx{16, 32, 64};
  double time_power = 1.0;  // nt scales like (nx / nx_0)^time_power
  double tol_constant = 10.0;
};

struct PsiOptions {
  FieldSweep fields;
  std::vector<std::string> profiles{"holder", "lipschitz"};
  double alpha = 0.5;
  double beta = 1.5;
  std::size_t anchors_per_axis = 3;
  double amplitude_factor = 2.0;
};

struct CaccioppoliOptions {
  FieldSweep fields;
  std::vector<std::size_t> nx{32, 64};
  double time_power = 1.0;
  TensorBump cutoff{0.0, 0.5, -0.8, 0.15};
  double cap = 100.0;
  double stability = 0.2;
};

struct SteklovOptions {
  double p = 2.0;
  double q = 2.0;
  std::string coefficient = "constant";
  ParamMap coefficient_params;
  /// u = sin(pi x) cos(2t) on this grid; windows are multiples of ht.
  Grid1D grid{0.0, 1.0, 32, 0.0, 0.5, 2048};
  std::vector<std::size_t> windows{256, 128, 64, 32, 16, 8, 4, 2, 1};
  bool left = true;
  /// u = (1 + t) b(x / 0.6) with b the standard bump, smooth_bump weight.
  Grid1D mollify_grid{-1.0, 1.0, 4000, 0.0, 1.0, 4};
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  double tol = 1e-6;
  double tail_slack = 0.05;
};

using ExperimentPlan =
    std::variant<SolveOptions, CounterexampleOptions, CompareOptions, BarrierOptions,
                 ModulusOptions, InfConvOptions, InequalityOptions, ClassSOptions, PsiOptions,
                 CaccioppoliOptions, SteklovOptions>;

ExperimentResult run_solve(const SolveOptions& o);
ExperimentResult run_counterexample(const CounterexampleOptions& o);
ExperimentResult run_compare(const CompareOptions& o);
ExperimentResult run_barrier(const BarrierOptions& o);
ExperimentResult run_modulus(const ModulusOptions& o);
ExperimentResult run_infconv(const InfConvOptions& o);
ExperimentResult run_inequalities(const InequalityOptions& o);
ExperimentResult run_class_s(const ClassSOptions& o);
ExperimentResult run_psi_scan(const PsiOptions& o);
ExperimentResult run_caccioppoli(const CaccioppoliOptions& o);
ExperimentResult run_steklov(const SteklovOptions& o);

/// (kind, one-line description) for every experiment.
std::vector<std::pair<std::string, std::string>> experiment_catalog();

/// Reads and validates a config. Throws ConfigError for missing, malformed
/// or unknown keys and unknown kinds, PreconditionError for values outside
/// the admissible range.
ExperimentPlan plan_from_config(const IniDocument& doc);
std::string plan_kind(const ExperimentPlan& plan);

/// Runs a plan; `seed` overrides the seed of randomized experiments.
ExperimentResult run_plan(ExperimentPlan plan, std::optional<std::uint64_t> seed = std::nullopt);

void write_csv(std::ostream& os, const Table& table);
void write_report(std::ostream& os, const ExperimentResult& result);
void write_plot_script(std::ostream& os, const ExperimentResult& result,
                       const std::string& csv_name = "results.csv");
/// results.csv, report.txt and plot.gp in `dir` (created if needed).
void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result);

}  // namespace dplab
