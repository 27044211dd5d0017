#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codedswitch/json_io.hpp"
#include "codedswitch/model.hpp"
#include "codedswitch/placement.hpp"
#include "codedswitch/solvers.hpp"

namespace codedswitch {

struct ExperimentSpec {
  PlacementTag policy = PlacementTag::cyclic;
  int N = 12;
  int k = 3;
  int n = 3;
  std::vector<int> L_values;
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::oracle;
  std::optional<BlockDesign> design;
  /// When the oracle cap L*n <= 24 is exceeded, use greedy for that L instead
  /// of failing; the row records which solver ran.
  bool greedy_fallback = false;
  double confidence = 0.95;
  int threads = 1;
};

struct EnsembleRow {
  int L = 0;
  std::int64_t trials = 0;
  double mean_l_star = 0;
  double rho_bar = 0;
  double rho_bar_ci95 = 0;  // half-width
  int whp_l_star = 0;
  double pr_full_tp = 0;
  double pr_full_tp_ci95 = 0;  // half-width
  SolverKind solver = SolverKind::oracle;
  std::vector<std::int64_t> l_star_counts;  // l_star_counts[v] = trials with L* = v
};

struct EnsembleReport {
  ExperimentSpec spec;
  std::vector<EnsembleRow> rows;
};

/// Throws IncompatibleSolver or BadParams for an invalid spec.
void validate_spec(const ExperimentSpec& spec);

/// Per L: `trials` instances drawn from the policy, each with its own stream
/// derived from (seed, policy, L, trial), solved with spec.solver.
/// Bit-identical for any thread count.
EnsembleReport run_ensemble(const ExperimentSpec& spec);

/// Largest v with empirical Pr(L* >= v) >= confidence; 0 if none.
int whp_l_star(std::span<const int> samples, double confidence = 0.95);
int whp_l_star_from_counts(std::span<const std::int64_t> counts, double confidence = 0.95);

/// {"policy", "N", "k", "n", "L": [..], "trials", "seed", "solver",
///  "design": {"source": "projective_plane", "q"} | {"source": "lexicographic_packing", "t_max"}
///            | {"source": "file", "path"}, "greedy_fallback", "confidence", "threads"}
ExperimentSpec spec_from_json(const ordered_json& j);

/// Columns: L,mean_l_star,rho_bar,rho_bar_ci95,whp_l_star,pr_full_tp,pr_full_tp_ci95,trials,solver
std::string report_csv(const EnsembleReport& report);

struct FigureOptions {
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Writes one CSV per curve (x,y,ci_lo,ci_hi,method) and one SVG per panel
/// into out_dir; returns the written paths. Throws UnknownFigure.
std::vector<std::string> reproduce_figure(int figure, const std::string& out_dir, const FigureOptions& opts = {});

}  // namespace codedswitch
