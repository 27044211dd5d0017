#include "codedswitch/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "codedswitch/parallel.hpp"

namespace codedswitch {

namespace {

constexpr std::int64_t kTrialChunk = 256;
constexpr double kZ95 = 1.959963984540054;

bool oracle_fits(const ExperimentSpec& spec, int L) { return L * spec.n <= OracleOptions{}.max_state_bits; }

Instance draw(const ExperimentSpec& spec, int L, PlacementRng& rng) {
  Instance inst;
  switch (spec.policy) {
    case PlacementTag::uniform: inst = draw_uniform(spec.N, spec.n, L, rng); break;
    case PlacementTag::cyclic: inst = draw_cyclic(spec.N, spec.n, L, rng); break;
    case PlacementTag::design: inst = draw_design(*spec.design, L, rng); break;
    case PlacementTag::custom: throw SwitchError(ErrorCode::BadParams, "custom placement cannot be drawn");
  }
  inst.k = spec.k;
  return inst;
}

int solve_one(const ExperimentSpec& spec, SolverKind kind, const Instance& inst, PlacementRng& rng) {
  if (kind == SolverKind::design_opt) {
    try {
      return solve_design(inst, *spec.design).l_star();
    } catch (const SwitchError& e) {
      // Beyond the pairwise bound the structural read no longer applies.
      if (e.code() != ErrorCode::ConditionViolated) throw;
      return solve_oracle(inst, OracleOptions{64 * 64}).l_star();
    }
  }
  const BlockDesign* design = spec.design ? &*spec.design : nullptr;
  return solve(kind, inst, design, &rng).l_star();
}

}  // namespace

void validate_spec(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw SwitchError(ErrorCode::BadParams, "trials must be >= 1");
  if (spec.L_values.empty()) throw SwitchError(ErrorCode::BadParams, "no L values given");
  for (int L : spec.L_values) {
    if (L < 1) throw SwitchError(ErrorCode::BadParams, "every L must be >= 1");
  }
  if (spec.policy == PlacementTag::custom) throw SwitchError(ErrorCode::BadParams, "custom placement cannot be drawn");
  if (spec.policy == PlacementTag::design) {
    if (!spec.design) throw SwitchError(ErrorCode::BadParams, "design policy needs a design");
    if (spec.design->N != spec.N || spec.design->n != spec.n) {
      throw SwitchError(ErrorCode::BadParams, "design parameters differ from N, n");
    }
  }
  if (!(1 <= spec.k && spec.k <= spec.n && spec.n <= spec.N)) {
    throw SwitchError(ErrorCode::BadParams, "need 1 <= k <= n <= N");
  }
  if (!(spec.confidence > 0 && spec.confidence <= 1)) throw SwitchError(ErrorCode::BadParams, "confidence in (0, 1]");
  const auto incompatible = [&](const std::string& why) {
    throw SwitchError(ErrorCode::IncompatibleSolver, std::string(to_string(spec.solver)) + ": " + why);
  };
  switch (spec.solver) {
    case SolverKind::cyclic_opt:
      if (spec.policy != PlacementTag::cyclic) incompatible("needs cyclic placement");
      break;
    case SolverKind::design_opt:
      if (spec.policy != PlacementTag::design) incompatible("needs design placement");
      break;
    case SolverKind::matching_k1:
      if (spec.k != 1) incompatible("needs k = 1");
      break;
    case SolverKind::matching_k2n2:
      if (spec.k != 2 || spec.n != 2) incompatible("needs k = n = 2");
      break;
    case SolverKind::oracle:
      if (!spec.greedy_fallback) {
        for (int L : spec.L_values) {
          if (!oracle_fits(spec, L)) incompatible("L*n exceeds the exhaustive-search cap");
        }
      }
      break;
    case SolverKind::greedy: break;
  }
}

int whp_l_star_from_counts(std::span<const std::int64_t> counts, double confidence) {
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw SwitchError(ErrorCode::EmptySamples, "no samples");
  std::int64_t at_least = 0;
  for (int v = static_cast<int>(counts.size()) - 1; v >= 1; --v) {
    at_least += counts[v];
    if (static_cast<double>(at_least) >= confidence * static_cast<double>(total)) return v;
  }
  return 0;
}

int whp_l_star(std::span<const int> samples, double confidence) {
  if (samples.empty()) throw SwitchError(ErrorCode::EmptySamples, "no samples");
  const int top = *std::max_element(samples.begin(), samples.end());
  std::vector<std::int64_t> counts(std::max(top, 0) + 1, 0);
  for (int s : samples) ++counts[std::max(s, 0)];
  return whp_l_star_from_counts(counts, confidence);
}

EnsembleReport run_ensemble(const ExperimentSpec& spec) {
  validate_spec(spec);
  EnsembleReport report{spec, {}};
  for (int L : spec.L_values) {
    SolverKind kind = spec.solver;
    if (kind == SolverKind::oracle && !oracle_fits(spec, L)) kind = SolverKind::greedy;

    std::vector<int> l_star(spec.trials);
    const std::int64_t chunks = (spec.trials + kTrialChunk - 1) / kTrialChunk;
    parallel_for(chunks, spec.threads, [&](std::int64_t c) {
      const std::int64_t end = std::min(spec.trials, (c + 1) * kTrialChunk);
      for (std::int64_t t = c * kTrialChunk; t < end; ++t) {
        PlacementRng rng = PlacementRng::derive(
            spec.seed, {static_cast<std::uint64_t>(spec.policy), static_cast<std::uint64_t>(L),
                        static_cast<std::uint64_t>(t)});
        l_star[t] = solve_one(spec, kind, draw(spec, L, rng), rng);
      }
    });

    EnsembleRow row;
    row.L = L;
    row.trials = spec.trials;
    row.solver = kind;
    row.l_star_counts.assign(L + 1, 0);
    std::int64_t sum = 0, sum_sq = 0;
    for (int v : l_star) {
      ++row.l_star_counts[v];
      sum += v;
      sum_sq += static_cast<std::int64_t>(v) * v;
    }
    const double T = static_cast<double>(spec.trials);
    const double scale = static_cast<double>(spec.k) / spec.N;
    row.mean_l_star = static_cast<double>(sum) / T;
    row.rho_bar = row.mean_l_star * scale;
    const double var = spec.trials > 1 ? (static_cast<double>(sum_sq) - static_cast<double>(sum) * row.mean_l_star) / (T - 1) : 0.0;
    row.rho_bar_ci95 = kZ95 * std::sqrt(std::max(var, 0.0) / T) * scale;
    row.pr_full_tp = static_cast<double>(row.l_star_counts[L]) / T;
    row.pr_full_tp_ci95 = kZ95 * std::sqrt(row.pr_full_tp * (1 - row.pr_full_tp) / T);
    row.whp_l_star = whp_l_star_from_counts(row.l_star_counts, spec.confidence);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentSpec spec_from_json(const ordered_json& j) {
  try {
    ExperimentSpec spec;
    spec.policy = placement_from_string(j.at("policy").get<std::string>());
    spec.N = j.at("N").get<int>();
    spec.k = j.at("k").get<int>();
    spec.n = j.at("n").get<int>();
    const auto& Ls = j.at("L");
    if (Ls.is_array()) {
      spec.L_values = Ls.get<std::vector<int>>();
    } else {
      spec.L_values = {Ls.get<int>()};
    }
    spec.trials = j.value("trials", spec.trials);
    spec.seed = j.value("seed", spec.seed);
    spec.solver = solver_from_string(j.value("solver", std::string("oracle")));
    spec.greedy_fallback = j.value("greedy_fallback", false);
    spec.confidence = j.value("confidence", spec.confidence);
    spec.threads = j.value("threads", spec.threads);
    if (j.contains("design")) {
      const auto& d = j.at("design");
      const std::string source = d.at("source").get<std::string>();
      if (source == "projective_plane") {
        spec.design = build_projective_plane(d.at("q").get<int>());
      } else if (source == "lexicographic_packing") {
        spec.design = build_lexicographic_packing(spec.N, spec.n, d.at("t_max").get<int>());
      } else if (source == "file") {
        spec.design = read_design_file(d.at("path").get<std::string>());
      } else {
        throw SwitchError(ErrorCode::ParseError, "unknown design source '" + source + "'");
      }
      verify_packing(*spec.design);
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw SwitchError(ErrorCode::ParseError, std::string("experiment spec: ") + e.what());
  }
}

std::string report_csv(const EnsembleReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "L,mean_l_star,rho_bar,rho_bar_ci95,whp_l_star,pr_full_tp,pr_full_tp_ci95,trials,solver\n";
  for (const auto& r : report.rows) {
    out << r.L << ',' << r.mean_l_star << ',' << r.rho_bar << ',' << r.rho_bar_ci95 << ',' << r.whp_l_star << ','
        << r.pr_full_tp << ',' << r.pr_full_tp_ci95 << ',' << r.trials << ',' << to_string(r.solver) << '\n';
  }
  return out.str();
}

}  // namespace codedswitch
