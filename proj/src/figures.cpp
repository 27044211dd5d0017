#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "codedswitch/analysis.hpp"
#include "codedswitch/conditions.hpp"
#include "codedswitch/ensemble.hpp"

namespace codedswitch {

namespace {

struct Point {
  double x, y, lo, hi;
  std::string method;
};

struct Curve {
  std::string name;
  std::vector<Point> points;
};

struct Panel {
  std::string id;  // file stem, e.g. fig5_n4
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Curve> curves;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

std::string curve_csv(const Curve& c) {
  std::string s = "x,y,ci_lo,ci_hi,method\n";
  for (const auto& p : c.points) {
    s += fmt(p.x) + ',' + fmt(p.y) + ',' + fmt(p.lo) + ',' + fmt(p.hi) + ',' + p.method + '\n';
  }
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string panel_svg(const Panel& p) {
  constexpr double W = 640, H = 440, left = 70, right = 20, top = 40, bottom = 60;
  double x0 = 1e300, x1 = -1e300, y1 = 0;
  for (const auto& c : p.curves) {
    for (const auto& pt : c.points) {
      x0 = std::min(x0, pt.x);
      x1 = std::max(x1, pt.x);
      y1 = std::max({y1, pt.y, pt.hi});
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  y1 = y1 <= 1.0 ? 1.0 : std::ceil(y1);
  const auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  const auto sy = [&](double y) { return H - bottom - y / y1 * (H - top - bottom); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(p.title) << "</text>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5, yv = y1 * i / 5;
    s << "<text x=\"" << sx(xv) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">" << fmt(std::round(xv * 100) / 100) << "</text>\n";
    s << "<text x=\"" << left - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << fmt(std::round(yv * 100) / 100) << "</text>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << sy(yv) << "\" x2=\"" << W - right << "\" y2=\"" << sy(yv) << "\" stroke=\"#ddd\"/>\n";
  }
  s << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  s << "<text transform=\"translate(18," << (top + H - bottom) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << escape(p.y_label) << "</text>\n";
  for (std::size_t c = 0; c < p.curves.size(); ++c) {
    const char* color = colors[c % 6];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& pt : p.curves[c].points) s << sx(pt.x) << ',' << sy(pt.y) << ' ';
    s << "\"/>\n";
    for (const auto& pt : p.curves[c].points) {
      s << "<circle cx=\"" << sx(pt.x) << "\" cy=\"" << sy(pt.y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 16 + 16 * static_cast<double>(c);
    s << "<line x1=\"" << left + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + 32 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << left + 38 << "\" y=\"" << ly << "\">" << escape(p.curves[c].name) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

Point exact_point(double x, const ProbabilityEstimate& e) {
  const double half = 1.959963984540054 * e.standard_error;
  return Point{x, e.value, std::max(0.0, e.value - half), std::min(1.0, e.value + half), std::string(to_string(e.method))};
}

ExperimentSpec base_spec(PlacementTag policy, int N, int k, int n, std::vector<int> Ls, SolverKind solver,
                         const FigureOptions& opts) {
  ExperimentSpec spec;
  spec.policy = policy;
  spec.N = N;
  spec.k = k;
  spec.n = n;
  spec.L_values = std::move(Ls);
  spec.solver = solver;
  spec.trials = opts.trials;
  spec.seed = opts.seed;
  spec.threads = opts.threads;
  return spec;
}

std::string method_of(const EnsembleRow& row, SolverKind requested) {
  return row.solver == requested ? "monte_carlo" : "monte_carlo_" + std::string(to_string(row.solver)) + "_fallback";
}

Curve rho_curve(const std::string& name, const EnsembleReport& r) {
  Curve c{name, {}};
  for (const auto& row : r.rows) {
    c.points.push_back({double(row.L), row.rho_bar, row.rho_bar - row.rho_bar_ci95, row.rho_bar + row.rho_bar_ci95,
                        method_of(row, r.spec.solver)});
  }
  return c;
}

Curve whp_curve(const std::string& name, const EnsembleReport& r) {
  Curve c{name, {}};
  for (const auto& row : r.rows) {
    const double v = row.whp_l_star;
    c.points.push_back({double(row.L), v, v, v, method_of(row, r.spec.solver)});
  }
  return c;
}

const std::vector<int> kLoads = {1, 2, 3, 4, 5, 6};

std::vector<Panel> figure4(const FigureOptions& opts) {
  Panel p{"fig4", "Full-throughput bounds (n=k+1, N=k^2+k+1, L=3)", "k", "Pr(L*=L)", {}};
  Curve des{"p_pair_des", {}}, uni{"p_cover_uni", {}}, pair{"p_pair_cyc", {}}, cover{"p_cover_cyc", {}},
      sim{"p_sim_cyc", {}};
  for (int k = 2; k <= 7; ++k) {
    const int n = k + 1, N = k * k + k + 1, L = 3;
    des.points.push_back(exact_point(k, p_pair_design(N, L)));
    uni.points.push_back(exact_point(k, p_cover_uniform(N, n, k, L)));
    pair.points.push_back(exact_point(k, p_pair_cyclic(N, n, t_max_floor(n, k, L), L)));
    cover.points.push_back(exact_point(k, p_cover_cyclic(N, n, k, L, MonteCarloOptions{opts.trials, opts.seed, opts.threads})));
    const auto rep = run_ensemble(base_spec(PlacementTag::cyclic, N, k, n, {L}, SolverKind::cyclic_opt, opts));
    const auto& row = rep.rows[0];
    sim.points.push_back({double(k), row.pr_full_tp, std::max(0.0, row.pr_full_tp - row.pr_full_tp_ci95),
                          std::min(1.0, row.pr_full_tp + row.pr_full_tp_ci95), "monte_carlo"});
  }
  p.curves = {des, uni, pair, cover, sim};
  return {p};
}

std::vector<Panel> figure5(const FigureOptions& opts) {
  std::vector<Panel> panels;
  for (int n = 3; n <= 6; ++n) {
    Panel p{"fig5_n" + std::to_string(n), "Average throughput, cyclic (N=12, k=3, n=" + std::to_string(n) + ")", "L",
            "rho_bar", {}};
    p.curves.push_back(rho_curve("cyclic", run_ensemble(base_spec(PlacementTag::cyclic, 12, 3, n, kLoads,
                                                                   SolverKind::cyclic_opt, opts))));
    panels.push_back(std::move(p));
  }
  return panels;
}

ExperimentSpec uniform_oracle_spec(int n, const FigureOptions& opts) {
  auto spec = base_spec(PlacementTag::uniform, 12, 3, n, kLoads, SolverKind::oracle, opts);
  spec.greedy_fallback = true;
  return spec;
}

std::vector<Panel> figure6(const FigureOptions& opts) {
  std::vector<Panel> panels;
  for (int n = 3; n <= 6; ++n) {
    Panel p{"fig6_n" + std::to_string(n), "Average throughput, uniform (N=12, k=3, n=" + std::to_string(n) + ")", "L",
            "rho_bar", {}};
    p.curves.push_back(rho_curve("uniform_oracle", run_ensemble(uniform_oracle_spec(n, opts))));
    p.curves.push_back(rho_curve("uniform_greedy", run_ensemble(base_spec(PlacementTag::uniform, 12, 3, n, kLoads,
                                                                           SolverKind::greedy, opts))));
    panels.push_back(std::move(p));
  }
  return panels;
}

std::vector<Panel> figure7(const FigureOptions& opts) {
  std::vector<Panel> panels;
  for (int n = 3; n <= 6; ++n) {
    Panel p{"fig7_n" + std::to_string(n), "L* w.h.p. (0.95), N=12, k=3, n=" + std::to_string(n), "L", "whp L*", {}};
    p.curves.push_back(whp_curve("uniform", run_ensemble(uniform_oracle_spec(n, opts))));
    p.curves.push_back(whp_curve("cyclic", run_ensemble(base_spec(PlacementTag::cyclic, 12, 3, n, kLoads,
                                                                   SolverKind::cyclic_opt, opts))));
    panels.push_back(std::move(p));
  }
  return panels;
}

std::vector<Panel> figure8(const FigureOptions& opts) {
  Panel p{"fig8", "Full-throughput probability (k=3, n=5, L=3)", "N", "Pr(L*=L)", {}};
  Curve uni{"uniform", {}}, cyc{"cyclic", {}}, des{"design", {}};
  FullThroughputOptions fto;
  fto.mc = MonteCarloOptions{opts.trials, opts.seed, opts.threads};
  for (int N = 9; N <= 17; ++N) {
    uni.points.push_back(exact_point(N, p_full_throughput_exact(PlacementTag::uniform, N, 5, 3, 3, nullptr, fto)));
    cyc.points.push_back(exact_point(N, p_full_throughput_exact(PlacementTag::cyclic, N, 5, 3, 3, nullptr, fto)));
    int b = build_lexicographic_packing(N, 5, 2).b();
    if (const int known = known_cw_code_size_d6_w5(N); known > 0) b = std::min(b, known);
    des.points.push_back(exact_point(N, p_pair_design(b, 3)));
  }
  p.curves = {uni, cyc, des};
  return {p};
}

}  // namespace

std::vector<std::string> reproduce_figure(int figure, const std::string& out_dir, const FigureOptions& opts) {
  std::vector<Panel> panels;
  switch (figure) {
    case 4: panels = figure4(opts); break;
    case 5: panels = figure5(opts); break;
    case 6: panels = figure6(opts); break;
    case 7: panels = figure7(opts); break;
    case 8: panels = figure8(opts); break;
    default: throw SwitchError(ErrorCode::UnknownFigure, "no figure " + std::to_string(figure));
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& panel : panels) {
    for (const auto& curve : panel.curves) {
      const std::string path = (std::filesystem::path(out_dir) / (panel.id + "_" + curve.name + ".csv")).string();
      write_text_file(path, curve_csv(curve));
      written.push_back(path);
    }
    const std::string svg = (std::filesystem::path(out_dir) / (panel.id + ".svg")).string();
    write_text_file(svg, panel_svg(panel));
    written.push_back(svg);
  }
  return written;
}

}  // namespace codedswitch
