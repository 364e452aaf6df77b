// fundepth: simulate processes, compute depth profiles, summarize and compare samples.
//
// Exit codes: 0 success, 1 data error, 2 usage or parameter error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fundepth/fundepth.hpp"

namespace {

using namespace fundepth;

struct SimulateArgs {
  std::string kind = "bm";
  std::size_t n = 50;
  std::size_t d = 2000;
  std::optional<std::uint64_t> seed;
  double hurst = 0.75;
  std::optional<double> r;
  double sigma = 0.5;
  double y0 = 0.0;
  double b0 = 0.0;
  std::string grid = "open";
};

struct DepthArgs {
  std::vector<std::string> kinds;
  int J = 2;
  std::size_t N = 1000;
  std::optional<double> h;
  std::optional<std::uint64_t> seed;
  bool leave_one_out = true;
  std::string univariate = "spatial";
  std::string inner_product = "functional";
  double tol = default_span_tol;
  bool grid_header = false;
  bool label_column = false;
};

void add_simulation_options(CLI::App* cmd, SimulateArgs& a, const std::string& kind_flag) {
  if (!kind_flag.empty()) cmd->add_option(kind_flag, a.kind, "process: bm, fbm, gbm, bridge, fbb, gauss_seq");
  cmd->add_option("--n", a.n, "number of curves");
  cmd->add_option("--d", a.d, "number of grid points");
  cmd->add_option("--H", a.hurst, "Hurst index for fbm/fbb");
  cmd->add_option("--r", a.r, "gbm drift (default 0.5) or gauss_seq correlation decay (default 0.1)");
  cmd->add_option("--sigma", a.sigma, "gbm volatility");
  cmd->add_option("--y0", a.y0, "start value");
  cmd->add_option("--b0", a.b0, "fbb end value");
  cmd->add_option("--grid", a.grid, "path grid: open (j/(d+1)) or closed (0..1)")->check(CLI::IsMember({"open", "closed"}));
}

void add_depth_options(CLI::App* cmd, DepthArgs& a) {
  cmd->add_option("--kind", a.kinds, "depth kinds: " + depth_kind_list())->delimiter(',')->required();
  cmd->add_option("--J", a.J, "maximum band size for bd/mbd");
  cmd->add_option("--N", a.N, "random directions for hd/pd/rtd/idd");
  cmd->add_option("--h", a.h, "hdepth bandwidth (default: median pairwise distance)");
  cmd->add_flag("--leave-one-out,!--include-self", a.leave_one_out, "leave-one-out (default) or include-self");
  cmd->add_option("--univariate", a.univariate, "univariate depth for id/idd: halfspace, simplicial, spatial");
  cmd->add_option("--inner-product", a.inner_product, "sd norm: functional (grid-weighted) or sequence")
      ->check(CLI::IsMember({"functional", "sequence"}));
  cmd->add_option("--tol", a.tol, "separation tolerance for hd/pd");
}

void add_input_options(CLI::App* cmd, DepthArgs& a) {
  cmd->add_flag("--grid-header", a.grid_header, "first row holds the grid points");
  cmd->add_flag("--label-column", a.label_column, "last column holds a group label");
}

ProcessSpec make_spec(const SimulateArgs& a) {
  if (a.d < 1) throw ParameterError("d must be at least 1");
  auto grid = [&] { return a.grid == "closed" ? Grid::closed_unit(a.d) : Grid::open_unit(a.d); };
  ProcessSpec spec;
  if (a.kind == "bm") {
    spec = ProcessSpec::brownian(grid());
  } else if (a.kind == "fbm") {
    spec = ProcessSpec::fbm(a.hurst, grid());
  } else if (a.kind == "gbm") {
    spec = ProcessSpec::gbm(a.r.value_or(0.5), a.sigma, grid());
  } else if (a.kind == "bridge") {
    spec = ProcessSpec::bridge(grid());
    spec.b0 = a.y0;
  } else if (a.kind == "fbb") {
    spec = ProcessSpec::fbb(a.hurst, a.b0, grid());
  } else if (a.kind == "gauss_seq") {
    spec = ProcessSpec::gauss_seq(a.r.value_or(0.1), a.d);
  } else {
    throw ParameterError("unknown process kind '" + a.kind + "'; expected bm, fbm, gbm, bridge, fbb, gauss_seq");
  }
  spec.y0 = a.y0;
  if (spec.kind == ProcessKind::bridge) spec.b0 = a.y0;
  spec.validate();
  return spec;
}

std::vector<DepthKind> parse_kinds(const DepthArgs& a) {
  std::vector<DepthKind> kinds;
  for (const auto& k : a.kinds) kinds.push_back(parse_depth_kind(k));
  if (kinds.empty()) throw ParameterError("no depth kind given; expected one of {" + depth_kind_list() + "}");
  return kinds;
}

bool randomized(DepthKind k) {
  return k == DepthKind::hd || k == DepthKind::pd || k == DepthKind::rtd || k == DepthKind::idd;
}

DepthOptions make_options(const DepthArgs& a, const std::vector<DepthKind>& kinds) {
  for (auto k : kinds)
    if (randomized(k) && !a.seed)
      throw ParameterError("--seed is required for depth kind " + std::string(to_string(k)));
  if (a.J < 2) throw ParameterError("--J must be at least 2");
  if (a.h && !(*a.h > 0.0)) throw ParameterError("--h must be positive");
  if (!(a.tol > 0.0)) throw ParameterError("--tol must be positive");
  DepthOptions o;
  o.J = a.J;
  o.N = a.N;
  o.h = a.h;
  o.seed = a.seed.value_or(0);
  o.leave_one_out = a.leave_one_out;
  o.univariate = parse_univariate_kind(a.univariate);
  o.inner_product = a.inner_product == "sequence" ? InnerProductMode::sequence_l2 : InnerProductMode::functional_l2;
  o.tol = a.tol;
  return o;
}

FunctionalSample load_input(const std::string& path, const DepthArgs& a) {
  return load_csv(path, CsvOptions{a.grid_header, a.label_column});
}

// Writes to `path`, or stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  write(out);
  if (!out) throw DataError("failed writing '" + path + "'");
}

std::vector<DepthResult> compute_profiles(const FunctionalSample& sample, const std::vector<DepthKind>& kinds,
                                          const DepthOptions& o) {
  std::vector<DepthResult> out;
  for (auto k : kinds) out.push_back(depth_profile(sample, k, o));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Statistical depth for high-dimensional and functional data"};
  app.require_subcommand(1);
  // "--h" is the bandwidth option, so help is long-form only
  app.set_help_flag("--help", "print help and exit");

  SimulateArgs sim;
  std::string sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "draw curves from a stochastic process and write CSV");
  add_simulation_options(simulate_cmd, sim, "--kind");
  simulate_cmd->add_option("--seed", sim.seed, "random seed")->required();
  simulate_cmd->add_option("--out", sim_out, "output CSV (default stdout)");

  DepthArgs dep;
  std::string dep_input, dep_out;
  auto* depth_cmd = app.add_subcommand("depth", "depth of every curve in a sample");
  depth_cmd->add_option("input", dep_input, "sample CSV")->required();
  add_depth_options(depth_cmd, dep);
  add_input_options(depth_cmd, dep);
  depth_cmd->add_option("--seed", dep.seed, "seed for random directions");
  depth_cmd->add_option("--out", dep_out, "depth CSV (default stdout)");

  DepthArgs rep;
  SimulateArgs rep_sim;
  std::optional<std::string> rep_process;
  std::string rep_input, rep_out, rep_svg, rep_depth_out;
  auto* report_cmd = app.add_subcommand("report", "summary table and dotplot of depth profiles");
  report_cmd->add_option("input", rep_input, "sample CSV (or use --process)");
  report_cmd->add_option("--process", rep_process, "simulate the sample: bm, fbm, gbm, bridge, fbb, gauss_seq");
  add_simulation_options(report_cmd, rep_sim, "");
  add_depth_options(report_cmd, rep);
  add_input_options(report_cmd, rep);
  report_cmd->add_option("--seed", rep.seed, "seed for simulation, directions and jitter");
  report_cmd->add_option("--out", rep_out, "summary CSV (default stdout)");
  report_cmd->add_option("--svg", rep_svg, "dotplot SVG");
  report_cmd->add_option("--depth-out", rep_depth_out, "per-curve depth CSV");

  DepthArgs dif;
  std::string dif_a, dif_b, dif_out, dif_svg, dif_agreement;
  auto* diff_cmd = app.add_subcommand("diff", "depth differences between two samples");
  diff_cmd->add_option("input_a", dif_a, "sample A CSV")->required();
  diff_cmd->add_option("input_b", dif_b, "sample B CSV")->required();
  add_depth_options(diff_cmd, dif);
  add_input_options(diff_cmd, dif);
  diff_cmd->add_option("--seed", dif.seed, "seed for random directions and jitter");
  diff_cmd->add_option("--out", dif_out, "difference CSV (default stdout)");
  diff_cmd->add_option("--svg", dif_svg, "dotplot SVG of the differences");
  diff_cmd->add_option("--agreement", dif_agreement, "sign-agreement CSV (also printed to stderr)");

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

  if (*simulate_cmd) {
    const auto spec = make_spec(sim);
    const auto sample = simulate(spec, sim.n, *sim.seed);
    emit(sim_out, [&](std::ostream& os) { write_csv(os, sample, true); });
    return 0;
  }

  if (*depth_cmd) {
    const auto kinds = parse_kinds(dep);
    const auto opts = make_options(dep, kinds);
    const auto sample = load_input(dep_input, dep);
    const auto results = compute_profiles(sample, kinds, opts);
    emit(dep_out, [&](std::ostream& os) { write_depth_csv(os, results); });
    return 0;
  }

  if (*report_cmd) {
    const auto kinds = parse_kinds(rep);
    if (rep_process.has_value() == !rep_input.empty())
      throw ParameterError("report needs exactly one of an input file or --process");
    if (rep_process && !rep.seed) throw ParameterError("--seed is required with --process");
    const auto opts = make_options(rep, kinds);
    FunctionalSample sample;
    if (rep_process) {
      rep_sim.kind = *rep_process;
      sample = simulate(make_spec(rep_sim), rep_sim.n, *rep.seed);
    } else {
      sample = load_input(rep_input, rep);
    }
    auto results = compute_profiles(sample, kinds, opts);
    // the summary is computed from exactly the values written to the depth CSV
    std::ostringstream depth_csv;
    write_depth_csv(depth_csv, results);
    std::istringstream reread(depth_csv.str());
    std::string line;
    std::getline(reread, line);
    for (auto& r : results)
      for (auto& v : r.values) {
        std::getline(reread, line);
        const auto f = detail::split_fields(line);
        if (!detail::parse_double(f.at(1), v)) throw DataError("internal depth CSV round trip failed");
      }
    if (!rep_depth_out.empty()) emit(rep_depth_out, [&](std::ostream& os) { os << depth_csv.str(); });
    emit(rep_out, [&](std::ostream& os) { write_summary_csv(os, results); });
    if (!rep_svg.empty())
      emit(rep_svg, [&](std::ostream& os) { os << dotplot_svg(results, rep.seed.value_or(0)); });
    return 0;
  }

  if (*diff_cmd) {
    const auto kinds = parse_kinds(dif);
    const auto opts = make_options(dif, kinds);
    const auto a = load_input(dif_a, dif);
    const auto b = load_input(dif_b, dif);
    require_same_grid(a.grid(), b.grid());
    std::vector<DepthDifference> diffs;
    for (auto k : kinds) diffs.push_back(depth_difference(a, b, k, opts));
    emit(dif_out, [&](std::ostream& os) { write_difference_csv(os, diffs); });
    std::ostringstream agreement;
    write_agreement_csv(agreement, diffs);
    std::cerr << agreement.str();
    if (!dif_agreement.empty()) emit(dif_agreement, [&](std::ostream& os) { os << agreement.str(); });
    if (!dif_svg.empty()) {
      std::vector<DotSeries> series;
      for (const auto& d : diffs) {
        series.push_back({std::string(to_string(d.kind)) + " A", d.diff_a()});
        series.push_back({std::string(to_string(d.kind)) + " B", d.diff_b()});
      }
      emit(dif_svg, [&](std::ostream& os) { os << dotplot_svg(series, dif.seed.value_or(0)); });
    }
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fundepth::ParameterError& e) {
    std::cerr << "fundepth: parameter error: " << e.what() << '\n';
    return 2;
  } catch (const fundepth::DataError& e) {
    std::cerr << "fundepth: data error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fundepth: error: " << e.what() << '\n';
    return 1;
  }
}
