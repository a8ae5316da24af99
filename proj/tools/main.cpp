#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "gsq/experiments.hpp"
#include "gsq/svg_plot.hpp"

namespace {

struct CommonOpts {
  std::string config, graph, input, engine, out;
  int n = 0, k = 0, trials = 0;
  std::uint64_t seed = 0;
  std::vector<int> r, bits;
  long long sssr_samples = 0;

  CLI::Option *o_graph = nullptr, *o_n = nullptr, *o_k = nullptr,
              *o_input = nullptr, *o_r = nullptr, *o_bits = nullptr,
              *o_trials = nullptr, *o_seed = nullptr, *o_engine = nullptr,
              *o_out = nullptr, *o_sssr = nullptr;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config,
                  "flat key=value config file; flags override it");
  o.o_graph = sub->add_option(
      "--graph", o.graph, "ring|grid|sensor|swissroll|mesh|edgelist");
  o.o_n = sub->add_option("--n", o.n, "vertex count for generated graphs");
  o.o_k = sub->add_option("--k", o.k, "neighbor count for point-based graphs");
  o.o_input = sub->add_option("--input", o.input,
                              "point/mesh or edge-list file");
  o.o_r = sub->add_option("--r", o.r, "bandwidth list")->delimiter(',');
  o.o_bits = sub->add_option("--bits", o.bits, "bit-depth list")
                 ->delimiter(',');
  o.o_trials = sub->add_option("--trials", o.trials,
                               "independent realizations per configuration");
  o.o_seed = sub->add_option("--seed", o.seed, "master seed");
  o.o_engine = sub->add_option("--engine", o.engine, "reference|fast")
                   ->check(CLI::IsMember({"reference", "fast"}));
  o.o_out = sub->add_option("--out", o.out, "output directory");
  o.o_sssr = sub->add_option(
      "--sssr-samples", o.sssr_samples,
      "sample count for the sampling baseline (0 = ceil(N ln N))");
}

gsq::ExperimentConfig build_config(const CommonOpts& o) {
  gsq::ExperimentConfig cfg;
  if (!o.config.empty()) gsq::apply_config_file(cfg, o.config);
  if (o.o_graph->count()) cfg.graph = o.graph;
  if (o.o_n->count()) cfg.n = o.n;
  if (o.o_k->count()) cfg.k = o.k;
  if (o.o_input->count()) cfg.input_path = o.input;
  if (o.o_r->count()) cfg.bandwidths = o.r;
  if (o.o_bits->count()) cfg.bits = o.bits;
  if (o.o_trials->count()) cfg.trials = o.trials;
  if (o.o_seed->count()) cfg.seed = o.seed;
  if (o.o_engine->count()) cfg.engine = o.engine;
  if (o.o_out->count()) cfg.out_dir = o.out;
  if (o.o_sssr->count()) cfg.sssr_samples = o.sssr_samples;
  return cfg;
}

void report_files(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantize bandlimited graph signals by single-shot noise "
               "shaping and reproduce the bundled experiments"};
  app.require_subcommand(1);

  CommonOpts sweep_o, depth_o, cmp_o, half_o;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "relative error vs bandwidth (default r=15..155, B=1,2,4)");
  add_common(sweep, sweep_o);
  CLI::App* depth = app.add_subcommand(
      "bitdepth", "mean relative error vs bit depth at fixed bandwidth");
  add_common(depth, depth_o);
  CLI::App* cmp = app.add_subcommand(
      "compare",
      "noise shaping vs the sampling baseline sketch at matched bit budget");
  add_common(cmp, cmp_o);
  CLI::App* half = app.add_subcommand(
      "halftone", "1-bit halftoning of the z signal of a point-based graph");
  add_common(half, half_o);

  CLI::App* self = app.add_subcommand("selftest", "quick contract checks");

  gsq::PlotSpec plot_spec;
  CLI::App* plot =
      app.add_subcommand("plot", "render an experiment CSV as an SVG chart");
  plot->add_option("--input", plot_spec.csv_path, "CSV file")->required();
  plot->add_option("--output", plot_spec.out_path, "SVG file")->required();
  plot->add_option("--x", plot_spec.x_col, "x column")->required();
  plot->add_option("--y", plot_spec.y_cols, "y column list")
      ->required()
      ->delimiter(',');
  plot->add_option("--group", plot_spec.group_col,
                   "one line per distinct value of this column");
  plot->add_flag("--logy", plot_spec.log_y, "log10 y axis");
  plot->add_option("--title", plot_spec.title, "chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      report_files(gsq::run_bandwidth_sweep(build_config(sweep_o)).files);
    } else if (depth->parsed()) {
      report_files(gsq::run_bitdepth_scaling(build_config(depth_o)).files);
    } else if (cmp->parsed()) {
      report_files(gsq::run_comparison(build_config(cmp_o)).files);
    } else if (half->parsed()) {
      report_files(gsq::run_halftone(build_config(half_o)).files);
    } else if (self->parsed()) {
      return gsq::run_selftest(std::cout) ? 0 : 1;
    } else if (plot->parsed()) {
      gsq::write_line_chart(plot_spec);
      std::cout << "wrote " << plot_spec.out_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
