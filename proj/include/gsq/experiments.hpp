#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsq/graph.hpp"
#include "gsq/metrics.hpp"

namespace gsq {

/// Shared configuration of the experiment runners. Lists left empty take
/// per-experiment defaults.
struct ExperimentConfig {
  std::string graph = "grid";  ///< ring|grid|sensor|swissroll|mesh|edgelist
  int n = 900;
  int k = 8;                   ///< neighbor count for point-based graphs
  std::string input_path;      ///< point/mesh or edge-list file
  std::vector<int> bandwidths;
  std::vector<int> bits;
  int trials = 20;
  std::uint64_t seed = 1;
  std::string engine = "fast";  ///< reference|fast
  std::string out_dir = "out";
  long long sssr_samples = 0;  ///< 0 = ceil(N ln N)
};

void validate(const ExperimentConfig& cfg);

/// Flat key=value file mirroring the CLI flags ('#' comments). Values
/// present in the file overwrite cfg; CLI flags are applied afterwards and
/// therefore win.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

struct GraphBundle {
  Graph graph;
  PointCloud cloud;
  bool has_cloud = false;
};

GraphBundle make_graph(const ExperimentConfig& cfg);

/// Per-trial stream: splitmix chain over (master, fnv64(graph), r, B, trial).
std::uint64_t trial_seed(const ExperimentConfig& cfg, int r, int bits,
                         int trial);
/// Extra label keeps the sampler stream disjoint from the signal stream.
std::uint64_t sssr_seed(const ExperimentConfig& cfg, int r, int bits,
                        int trial);
std::uint64_t graph_build_seed(const ExperimentConfig& cfg);

struct TrialRow {
  std::string method;
  int r = 0, bits = 0, trial = 0;
  std::uint64_t seed = 0;
  double qe = 0, rel_error = 0;
  double runtime_ms = 0;  ///< written to the runtime sidecar only
};

struct SummaryRow {
  std::string method;
  int r = 0, bits = 0, trials = 0;
  double mean_rel_error = 0;
  double mean_runtime_ms = 0;
  ErrorReport bounds;
  double mu = 1;
  double ref_curve = 0;  ///< 2^-B reference, bit-depth experiment only
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<std::string> files;
};

/// Relative error of the noise-shaping quantizer across bandwidths and bit
/// budgets. Defaults: r = 15..155 step 10, B in {1,2,4}.
ExperimentResult run_bandwidth_sweep(const ExperimentConfig& cfg);

/// Mean relative error per bit depth at fixed bandwidth, with the 2^-B
/// reference curve. Defaults: r = 200, B = 1..8.
ExperimentResult run_bitdepth_scaling(const ExperimentConfig& cfg);

/// Noise shaping vs the sampling baseline sketch at a fixed per-entry bit
/// budget (default ceil(log2 log2 N)), with both budget-matched bound
/// curves.
ExperimentResult run_comparison(const ExperimentConfig& cfg);

struct HalftoneRow {
  std::string method;
  int r = 0, bits = 1;
  double proxy_qe = 0;
  double runtime_ms = 0;
};

struct HalftoneResult {
  std::vector<HalftoneRow> rows;
  std::vector<std::string> files;
  int n = 0;
};

/// 1-bit halftoning of the z-coordinate signal of a point-based graph,
/// comparing direct rounding, the round-robin noise shaper, and the
/// kernel-walk quantizer at each requested bandwidth.
HalftoneResult run_halftone(const ExperimentConfig& cfg);

/// Quick built-in contract checks; prints one line per check.
bool run_selftest(std::ostream& out);

/// 17-significant-digit formatting used in every CSV.
std::string format_g17(double v);

}  // namespace gsq
