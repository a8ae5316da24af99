#include "gsq/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "gsq/baselines.hpp"
#include "gsq/quantizer.hpp"
#include "gsq/rng.hpp"
#include "gsq/signal.hpp"
#include "gsq/ssns.hpp"

namespace fs = std::filesystem;

namespace gsq {

namespace {

constexpr const char* kToolVersion = "gsq 0.1.0";

Engine engine_of(const ExperimentConfig& cfg) {
  if (cfg.engine == "reference") return Engine::kReference;
  if (cfg.engine == "fast") return Engine::kFast;
  throw std::invalid_argument("engine must be 'reference' or 'fast'");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

// All result files use '\n' and 17-significant-digit floats so reruns are
// byte-identical.
std::ofstream open_file(const ExperimentConfig& cfg, const std::string& name,
                        std::vector<std::string>& files) {
  fs::create_directories(cfg.out_dir);
  const fs::path p = fs::path(cfg.out_dir) / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  files.push_back(p.string());
  return f;
}

void write_meta(const ExperimentConfig& cfg, const std::string& experiment,
                const std::vector<int>& bandwidths,
                const std::vector<int>& bits,
                std::vector<std::string>& files) {
  std::ofstream f = open_file(cfg, experiment + "_meta.txt", files);
  f << "version=" << kToolVersion << "\n"
    << "experiment=" << experiment << "\n"
    << "graph=" << cfg.graph << "\n"
    << "n=" << cfg.n << "\n"
    << "k=" << cfg.k << "\n"
    << "input=" << cfg.input_path << "\n"
    << "r=" << join_ints(bandwidths) << "\n"
    << "bits=" << join_ints(bits) << "\n"
    << "trials=" << cfg.trials << "\n"
    << "seed=" << cfg.seed << "\n"
    << "engine=" << cfg.engine << "\n"
    << "sssr_samples=" << cfg.sssr_samples << "\n"
    << "seed_scheme=trial seed is a splitmix64 chain over "
       "(master, fnv64(graph), r, bits, trial)\n";
}

void write_runtime_csv(const ExperimentConfig& cfg,
                       const std::string& experiment,
                       const std::vector<TrialRow>& rows,
                       std::vector<std::string>& files) {
  std::ofstream f = open_file(cfg, experiment + "_runtime.csv", files);
  f << "method,r,bits,trial,runtime_ms\n";
  for (const auto& row : rows)
    f << row.method << "," << row.r << "," << row.bits << "," << row.trial
      << "," << format_g17(row.runtime_ms) << "\n";
}

int default_budget_bits(int n) {
  if (n < 3) throw std::invalid_argument("budget bits require n >= 3");
  const double b = std::ceil(std::log2(std::log2(static_cast<double>(n))));
  return std::max(1, static_cast<int>(b));
}

struct BasisCache {
  SpectralBasis full;

  explicit BasisCache(const Graph& g) : full(eig_all(normalized_laplacian(g))) {}
};

bool usable_bandwidth(int r, int n) {
  if (r >= 1 && r < n) return true;
  std::cerr << "warning: skipping bandwidth r=" << r << " (graph has n=" << n
            << " vertices)\n";
  return false;
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("n must be positive");
  if (cfg.k < 1) throw std::invalid_argument("k must be positive");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
  if (cfg.sssr_samples < 0)
    throw std::invalid_argument("sssr_samples must be nonnegative");
  for (int r : cfg.bandwidths)
    if (r < 1) throw std::invalid_argument("bandwidths must be positive");
  for (int b : cfg.bits)
    if (b < 1) throw std::invalid_argument("bit depths must be positive");
  engine_of(cfg);
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  auto parse_ints = [](const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
      std::istringstream is(item);
      int v;
      if (!(is >> v)) throw std::runtime_error("bad integer list: " + text);
      out.push_back(v);
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "graph")
      cfg.graph = val;
    else if (key == "n")
      cfg.n = std::stoi(val);
    else if (key == "k")
      cfg.k = std::stoi(val);
    else if (key == "input")
      cfg.input_path = val;
    else if (key == "r")
      cfg.bandwidths = parse_ints(val);
    else if (key == "bits")
      cfg.bits = parse_ints(val);
    else if (key == "trials")
      cfg.trials = std::stoi(val);
    else if (key == "seed")
      cfg.seed = std::stoull(val);
    else if (key == "engine")
      cfg.engine = val;
    else if (key == "out")
      cfg.out_dir = val;
    else if (key == "sssr_samples")
      cfg.sssr_samples = std::stoll(val);
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
}

std::uint64_t graph_build_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, {fnv1a64(cfg.graph), fnv1a64("build")});
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int r, int bits,
                         int trial) {
  return derive_seed(cfg.seed,
                     {fnv1a64(cfg.graph), static_cast<std::uint64_t>(r),
                      static_cast<std::uint64_t>(bits),
                      static_cast<std::uint64_t>(trial)});
}

std::uint64_t sssr_seed(const ExperimentConfig& cfg, int r, int bits,
                        int trial) {
  return derive_seed(cfg.seed,
                     {fnv1a64(cfg.graph), static_cast<std::uint64_t>(r),
                      static_cast<std::uint64_t>(bits),
                      static_cast<std::uint64_t>(trial), fnv1a64("sssr")});
}

GraphBundle make_graph(const ExperimentConfig& cfg) {
  GraphBundle bundle;
  if (cfg.graph == "ring") {
    bundle.graph = build_ring(cfg.n);
  } else if (cfg.graph == "grid") {
    const int side = static_cast<int>(std::llround(std::sqrt(cfg.n)));
    if (side * side != cfg.n)
      throw std::invalid_argument("grid requires a square vertex count");
    bundle.graph = build_grid(side, side);
  } else if (cfg.graph == "sensor") {
    bundle.graph = build_sensor(cfg.n, cfg.k, graph_build_seed(cfg));
  } else if (cfg.graph == "swissroll") {
    bundle.cloud = swiss_roll_points(cfg.n, graph_build_seed(cfg));
    bundle.graph = build_knn_from_points(bundle.cloud, cfg.k);
    bundle.has_cloud = true;
  } else if (cfg.graph == "mesh") {
    if (cfg.input_path.empty())
      throw std::invalid_argument("mesh graph requires --input");
    bundle.cloud = load_point_cloud(cfg.input_path);
    bundle.graph = build_knn_from_points(bundle.cloud, cfg.k);
    bundle.has_cloud = true;
  } else if (cfg.graph == "edgelist") {
    if (cfg.input_path.empty())
      throw std::invalid_argument("edgelist graph requires --input");
    bundle.graph = load_edge_list(cfg.input_path);
  } else {
    throw std::invalid_argument("unknown graph family: " + cfg.graph);
  }
  return bundle;
}

ExperimentResult run_bandwidth_sweep(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.bandwidths.empty())
    for (int r = 15; r <= 155; r += 10) cfg.bandwidths.push_back(r);
  if (cfg.bits.empty()) cfg.bits = {1, 2, 4};
  validate(cfg);

  const GraphBundle bundle = make_graph(cfg);
  const int n = bundle.graph.n;
  const Engine engine = engine_of(cfg);
  const BasisCache cache(bundle.graph);

  ExperimentResult result;
  for (int r : cfg.bandwidths) {
    if (!usable_bandwidth(r, n)) continue;
    const SpectralBasis basis = cache.full.truncated(r);
    const double mu = incoherence(basis);
    for (int bits : cfg.bits) {
      const ErrorReport bounds = bound_curves(n, r, bits, mu);
      double rel_sum = 0.0, ms_sum = 0.0;
      for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = trial_seed(cfg, r, bits, t);
        const GraphSignal f = random_bandlimited(basis, seed);
        const auto t0 = std::chrono::steady_clock::now();
        const SsnsResult run = ssns_quantize(basis, f, bits, engine);
        const double ms = elapsed_ms(t0);
        const double qe = qe_filtered(basis, f.values, run.q);
        const double rel = qe / f.values.norm();
        result.rows.push_back({"ssns", r, bits, t, seed, qe, rel, ms});
        rel_sum += rel;
        ms_sum += ms;
      }
      SummaryRow s;
      s.method = "ssns";
      s.r = r;
      s.bits = bits;
      s.trials = cfg.trials;
      s.mean_rel_error = rel_sum / cfg.trials;
      s.mean_runtime_ms = ms_sum / cfg.trials;
      s.bounds = bounds;
      s.mu = mu;
      result.summary.push_back(s);
    }
  }

  std::ofstream csv = open_file(cfg, "sweep.csv", result.files);
  csv << "graph,n,r,bits,trial,trial_seed,qe,rel_error,bound_explicit,"
         "bound_worst_case\n";
  for (const auto& row : result.rows) {
    const auto& s = *std::find_if(
        result.summary.begin(), result.summary.end(),
        [&row](const SummaryRow& x) { return x.r == row.r && x.bits == row.bits; });
    csv << cfg.graph << "," << n << "," << row.r << "," << row.bits << ","
        << row.trial << "," << row.seed << "," << format_g17(row.qe) << ","
        << format_g17(row.rel_error) << ","
        << format_g17(s.bounds.bound_explicit) << ","
        << format_g17(s.bounds.bound_worst_case) << "\n";
  }
  csv.close();

  std::ofstream sum = open_file(cfg, "sweep_summary.csv", result.files);
  sum << "graph,n,r,bits,trials,mean_rel_error,bound_explicit,"
         "bound_worst_case,mu\n";
  for (const auto& s : result.summary)
    sum << cfg.graph << "," << n << "," << s.r << "," << s.bits << ","
        << s.trials << "," << format_g17(s.mean_rel_error) << ","
        << format_g17(s.bounds.bound_explicit) << ","
        << format_g17(s.bounds.bound_worst_case) << "," << format_g17(s.mu)
        << "\n";
  sum.close();

  write_runtime_csv(cfg, "sweep", result.rows, result.files);
  write_meta(cfg, "sweep", cfg.bandwidths, cfg.bits, result.files);
  return result;
}

ExperimentResult run_bitdepth_scaling(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.bandwidths.empty()) cfg.bandwidths = {200};
  if (cfg.bits.empty()) cfg.bits = {1, 2, 3, 4, 5, 6, 7, 8};
  validate(cfg);

  const GraphBundle bundle = make_graph(cfg);
  const int n = bundle.graph.n;
  const Engine engine = engine_of(cfg);
  const BasisCache cache(bundle.graph);

  ExperimentResult result;
  for (int r : cfg.bandwidths) {
    if (!usable_bandwidth(r, n)) continue;
    const SpectralBasis basis = cache.full.truncated(r);
    const double mu = incoherence(basis);
    for (int bits : cfg.bits) {
      double rel_sum = 0.0, ms_sum = 0.0;
      for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = trial_seed(cfg, r, bits, t);
        const GraphSignal f = random_bandlimited(basis, seed);
        const auto t0 = std::chrono::steady_clock::now();
        const SsnsResult run = ssns_quantize(basis, f, bits, engine);
        const double ms = elapsed_ms(t0);
        const double qe = qe_filtered(basis, f.values, run.q);
        const double rel = qe / f.values.norm();
        result.rows.push_back({"ssns", r, bits, t, seed, qe, rel, ms});
        rel_sum += rel;
        ms_sum += ms;
      }
      SummaryRow s;
      s.method = "ssns";
      s.r = r;
      s.bits = bits;
      s.trials = cfg.trials;
      s.mean_rel_error = rel_sum / cfg.trials;
      s.mean_runtime_ms = ms_sum / cfg.trials;
      s.bounds = bound_curves(n, r, bits, mu);
      s.mu = mu;
      s.ref_curve = std::ldexp(1.0, -bits);
      result.summary.push_back(s);
    }
  }

  std::ofstream csv = open_file(cfg, "bitdepth.csv", result.files);
  csv << "graph,n,r,bits,trial,trial_seed,qe,rel_error\n";
  for (const auto& row : result.rows)
    csv << cfg.graph << "," << n << "," << row.r << "," << row.bits << ","
        << row.trial << "," << row.seed << "," << format_g17(row.qe) << ","
        << format_g17(row.rel_error) << "\n";
  csv.close();

  std::ofstream sum = open_file(cfg, "bitdepth_summary.csv", result.files);
  sum << "graph,n,r,bits,trials,mean_rel_error,ref_2_pow_minus_B,"
         "bound_worst_case,mu\n";
  for (const auto& s : result.summary)
    sum << cfg.graph << "," << n << "," << s.r << "," << s.bits << ","
        << s.trials << "," << format_g17(s.mean_rel_error) << ","
        << format_g17(s.ref_curve) << ","
        << format_g17(s.bounds.bound_worst_case) << "," << format_g17(s.mu)
        << "\n";
  sum.close();

  write_runtime_csv(cfg, "bitdepth", result.rows, result.files);
  write_meta(cfg, "bitdepth", cfg.bandwidths, cfg.bits, result.files);
  return result;
}

ExperimentResult run_comparison(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.bandwidths.empty())
    for (int r = 15; r <= 155; r += 10) cfg.bandwidths.push_back(r);
  validate(cfg);

  const GraphBundle bundle = make_graph(cfg);
  const int n = bundle.graph.n;
  const int bits = cfg.bits.empty() ? default_budget_bits(n) : cfg.bits[0];
  if (cfg.bits.empty()) cfg.bits = {bits};
  const long long samples =
      cfg.sssr_samples > 0 ? cfg.sssr_samples : default_sssr_samples(n);
  const bool with_sssr = bits >= 2;
  if (!with_sssr)
    std::cerr << "warning: sampling baseline has no 1-bit mode; emitting "
                 "ssns rows only\n";
  const Engine engine = engine_of(cfg);
  const BasisCache cache(bundle.graph);

  ExperimentResult result;
  for (int r : cfg.bandwidths) {
    if (!usable_bandwidth(r, n)) continue;
    const SpectralBasis basis = cache.full.truncated(r);
    const double mu = incoherence(basis);
    const ErrorReport bounds = bound_curves(n, r, bits, mu);

    double ssns_rel = 0.0, ssns_ms = 0.0, sssr_rel = 0.0, sssr_ms = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = trial_seed(cfg, r, bits, t);
      const GraphSignal f = random_bandlimited(basis, seed);

      auto t0 = std::chrono::steady_clock::now();
      const SsnsResult run = ssns_quantize(basis, f, bits, engine);
      double ms = elapsed_ms(t0);
      double qe = qe_filtered(basis, f.values, run.q);
      result.rows.push_back(
          {"ssns", r, bits, t, seed, qe, qe / f.values.norm(), ms});
      ssns_rel += qe / f.values.norm();
      ssns_ms += ms;

      if (with_sssr) {
        const std::uint64_t s2 = sssr_seed(cfg, r, bits, t);
        t0 = std::chrono::steady_clock::now();
        const AugmentedQuantization aug =
            sssr_quantize(f, basis, bits, samples, s2);
        ms = elapsed_ms(t0);
        qe = qe_filtered(basis, f.values, aug.values);
        result.rows.push_back(
            {"sssr_sketch", r, bits, t, s2, qe, qe / f.values.norm(), ms});
        sssr_rel += qe / f.values.norm();
        sssr_ms += ms;
      }
    }

    SummaryRow s;
    s.method = "ssns";
    s.r = r;
    s.bits = bits;
    s.trials = cfg.trials;
    s.mean_rel_error = ssns_rel / cfg.trials;
    s.mean_runtime_ms = ssns_ms / cfg.trials;
    s.bounds = bounds;
    s.mu = mu;
    result.summary.push_back(s);
    if (with_sssr) {
      s.method = "sssr_sketch";
      s.mean_rel_error = sssr_rel / cfg.trials;
      s.mean_runtime_ms = sssr_ms / cfg.trials;
      result.summary.push_back(s);
    }
  }

  std::ofstream csv = open_file(cfg, "compare.csv", result.files);
  csv << "graph,n,r,bits,method,trial,trial_seed,qe,rel_error\n";
  for (const auto& row : result.rows)
    csv << cfg.graph << "," << n << "," << row.r << "," << row.bits << ","
        << row.method << "," << row.trial << "," << row.seed << ","
        << format_g17(row.qe) << "," << format_g17(row.rel_error) << "\n";
  csv.close();

  std::ofstream sum = open_file(cfg, "compare_summary.csv", result.files);
  sum << "graph,n,r,bits,trials,ssns_mean_rel_error,"
         "sssr_sketch_mean_rel_error,bound_sssr_budget,bound_ssns_budget,"
         "bound_over_ssns_ratio,mu\n";
  for (std::size_t i = 0; i < result.summary.size(); ++i) {
    const SummaryRow& s = result.summary[i];
    if (s.method != "ssns") continue;
    std::string sssr_mean;
    if (with_sssr) sssr_mean = format_g17(result.summary[i + 1].mean_rel_error);
    sum << cfg.graph << "," << n << "," << s.r << "," << s.bits << ","
        << s.trials << "," << format_g17(s.mean_rel_error) << "," << sssr_mean
        << "," << format_g17(s.bounds.bound_sssr_budget) << ","
        << format_g17(s.bounds.bound_ssns_budget) << ","
        << format_g17(s.bounds.bound_ssns_budget / s.mean_rel_error) << ","
        << format_g17(s.mu) << "\n";
  }
  sum.close();

  write_runtime_csv(cfg, "compare", result.rows, result.files);
  write_meta(cfg, "compare", cfg.bandwidths, cfg.bits, result.files);
  return result;
}

namespace {

void write_values(const ExperimentConfig& cfg, const std::string& name,
                  const Eigen::VectorXd& v, std::vector<std::string>& files) {
  std::ofstream f = open_file(cfg, name, files);
  for (int i = 0; i < v.size(); ++i) f << format_g17(v[i]) << "\n";
}

}  // namespace

HalftoneResult run_halftone(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.bandwidths.empty()) cfg.bandwidths = {20, 50};
  const int bits = cfg.bits.empty() ? 1 : cfg.bits[0];
  if (cfg.bits.empty()) cfg.bits = {bits};
  validate(cfg);

  const GraphBundle bundle = make_graph(cfg);
  if (!bundle.has_cloud)
    throw std::invalid_argument(
        "halftone requires a point-based graph (swissroll or mesh)");
  const int n = bundle.graph.n;
  const Engine engine = engine_of(cfg);
  const GraphSignal f = mesh_z_signal(bundle.cloud);
  const BasisCache cache(bundle.graph);

  HalftoneResult result;
  result.n = n;

  auto t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd q_msq = msq_direct(f, bits);
  const double msq_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd q_sdw = sdw_quantize(f, bits).values;
  const double sdw_ms = elapsed_ms(t0);

  write_values(cfg, "halftone_signal.csv", f.values, result.files);
  write_values(cfg, "halftone_msq.csv", q_msq, result.files);
  write_values(cfg, "halftone_sdw.csv", q_sdw, result.files);

  for (int r : cfg.bandwidths) {
    if (!usable_bandwidth(r, n)) continue;
    const SpectralBasis basis = cache.full.truncated(r);

    t0 = std::chrono::steady_clock::now();
    const SsnsResult run = ssns_quantize(basis, f, bits, engine);
    const double ssns_ms = elapsed_ms(t0);
    write_values(cfg, "halftone_ssns_r" + std::to_string(r) + ".csv", run.q,
                 result.files);

    result.rows.push_back(
        {"msq", r, bits, qe_filtered(basis, f.values, q_msq), msq_ms});
    result.rows.push_back(
        {"sdw_sketch", r, bits, qe_filtered(basis, f.values, q_sdw), sdw_ms});
    result.rows.push_back(
        {"ssns", r, bits, qe_filtered(basis, f.values, run.q), ssns_ms});
  }

  std::ofstream sum = open_file(cfg, "halftone_summary.csv", result.files);
  sum << "graph,n,method,r,bits,proxy_qe\n";
  for (const auto& row : result.rows)
    sum << cfg.graph << "," << n << "," << row.method << "," << row.r << ","
        << row.bits << "," << format_g17(row.proxy_qe) << "\n";
  sum.close();

  std::ofstream rt = open_file(cfg, "halftone_runtime.csv", result.files);
  rt << "method,r,bits,runtime_ms\n";
  for (const auto& row : result.rows)
    rt << row.method << "," << row.r << "," << row.bits << ","
       << format_g17(row.runtime_ms) << "\n";
  rt.close();

  write_meta(cfg, "halftone", cfg.bandwidths, cfg.bits, result.files);
  return result;
}

bool run_selftest(std::ostream& out) {
  bool ok = true;
  auto check = [&](bool cond, const std::string& name) {
    out << (cond ? "ok   " : "FAIL ") << name << "\n";
    ok = ok && cond;
  };

  // alphabets
  bool alpha_ok = true;
  for (int b = 1; b <= 8; ++b) {
    const Alphabet a = make_alphabet(b);
    alpha_ok = alpha_ok && a.size() == (1 << b) && a.levels[0] == -1.0 &&
               a.levels[a.size() - 1] == 1.0;
    for (int j = 0; j < a.size(); ++j)
      alpha_ok = alpha_ok && a.levels[j] == -a.levels[a.size() - 1 - j];
  }
  check(alpha_ok, "midrise alphabets: size 2^B, endpoints +-1, symmetric");

  // closed-form quantizer against exhaustive search
  bool msq_ok = true;
  Rng rng(42);
  for (int b = 1; b <= 8 && msq_ok; ++b) {
    const Alphabet a = make_alphabet(b);
    for (int i = 0; i < 20000; ++i) {
      const double z = -3.0 + 6.0 * rng.uniform();
      double best = a.levels[0];
      double best_d = std::abs(z - best);
      for (int j = 1; j < a.size(); ++j) {
        const double d = std::abs(z - a.levels[j]);
        if (d <= best_d) {
          best_d = d;
          best = a.levels[j];
        }
      }
      if (msq(z, a) != best) {
        msq_ok = false;
        break;
      }
    }
  }
  check(msq_ok, "quantizer matches exhaustive nearest-level search");

  // preprocessing contracts on two small graphs, both engines
  bool contracts_ok = true;
  bool bound_ok = true;
  for (const char* name : {"ring", "grid"}) {
    const Graph g =
        std::string(name) == "ring" ? build_ring(64) : build_grid(8, 8);
    const SpectralBasis basis = eig_smallest(normalized_laplacian(g), 8);
    for (int trial = 0; trial < 5; ++trial) {
      const GraphSignal f =
          random_bandlimited(basis, derive_seed(7, {fnv1a64(name),
                                                    (std::uint64_t)trial}));
      for (Engine e : {Engine::kReference, Engine::kFast}) {
        for (int b : {1, 3}) {
          const SsnsResult run = ssns_quantize(basis, f, b, e);
          const double resid =
              (basis.vectors.transpose() * (run.pre.reshaped - f.values))
                  .norm();
          contracts_ok =
              contracts_ok && resid <= 1e-8 * (1.0 + f.values.norm()) &&
              std::abs(run.pre.reshaped.lpNorm<Eigen::Infinity>() - 1.0) <=
                  1e-10 &&
              run.pre.unsaturated_count() <= basis.r();
          const double qe = qe_filtered(basis, f.values, run.q);
          const double cap =
              std::sqrt(static_cast<double>(basis.r())) /
              (std::ldexp(1.0, b) - 1.0);
          bound_ok = bound_ok && qe <= cap + 1e-12;
        }
      }
    }
  }
  check(contracts_ok, "preprocessing contracts (both engines)");
  check(bound_ok, "filtered error within sqrt(r)*delta/2");

  out << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok;
}

}  // namespace gsq
