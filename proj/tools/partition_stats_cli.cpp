// Command-line front end for the equal-probability partition toolkit.
//
// Subcommands: estimate, compare, verify, entropy, quantile, sample.
// Output is JSON (default) or CSV; identical invocations produce identical
// bytes, including under different PARTITION_STATS_THREADS settings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partition_stats/partition_stats.hpp"
#include "partition_stats/serialize.hpp"

namespace ps = partition_stats;
using ps::serialize::CsvWriter;
using json = ps::serialize::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

struct OutputOptions {
  std::string format = "json";
  std::string output;
};

struct InputOptions {
  std::string path;
  std::string inline_data;
  int column = -1;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", out.output, "Write output to this file instead of stdout");
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.path,
                  "Input file: one value per line, blank lines and # comments skipped");
  cmd->add_option("--data", in.inline_data, "Inline comma-separated values");
  cmd->add_option("--column", in.column,
                  "Zero-based column to read from comma-delimited input lines");
}

std::vector<double> load_values(const InputOptions& in) {
  if (in.path.empty() == in.inline_data.empty()) {
    throw ps::Error(ps::errc::io_error, "exactly one of --input or --data is required");
  }
  if (!in.inline_data.empty()) {
    return ps::io::parse_inline_values(in.inline_data);
  }
  std::ifstream file(in.path);
  if (!file) {
    throw ps::Error(ps::errc::io_error, "cannot open '" + in.path + "'");
  }
  return ps::io::read_values(file, in.column);
}

ps::TailPolicy parse_tail(const std::string& text) {
  if (text == "exp") return ps::tail::ExponentialMatched{};
  if (text == "none") return ps::tail::Excluded{};
  if (text.rfind("trunc:", 0) == 0) {
    const auto params = text.substr(6);
    const auto comma = params.find(',');
    if (comma != std::string::npos) {
      try {
        const double lo = std::stod(params.substr(0, comma));
        const double hi = std::stod(params.substr(comma + 1));
        return ps::tail::Truncated{lo, hi};
      } catch (const std::exception&) {
      }
    }
  }
  throw ps::Error(ps::errc::parse_error,
                  "bad tail policy '" + text + "' (expected trunc:a,b | exp | none)");
}

std::string tail_to_string(const ps::TailPolicy& policy) {
  if (const auto* t = std::get_if<ps::tail::Truncated>(&policy)) {
    return "trunc:" + ps::format_double(t->lower) + "," + ps::format_double(t->upper);
  }
  if (std::holds_alternative<ps::tail::ExponentialMatched>(policy)) return "exp";
  return "none";
}

unsigned worker_threads_from_env() {
  const char* raw = std::getenv("PARTITION_STATS_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long value = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) {
    throw ps::Error(ps::errc::parse_error,
                    std::string("PARTITION_STATS_THREADS must be a positive integer, got '") +
                        raw + "'");
  }
  return static_cast<unsigned>(value);
}

void emit(const OutputOptions& out, const json& envelope, const std::string& csv) {
  std::string payload;
  if (out.format == "json") {
    payload = envelope.dump(2);
    payload += '\n';
  } else {
    payload = csv;
  }
  if (out.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(out.output, std::ios::binary);
  if (!file || !(file << payload)) {
    throw ps::Error(ps::errc::io_error, "cannot write '" + out.output + "'");
  }
}

json envelope_for(const std::string& command, json params, json results) {
  return {{"schema_version", 1},
          {"command", command},
          {"params", std::move(params)},
          {"results", std::move(results)}};
}

// estimate: per-order-statistic table, density table, partition entropy.
int run_estimate(const InputOptions& in, const OutputOptions& out,
                 const std::string& tail_text, const std::string& plotting_text,
                 bool no_density) {
  const ps::SortedSample sample(load_values(in));
  const ps::TailPolicy policy = parse_tail(tail_text);
  const auto formula = plotting_text == "median" ? ps::PlottingFormula::MedianApprox
                                                 : ps::PlottingFormula::MeanBeta;
  const std::size_t n = sample.size();
  const auto positions = ps::plotting_positions(n, formula);

  std::vector<ps::PiecewiseUniformDensity::Piece> pieces;
  if (!no_density) {
    try {
      pieces = ps::PiecewiseUniformDensity(sample, policy).pieces();
    } catch (const ps::Error& e) {
      // n = 1 with excluded tails has no representable density; emit an
      // empty table rather than failing the whole report.
      if (e.code() != ps::errc::too_few_points) throw;
    }
  }
  const double entropy_bits = ps::partition_entropy(n).value;

  json order_stats = json::array();
  for (std::size_t i = 1; i <= n; ++i) {
    order_stats.push_back({{"rank", i},
                           {"value", sample[i - 1]},
                           {"plotting_position", positions[i - 1]},
                           {"ecdf", ps::ecdf_eval(sample, sample[i - 1])}});
  }
  json density = json::array();
  for (const auto& piece : pieces) density.push_back(ps::serialize::to_json(piece));

  const json params = {{"n", n},
                       {"tail", tail_to_string(policy)},
                       {"plotting", plotting_text},
                       {"ties", sample.ties().size()}};
  const json results = {{"order_statistics", order_stats},
                        {"density", density},
                        {"entropy_bits", entropy_bits}};

  CsvWriter w;
  w.section("params");
  w.row({"n", "tail", "plotting", "ties", "entropy_bits"});
  w.row({CsvWriter::cell(n), tail_to_string(policy), plotting_text,
         CsvWriter::cell(sample.ties().size()), CsvWriter::cell(entropy_bits)});
  w.section("order_statistics");
  w.row({"rank", "value", "plotting_position", "ecdf"});
  for (std::size_t i = 1; i <= n; ++i) {
    w.row({CsvWriter::cell(i), CsvWriter::cell(sample[i - 1]),
           CsvWriter::cell(positions[i - 1]),
           CsvWriter::cell(ps::ecdf_eval(sample, sample[i - 1]))});
  }
  w.section("density");
  w.row({"lower", "upper", "mass", "height", "kind"});
  for (const auto& piece : pieces) {
    const bool uniform = piece.kind == ps::PiecewiseUniformDensity::Piece::Kind::uniform;
    w.row({std::isfinite(piece.lower) ? CsvWriter::cell(piece.lower) : "-inf",
           std::isfinite(piece.upper) ? CsvWriter::cell(piece.upper) : "inf",
           CsvWriter::cell(piece.mass), CsvWriter::cell(piece.height),
           uniform ? "uniform" : "exponential"});
  }

  emit(out, envelope_for("estimate", params, results), w.str());
  return kExitOk;
}

int run_compare(const InputOptions& in, const OutputOptions& out) {
  const ps::SortedSample sample(load_values(in));
  const auto report = ps::compare_cdfs(sample);
  const json params = {{"n", sample.size()}};
  emit(out, envelope_for("compare", params, ps::serialize::to_json(report)),
       ps::serialize::to_csv(report));
  return kExitOk;
}

struct VerifyFlags {
  std::string dist;
  std::size_t n = 0;
  std::size_t reps = 100000;
  std::uint64_t seed = 0;
  double z_max = 4.0;
  bool spacings = false;
  std::vector<std::size_t> beta_mean;
  std::vector<std::size_t> share;
};

int run_verify(const VerifyFlags& flags, const OutputOptions& out) {
  const ps::DistributionSpec dist = ps::parse_distribution(flags.dist);
  const ps::McOptions opts{flags.reps, flags.seed, flags.z_max,
                           worker_threads_from_env()};

  const auto masses = ps::verify_expected_masses(dist, flags.n, opts);
  bool pass = masses.pass;

  json results = {{"masses", ps::serialize::to_json(masses)}};
  std::string csv = ps::serialize::to_csv(masses);
  CsvWriter extra;

  if (flags.spacings) {
    const auto spacings = ps::simulate_spacings(flags.n, opts);
    for (std::size_t j = 0; j < spacings.spacings.size(); ++j) {
      const auto& sp = spacings.spacings[j];
      const double se = std::sqrt(sp.variance / static_cast<double>(spacings.reps));
      const double z = se > 0.0 ? (sp.mean - masses.target) / se : 0.0;
      pass = pass && std::abs(z) <= flags.z_max;
    }
    results["spacings"] = ps::serialize::to_json(spacings);
    csv += "\n" + ps::serialize::to_csv(spacings);
  }
  if (!flags.beta_mean.empty()) {
    json checks = json::array();
    extra.section("beta_mean");
    extra.row({"i", "value", "se", "target", "z"});
    for (std::size_t i : flags.beta_mean) {
      const auto est = ps::verify_beta_mean(dist, flags.n, i, opts);
      pass = pass && std::abs(est.z) <= flags.z_max;
      json one = ps::serialize::to_json(est);
      one["i"] = i;
      checks.push_back(std::move(one));
      extra.row({CsvWriter::cell(i), CsvWriter::cell(est.value), CsvWriter::cell(est.se),
                 CsvWriter::cell(est.target), CsvWriter::cell(est.z)});
    }
    results["beta_mean"] = std::move(checks);
  }
  if (!flags.share.empty()) {
    json checks = json::array();
    extra.section("conditional_share");
    extra.row({"i", "value", "se", "target", "z"});
    for (std::size_t i : flags.share) {
      const auto est = ps::conditional_share_check(dist, flags.n, i, opts);
      pass = pass && std::abs(est.z) <= flags.z_max;
      json one = ps::serialize::to_json(est);
      one["i"] = i;
      checks.push_back(std::move(one));
      extra.row({CsvWriter::cell(i), CsvWriter::cell(est.value), CsvWriter::cell(est.se),
                 CsvWriter::cell(est.target), CsvWriter::cell(est.z)});
    }
    results["conditional_share"] = std::move(checks);
  }
  results["pass"] = pass;
  if (!extra.str().empty()) csv += "\n" + extra.str();
  CsvWriter overall;
  overall.section("overall");
  overall.row({"pass"});
  overall.row({CsvWriter::cell(pass)});
  csv += "\n" + overall.str();

  const json params = {{"dist", ps::to_string(dist)}, {"n", flags.n},
                       {"reps", flags.reps},          {"seed", flags.seed},
                       {"z_max", flags.z_max}};
  emit(out, envelope_for("verify", params, results), csv);
  return pass ? kExitOk : kExitVerifyFailed;
}

int run_entropy(bool have_n, std::size_t n, const std::string& probs_text,
                const std::string& base_text, const OutputOptions& out) {
  const ps::LogBase base = base_text == "nats" ? ps::LogBase::nats : ps::LogBase::bits;
  if (have_n == !probs_text.empty()) {
    throw ps::Error(ps::errc::io_error, "exactly one of --n or --probs is required");
  }
  json params = {{"base", base_text}};
  json results;
  CsvWriter w;
  if (have_n) {
    const auto entropy = ps::partition_entropy(n, base);
    const double marginal = ps::marginal_information(n);
    params["n"] = n;
    results = {{"entropy", entropy.value}, {"marginal_information_bits", marginal}};
    w.section("entropy");
    w.row({"n", "base", "entropy", "marginal_information_bits"});
    w.row({CsvWriter::cell(n), base_text, CsvWriter::cell(entropy.value),
           CsvWriter::cell(marginal)});
  } else {
    const auto probs = ps::io::parse_inline_values(probs_text);
    const auto entropy = ps::discrete_entropy(probs, base);
    params["probs"] = probs;
    results = {{"entropy", entropy.value}};
    w.section("entropy");
    w.row({"base", "entropy"});
    w.row({base_text, CsvWriter::cell(entropy.value)});
  }
  emit(out, envelope_for("entropy", params, results), w.str());
  return kExitOk;
}

int run_quantile(const InputOptions& in, const OutputOptions& out,
                 const std::string& tail_text, const std::vector<double>& qs) {
  const ps::SortedSample sample(load_values(in));
  const ps::PartitionCdf cdf(sample, parse_tail(tail_text));
  json points = json::array();
  CsvWriter w;
  w.section("quantiles");
  w.row({"q", "x"});
  for (double q : qs) {
    const double x = cdf.quantile(q);
    points.push_back({{"q", q}, {"x", x}});
    w.row({CsvWriter::cell(q), CsvWriter::cell(x)});
  }
  const json params = {{"n", sample.size()}, {"tail", tail_text}};
  emit(out, envelope_for("quantile", params, {{"points", points}}), w.str());
  return kExitOk;
}

// sample: draw from either a reference distribution or the partition CDF of
// provided data. CSV output is plain values, one per line, so it can be fed
// straight back to estimate/compare.
int run_sample(const InputOptions& in, const OutputOptions& out, const std::string& dist_text,
               const std::string& tail_text, std::size_t m, std::uint64_t seed) {
  const bool have_data = !in.path.empty() || !in.inline_data.empty();
  if (have_data == !dist_text.empty()) {
    throw ps::Error(ps::errc::io_error,
                    "exactly one source is required: --dist, or --input/--data");
  }
  std::vector<double> values;
  json params = {{"m", m}, {"seed", seed}};
  if (!dist_text.empty()) {
    const auto dist = ps::parse_distribution(dist_text);
    values = ps::sample(dist, seed, m);
    params["source"] = ps::to_string(dist);
  } else {
    const ps::SortedSample sample(load_values(in));
    const ps::PartitionCdf cdf(sample, parse_tail(tail_text));
    values = cdf.sample(seed, m);
    params["source"] = "partition";
    params["n"] = sample.size();
    params["tail"] = tail_text;
  }
  std::string csv;
  for (double v : values) {
    csv += ps::format_double(v);
    csv += '\n';
  }
  emit(out, envelope_for("sample", params, {{"values", values}}), csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal-probability partition statistics"};
  app.require_subcommand(1);
  int rc = kExitOk;

  // estimate
  auto* estimate = app.add_subcommand(
      "estimate", "Plotting positions, ECDF, density table and entropy for a data set");
  InputOptions est_in;
  OutputOptions est_out;
  std::string est_tail = "none";
  std::string est_plotting = "mean";
  bool est_no_density = false;
  add_input_options(estimate, est_in);
  add_output_options(estimate, est_out);
  estimate->add_option("--tail", est_tail, "Tail policy: trunc:a,b | exp | none")
      ->capture_default_str();
  estimate->add_option("--plotting", est_plotting, "Plotting position formula")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
  estimate->add_flag("--no-density", est_no_density, "Skip the density table");
  estimate->callback(
      [&] { rc = run_estimate(est_in, est_out, est_tail, est_plotting, est_no_density); });

  // compare
  auto* compare =
      app.add_subcommand("compare", "ECDF versus partition CDF at each order statistic");
  InputOptions cmp_in;
  OutputOptions cmp_out;
  add_input_options(compare, cmp_in);
  add_output_options(compare, cmp_out);
  compare->callback([&] { rc = run_compare(cmp_in, cmp_out); });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Monte Carlo verification of the equal-expected-mass property");
  VerifyFlags vf;
  OutputOptions ver_out;
  verify->add_option("--dist", vf.dist, "Reference distribution: uniform:a,b | exp:lambda | normal:mu,sigma")
      ->required();
  verify->add_option("--n", vf.n, "Sample size per replication")->required()
      ->check(CLI::PositiveNumber);
  verify->add_option("--reps", vf.reps, "Replications (at least 1000)")
      ->capture_default_str();
  verify->add_option("--seed", vf.seed, "Master seed")->capture_default_str();
  verify->add_option("--z-max", vf.z_max, "Pass threshold in standard errors")
      ->capture_default_str();
  verify->add_flag("--spacings", vf.spacings, "Also simulate uniform spacings");
  verify->add_option("--beta-mean", vf.beta_mean,
                     "Also check E[F(x_(i))] = i/(n+1) for this order statistic (repeatable)");
  verify->add_option("--share", vf.share,
                     "Also check the conditional share of segment i (repeatable)");
  add_output_options(verify, ver_out);
  verify->callback([&] { rc = run_verify(vf, ver_out); });

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Partition entropy or discrete entropy");
  std::size_t ent_n = 0;
  std::string ent_probs;
  std::string ent_base = "bits";
  OutputOptions ent_out;
  entropy->add_option("--n", ent_n, "Sample size; reports log(n+1)");
  entropy->add_option("--probs", ent_probs, "Comma-separated probabilities");
  entropy->add_option("--base", ent_base, "Logarithm base")
      ->check(CLI::IsMember({"bits", "nats"}))
      ->capture_default_str();
  add_output_options(entropy, ent_out);
  entropy->callback([&] {
    rc = run_entropy(entropy->count("--n") > 0, ent_n, ent_probs, ent_base, ent_out);
  });

  // quantile
  auto* quantile = app.add_subcommand("quantile", "Invert the partition CDF of a data set");
  InputOptions qnt_in;
  OutputOptions qnt_out;
  std::string qnt_tail = "exp";
  std::vector<double> qnt_qs;
  add_input_options(quantile, qnt_in);
  add_output_options(quantile, qnt_out);
  quantile->add_option("--tail", qnt_tail, "Tail policy: trunc:a,b | exp (must be invertible)")
      ->capture_default_str();
  quantile->add_option("--q", qnt_qs, "Probability in (0,1) (repeatable)")->required();
  quantile->callback([&] { rc = run_quantile(qnt_in, qnt_out, qnt_tail, qnt_qs); });

  // sample
  auto* sample = app.add_subcommand(
      "sample", "Draw from a reference distribution or from a partition CDF");
  InputOptions smp_in;
  OutputOptions smp_out;
  std::string smp_dist;
  std::string smp_tail = "exp";
  std::size_t smp_m = 1;
  std::uint64_t smp_seed = 0;
  add_input_options(sample, smp_in);
  add_output_options(sample, smp_out);
  sample->add_option("--dist", smp_dist, "Reference distribution to draw from");
  sample->add_option("--tail", smp_tail, "Tail policy when drawing from data")
      ->capture_default_str();
  sample->add_option("--m", smp_m, "Number of draws")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", smp_seed, "Seed")->capture_default_str();
  sample->callback(
      [&] { rc = run_sample(smp_in, smp_out, smp_dist, smp_tail, smp_m, smp_seed); });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const ps::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return rc;
}
