// Command-line front end: runs the analytical engine, the oracles, and
// their comparisons, and emits JSON or CSV. All output is deterministic for
// a fixed invocation; diagnostics go to stderr only.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "adderstats/adderstats.hpp"

namespace {

using namespace adderstats;

constexpr int kExitInvalidConfig = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitIoFailure = 4;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  int k = 0;
  int l = 0;
  bool exact = false;
  std::string format = "json";
  std::string out;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::uint64_t max_patterns = kDefaultPatternCap;
  int max_oracle_n = kDefaultExhaustiveWidthCap;
  std::vector<int> k_list;
  std::vector<int> l_list;
  bool monte_carlo = false;  // compare: use sampling instead of exhaustive
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open output file: " + path);
  }
  file << data;
  file.flush();
  if (!file) {
    throw IoError("write failed: " + path);
  }
}

// An exact non-negative rational with an arbitrary denominator; exhaustive
// counts divide by 4^n, Monte Carlo counts by the sample total.
struct Fraction {
  BigInt num;
  BigInt den;

  double value() const {
    return Dyadic(num, 0).to_double() / Dyadic(den, 0).to_double();
  }
};

bool exactly_equal(const Dyadic& a, const Fraction& b) {
  return a.numerator() * b.den == b.num << static_cast<std::size_t>(a.exponent());
}

double relative_error(const Dyadic& analytical, const Fraction& empirical) {
  if (exactly_equal(analytical, empirical)) {
    return 0.0;
  }
  const double a = analytical.to_double();
  const double e = empirical.value();
  if (a == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::abs(e - a) / a;
}

template <ProbabilityMode P>
std::string cmd_analyze(const AdderConfig& cfg, const Options& o) {
  const auto dist = enumerate_distribution<P>(cfg, o.max_patterns);
  if (o.format == "csv") {
    return distribution_to_csv(dist);
  }
  return dump(analysis_to_json(dist, metrics_from_distribution(dist)));
}

template <ProbabilityMode P>
std::string cmd_rate(const AdderConfig& cfg, const Options& o) {
  const auto prefix = prefix_correct_probs<P>(cfg);
  const P er = prefix.error_rate();
  if (o.format == "csv") {
    std::ostringstream out;
    out << "quantity,prob_float,prob_num,prob_exp\n";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      const Dyadic d = ProbTraits<P>::to_dyadic(prefix[i]);
      out << 'd' << i << ',' << detail::format_double(ProbTraits<P>::to_double(prefix[i]))
          << ',' << d.numerator().str() << ',' << d.exponent() << '\n';
    }
    const Dyadic e = ProbTraits<P>::to_dyadic(er);
    out << "er," << detail::format_double(ProbTraits<P>::to_double(er)) << ','
        << e.numerator().str() << ',' << e.exponent() << '\n';
    return out.str();
  }
  ordered_json j;
  j["config"] = config_to_json(cfg);
  j["mode"] = ProbTraits<P>::mode_name;
  j["er"] = prob_to_json(er);
  ordered_json d = ordered_json::array();
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    d.push_back(prob_to_json(prefix[i]));
  }
  j["d"] = std::move(d);
  return dump(j);
}

std::string cmd_count(const AdderConfig& cfg, const Options& o) {
  const auto sequence = pattern_count_sequence(cfg);
  if (o.format == "csv") {
    std::ostringstream out;
    out << "index,count\n";
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      out << i + 1 << ',' << sequence[i].str() << '\n';
    }
    out << "total," << sequence.back().str() << '\n';
    return out.str();
  }
  ordered_json j;
  j["config"] = config_to_json(cfg);
  j["pattern_count"] = sequence.back().str();
  ordered_json seq = ordered_json::array();
  for (const BigInt& x : sequence) {
    seq.push_back(x.str());
  }
  j["sequence"] = std::move(seq);
  return dump(j);
}

std::string render_empirical(const EmpiricalDistribution& dist, const Options& o) {
  if (o.format == "csv") {
    return empirical_to_csv(dist);
  }
  return dump(empirical_to_json(dist));
}

std::string cmd_oracle(const AdderConfig& cfg, const Options& o) {
  return render_empirical(exhaustive_distribution(cfg, o.max_oracle_n), o);
}

std::string cmd_sample(const AdderConfig& cfg, const Options& o) {
  return render_empirical(monte_carlo_distribution(cfg, o.samples, o.seed), o);
}

template <ProbabilityMode P>
std::string cmd_bars(const AdderConfig& cfg, const Options& o) {
  const auto histogram = leading_one_histogram<P>(cfg);
  if (o.format == "csv") {
    return histogram_to_csv(histogram);
  }
  return dump(histogram_to_json(histogram));
}

template <ProbabilityMode P>
std::string cmd_compare(const AdderConfig& cfg, const Options& o) {
  const auto dist = enumerate_distribution<P>(cfg, o.max_patterns);
  const auto report = metrics_from_distribution(dist);
  const EmpiricalDistribution empirical =
      o.monte_carlo ? monte_carlo_distribution(cfg, o.samples, o.seed)
                    : exhaustive_distribution(cfg, o.max_oracle_n);

  const BigInt total(empirical.total_samples);
  BigInt erring = total - BigInt(empirical.count_of(0));
  BigInt mean_sum = 0;
  BigInt square_sum = 0;
  for (const auto& [magnitude, count] : empirical.counts) {
    mean_sum += BigInt(magnitude) * count;
    square_sum += BigInt(magnitude) * magnitude * count;
  }

  struct Row {
    const char* metric;
    Dyadic analytical;
    Fraction empirical;
  };
  const std::vector<Row> rows = {
      {"er", ProbTraits<P>::to_dyadic(report.er), {erring, total}},
      {"med", report.med, {mean_sum, total}},
      {"mse", report.mse, {square_sum, total}},
  };

  if (o.format == "csv") {
    std::ostringstream out;
    out << "metric,analytical_num,analytical_exp,analytical_float,"
           "empirical_num,empirical_den,empirical_float,relative_error\n";
    for (const Row& row : rows) {
      out << row.metric << ',' << row.analytical.numerator().str() << ','
          << row.analytical.exponent() << ','
          << detail::format_double(row.analytical.to_double()) << ','
          << row.empirical.num.str() << ',' << row.empirical.den.str() << ','
          << detail::format_double(row.empirical.value()) << ','
          << detail::format_double(relative_error(row.analytical, row.empirical))
          << '\n';
    }
    return out.str();
  }

  ordered_json j;
  j["config"] = config_to_json(cfg);
  j["mode"] = ProbTraits<P>::mode_name;
  j["source"] = empirical.source == SampleSource::exhaustive ? "exhaustive" : "monte_carlo";
  j["total_samples"] = empirical.total_samples;
  if (empirical.source == SampleSource::monte_carlo) {
    j["seed"] = empirical.seed;
  }
  ordered_json rows_json = ordered_json::array();
  for (const Row& row : rows) {
    rows_json.push_back(ordered_json{
        {"metric", row.metric},
        {"analytical", dyadic_to_json(row.analytical)},
        {"empirical", ordered_json{{"num", row.empirical.num.str()},
                                   {"den", row.empirical.den.str()},
                                   {"float", row.empirical.value()}}},
        {"relative_error", relative_error(row.analytical, row.empirical)}});
  }
  j["rows"] = std::move(rows_json);
  return dump(j);
}

template <ProbabilityMode P>
std::string cmd_sweep(const Options& o) {
  struct SweepRow {
    AdderConfig cfg;
    BigInt pattern_count;
    Dyadic er;
    bool enumerated = false;
    Dyadic med, mse;
  };

  std::vector<SweepRow> rows;
  for (int k : o.k_list) {
    for (int l : o.l_list) {
      AdderConfig cfg;
      try {
        cfg = validate_config(o.n, k, l);
      } catch (const ConfigError&) {
        continue;  // sweeps silently skip invalid (k, l) combinations
      }
      SweepRow row;
      row.cfg = cfg;
      row.pattern_count = count_patterns(cfg);
      row.er = ProbTraits<P>::to_dyadic(error_rate<P>(cfg));
      if (row.pattern_count <= o.max_patterns) {
        row.enumerated = true;
        stream_distribution<P>(cfg, [&row](const ErrorPattern<P>& pattern) {
          if (!pattern.magnitude.is_zero()) {
            const Dyadic p = ProbTraits<P>::to_dyadic(pattern.probability);
            row.med += p * Dyadic(pattern.magnitude);
            row.mse += p * Dyadic(pattern.magnitude * pattern.magnitude);
          }
        });
      }
      rows.push_back(std::move(row));
    }
  }

  if (o.format == "csv") {
    std::ostringstream out;
    out << "n,k,l,m,t,k_prime,pattern_count,enumeration_nodes,"
           "er_float,er_num,er_exp,med_float,med_num,med_exp,"
           "mse_float,mse_num,mse_exp\n";
    for (const SweepRow& row : rows) {
      out << row.cfg.n << ',' << row.cfg.k << ',' << row.cfg.l << ',' << row.cfg.m
          << ',' << row.cfg.t << ',' << row.cfg.k_prime << ','
          << row.pattern_count.str() << ','
          << BigInt(row.pattern_count * 2 - 1).str() << ','
          << detail::format_double(row.er.to_double()) << ','
          << row.er.numerator().str() << ',' << row.er.exponent() << ',';
      if (row.enumerated) {
        out << detail::format_double(row.med.to_double()) << ','
            << row.med.numerator().str() << ',' << row.med.exponent() << ','
            << detail::format_double(row.mse.to_double()) << ','
            << row.mse.numerator().str() << ',' << row.mse.exponent();
      } else {
        out << ",,,,,";
      }
      out << '\n';
    }
    return out.str();
  }

  ordered_json j;
  j["n"] = o.n;
  j["mode"] = ProbTraits<P>::mode_name;
  ordered_json rows_json = ordered_json::array();
  for (const SweepRow& row : rows) {
    ordered_json rj;
    rj["config"] = config_to_json(row.cfg);
    rj["pattern_count"] = row.pattern_count.str();
    rj["enumeration_nodes"] = BigInt(row.pattern_count * 2 - 1).str();
    rj["er"] = dyadic_to_json(row.er);
    if (row.enumerated) {
      rj["med"] = dyadic_to_json(row.med);
      rj["mse"] = dyadic_to_json(row.mse);
    } else {
      rj["med"] = nullptr;
      rj["mse"] = nullptr;
    }
    rows_json.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows_json);
  return dump(j);
}

void add_config_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "adder width in bits")->required();
  cmd->add_option("--k", o.k, "block size in bits")->required();
  cmd->add_option("--l", o.l, "carry-generator length in bits")->required();
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

void add_mode_option(CLI::App* cmd, Options& o) {
  cmd->add_flag("--exact", o.exact,
                "use exact dyadic probabilities instead of binary64");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact error statistics for block-based approximate adders"};
  app.require_subcommand(1);

  Options o;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "full error distribution with derived metrics");
  add_config_options(analyze, o);
  add_mode_option(analyze, o);
  add_output_options(analyze, o);
  analyze->add_option("--max-patterns", o.max_patterns,
                      "refuse enumeration beyond this many patterns")
      ->capture_default_str();

  CLI::App* rate = app.add_subcommand(
      "rate", "error rate and the prefix-correct probability vector");
  add_config_options(rate, o);
  add_mode_option(rate, o);
  add_output_options(rate, o);

  CLI::App* count = app.add_subcommand(
      "count", "pattern count and its by-span sequence, without enumeration");
  add_config_options(count, o);
  add_output_options(count, o);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustive bit-true tally over all 4^n input pairs");
  add_config_options(oracle, o);
  add_output_options(oracle, o);
  oracle->add_option("--max-oracle-n", o.max_oracle_n,
                     "widest adder the exhaustive oracle will accept")
      ->capture_default_str();

  CLI::App* sample = app.add_subcommand(
      "sample", "seeded Monte Carlo tally of error magnitudes");
  add_config_options(sample, o);
  add_output_options(sample, o);
  sample->add_option("--samples", o.samples, "number of input pairs to draw")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample->add_option("--seed", o.seed, "master seed")->capture_default_str();

  CLI::App* compare = app.add_subcommand(
      "compare", "analytical vs empirical ER/MED/MSE with relative errors");
  add_config_options(compare, o);
  add_mode_option(compare, o);
  add_output_options(compare, o);
  auto* compare_samples =
      compare->add_option("--samples", o.samples,
                          "compare against Monte Carlo with this many samples "
                          "instead of the exhaustive oracle")
          ->check(CLI::PositiveNumber);
  compare->add_option("--seed", o.seed, "master seed")->capture_default_str();
  compare->add_option("--max-oracle-n", o.max_oracle_n,
                      "widest adder the exhaustive oracle will accept")
      ->capture_default_str();
  compare->add_option("--max-patterns", o.max_patterns,
                      "refuse enumeration beyond this many patterns")
      ->capture_default_str();

  CLI::App* bars = app.add_subcommand(
      "bars", "leading-one histogram (plot-ready bar data)");
  add_config_options(bars, o);
  add_mode_option(bars, o);
  add_output_options(bars, o);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "one metrics row per valid (k, l) combination");
  sweep->add_option("--n", o.n, "adder width in bits")->required();
  sweep->add_option("--k-list", o.k_list, "block sizes to sweep")
      ->required()
      ->delimiter(',');
  sweep->add_option("--l-list", o.l_list, "generator lengths to sweep")
      ->required()
      ->delimiter(',');
  add_mode_option(sweep, o);
  add_output_options(sweep, o);
  sweep->add_option("--max-patterns", o.max_patterns,
                    "skip MED/MSE when the pattern count exceeds this")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    o.monte_carlo = compare_samples->count() > 0;

    std::string output;
    if (*analyze || *rate || *count || *oracle || *sample || *compare || *bars) {
      const AdderConfig cfg = validate_config(o.n, o.k, o.l);
      if (*analyze) {
        output = o.exact ? cmd_analyze<Dyadic>(cfg, o) : cmd_analyze<double>(cfg, o);
      } else if (*rate) {
        output = o.exact ? cmd_rate<Dyadic>(cfg, o) : cmd_rate<double>(cfg, o);
      } else if (*count) {
        output = cmd_count(cfg, o);
      } else if (*oracle) {
        output = cmd_oracle(cfg, o);
      } else if (*sample) {
        output = cmd_sample(cfg, o);
      } else if (*compare) {
        output = o.exact ? cmd_compare<Dyadic>(cfg, o) : cmd_compare<double>(cfg, o);
      } else {
        output = o.exact ? cmd_bars<Dyadic>(cfg, o) : cmd_bars<double>(cfg, o);
      }
    } else {
      output = o.exact ? cmd_sweep<Dyadic>(o) : cmd_sweep<double>(o);
    }
    write_output(o.out, output);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const PatternCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
