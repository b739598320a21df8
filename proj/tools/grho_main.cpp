// Command-line front end: CSV ingestion, test/km/chain/bounds reporting and
// randomized verification runs. Exit codes: 0 success, 1 validation or input
// error, 2 internal assertion failure (e.g. a monotonicity violation).
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grho/grho.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_rho_list(const std::string& text) {
  std::vector<double> rhos;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double rho = std::stod(item, &used);
      if (used != item.size() || !(rho >= 0.0))
        throw std::invalid_argument(item);
      rhos.push_back(rho);
    } catch (const std::exception&) {
      throw grho::Error(grho::ErrorCode::InvalidInput,
                        "--rho expects a comma-separated list of nonnegative reals");
    }
  }
  if (rhos.empty())
    throw grho::Error(grho::ErrorCode::InvalidInput, "--rho list is empty");
  return rhos;
}

grho::WeightConvention parse_convention(const std::string& name) {
  if (name == "left") return grho::WeightConvention::LeftLimit;
  if (name == "right") return grho::WeightConvention::RightContinuous;
  throw grho::Error(grho::ErrorCode::InvalidInput,
                    "convention must be 'left' or 'right', got '" + name + "'");
}

const char* convention_name(grho::WeightConvention c) {
  return c == grho::WeightConvention::LeftLimit ? "left" : "right";
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Times printed the way the input wrote them, integers without a decimal tail.
std::string format_time(double t) {
  if (t == std::floor(t) && std::abs(t) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", t);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

struct CommonOptions {
  std::string input;
  std::string rho_text = "0";
  std::string convention_text = "left";
  std::string format = "table";
};

grho::Dataset load_dataset(const std::string& path) {
  return grho::build_dataset(grho::read_dataset_csv(path));
}

/// Per-group status sequences and display labels, ordered by time within the
/// group. Chain generation starts from the all-G0-first arrangement whatever
/// the input interleaving was.
struct GroupedInput {
  std::vector<grho::Status> statuses_g0, statuses_g1;
  std::vector<double> times_g0, times_g1;
};

GroupedInput group_input(const grho::Dataset& ds) {
  if (!ds.strict)
    throw grho::Error(grho::ErrorCode::TiesPresent,
                      "the chain requires pairwise-distinct observation times");
  std::vector<grho::Observation> sorted = ds.observations;
  std::sort(sorted.begin(), sorted.end(),
            [](const grho::Observation& a, const grho::Observation& b) { return a.time < b.time; });
  GroupedInput g;
  for (const grho::Observation& obs : sorted) {
    if (obs.group == grho::Group::G0) {
      g.statuses_g0.push_back(obs.status);
      g.times_g0.push_back(obs.time);
    } else {
      g.statuses_g1.push_back(obs.status);
      g.times_g1.push_back(obs.time);
    }
  }
  return g;
}

std::string arrangement_row(const grho::Arrangement& arr, const GroupedInput& g) {
  std::string out;
  for (const grho::ArrangementEntry& e : arr.entries) {
    if (!out.empty()) out += ' ';
    const std::vector<double>& times =
        e.group == grho::Group::G0 ? g.times_g0 : g.times_g1;
    out += format_time(times[static_cast<std::size_t>(e.ordinal - 1)]);
    if (e.status == grho::Status::Censored) out += "⁺";
  }
  return out;
}

json result_to_json(const grho::GrhoResult& res, double z, double p) {
  json per_failure = json::array();
  for (const grho::FailureTerm& t : res.per_failure)
    per_failure.push_back(
        {{"tau", t.tau}, {"weight", t.weight}, {"o", t.o}, {"e", t.e}, {"v", t.v}});
  return json{{"rho", res.rho},
              {"convention", convention_name(res.convention)},
              {"O", res.O},
              {"E", res.E},
              {"V", res.V},
              {"Z", z},
              {"p", p},
              {"per_failure", per_failure}};
}

int cmd_test(const CommonOptions& opt) {
  const grho::Dataset ds = load_dataset(opt.input);
  for (double rho : parse_rho_list(opt.rho_text)) {
    const grho::GrhoConfig cfg{rho, parse_convention(opt.convention_text)};
    const grho::GrhoResult res = grho::components(ds, cfg);
    const double z = grho::z_statistic(res);
    const double p = grho::p_value(z);
    if (opt.format == "json") {
      std::cout << result_to_json(res, z, p).dump() << "\n";
    } else {
      std::cout << "rho=" << format_time(rho) << " convention=" << convention_name(cfg.convention)
                << "  O=" << fixed4(res.O) << " E=" << fixed4(res.E) << " V=" << fixed4(res.V)
                << "  Z=" << fixed4(z) << " Z^2=" << fixed4(z * z) << " p=" << fixed4(p) << "\n";
    }
  }
  return 0;
}

int cmd_km(const CommonOptions& opt) {
  const grho::Dataset ds = load_dataset(opt.input);
  const grho::KMCurve curve = grho::km_estimate(ds);
  if (opt.format == "json") {
    json steps = json::array();
    for (const grho::KMStep& s : curve.steps)
      steps.push_back({{"time", s.time}, {"survival", s.survival}});
    std::cout << json{{"steps", steps}}.dump() << "\n";
  } else if (opt.format == "csv") {
    std::cout << "time,survival\n";
    for (const grho::KMStep& s : curve.steps)
      std::cout << full(s.time) << "," << full(s.survival) << "\n";
  } else {
    std::cout << "time  survival\n";
    for (const grho::KMStep& s : curve.steps)
      std::cout << format_time(s.time) << "  " << fixed4(s.survival) << "\n";
  }
  return 0;
}

int cmd_chain(const CommonOptions& opt) {
  const grho::Dataset ds = load_dataset(opt.input);
  const GroupedInput g = group_input(ds);
  const grho::WeightConvention convention = parse_convention(opt.convention_text);
  const std::vector<double> rhos = parse_rho_list(opt.rho_text);
  if (opt.format == "csv") std::cout << "rho,arrangement,z\n";
  for (double rho : rhos) {
    const grho::ChainResult chain =
        grho::generate_chain(g.statuses_g0, g.statuses_g1, grho::GrhoConfig{rho, convention});
    if (opt.format == "json") {
      for (const grho::SwapStep& step : chain.steps)
        std::cout << json{{"rho", rho},
                          {"index", step.index},
                          {"scenario", grho::scenario_name(step.scenario)},
                          {"subcase", step.subcase},
                          {"z_before", step.z_before},
                          {"z_after", step.z_after}}
                         .dump()
                  << "\n";
    } else if (opt.format == "csv") {
      std::cout << full(rho) << ",1," << full(chain.z_initial) << "\n";
      for (const grho::SwapStep& step : chain.steps)
        std::cout << full(rho) << "," << step.index + 1 << "," << full(step.z_after) << "\n";
    } else {
      std::cout << "rho = " << format_time(rho)
                << " (convention: " << convention_name(convention) << ")\n";
      std::cout << "  1  " << arrangement_row(chain.initial, g) << "  "
                << fixed4(chain.z_initial) << "\n";
      for (const grho::SwapStep& step : chain.steps) {
        char idx[16];
        std::snprintf(idx, sizeof idx, "%3zu", step.index + 1);
        std::cout << idx << "  " << arrangement_row(step.arrangement_after, g) << "  "
                  << fixed4(step.z_after) << "\n";
      }
    }
  }
  return 0;
}

int cmd_bounds(const CommonOptions& opt) {
  const auto [g0, g1] = grho::read_interval_csv(opt.input);
  const grho::WeightConvention convention = parse_convention(opt.convention_text);
  for (double rho : parse_rho_list(opt.rho_text)) {
    const grho::BoundsResult res = grho::bounds(g0, g1, grho::GrhoConfig{rho, convention});
    if (opt.format == "json") {
      std::cout << json{{"rho", rho},
                        {"z_min", res.z_min},
                        {"z_max", res.z_max},
                        {"arg_min", grho::to_label_string(res.arg_min)},
                        {"arg_max", grho::to_label_string(res.arg_max)}}
                       .dump()
                << "\n";
    } else {
      std::cout << "rho=" << format_time(rho) << "  z_min=" << fixed4(res.z_min)
                << "  z_max=" << fixed4(res.z_max) << "\n";
      std::cout << "  arg_min: " << grho::to_label_string(res.arg_min) << "\n";
      std::cout << "  arg_max: " << grho::to_label_string(res.arg_max) << "\n";
    }
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, std::size_t cases, std::size_t max_n, double tolerance) {
  grho::verify::SuiteOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.max_group = max_n;
  opts.max_total = std::max<std::size_t>(2, std::min<std::size_t>(10, 2 * max_n));
  opts.tol_monotone = tolerance;
  const grho::verify::SuiteReport reports[] = {
      grho::verify::run_monotonicity_suite(opts),
      grho::verify::run_oracle_agreement_suite(opts),
      grho::verify::run_bounds_sharpness_suite(opts),
  };
  bool all_passed = true;
  for (const grho::verify::SuiteReport& r : reports) {
    std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.cases
              << " instances, " << r.checks << " checks, " << r.skipped << " skipped)\n";
    if (!r.passed) std::cout << "  " << r.failure << "\n";
    all_passed &= r.passed;
  }
  std::cout << (all_passed ? "all suites passed" : "suite failure") << " (seed " << seed
            << ", cases " << cases << ", max-n " << max_n << ")\n";
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted two-sample log-rank tests (G^rho family), adjacent-swap chains, "
               "and test-statistic bounds for interval-valued data"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::uint64_t seed = 42;
  std::size_t cases = 200;
  std::size_t max_n = 6;
  double tolerance = 1e-9;

  const auto add_common = [&](CLI::App* sub, bool with_format_csv) {
    sub->add_option("-i,--input", opt.input, "input CSV file")->required();
    sub->add_option("-r,--rho", opt.rho_text, "comma-separated list of nonnegative rho values");
    sub->add_option("-c,--convention", opt.convention_text,
                    "weight convention: left (default) or right")
        ->envname("GRHO_CONVENTION");
    return sub->add_option("-f,--format", opt.format,
                           with_format_csv ? "output format: table, json or csv"
                                           : "output format: table or json")
        ->check(with_format_csv ? CLI::IsMember({"table", "json", "csv"})
                                : CLI::IsMember({"table", "json"}));
  };

  CLI::App* test = app.add_subcommand("test", "weighted log-rank test on time,status,group data");
  add_common(test, false);
  CLI::App* km = app.add_subcommand("km", "pooled Kaplan-Meier step function");
  add_common(km, true);
  CLI::App* chain = app.add_subcommand(
      "chain", "canonical adjacent-swap chain from all-G0-first to all-G1-first");
  add_common(chain, true);
  CLI::App* bounds =
      app.add_subcommand("bounds", "min/max Z over rankings consistent with lower,upper,status,group intervals");
  const CLI::Option* bounds_format = add_common(bounds, false);

  CLI::App* verify = app.add_subcommand("verify", "randomized self-check suites");
  verify->add_option("-s,--seed", seed, "random seed");
  verify->add_option("-n,--cases", cases, "instances per suite");
  verify->add_option("-m,--max-n", max_n, "per-group size bound");
  verify->add_option("-t,--tolerance", tolerance, "monotonicity tolerance")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (test->parsed()) return cmd_test(opt);
    if (km->parsed()) return cmd_km(opt);
    if (chain->parsed()) return cmd_chain(opt);
    if (bounds->parsed()) {
      if (bounds_format->count() == 0) opt.format = "json";  // bounds defaults to JSON
      return cmd_bounds(opt);
    }
    return cmd_verify(seed, cases, max_n, tolerance);
  } catch (const grho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == grho::ErrorCode::MonotonicityViolation ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
