#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "extconv/io.hpp"
#include "extconv/projection.hpp"
#include "extconv/reports.hpp"

using namespace extconv;

namespace {

struct Options {
  int n = 4;
  int k = 2;
  int s = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string backend = "exact";
  std::string input;
  std::string output;
  std::string base;
  std::string mode = "one-convex";
  double range = 2.0;
  double h = 1e-3;
  double tolerance = 1e-9;
  double fit_tolerance = 1e-8;
  bool inject_fault = false;
};

Json read_json(const std::string& path) {
  if (path.empty()) throw DomainError("--input PATH is required");
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw DomainError("cannot open " + path);
    src = &in;
  }
  try {
    return Json::parse(*src);
  } catch (const Json::parse_error& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
}

Backend backend_of(const Options& o) { return o.backend == "float" ? Backend::float64 : Backend::exact; }

SamplerConfig sampler_of(const Options& o) {
  SamplerConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.range = o.range;
  cfg.h = o.h;
  cfg.tolerance = o.tolerance;
  cfg.fit_tolerance = o.fit_tolerance;
  return cfg;
}

template <class S>
Json pi_command(const Json& input) {
  return form_to_json(pi(matrix_from_json<S>(input)));
}

template <class S>
Json adjugate_command(const Json& input, int s) {
  return minors_to_json(adjugate(matrix_from_json<S>(input), s));
}

template <class S>
Json wedge_power_command(const Json& input, int s) {
  if (input.contains("data")) return form_to_json(wedge_power(pi(matrix_from_json<S>(input)), s));
  return form_to_json(wedge_power(form_from_json<S>(input), s));
}

Report run(const std::string& command, const Options& o) {
  const bool exact = backend_of(o) == Backend::exact;
  Report r;
  if (command == "pi") {
    const auto in = read_json(o.input);
    r.body = exact ? pi_command<Rational>(in) : pi_command<double>(in);
  } else if (command == "adjugate") {
    const auto in = read_json(o.input);
    r.body = exact ? adjugate_command<Rational>(in, o.s) : adjugate_command<double>(in, o.s);
  } else if (command == "wedge-power") {
    const auto in = read_json(o.input);
    r.body = exact ? wedge_power_command<Rational>(in, o.s) : wedge_power_command<double>(in, o.s);
  } else if (command == "verify-formula") {
    CampaignSpec spec;
    spec.n = o.n;
    spec.k = o.k;
    spec.s = o.s;
    spec.trials = o.trials;
    spec.seed = o.seed;
    spec.backend = backend_of(o);
    spec.inject_fault = o.inject_fault;
    r = verify_formula(spec);
  } else {
    const auto f = FormFunction::parse(read_json(o.input));
    const auto mode = command == "fit-quasiaffine" ? ConvexityMode::quasiaffine_fit
                      : command == "support-lp"    ? ConvexityMode::poly_lp
                                                   : parse_mode(o.mode);
    std::optional<Json> base;
    if (!o.base.empty()) base = read_json(o.base);
    r = convexity_report(f, mode, sampler_of(o), backend_of(o), base);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior convexity toolkit: projection, adjugate identities and convexity samplers"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "JSON input file ('-' for stdin)");
    sub->add_option("--output", o.output, "write the report here instead of stdout");
    sub->add_option("--backend", o.backend, "scalar backend")->check(CLI::IsMember({"exact", "float"}));
  };
  const auto add_sampler = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "number of sampled trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--range", o.range, "coefficients are uniform in [-range, range]");
    sub->add_option("--step", o.h, "second-difference step h");
    sub->add_option("--tolerance", o.tolerance, "relative second-difference tolerance / LP slack bound");
    sub->add_option("--fit-tolerance", o.fit_tolerance, "quasiaffine validation residual bound");
    sub->add_option("--base", o.base, "base point form JSON for the support LP (default 0)");
  };

  auto* pi_cmd = app.add_subcommand("pi", "pi(X) for a shape-matrix");
  add_common(pi_cmd);
  auto* adj_cmd = app.add_subcommand("adjugate", "all s x s minors of a shape-matrix");
  add_common(adj_cmd);
  adj_cmd->add_option("--s", o.s, "minor order")->required();
  auto* pow_cmd = app.add_subcommand("wedge-power", "x^s for a form, or [pi(X)]^s for a shape-matrix");
  add_common(pow_cmd);
  pow_cmd->add_option("--s", o.s, "exponent")->required();

  auto* verify = app.add_subcommand("verify-formula", "adjugate formula against wedge powers on random matrices");
  add_common(verify);
  verify->add_option("--n", o.n, "dimension");
  verify->add_option("--k", o.k, "form degree");
  verify->add_option("--s", o.s, "power");
  verify->add_option("--trials", o.trials, "number of matrices")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "RNG seed");
  verify->add_flag("--inject-fault", o.inject_fault, "test hook: flip one sign in the adjugate route");

  auto* conv = app.add_subcommand("check-convexity", "sampled convexity tests for a function JSON");
  add_common(conv);
  add_sampler(conv);
  conv->add_option("--mode", o.mode, "test to run")
      ->check(CLI::IsMember({"one-convex", "one-affine", "quasiaffine-fit", "poly-lp", "rank-one", "cross-check"}));
  auto* fit = app.add_subcommand("fit-quasiaffine", "least-squares fit f = sum_s <c_s, xi^s>");
  add_common(fit);
  add_sampler(fit);
  auto* lp = app.add_subcommand("support-lp", "supporting coefficients for ext. polyconvexity at a base point");
  add_common(lp);
  add_sampler(lp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInconclusive;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const auto report = run(sub->get_name(), o);
    const auto text = render(report.body);
    if (o.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.output);
      if (!out) throw DomainError("cannot write " + o.output);
      out << text;
    }
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconclusive;
  }
}
