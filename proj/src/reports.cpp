#include "extconv/reports.hpp"

#include <algorithm>
#include <cmath>

namespace extconv {

void CampaignSpec::validate() const {
  if (k < 1 || k > n) throw DomainError("campaign: need 1 <= k <= n");
  if (n > 31) throw DomainError("campaign: n must be <= 31");
  if (trials < 1) throw DomainError("campaign: trials must be >= 1");
  if (bound < 0) throw DomainError("campaign: entry bound must be >= 0");
  const auto rows = binomial(n, k - 1);
  if (s < 2 || static_cast<std::uint64_t>(s) > std::min<std::uint64_t>(static_cast<std::uint64_t>(n), rows)) {
    throw DomainError("campaign: need 2 <= s <= min(n, C(n,k-1))");
  }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

namespace {

const char* backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

template <class S>
struct Comparison {
  S residual{};
  bool pass = true;
};

template <class S>
Comparison<S> compare_routes(const KForm<S>& direct, KForm<S> adjugate_route, bool& flip_pending) {
  if (flip_pending) {
    for (auto& c : adjugate_route.coeffs()) {
      if (!is_zero(c)) {
        c = -c;
        flip_pending = false;
        break;
      }
    }
  }
  Comparison<S> out;
  S scale = from_int<S>(1);
  for (std::size_t r = 0; r < direct.size(); ++r) {
    const S d = abs_value(S(direct[r] - adjugate_route[r]));
    if (d > out.residual) out.residual = d;
    if (abs_value(direct[r]) > scale) scale = abs_value(direct[r]);
  }
  if constexpr (std::is_same_v<S, double>) {
    out.pass = out.residual <= 1e-9 * scale;
  } else {
    out.pass = out.residual == 0;
  }
  return out;
}

template <class S>
Report run_verify_formula(const CampaignSpec& spec) {
  Json failures = Json::array();
  S max_residual{};
  bool flip_pending = spec.inject_fault;
  int failed = 0;
  for (int trial = 0; trial < spec.trials; ++trial) {
    TrialRng rng(spec.seed, static_cast<std::uint64_t>(trial), 0);
    const auto exact = random_integer_matrix(rng, spec.n, spec.k, spec.bound);
    ShapeMatrix<S> x;
    if constexpr (std::is_same_v<S, double>) {
      x = exact.map([](const Rational& q) { return q.get_d(); });
    } else {
      x = exact;
    }
    const auto cmp = compare_routes(wedge_power(pi(x), spec.s), wedge_power_via_adjugate(x, spec.s), flip_pending);
    if (cmp.residual > max_residual) max_residual = cmp.residual;
    if (!cmp.pass) {
      ++failed;
      if (failures.size() < 10) {
        failures.push_back({{"n", spec.n},
                            {"k", spec.k},
                            {"s", spec.s},
                            {"seed", spec.seed},
                            {"trial", trial},
                            {"residual", scalar_to_json(cmp.residual)}});
      }
    }
  }
  Report report;
  auto& b = report.body;
  b["command"] = "verify-formula";
  b["config"] = {{"n", spec.n}, {"k", spec.k}, {"s", spec.s}};
  b["seed"] = spec.seed;
  b["trials"] = spec.trials;
  b["backend"] = backend_name(spec.backend);
  b["entry_bound"] = spec.bound;
  if (spec.inject_fault) b["fault_injected"] = !flip_pending;
  b["max_residual"] = scalar_to_json(max_residual);
  b["failed_trials"] = failed;
  b["status"] = failed == 0 ? "pass" : "fail";
  if (failed) b["failures"] = std::move(failures);
  report.exit_code = failed == 0 ? kExitPass : kExitFail;
  return report;
}

Json sampling_note() { return "pass means no violation was found in the sampled trials; it is evidence, not proof"; }

}  // namespace

Report verify_formula(const CampaignSpec& spec) {
  spec.validate();
  return spec.backend == Backend::exact ? run_verify_formula<Rational>(spec) : run_verify_formula<double>(spec);
}

ConvexityMode parse_mode(const std::string& name) {
  if (name == "one-convex") return ConvexityMode::one_convex;
  if (name == "one-affine") return ConvexityMode::one_affine;
  if (name == "quasiaffine-fit") return ConvexityMode::quasiaffine_fit;
  if (name == "poly-lp") return ConvexityMode::poly_lp;
  if (name == "rank-one") return ConvexityMode::rank_one;
  if (name == "cross-check") return ConvexityMode::cross_check;
  throw DomainError("unknown convexity mode \"" + name + "\"");
}

const char* to_string(ConvexityMode mode) {
  switch (mode) {
    case ConvexityMode::one_convex:
      return "one-convex";
    case ConvexityMode::one_affine:
      return "one-affine";
    case ConvexityMode::quasiaffine_fit:
      return "quasiaffine-fit";
    case ConvexityMode::poly_lp:
      return "poly-lp";
    case ConvexityMode::rank_one:
      return "rank-one";
    case ConvexityMode::cross_check:
      return "cross-check";
  }
  return "unknown";
}

Json to_json(const SamplerConfig& cfg) {
  return {{"seed", cfg.seed},
          {"trials", cfg.trials},
          {"range", cfg.range},
          {"h", cfg.h},
          {"tolerance", cfg.tolerance},
          {"fit_tolerance", cfg.fit_tolerance}};
}

Json to_json(const LineWitness& w) {
  return {{"trial", w.line.trial},
          {"xi", form_to_json(w.line.xi)},
          {"alpha", form_to_json(w.line.alpha)},
          {"beta", form_to_json(w.line.beta)},
          {"t", w.line.t},
          {"h", w.h},
          {"second_difference", w.second_difference},
          {"threshold", w.threshold}};
}

Json to_json(const MatrixWitness& w) {
  return {{"trial", w.trial},
          {"x", matrix_to_json(w.x)},
          {"a", form_to_json(w.a)},
          {"b", form_to_json(w.b)},
          {"t", w.t},
          {"h", w.h},
          {"second_difference", w.second_difference},
          {"threshold", w.threshold}};
}

LineWitness line_witness_from_json(const Json& j) {
  LineWitness w;
  w.line.trial = int_field(j, "trial");
  w.line.xi = form_from_json<double>(j.at("xi"));
  w.line.alpha = form_from_json<double>(j.at("alpha"));
  w.line.beta = form_from_json<double>(j.at("beta"));
  w.line.t = j.at("t").get<double>();
  w.h = j.at("h").get<double>();
  w.second_difference = j.at("second_difference").get<double>();
  w.threshold = j.at("threshold").get<double>();
  return w;
}

Json to_json(const Verdict& v) {
  Json out;
  out["test"] = v.test;
  out["status"] = to_string(v.status);
  out["seed"] = v.seed;
  out["trials"] = v.trials;
  out["skipped"] = v.skipped;
  out["tolerance"] = v.tolerance;
  out["h"] = v.h;
  out["note"] = sampling_note();
  if (v.line_witness) out["witness"] = to_json(*v.line_witness);
  if (v.matrix_witness) out["witness"] = to_json(*v.matrix_witness);
  return out;
}

Json to_json(const QuasiaffineFit& fit) {
  Json out;
  out["status"] = to_string(fit.status);
  out["top_power"] = fit.top_power;
  out["unknowns"] = fit.unknowns;
  out["samples"] = fit.samples;
  out["validation_samples"] = fit.validation_samples;
  out["attempts"] = fit.attempts;
  out["range"] = fit.range;
  out["fit_residual"] = fit.fit_residual;
  out["residual"] = fit.residual;
  Json coeffs = Json::array();
  for (const auto& c : fit.coefficients) coeffs.push_back(form_to_json(c));
  out["coefficients"] = std::move(coeffs);
  return out;
}

template <class S>
Json to_json(const SupportCertificate<S>& cert, double tolerance) {
  Json out;
  out["status"] = to_string(cert.status);
  out["base"] = form_to_json(cert.base);
  out["slack"] = scalar_to_json(cert.slack);
  out["tolerance"] = tolerance;
  out["sample_size"] = cert.sample_size;
  out["pivots"] = cert.pivots;
  out["lp_status"] = cert.lp_status;
  Json coeffs = Json::array();
  for (const auto& c : cert.coefficients) coeffs.push_back(form_to_json(c));
  out["coefficients"] = std::move(coeffs);
  return out;
}

template Json to_json(const SupportCertificate<double>&, double);
template Json to_json(const SupportCertificate<Rational>&, double);

template <class S>
Json to_json(const MainTheoremCheck<S>& check) {
  Json out;
  out["lines"] = check.lines;
  out["points"] = check.points;
  out["max_discrepancy"] = scalar_to_json(check.max_discrepancy);
  out["bound"] = std::is_same_v<S, double> ? Json(1e-12) : Json("0");
  out["consistent"] = check.consistent;
  out["ext_one_convex"] = to_json(check.ext_one);
  out["rank_one_convex_of_lift"] = to_json(check.rank_one);
  out["verdicts_agree"] = check.verdicts_agree;
  return out;
}

template Json to_json(const MainTheoremCheck<double>&);
template Json to_json(const MainTheoremCheck<Rational>&);

namespace {

template <class S>
Report lp_report(const FormFunction& f, const SamplerConfig& cfg, const std::optional<Json>& base) {
  const auto xi = base ? form_from_json<S>(*base, f.n()) : KForm<S>(f.n(), f.k());
  const auto cert = polyconvex_support_lp(f, xi, cfg);
  Report r;
  r.body = to_json(cert, cfg.tolerance);
  r.exit_code = cert.status == CertificateStatus::certified ? kExitPass
                : cert.status == CertificateStatus::refuted ? kExitFail
                                                            : kExitInconclusive;
  return r;
}

template <class S>
Report cross_check_report(const FormFunction& f, const SamplerConfig& cfg) {
  const auto check = cross_check_main_theorem<S>(f, cfg);
  Report r;
  r.body = to_json(check);
  r.exit_code = check.consistent ? kExitPass : kExitFail;
  return r;
}

}  // namespace

Report convexity_report(const FormFunction& f, ConvexityMode mode, const SamplerConfig& cfg, Backend backend,
                        const std::optional<Json>& base) {
  cfg.validate();
  Report r;
  switch (mode) {
    case ConvexityMode::one_convex:
    case ConvexityMode::one_affine: {
      const auto v = mode == ConvexityMode::one_convex ? check_ext_one_convex(f, cfg) : check_ext_one_affine(f, cfg);
      r.body = to_json(v);
      r.exit_code = v.status == VerdictStatus::pass ? kExitPass : kExitFail;
      break;
    }
    case ConvexityMode::rank_one: {
      const auto v = check_rank_one_convex(lift<double>(f), f.n(), f.k(), cfg);
      r.body = to_json(v);
      r.exit_code = v.status == VerdictStatus::pass ? kExitPass : kExitFail;
      break;
    }
    case ConvexityMode::quasiaffine_fit: {
      const auto fit = fit_quasiaffine(f, cfg);
      r.body = to_json(fit);
      r.exit_code = fit.status == FitStatus::pass ? kExitPass
                    : fit.status == FitStatus::fail ? kExitFail
                                                    : kExitInconclusive;
      break;
    }
    case ConvexityMode::poly_lp:
      r = backend == Backend::exact ? lp_report<Rational>(f, cfg, base) : lp_report<double>(f, cfg, base);
      break;
    case ConvexityMode::cross_check:
      r = backend == Backend::exact ? cross_check_report<Rational>(f, cfg) : cross_check_report<double>(f, cfg);
      break;
  }
  Json body;
  body["command"] = "check-convexity";
  body["mode"] = to_string(mode);
  const bool exact_capable = mode == ConvexityMode::poly_lp || mode == ConvexityMode::cross_check;
  body["backend"] = backend_name(exact_capable ? backend : Backend::float64);
  body["function"] = f.to_json();
  body["sampler"] = to_json(cfg);
  for (auto& [key, value] : r.body.items()) body[key] = value;
  r.body = std::move(body);
  return r;
}

}  // namespace extconv
