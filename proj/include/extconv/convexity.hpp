#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "extconv/form_function.hpp"
#include "extconv/projection.hpp"
#include "extconv/shapespace.hpp"

namespace extconv {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  /// Coefficients are drawn uniformly from [-range, range].
  double range = 2.0;
  double h = 1e-3;
  /// Second differences are compared against tolerance * max(1, |g(t)|).
  double tolerance = 1e-9;
  /// Acceptance bound for the fitter's validation residual.
  double fit_tolerance = 1e-8;

  void validate() const;
};

/// Random stream for one trial, a pure function of (seed, trial, stream).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0);
  /// Uniform on [lo, hi], built from the top 53 bits of the engine output.
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi].
  long integer(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

KForm<double> random_form(TrialRng& rng, int n, int k, double range);
ShapeMatrix<Rational> random_integer_matrix(TrialRng& rng, int n, int k, long bound);

template <class S>
KForm<S> convert_form(const KForm<double>& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else {
    return x.map([](double v) { return Rational(v); });
  }
}

/// g(t) = f(xi + t alpha^beta).
template <class S>
std::function<S(const S&)> line_ext(const FormFunction& f, const KForm<S>& xi, const KForm<S>& alpha,
                                    const KForm<S>& beta) {
  if (xi.n() != f.n() || alpha.n() != f.n() || beta.n() != f.n()) throw DomainError("line_ext: dimension mismatch");
  if (xi.degree() != f.k() || alpha.degree() + 1 != f.k() || beta.degree() != 1) {
    throw DomainError("line_ext: need deg xi = k, deg alpha = k-1, deg beta = 1");
  }
  const auto direction = wedge(alpha, beta);
  return [f, xi, direction](const S& t) { return f(xi + direction * t); };
}

/// One sampled ext. one line. alpha and beta are redrawn until alpha^beta != 0.
struct LineSample {
  int trial = 0;
  KForm<double> xi;
  KForm<double> alpha;
  KForm<double> beta;
  double t = 0;
  bool degenerate = false;
};

LineSample sample_line(int n, int k, const SamplerConfig& cfg, int trial);

struct LineWitness {
  LineSample line;
  double h = 0;
  double second_difference = 0;
  double threshold = 0;
};

/// A sampled point X + t a(x)b of the matrix space.
struct MatrixWitness {
  int trial = 0;
  ShapeMatrix<double> x;
  KForm<double> a;
  KForm<double> b;
  double t = 0;
  double h = 0;
  double second_difference = 0;
  double threshold = 0;
};

enum class VerdictStatus { pass, fail };
const char* to_string(VerdictStatus status);

/// A pass means no violation was found in the sampled trials.
struct Verdict {
  std::string test;
  VerdictStatus status = VerdictStatus::pass;
  std::uint64_t seed = 0;
  int trials = 0;
  int skipped = 0;
  double tolerance = 0;
  double h = 0;
  std::optional<LineWitness> line_witness;
  std::optional<MatrixWitness> matrix_witness;
};

Verdict check_ext_one_convex(const FormFunction& f, const SamplerConfig& cfg);
Verdict check_ext_one_affine(const FormFunction& f, const SamplerConfig& cfg);

/// Recomputes g(t+h) + g(t-h) - 2 g(t) from the stored witness data.
double replay(const FormFunction& f, const LineWitness& w);

using MatrixFunction = std::function<double(const ShapeMatrix<double>&)>;

/// F = f o pi.
template <class S>
std::function<S(const ShapeMatrix<S>&)> lift(const FormFunction& f) {
  return [f](const ShapeMatrix<S>& x) {
    if (x.n() != f.n() || x.k() != f.k()) throw DomainError("lift: matrix shape does not match the function");
    return f(pi(x));
  };
}

Verdict check_rank_one_convex(const MatrixFunction& F, int n, int k, const SamplerConfig& cfg);
double replay(const MatrixFunction& F, const MatrixWitness& w);

enum class FitStatus { pass, fail, inconclusive };
const char* to_string(FitStatus status);

struct QuasiaffineFit {
  FitStatus status = FitStatus::inconclusive;
  /// c[s] in Lambda^{ks}, s = 0..top_power.
  std::vector<KForm<double>> coefficients;
  int top_power = 0;
  int unknowns = 0;
  int samples = 0;
  int validation_samples = 0;
  int attempts = 0;
  double range = 0;
  double fit_residual = 0;
  double residual = 0;
};

/// Largest s with xi^s not identically zero on Lambda^k(R^n):
/// [n/k] for even k, 1 for odd k.
int top_wedge_power(int n, int k);

QuasiaffineFit fit_quasiaffine(const FormFunction& f, const SamplerConfig& cfg);

/// Sample-wise line consistency between f and its lift.
template <class S>
struct MainTheoremCheck {
  int lines = 0;
  int points = 0;
  S max_discrepancy{};
  bool consistent = false;
  Verdict ext_one;
  Verdict rank_one;
  bool verdicts_agree = false;
};

/// Float: discrepancy <= 1e-12. Exact (Rational): discrepancy == 0.
template <class S>
MainTheoremCheck<S> cross_check_main_theorem(const FormFunction& f, const SamplerConfig& cfg);
extern template MainTheoremCheck<double> cross_check_main_theorem(const FormFunction&, const SamplerConfig&);
extern template MainTheoremCheck<Rational> cross_check_main_theorem(const FormFunction&, const SamplerConfig&);

enum class CertificateStatus { certified, refuted, inconclusive };
const char* to_string(CertificateStatus status);

template <class S>
struct SupportCertificate {
  CertificateStatus status = CertificateStatus::inconclusive;
  KForm<S> base;
  /// c[s-1] in Lambda^{ks}, s = 1..top_power.
  std::vector<KForm<S>> coefficients;
  S slack{};
  int sample_size = 0;
  int pivots = 0;
  std::string lp_status;
};

/// The support LP's sample: xi +- e^I for every basis I first, then uniform
/// random points, cfg.trials in total.
template <class S>
std::vector<KForm<S>> support_sample(const KForm<S>& xi, const SamplerConfig& cfg);
extern template std::vector<KForm<double>> support_sample(const KForm<double>&, const SamplerConfig&);
extern template std::vector<KForm<Rational>> support_sample(const KForm<Rational>&, const SamplerConfig&);

/// Over support_sample(xi, cfg), solves min t >= 0 subject to
/// sum_s <c_s, eta^s - xi^s> - (f(eta) - f(xi)) <= t for every sample.
/// Certified when t* <= cfg.tolerance, refuted otherwise.
template <class S>
SupportCertificate<S> polyconvex_support_lp(const FormFunction& f, const KForm<S>& xi, const SamplerConfig& cfg);
extern template SupportCertificate<double> polyconvex_support_lp(const FormFunction&, const KForm<double>&,
                                                                 const SamplerConfig&);
extern template SupportCertificate<Rational> polyconvex_support_lp(const FormFunction&, const KForm<Rational>&,
                                                                   const SamplerConfig&);

}  // namespace extconv
