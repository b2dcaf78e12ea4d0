#include "extconv/convexity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extconv/simplex.hpp"

namespace extconv {

void SamplerConfig::validate() const {
  if (trials < 1) throw DomainError("sampler: trials must be >= 1");
  if (!(h > 0)) throw DomainError("sampler: h must be > 0");
  if (!(tolerance >= 0) || !(fit_tolerance >= 0)) throw DomainError("sampler: tolerances must be >= 0");
  if (!(range > 0)) throw DomainError("sampler: range must be > 0");
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kLineStream = 0;
constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kLpStream = 2;
constexpr std::uint64_t kFitStream = 16;
constexpr std::uint64_t kValidationStream = 32;
constexpr int kMaxDirectionDraws = 64;
constexpr int kFitAttempts = 3;

double threshold_for(const SamplerConfig& cfg, double g0) { return cfg.tolerance * std::max(1.0, std::fabs(g0)); }

enum class LineTest { convex, affine };

Verdict check_lines(const FormFunction& f, const SamplerConfig& cfg, LineTest test) {
  cfg.validate();
  Verdict v;
  v.test = test == LineTest::convex ? "ext-one-convex" : "ext-one-affine";
  v.seed = cfg.seed;
  v.trials = cfg.trials;
  v.tolerance = cfg.tolerance;
  v.h = cfg.h;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto line = sample_line(f.n(), f.k(), cfg, trial);
    if (line.degenerate) {
      ++v.skipped;
      continue;
    }
    LineWitness w{line, cfg.h, 0, 0};
    w.second_difference = replay(f, w);
    w.threshold = threshold_for(cfg, line_ext(f, line.xi, line.alpha, line.beta)(line.t));
    const bool violated = test == LineTest::convex ? w.second_difference < -w.threshold
                                                   : std::fabs(w.second_difference) > w.threshold;
    if (violated) {
      v.status = VerdictStatus::fail;
      v.line_witness = std::move(w);
      return v;
    }
  }
  return v;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : engine_(splitmix(seed ^ splitmix(trial ^ splitmix(stream)))) {}

double TrialRng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

long TrialRng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

KForm<double> random_form(TrialRng& rng, int n, int k, double range) {
  KForm<double> out(n, k);
  for (auto& c : out.coeffs()) c = rng.uniform(-range, range);
  return out;
}

ShapeMatrix<Rational> random_integer_matrix(TrialRng& rng, int n, int k, long bound) {
  ShapeMatrix<Rational> out(n, k);
  for (auto& v : out.data()) v = Rational(rng.integer(-bound, bound));
  return out;
}

const char* to_string(VerdictStatus status) { return status == VerdictStatus::pass ? "pass" : "fail"; }

const char* to_string(FitStatus status) {
  switch (status) {
    case FitStatus::pass:
      return "pass";
    case FitStatus::fail:
      return "fail";
    case FitStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

const char* to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::certified:
      return "certified";
    case CertificateStatus::refuted:
      return "refuted";
    case CertificateStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

LineSample sample_line(int n, int k, const SamplerConfig& cfg, int trial) {
  TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial), kLineStream);
  LineSample s;
  s.trial = trial;
  s.xi = random_form(rng, n, k, cfg.range);
  s.degenerate = true;
  for (int draw = 0; draw < kMaxDirectionDraws; ++draw) {
    s.alpha = random_form(rng, n, k - 1, cfg.range);
    s.beta = random_form(rng, n, 1, cfg.range);
    if (norm_squared(wedge(s.alpha, s.beta)) > 1e-20) {
      s.degenerate = false;
      break;
    }
  }
  s.t = rng.uniform(-1.0, 1.0);
  return s;
}

double replay(const FormFunction& f, const LineWitness& w) {
  const auto g = line_ext(f, w.line.xi, w.line.alpha, w.line.beta);
  return g(w.line.t + w.h) + g(w.line.t - w.h) - 2 * g(w.line.t);
}

Verdict check_ext_one_convex(const FormFunction& f, const SamplerConfig& cfg) {
  return check_lines(f, cfg, LineTest::convex);
}

Verdict check_ext_one_affine(const FormFunction& f, const SamplerConfig& cfg) {
  return check_lines(f, cfg, LineTest::affine);
}

double replay(const MatrixFunction& F, const MatrixWitness& w) {
  const auto d = tensor(w.a, w.b);
  const auto G = [&](double t) { return F(w.x + d * t); };
  return G(w.t + w.h) + G(w.t - w.h) - 2 * G(w.t);
}

Verdict check_rank_one_convex(const MatrixFunction& F, int n, int k, const SamplerConfig& cfg) {
  cfg.validate();
  Verdict v;
  v.test = "rank-one-convex";
  v.seed = cfg.seed;
  v.trials = cfg.trials;
  v.tolerance = cfg.tolerance;
  v.h = cfg.h;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial), kMatrixStream);
    MatrixWitness w;
    w.trial = trial;
    w.x = ShapeMatrix<double>(n, k);
    for (auto& e : w.x.data()) e = rng.uniform(-cfg.range, cfg.range);
    bool degenerate = true;
    for (int draw = 0; draw < kMaxDirectionDraws && degenerate; ++draw) {
      w.a = random_form(rng, n, k - 1, cfg.range);
      w.b = random_form(rng, n, 1, cfg.range);
      degenerate = norm_squared(w.a) * norm_squared(w.b) <= 1e-20;
    }
    w.t = rng.uniform(-1.0, 1.0);
    if (degenerate) {
      ++v.skipped;
      continue;
    }
    w.h = cfg.h;
    w.second_difference = replay(F, w);
    w.threshold = threshold_for(cfg, F(w.x + tensor(w.a, w.b) * w.t));
    if (w.second_difference < -w.threshold) {
      v.status = VerdictStatus::fail;
      v.matrix_witness = std::move(w);
      return v;
    }
  }
  return v;
}

int top_wedge_power(int n, int k) {
  if (k < 1 || k > n) throw DomainError("top_wedge_power: need 1 <= k <= n");
  return k % 2 ? 1 : n / k;
}

QuasiaffineFit fit_quasiaffine(const FormFunction& f, const SamplerConfig& cfg) {
  cfg.validate();
  const int n = f.n();
  const int k = f.k();
  QuasiaffineFit fit;
  fit.top_power = top_wedge_power(n, k);
  for (int s = 0; s <= fit.top_power; ++s) fit.unknowns += static_cast<int>(binomial(n, k * s));
  fit.samples = 2 * fit.unknowns;
  fit.validation_samples = 2 * fit.unknowns;

  const auto features = [&](const KForm<double>& xi, auto&& row) {
    Eigen::Index col = 0;
    auto power = KForm<double>::scalar(n, 1.0);
    for (int s = 0; s <= fit.top_power; ++s) {
      if (s > 0) power = wedge(xi, power);
      for (double c : power.coeffs()) row(col++) = c;
    }
  };

  for (int attempt = 0; attempt < kFitAttempts; ++attempt) {
    fit.attempts = attempt + 1;
    fit.range = cfg.range * std::ldexp(1.0, attempt);
    Eigen::MatrixXd A(fit.samples, fit.unknowns);
    Eigen::VectorXd y(fit.samples);
    for (int j = 0; j < fit.samples; ++j) {
      TrialRng rng(cfg.seed, static_cast<std::uint64_t>(j), kFitStream + attempt);
      const auto xi = random_form(rng, n, k, fit.range);
      features(xi, A.row(j));
      y(j) = f(xi);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() < fit.unknowns) continue;
    const Eigen::VectorXd c = qr.solve(y);
    fit.fit_residual = (A * c - y).cwiseAbs().maxCoeff();

    fit.residual = 0;
    Eigen::RowVectorXd row(fit.unknowns);
    for (int j = 0; j < fit.validation_samples; ++j) {
      TrialRng rng(cfg.seed, static_cast<std::uint64_t>(j), kValidationStream + attempt);
      const auto xi = random_form(rng, n, k, fit.range);
      features(xi, row);
      fit.residual = std::max(fit.residual, std::fabs(row.dot(c) - f(xi)));
    }

    fit.coefficients.clear();
    Eigen::Index col = 0;
    for (int s = 0; s <= fit.top_power; ++s) {
      KForm<double> cs(n, k * s);
      for (auto& v : cs.coeffs()) v = c(col++);
      fit.coefficients.push_back(std::move(cs));
    }
    fit.status = fit.residual <= cfg.fit_tolerance ? FitStatus::pass : FitStatus::fail;
    return fit;
  }
  fit.status = FitStatus::inconclusive;
  return fit;
}

namespace {

double magnitude(double x) { return std::fabs(x); }
Rational magnitude(const Rational& x) { return abs(x); }

template <class S>
bool within_main_theorem_bound(const S& d) {
  if constexpr (std::is_same_v<S, double>) {
    return d <= 1e-12;
  } else {
    return d == 0;
  }
}

}  // namespace

template <class S>
MainTheoremCheck<S> cross_check_main_theorem(const FormFunction& f, const SamplerConfig& cfg) {
  cfg.validate();
  MainTheoremCheck<S> out;
  const auto F = lift<S>(f);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto line = sample_line(f.n(), f.k(), cfg, trial);
    if (line.degenerate) continue;
    const auto xi = convert_form<S>(line.xi);
    const auto alpha = convert_form<S>(line.alpha);
    const auto beta = convert_form<S>(line.beta);
    const auto g = line_ext(f, xi, alpha, beta);
    const auto base = right_inverse(xi);
    const auto direction = tensor(alpha, beta);
    ++out.lines;
    for (double t : {line.t, -line.t, 1.0}) {
      const S ts(t);
      const S d = magnitude(S(g(ts) - F(base + direction * ts)));
      if (out.points == 0 || d > out.max_discrepancy) out.max_discrepancy = d;
      ++out.points;
    }
  }
  out.consistent = within_main_theorem_bound(out.max_discrepancy);
  out.ext_one = check_ext_one_convex(f, cfg);
  out.rank_one = check_rank_one_convex(lift<double>(f), f.n(), f.k(), cfg);
  out.verdicts_agree = out.ext_one.status == out.rank_one.status;
  return out;
}

template MainTheoremCheck<double> cross_check_main_theorem(const FormFunction&, const SamplerConfig&);
template MainTheoremCheck<Rational> cross_check_main_theorem(const FormFunction&, const SamplerConfig&);

template <class S>
std::vector<KForm<S>> support_sample(const KForm<S>& xi, const SamplerConfig& cfg) {
  std::vector<KForm<S>> sample;
  for (const auto& I : enumerate(xi.n(), xi.degree())) {
    for (int sign : {1, -1}) {
      if (static_cast<int>(sample.size()) >= cfg.trials) return sample;
      auto eta = xi;
      accumulate_signed(eta.at(I), sign, from_int<S>(1));
      sample.push_back(std::move(eta));
    }
  }
  for (int j = static_cast<int>(sample.size()); j < cfg.trials; ++j) {
    TrialRng rng(cfg.seed, static_cast<std::uint64_t>(j), kLpStream);
    sample.push_back(convert_form<S>(random_form(rng, xi.n(), xi.degree(), cfg.range)));
  }
  return sample;
}

template std::vector<KForm<double>> support_sample(const KForm<double>&, const SamplerConfig&);
template std::vector<KForm<Rational>> support_sample(const KForm<Rational>&, const SamplerConfig&);

template <class S>
SupportCertificate<S> polyconvex_support_lp(const FormFunction& f, const KForm<S>& xi, const SamplerConfig& cfg) {
  cfg.validate();
  const int n = f.n();
  const int k = f.k();
  if (xi.n() != n || xi.degree() != k) throw DomainError("support LP: base point has the wrong shape");
  const int top = top_wedge_power(n, k);

  std::vector<KForm<S>> xi_powers;
  std::size_t width = 0;
  {
    auto power = KForm<S>::scalar(n, from_int<S>(1));
    for (int s = 1; s <= top; ++s) {
      power = wedge(xi, power);
      width += power.size();
      xi_powers.push_back(power);
    }
  }
  const S f_xi = f(xi);

  const auto sample = support_sample(xi, cfg);

  // Columns: c_s^+ (width), c_s^- (width), t.
  std::vector<std::vector<S>> A;
  std::vector<S> b;
  A.reserve(sample.size());
  for (const auto& eta : sample) {
    std::vector<S> row(2 * width + 1);
    std::size_t col = 0;
    auto power = KForm<S>::scalar(n, from_int<S>(1));
    for (int s = 1; s <= top; ++s) {
      power = wedge(eta, power);
      const auto delta = power - xi_powers[s - 1];
      for (std::size_t r = 0; r < delta.size(); ++r, ++col) {
        row[col] = delta[r];
        row[width + col] = -delta[r];
      }
    }
    row[2 * width] = from_int<S>(-1);
    A.push_back(std::move(row));
    b.push_back(f(eta) - f_xi);
  }
  std::vector<S> cost(2 * width + 1);
  cost[2 * width] = from_int<S>(1);

  const auto lp = solve_lp(A, b, cost);
  SupportCertificate<S> cert;
  cert.base = xi;
  cert.sample_size = static_cast<int>(sample.size());
  cert.pivots = lp.pivots;
  cert.lp_status = to_string(lp.status);
  if (lp.status == LpStatus::iteration_limit) return cert;
  if (lp.status != LpStatus::optimal) throw std::logic_error("support LP: solver reported " + cert.lp_status);
  cert.slack = lp.x[2 * width];
  std::size_t col = 0;
  for (int s = 1; s <= top; ++s) {
    KForm<S> cs(n, k * s);
    for (auto& v : cs.coeffs()) {
      v = lp.x[col] - lp.x[width + col];
      ++col;
    }
    cert.coefficients.push_back(std::move(cs));
  }
  cert.status = to_double(cert.slack) <= cfg.tolerance ? CertificateStatus::certified : CertificateStatus::refuted;
  return cert;
}

template SupportCertificate<double> polyconvex_support_lp(const FormFunction&, const KForm<double>&,
                                                          const SamplerConfig&);
template SupportCertificate<Rational> polyconvex_support_lp(const FormFunction&, const KForm<Rational>&,
                                                            const SamplerConfig&);

}  // namespace extconv
