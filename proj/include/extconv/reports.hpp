#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "extconv/convexity.hpp"
#include "extconv/io.hpp"

namespace extconv {

/// Exit codes shared by every command.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInconclusive = 2 };

struct Report {
  Json body;
  int exit_code = kExitPass;
};

struct CampaignSpec {
  int n = 4;
  int k = 2;
  int s = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  Backend backend = Backend::exact;
  /// Entries are integers in [-bound, bound].
  long bound = 5;
  /// Test hook: flips the sign of one coefficient of the adjugate route.
  bool inject_fault = false;

  void validate() const;
};

/// [pi(X)]^s against the adjugate formula on random integer matrices.
Report verify_formula(const CampaignSpec& spec);

enum class ConvexityMode { one_convex, one_affine, quasiaffine_fit, poly_lp, rank_one, cross_check };
ConvexityMode parse_mode(const std::string& name);
const char* to_string(ConvexityMode mode);

/// base is only used by poly_lp (zero when absent).
Report convexity_report(const FormFunction& f, ConvexityMode mode, const SamplerConfig& cfg, Backend backend,
                        const std::optional<Json>& base = std::nullopt);

Json to_json(const SamplerConfig& cfg);
Json to_json(const LineWitness& w);
Json to_json(const MatrixWitness& w);
Json to_json(const Verdict& v);
Json to_json(const QuasiaffineFit& fit);
template <class S>
Json to_json(const SupportCertificate<S>& cert, double tolerance);
template <class S>
Json to_json(const MainTheoremCheck<S>& check);

LineWitness line_witness_from_json(const Json& j);

/// Deterministic rendering used for every report.
std::string render(const Json& j);

}  // namespace extconv
