#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpswf/basis.hpp"

namespace gpswf {

enum class BoundId {
  ChiUpper,
  ChiLowerClassical,
  ChiLowerImproved,
  MuBound,
  LambdaBound,
  LegacyLambda,
  LocalEstimate,     // sup <= 2a+1
  LocalEnergy,       // A^2 <= 2a+1
  LocalSupVsEnergy,  // sup <= A^2
  BetaBound,
  BetaBoundUnit,  // info: same bound with unit-norm psi
  BetaDecay,
  AlphaMonotonicity,
  TraceIdentity,
  DecayLambda2,  // info: existential constants, C_a = 1
};

enum class CheckStatus { Pass, Fail, Skipped, Info };

const char* bound_name(BoundId id);
const char* status_name(CheckStatus s);

struct BoundReport {
  BoundId id = BoundId::ChiUpper;
  int n = -1;  // -1 when not indexed
  int k = -1;  // beta checks: worst k
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;    // rhs - lhs (decades when log10_scale)
  bool log10_scale = false;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct ChiBounds {
  double lower_classical = 0.0;
  std::optional<double> lower_improved;
  double upper = 0.0;
};

// Improved lower bound constant 2(2a+1)^2+1-2(2a+1)sqrt(1+(2a+1)^2).
double chi_improved_constant(double alpha);
// Without chi the improved bound cannot be qualified (q = c^2/chi) and is left out.
ChiBounds chi_bounds(int n, double alpha, double c, std::optional<double> chi = std::nullopt);

double mu_bound_constant(double alpha);      // k_a
double lambda_bound_constant(double alpha);  // K_a
// Strictly n > (ec+1)/2, c > 0.
double mu_bound(int n, double alpha, double c);
double log_mu_bound(int n, double alpha, double c);
// a > 0 only.
double lambda_bound(int n, double alpha, double c);
double log_lambda_bound(int n, double alpha, double c);
// exp(-2n log(bn/c)); b in (0, 4/e), bn > c.
double legacy_lambda_bound(int n, double c, double b);

struct LocalEstimate {
  double sup_value = 0.0;
  double argmax = 0.0;
  double bound = 0.0;  // 2a+1
  double a_squared = 0.0;
  double q = 0.0;
};

// nullopt when 0 <= a <= 1/4 and q < 3/17 do not both hold.
std::optional<LocalEstimate> local_estimate_check(const GpswfBasis& basis, int n);

// C_a of the beta coefficient bound.
double beta_bound_constant(double alpha);
// A^2 = B^2 of the explicit (n >= cA, k <= n/B) region.
double beta_region_constant(double alpha);

struct SuiteResult {
  std::vector<BoundReport> reports;
  bool passed = true;
};

SuiteResult verify_suite(double alpha, double c, int nmax);

}  // namespace gpswf
