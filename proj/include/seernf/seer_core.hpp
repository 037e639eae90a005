#pragma once

#include <span>
#include <vector>

namespace seernf {

// Development effort is this fraction of total life-cycle effort.
inline constexpr double kDevelopmentShare = 0.393469;

// Constants of the basic-technology equation; nominal ctbx maps to 2000.
inline constexpr double kCtbScale = 2000.0;
inline constexpr double kCtbSlope = 3.70945;
inline constexpr double kCtbxNominal = 4.11;

// Inputs of the effort equations, already partitioned by site. All values
// are positive; `values from a registry` ordering is preserved inside each
// group but does not matter (both groups enter as products).
struct SeerInput {
    double size_sloc = 0.0;             // effective size Se, in SLOC
    double staffing_complexity = 0.0;   // D
    double beta = 1.2;                  // exponent on (Se / Cte)
    std::vector<double> ctbx_factors;   // exactly 6
    double turn = 0.0;                  // turnaround input
    std::vector<double> adjustment_factors; // exactly 27
};

struct EffortEstimate {
    double ctbx = 0.0;            // product of the six technology factors
    double ctb = 0.0;             // basic technology constant
    double parm_adjustment = 0.0; // product of the adjustment factors
    double cte = 0.0;             // effective technology, ctb / parm_adjustment
    double k_person_years = 0.0;  // total life-cycle effort
    double e_person_years = 0.0;  // development effort, kDevelopmentShare * K
};

// Product of the six ctbx factors. Throws InputError on wrong count or a
// non-positive value.
double compute_ctbx(std::span<const double> factors);

// Basic technology constant:
//   ctb = 2000 * exp( (-3.70945 * ln(ctbx / 4.11)) / (5 * turn) )
// Throws InputError for non-positive inputs, NumericError if the result is
// not finite and positive.
double compute_ctb(double ctbx, double turn);

// Product of the 27 adjustment factors. Throws InputError on count mismatch
// or a non-positive value.
double compute_parm_adjustment(std::span<const double> factors);

// Full evaluation:
//   cte = ctb / parm_adjustment
//   K   = D^0.4 * (Se / cte)^beta
//   E   = kDevelopmentShare * K
// All intermediates are returned for observability.
EffortEstimate estimate_effort(const SeerInput& input);

} // namespace seernf
