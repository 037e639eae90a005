#include "seernf/seer_core.hpp"

#include "seernf/error.hpp"
#include "seernf/kernels.hpp"
#include "seernf/param_registry.hpp"

#include <cmath>
#include <string>

namespace seernf {

namespace {

void require_positive(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw InputError(std::string(what) + " value at index " +
                             std::to_string(i) + " must be positive and finite");
    }
}

} // namespace

double compute_ctbx(std::span<const double> factors) {
    if (factors.size() != kCtbxFactorCount)
        throw InputError("ctbx expects " + std::to_string(kCtbxFactorCount) +
                         " factors, got " + std::to_string(factors.size()));
    require_positive(factors, "ctbx factor");
    return kernels::active_backend().product(factors.data(), factors.size());
}

double compute_ctb(double ctbx, double turn) {
    if (!(ctbx > 0.0) || !std::isfinite(ctbx))
        throw InputError("ctbx must be positive and finite");
    if (!(turn > 0.0) || !std::isfinite(turn))
        throw InputError("turn must be positive and finite");
    const double ctb = kCtbScale *
        std::exp((-kCtbSlope * std::log(ctbx / kCtbxNominal)) / (5.0 * turn));
    if (!std::isfinite(ctb) || !(ctb > 0.0))
        throw NumericError("basic technology constant is not finite for ctbx=" +
                           std::to_string(ctbx) + ", turn=" + std::to_string(turn));
    return ctb;
}

double compute_parm_adjustment(std::span<const double> factors) {
    if (factors.size() != kAdjustmentFactorCount)
        throw InputError("parameter adjustment expects " +
                         std::to_string(kAdjustmentFactorCount) + " factors, got " +
                         std::to_string(factors.size()));
    require_positive(factors, "adjustment factor");
    return kernels::active_backend().product(factors.data(), factors.size());
}

EffortEstimate estimate_effort(const SeerInput& input) {
    if (!(input.size_sloc > 0.0) || !std::isfinite(input.size_sloc))
        throw InputError("effective size must be positive and finite");
    if (!(input.staffing_complexity > 0.0) || !std::isfinite(input.staffing_complexity))
        throw InputError("staffing complexity must be positive and finite");
    if (!(input.beta > 0.0) || !std::isfinite(input.beta))
        throw InputError("beta must be positive and finite");

    EffortEstimate est;
    est.ctbx = compute_ctbx(input.ctbx_factors);
    est.ctb = compute_ctb(est.ctbx, input.turn);
    est.parm_adjustment = compute_parm_adjustment(input.adjustment_factors);
    est.cte = est.ctb / est.parm_adjustment;
    est.k_person_years = std::pow(input.staffing_complexity, 0.4) *
                         std::pow(input.size_sloc / est.cte, input.beta);
    est.e_person_years = kDevelopmentShare * est.k_person_years;
    if (!std::isfinite(est.k_person_years) || !(est.k_person_years > 0.0))
        throw NumericError("effort estimate is not finite");
    return est;
}

} // namespace seernf
