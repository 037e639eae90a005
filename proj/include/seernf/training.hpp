#pragma once

#include "seernf/dataset.hpp"
#include "seernf/kernels.hpp"
#include "seernf/nf_bank.hpp"
#include "seernf/param_registry.hpp"
#include "seernf/seer_core.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace seernf {

// Constants of the estimation pipeline that are not learned.
struct ModelConstants {
    double beta = 1.2;
    double effort_unit_factor = 12.0; // person-years -> reported effort unit
};

enum class GradientMode { Analytic, CentralFiniteDifference };

// Lower bound kept on every consequent after each training update.
inline constexpr double kConsequentFloor = 1e-3;

struct TrainingConfig {
    double learning_rate = 0.05;
    std::size_t epochs = 150;
    GradientMode gradient_mode = GradientMode::Analytic;
    double fd_step = 1e-6;       // relative perturbation for finite differences
    std::size_t max_step_halvings = 60;
    std::uint64_t seed = 0;      // consumed by the case splitter, not the optimizer
};

struct EpochRecord {
    std::size_t epoch = 0; // 0 is the state before any update
    double loss = 0.0;
    double train_mmre = 0.0;
};

struct TrainingHistory {
    std::vector<EpochRecord> epochs;
    bool converged = false; // backtracking could not find a non-increasing step
    bool diverged = false;  // non-finite gradient; bank kept at last valid state
};

// Consequent-space gradient, one row of 18 per registry parameter.
using GradientMatrix = std::vector<std::array<double, kernels::kLevels>>;

// Evaluates the bank on the project's ratings and runs the effort equations.
EffortEstimate estimate_project(const Registry& reg, const NFBank& bank,
                                const SeerProject& project, const ModelConstants& mc);

// Development effort scaled by mc.effort_unit_factor, comparable with the
// dataset's recorded actuals.
double estimate_person_months(const Registry& reg, const NFBank& bank,
                              const SeerProject& project, const ModelConstants& mc);

// Mean squared relative error of the estimates over `projects`.
double training_loss(const Registry& reg, const NFBank& bank,
                     std::span<const SeerProject> projects, const ModelConstants& mc);

// d(loss)/d(consequent) for every consequent in the bank. The finite
// difference mode perturbs each consequent by +-fd_step*value and is meant
// as a check of the analytic expressions, not for production training.
GradientMatrix training_gradient(const Registry& reg, const NFBank& bank,
                                 std::span<const SeerProject> projects,
                                 const ModelConstants& mc, GradientMode mode,
                                 double fd_step = 1e-6);

// Full-batch projected gradient descent with backtracking: each epoch takes
// the largest step (halving from the configured rate at most
// max_step_halvings times) whose monotone-projected, floored candidate does
// not increase the loss. Stops early when no such step exists. The bank is
// modified in place and stays feasible (monotone, consequents >= 1e-3)
// after every epoch. history.epochs[0] records the initial state; with
// cfg.epochs == 0 the bank is untouched and the history is empty.
// Deterministic: identical inputs yield a bit-identical bank.
TrainingHistory train(const Registry& reg, NFBank& bank,
                      std::span<const SeerProject> projects,
                      const ModelConstants& mc, const TrainingConfig& cfg);

} // namespace seernf
