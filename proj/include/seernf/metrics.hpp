#pragma once

#include "seernf/dataset.hpp"
#include "seernf/nf_bank.hpp"
#include "seernf/param_registry.hpp"
#include "seernf/training.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seernf {

// PRED levels reported for every case, as fractions of the actual.
inline constexpr std::array<double, 4> kPredLevels{0.20, 0.30, 0.50, 1.00};

struct ProjectOutcome {
    std::string id;
    double estimate = 0.0; // person-months
    double actual = 0.0;
    double re = 0.0;  // (estimate - actual) / actual
    double mre = 0.0; // |re|
};

// Metrics of one case protocol. MMRE and PRED values are fractions; the
// change columns are calibrated minus baseline.
struct CaseReport {
    CaseId case_id = CaseId::C2;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    double baseline_mmre = 0.0;
    double calibrated_mmre = 0.0;
    double mmre_change = 0.0;
    std::array<double, kPredLevels.size()> baseline_pred{};
    std::array<double, kPredLevels.size()> calibrated_pred{};
    std::array<double, kPredLevels.size()> pred_change{};
    std::vector<ProjectOutcome> baseline;   // test set, uncalibrated bank
    std::vector<ProjectOutcome> calibrated; // test set, trained bank, same order
};

// A full protocol run: the report plus everything needed to reproduce it.
struct CaseRun {
    CaseReport report;
    CaseSplit split;
    NFBank bank; // calibrated
    TrainingHistory history;
};

double relative_error(double estimate, double actual); // throws on actual <= 0

// Mean magnitude of relative error over the given MRE sample.
double mmre(std::span<const double> mres);

// Fraction of the sample with MRE <= level (inclusive).
double pred(std::span<const double> mres, double level);

// Runs every project through the estimation pipeline.
std::vector<ProjectOutcome> evaluate_projects(const Registry& reg, const NFBank& bank,
                                              std::span<const SeerProject> projects,
                                              const ModelConstants& mc);

// Executes one case protocol end to end: baseline estimates with the given
// bank over all projects, the case's train/test split (C1 and C3 threshold
// on the baseline MREs; C4 shuffles with cfg.seed), training on the train
// subset, and both baseline and calibrated metrics over the test subset.
CaseRun run_case(CaseId id, const Registry& reg, const NFBank& baseline_bank,
                 std::span<const SeerProject> projects, const ModelConstants& mc,
                 const TrainingConfig& cfg);

} // namespace seernf
