#include "seernf/metrics.hpp"

#include "seernf/error.hpp"

#include <cmath>

namespace seernf {

namespace {

std::vector<double> mres_of(std::span<const ProjectOutcome> outcomes) {
    std::vector<double> m;
    m.reserve(outcomes.size());
    for (const ProjectOutcome& o : outcomes) m.push_back(o.mre);
    return m;
}

std::vector<SeerProject> select(std::span<const SeerProject> projects,
                                std::span<const std::size_t> indices) {
    std::vector<SeerProject> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(projects[i]);
    return out;
}

std::vector<ProjectOutcome> select(std::span<const ProjectOutcome> outcomes,
                                   std::span<const std::size_t> indices) {
    std::vector<ProjectOutcome> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(outcomes[i]);
    return out;
}

} // namespace

double relative_error(double estimate, double actual) {
    if (!(actual > 0.0) || !std::isfinite(actual))
        throw InputError("actual effort must be positive and finite");
    if (!std::isfinite(estimate))
        throw InputError("estimate must be finite");
    return (estimate - actual) / actual;
}

double mmre(std::span<const double> mres) {
    if (mres.empty()) throw InputError("MMRE of an empty sample");
    double sum = 0.0;
    for (double m : mres) {
        if (!(m >= 0.0)) throw InputError("MRE values must be non-negative");
        sum += m;
    }
    return sum / static_cast<double>(mres.size());
}

double pred(std::span<const double> mres, double level) {
    if (mres.empty()) throw InputError("PRED of an empty sample");
    if (!(level >= 0.0) || !std::isfinite(level))
        throw InputError("PRED level must be non-negative and finite");
    std::size_t hits = 0;
    for (double m : mres) {
        if (!(m >= 0.0)) throw InputError("MRE values must be non-negative");
        if (m <= level) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(mres.size());
}

std::vector<ProjectOutcome> evaluate_projects(const Registry& reg, const NFBank& bank,
                                              std::span<const SeerProject> projects,
                                              const ModelConstants& mc) {
    std::vector<ProjectOutcome> out;
    out.reserve(projects.size());
    for (const SeerProject& p : projects) {
        ProjectOutcome o;
        o.id = p.id;
        o.estimate = estimate_person_months(reg, bank, p, mc);
        o.actual = p.actual_effort_pm;
        o.re = relative_error(o.estimate, o.actual);
        o.mre = std::fabs(o.re);
        out.push_back(std::move(o));
    }
    return out;
}

CaseRun run_case(CaseId id, const Registry& reg, const NFBank& baseline_bank,
                 std::span<const SeerProject> projects, const ModelConstants& mc,
                 const TrainingConfig& cfg) {
    if (projects.empty()) throw InputError("case protocols need at least one project");

    const std::vector<ProjectOutcome> baseline_all =
        evaluate_projects(reg, baseline_bank, projects, mc);
    const std::vector<double> baseline_mres = mres_of(baseline_all);

    CaseRun run;
    run.split = make_case_split(id, projects.size(), baseline_mres, cfg.seed);

    const std::vector<SeerProject> train_set = select(projects, run.split.train);
    run.bank = baseline_bank;
    run.history = train(reg, run.bank, train_set, mc, cfg);

    const std::vector<SeerProject> test_set = select(projects, run.split.test);

    CaseReport& rep = run.report;
    rep.case_id = id;
    rep.train_size = run.split.train.size();
    rep.test_size = run.split.test.size();
    rep.baseline = select(baseline_all, run.split.test);
    rep.calibrated = evaluate_projects(reg, run.bank, test_set, mc);

    const std::vector<double> base_m = mres_of(rep.baseline);
    const std::vector<double> cal_m = mres_of(rep.calibrated);
    rep.baseline_mmre = mmre(base_m);
    rep.calibrated_mmre = mmre(cal_m);
    rep.mmre_change = rep.calibrated_mmre - rep.baseline_mmre;
    for (std::size_t l = 0; l < kPredLevels.size(); ++l) {
        rep.baseline_pred[l] = pred(base_m, kPredLevels[l]);
        rep.calibrated_pred[l] = pred(cal_m, kPredLevels[l]);
        rep.pred_change[l] = rep.calibrated_pred[l] - rep.baseline_pred[l];
    }
    return run;
}

} // namespace seernf
