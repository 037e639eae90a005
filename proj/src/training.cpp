#include "seernf/training.hpp"

#include "seernf/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seernf {

namespace {

constexpr std::size_t kL = kernels::kLevels;

SeerInput to_seer_input(const Registry& reg, std::span<const double> p,
                        const SeerProject& project, double beta) {
    SeerInput in;
    in.size_sloc = project.size_sloc;
    in.staffing_complexity = project.staffing_complexity;
    in.beta = beta;
    in.ctbx_factors.reserve(reg.ctbx_indices().size());
    for (std::size_t i : reg.ctbx_indices()) in.ctbx_factors.push_back(p[i]);
    in.turn = p[reg.turn_index()];
    in.adjustment_factors.reserve(reg.adjustment_indices().size());
    for (std::size_t i : reg.adjustment_indices()) in.adjustment_factors.push_back(p[i]);
    return in;
}

struct BatchEval {
    double loss = 0.0;
    double mmre = 0.0;
};

BatchEval eval_batch(const Registry& reg, const NFBank& bank,
                     std::span<const SeerProject> projects, const ModelConstants& mc) {
    double sq = 0.0;
    double ab = 0.0;
    for (const SeerProject& proj : projects) {
        const double est = estimate_person_months(reg, bank, proj, mc);
        const double re = (est - proj.actual_effort_pm) / proj.actual_effort_pm;
        sq += re * re;
        ab += std::fabs(re);
    }
    const auto n = static_cast<double>(projects.size());
    return {sq / n, ab / n};
}

void check_projects(std::span<const SeerProject> projects, const Registry& reg) {
    if (projects.empty())
        throw InputError("training requires at least one project");
    for (const SeerProject& p : projects) {
        if (p.ratings.size() != reg.size())
            throw InputError("project " + p.id + " carries " +
                             std::to_string(p.ratings.size()) + " ratings, registry has " +
                             std::to_string(reg.size()));
        if (!(p.actual_effort_pm > 0.0))
            throw InputError("project " + p.id + " has non-positive actual effort");
    }
}

GradientMatrix analytic_gradient(const Registry& reg, const NFBank& bank,
                                 std::span<const SeerProject> projects,
                                 const ModelConstants& mc) {
    GradientMatrix grad(bank.size());
    for (auto& row : grad) row.fill(0.0);
    const auto& k = kernels::active_backend();
    const double n = static_cast<double>(projects.size());

    for (const SeerProject& proj : projects) {
        const std::vector<double> p = evaluate_bank(bank, reg, proj.ratings);
        const EffortEstimate est = estimate_effort(to_seer_input(reg, p, proj, mc.beta));
        const double est_pm = mc.effort_unit_factor * est.e_person_years;
        const double re = (est_pm - proj.actual_effort_pm) / proj.actual_effort_pm;
        const double dloss_dest = 2.0 * re / (n * proj.actual_effort_pm);

        const double turn = p[reg.turn_index()];
        for (std::size_t i = 0; i < bank.size(); ++i) {
            double dest_dp = 0.0;
            switch (reg.at(i).site) {
                case Site::AdjustmentFactor:
                    dest_dp = mc.beta * est_pm / p[i];
                    break;
                case Site::CtbxFactor:
                    dest_dp = est_pm * mc.beta * kCtbSlope / (5.0 * turn * p[i]);
                    break;
                case Site::TurnInput:
                    dest_dp = -est_pm * mc.beta * kCtbSlope *
                              std::log(est.ctbx / kCtbxNominal) / (5.0 * turn * turn);
                    break;
            }
            const std::array<double, kernels::kLevels> w =
                membership_grades(proj.ratings[i].x);
            k.axpy(dloss_dest * dest_dp, w.data(), grad[i].data(), w.size());
        }
    }
    return grad;
}

GradientMatrix fd_gradient(const Registry& reg, const NFBank& bank,
                           std::span<const SeerProject> projects,
                           const ModelConstants& mc, double fd_step) {
    GradientMatrix grad(bank.size());
    NFBank work = bank;
    for (std::size_t i = 0; i < bank.size(); ++i) {
        for (std::size_t r = 0; r < kL; ++r) {
            const double base = bank.models[i].consequents[r];
            const double h = fd_step * base;
            work.models[i].consequents[r] = base + h;
            const double up = eval_batch(reg, work, projects, mc).loss;
            work.models[i].consequents[r] = base - h;
            const double down = eval_batch(reg, work, projects, mc).loss;
            work.models[i].consequents[r] = base;
            grad[i][r] = (up - down) / (2.0 * h);
        }
    }
    return grad;
}

bool finite(const GradientMatrix& g) {
    for (const auto& row : g)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

// Descend, re-impose monotonicity, keep consequents off zero. The floor is
// a constant, so it cannot break the monotone order PAVA just restored.
NFBank step_candidate(const NFBank& bank, const GradientMatrix& grad, double step) {
    NFBank next = bank;
    for (std::size_t i = 0; i < bank.size(); ++i) {
        std::array<double, kernels::kLevels> raw{};
        for (std::size_t r = 0; r < kL; ++r)
            raw[r] = bank.models[i].consequents[r] - step * grad[i][r];
        const std::vector<double> proj =
            project_monotone(std::span<const double>(raw.data(), raw.size()),
                             bank.models[i].direction);
        for (std::size_t r = 0; r < kL; ++r)
            next.models[i].consequents[r] = std::max(kConsequentFloor, proj[r]);
    }
    return next;
}

} // namespace

EffortEstimate estimate_project(const Registry& reg, const NFBank& bank,
                                const SeerProject& project, const ModelConstants& mc) {
    const std::vector<double> p = evaluate_bank(bank, reg, project.ratings);
    return estimate_effort(to_seer_input(reg, p, project, mc.beta));
}

double estimate_person_months(const Registry& reg, const NFBank& bank,
                              const SeerProject& project, const ModelConstants& mc) {
    return mc.effort_unit_factor * estimate_project(reg, bank, project, mc).e_person_years;
}

double training_loss(const Registry& reg, const NFBank& bank,
                     std::span<const SeerProject> projects, const ModelConstants& mc) {
    check_projects(projects, reg);
    return eval_batch(reg, bank, projects, mc).loss;
}

GradientMatrix training_gradient(const Registry& reg, const NFBank& bank,
                                 std::span<const SeerProject> projects,
                                 const ModelConstants& mc, GradientMode mode,
                                 double fd_step) {
    check_projects(projects, reg);
    if (mode == GradientMode::CentralFiniteDifference) {
        if (!(fd_step > 0.0) || !std::isfinite(fd_step))
            throw ConfigError("fd_step must be positive and finite");
        return fd_gradient(reg, bank, projects, mc, fd_step);
    }
    return analytic_gradient(reg, bank, projects, mc);
}

TrainingHistory train(const Registry& reg, NFBank& bank,
                      std::span<const SeerProject> projects,
                      const ModelConstants& mc, const TrainingConfig& cfg) {
    if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate))
        throw ConfigError("learning rate must be positive and finite");
    if (cfg.gradient_mode == GradientMode::CentralFiniteDifference &&
        (!(cfg.fd_step > 0.0) || !std::isfinite(cfg.fd_step)))
        throw ConfigError("fd_step must be positive and finite");
    check_projects(projects, reg);
    check_bank_invariants(bank, reg);

    TrainingHistory history;
    if (cfg.epochs == 0) return history;

    BatchEval cur = eval_batch(reg, bank, projects, mc);
    if (!std::isfinite(cur.loss))
        throw NumericError("initial training loss is not finite");
    history.epochs.push_back({0, cur.loss, cur.mmre});

    double rate = cfg.learning_rate;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const GradientMatrix grad =
            training_gradient(reg, bank, projects, mc, cfg.gradient_mode, cfg.fd_step);
        if (!finite(grad)) {
            history.diverged = true;
            break;
        }

        double step = rate;
        bool accepted = false;
        for (std::size_t h = 0; h <= cfg.max_step_halvings; ++h) {
            const NFBank candidate = step_candidate(bank, grad, step);
            BatchEval next;
            try {
                next = eval_batch(reg, candidate, projects, mc);
            } catch (const Error&) {
                step *= 0.5;
                continue;
            }
            if (std::isfinite(next.loss) && next.loss <= cur.loss) {
                bank = candidate;
                cur = next;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            history.converged = true;
            break;
        }
        history.epochs.push_back({epoch, cur.loss, cur.mmre});
        rate = std::min(cfg.learning_rate, step * 2.0);
    }
    return history;
}

} // namespace seernf
