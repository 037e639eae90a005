#include "seernf/cli.hpp"

#include "seernf/dataset.hpp"
#include "seernf/error.hpp"
#include "seernf/metrics.hpp"
#include "seernf/nf_bank.hpp"
#include "seernf/param_registry.hpp"
#include "seernf/report.hpp"
#include "seernf/text_io.hpp"
#include "seernf/training.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace seernf::cli {

namespace {

namespace fs = std::filesystem;

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// Shared hyperparameter options; defaults mirror TrainingConfig.
struct TrainOpts {
    double lr = TrainingConfig{}.learning_rate;
    std::size_t epochs = TrainingConfig{}.epochs;
    std::string gradient = "analytic";
    double fd_step = TrainingConfig{}.fd_step;
    std::uint64_t seed = 0;
    double beta = ModelConstants{}.beta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lr", lr, "learning rate")->capture_default_str();
        cmd->add_option("--epochs", epochs, "epoch budget")->capture_default_str();
        cmd->add_option("--gradient", gradient, "gradient mode")
            ->check(CLI::IsMember({"analytic", "fd"}))
            ->capture_default_str();
        cmd->add_option("--fd-step", fd_step, "relative finite-difference step")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "shuffle seed for C4 splits")
            ->capture_default_str();
        cmd->add_option("--beta", beta, "effort exponent")->capture_default_str();
    }

    TrainingConfig config() const {
        TrainingConfig cfg;
        cfg.learning_rate = lr;
        cfg.epochs = epochs;
        cfg.gradient_mode = gradient == "fd" ? GradientMode::CentralFiniteDifference
                                             : GradientMode::Analytic;
        cfg.fd_step = fd_step;
        cfg.seed = seed;
        return cfg;
    }
};

struct LoadedData {
    Registry reg;
    MappingConfig mapping;
    std::vector<SeerProject> projects;
};

Registry resolve_registry(const std::string& path) {
    return path.empty() ? builtin_registry() : load_registry(path);
}

MappingConfig resolve_mapping(const std::string& path) {
    return path.empty() ? builtin_cocomo81_mapping() : load_mapping(path);
}

LoadedData load_data(const std::string& registry_path, const std::string& dataset_path,
                     const std::string& mapping_path) {
    Registry reg = resolve_registry(registry_path);
    MappingConfig mapping = resolve_mapping(mapping_path);
    const std::vector<ProjectRecord> records = load_projects(dataset_path);
    std::vector<SeerProject> projects = map_all_to_seer(records, mapping, reg);
    return {std::move(reg), std::move(mapping), std::move(projects)};
}

std::string percent2(double fraction) {
    return format_fixed(fraction * 100.0, 2) + "%";
}

int run_estimate(const std::string& registry_path, const std::string& bank_path,
                 double size_sloc, double staffing, double beta, double euf,
                 const std::vector<std::string>& rating_specs, std::ostream& out) {
    const Registry reg = resolve_registry(registry_path);
    const NFBank bank =
        bank_path.empty() ? NFBank::from_registry_defaults(reg) : load_bank(bank_path, reg);

    std::vector<RatingPosition> ratings(reg.size(), parse_rating("Nom"));
    for (const std::string& spec : rating_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
            throw InputError("--rating expects PARAM=VALUE, got '" + spec + "'");
        const std::string name = upper(spec.substr(0, eq));
        const std::string value = spec.substr(eq + 1);
        const auto num = parse_double(value);
        ratings[reg.index_of(name)] =
            num ? rating_from_position(*num) : parse_rating(value);
    }

    SeerProject project;
    project.id = "cli";
    project.ratings = std::move(ratings);
    project.size_sloc = size_sloc;
    project.staffing_complexity = staffing;
    project.actual_effort_pm = 1.0; // unused by estimation

    const ModelConstants mc{beta, euf};
    const EffortEstimate est = estimate_project(reg, bank, project, mc);
    out << "ctbx " << format_fixed(est.ctbx, 6) << "\n";
    out << "ctb " << format_fixed(est.ctb, 6) << "\n";
    out << "parm_adjustment " << format_fixed(est.parm_adjustment, 6) << "\n";
    out << "cte " << format_fixed(est.cte, 6) << "\n";
    out << "k_person_years " << format_fixed(est.k_person_years, 6) << "\n";
    out << "e_person_years " << format_fixed(est.e_person_years, 6) << "\n";
    out << "estimate " << format_fixed(euf * est.e_person_years, 6) << "\n";
    return 0;
}

int run_train(const std::string& registry_path, const std::string& dataset_path,
              const std::string& mapping_path, const std::string& bank_in,
              const std::string& bank_out, const std::string& history_out,
              const TrainOpts& opts, std::ostream& out) {
    const LoadedData d = load_data(registry_path, dataset_path, mapping_path);
    NFBank bank =
        bank_in.empty() ? NFBank::from_registry_defaults(d.reg) : load_bank(bank_in, d.reg);

    const ModelConstants mc{opts.beta, d.mapping.effort_unit_factor};
    const TrainingHistory history = train(d.reg, bank, d.projects, mc, opts.config());

    save_bank(bank, d.reg, bank_out);
    if (!history_out.empty())
        write_file_atomic(history_out, render_history_csv(history));

    out << "trained on " << d.projects.size() << " projects\n";
    if (!history.epochs.empty()) {
        out << "initial loss " << format_full(history.epochs.front().loss) << "\n";
        out << "final loss " << format_full(history.epochs.back().loss) << "\n";
        out << "accepted epochs " << history.epochs.size() - 1 << "\n";
    }
    if (history.converged) out << "stopped early: no descending step\n";
    if (history.diverged) out << "aborted: gradient was not finite\n";
    out << "bank written to " << bank_out << "\n";
    if (!history_out.empty()) out << "history written to " << history_out << "\n";
    return 0;
}

int run_evaluate(const std::string& registry_path, const std::string& dataset_path,
                 const std::string& mapping_path, const std::string& bank_path,
                 const std::string& case_str, const std::string& out_dir,
                 const std::string& format, const std::string& bank_out,
                 const std::string& history_out, const TrainOpts& opts,
                 std::ostream& out) {
    const CaseId cid = parse_case_id(case_str);
    const LoadedData d = load_data(registry_path, dataset_path, mapping_path);
    const NFBank baseline =
        bank_path.empty() ? NFBank::from_registry_defaults(d.reg) : load_bank(bank_path, d.reg);

    const ModelConstants mc{opts.beta, d.mapping.effort_unit_factor};
    const CaseRun run = run_case(cid, d.reg, baseline, d.projects, mc, opts.config());
    const CaseReport& rep = run.report;

    out << "case " << case_id_name(cid) << ": baseline MMRE " << percent2(rep.baseline_mmre)
        << ", calibrated MMRE " << percent2(rep.calibrated_mmre) << " (train "
        << rep.train_size << ", test " << rep.test_size << ")\n";

    const bool want_md = format == "markdown" || format == "both";
    const bool want_csv = format == "csv" || format == "both";
    if (out_dir.empty()) {
        if (want_md) out << "\n" << render_markdown(rep);
        if (want_csv) out << "\n" << render_csv(rep);
    } else {
        fs::create_directories(out_dir);
        const std::string base = "report_" + std::string(case_id_name(cid));
        if (want_md) {
            const fs::path p = fs::path(out_dir) / (base + ".md");
            write_file_atomic(p, render_markdown(rep));
            out << "wrote " << p.string() << "\n";
        }
        if (want_csv) {
            const fs::path p = fs::path(out_dir) / (base + ".csv");
            write_file_atomic(p, render_csv(rep));
            out << "wrote " << p.string() << "\n";
        }
    }
    if (!bank_out.empty()) {
        save_bank(run.bank, d.reg, bank_out);
        out << "bank written to " << bank_out << "\n";
    }
    if (!history_out.empty()) {
        write_file_atomic(history_out, render_history_csv(run.history));
        out << "history written to " << history_out << "\n";
    }
    return 0;
}

int run_validate(const std::string& registry_path, const std::string& mapping_path,
                 const std::string& bank_path, const std::string& dataset_path,
                 std::ostream& out) {
    const Registry reg = resolve_registry(registry_path);
    out << "registry OK (" << reg.size() << " parameters)\n";

    MappingConfig mapping;
    const bool have_mapping = !mapping_path.empty();
    if (have_mapping) {
        mapping = load_mapping(mapping_path);
        for (const DriverMapEntry& e : mapping.entries)
            if (!reg.contains(e.seer_param))
                throw InputError("mapping targets unknown SEER parameter " + e.seer_param);
        out << "mapping OK (" << mapping.entries.size() << " driver mappings)\n";
    }
    if (!bank_path.empty()) {
        const NFBank bank = load_bank(bank_path, reg);
        check_bank_invariants(bank, reg);
        out << "bank OK (" << bank.size() << " sub-models)\n";
    }
    if (!dataset_path.empty()) {
        const std::vector<ProjectRecord> records = load_projects(dataset_path);
        out << "dataset OK (" << records.size() << " projects)\n";
        if (have_mapping) {
            map_all_to_seer(records, mapping, reg);
            out << "dataset maps cleanly onto the registry\n";
        }
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"SEER-SEM effort estimation with calibratable neuro-fuzzy inputs"};
    app.require_subcommand(1);
    int rc = 0;

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate one project from ratings");
    std::string est_registry, est_bank;
    double est_size = 0.0, est_staffing = 15.0;
    double est_beta = ModelConstants{}.beta, est_euf = ModelConstants{}.effort_unit_factor;
    std::vector<std::string> est_ratings;
    est->add_option("--registry", est_registry, "registry file (default: builtin)");
    est->add_option("--bank", est_bank, "calibrated bank file (default: registry defaults)");
    est->add_option("--size-sloc", est_size, "effective size in SLOC")->required();
    est->add_option("--staffing", est_staffing, "staffing complexity D")
        ->capture_default_str();
    est->add_option("--beta", est_beta, "effort exponent")->capture_default_str();
    est->add_option("--effort-unit-factor", est_euf, "person-years to output unit")
        ->capture_default_str();
    est->add_option("--rating", est_ratings,
                    "PARAM=LABEL or PARAM=POSITION, repeatable; unset parameters are Nom");
    est->callback([&] {
        rc = run_estimate(est_registry, est_bank, est_size, est_staffing, est_beta,
                          est_euf, est_ratings, out);
    });

    // train
    auto* tr = app.add_subcommand("train", "Calibrate a bank against a dataset");
    std::string tr_registry, tr_dataset, tr_mapping, tr_bank_in, tr_bank_out, tr_history;
    TrainOpts tr_opts;
    tr->add_option("--registry", tr_registry, "registry file (default: builtin)");
    tr->add_option("--dataset", tr_dataset, "project dataset (CSV)")->required();
    tr->add_option("--mapping", tr_mapping, "driver mapping file (default: builtin COCOMO-81)");
    tr->add_option("--bank-out", tr_bank_out, "output bank file")->required();
    tr->add_option("--bank-in", tr_bank_in, "starting bank (default: registry defaults)");
    tr->add_option("--history-out", tr_history, "training curve CSV");
    tr_opts.attach(tr);
    tr->callback([&] {
        rc = run_train(tr_registry, tr_dataset, tr_mapping, tr_bank_in, tr_bank_out,
                       tr_history, tr_opts, out);
    });

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Run one case protocol and report metrics");
    std::string ev_registry, ev_dataset, ev_mapping, ev_bank, ev_case, ev_out_dir;
    std::string ev_format = "markdown", ev_bank_out, ev_history;
    TrainOpts ev_opts;
    ev->add_option("--registry", ev_registry, "registry file (default: builtin)");
    ev->add_option("--dataset", ev_dataset, "project dataset (CSV)")->required();
    ev->add_option("--mapping", ev_mapping, "driver mapping file (default: builtin COCOMO-81)");
    ev->add_option("--case", ev_case, "case protocol: C1, C2, C3, C4-1 or C4-2")
        ->required();
    ev->add_option("--bank", ev_bank, "baseline bank (default: registry defaults)");
    ev->add_option("--out", ev_out_dir, "directory for report files (default: stdout)");
    ev->add_option("--format", ev_format, "report format")
        ->check(CLI::IsMember({"markdown", "csv", "both"}))
        ->capture_default_str();
    ev->add_option("--bank-out", ev_bank_out, "save the calibrated bank");
    ev->add_option("--history-out", ev_history, "training curve CSV");
    ev_opts.attach(ev);
    ev->callback([&] {
        rc = run_evaluate(ev_registry, ev_dataset, ev_mapping, ev_bank, ev_case,
                          ev_out_dir, ev_format, ev_bank_out, ev_history, ev_opts, out);
    });

    // validate
    auto* va = app.add_subcommand("validate", "Check input files for consistency");
    std::string va_registry, va_mapping, va_bank, va_dataset;
    va->add_option("--registry", va_registry, "registry file (default: builtin)");
    va->add_option("--mapping", va_mapping, "driver mapping file");
    va->add_option("--bank", va_bank, "bank file");
    va->add_option("--dataset", va_dataset, "project dataset (CSV)");
    va->callback([&] {
        rc = run_validate(va_registry, va_mapping, va_bank, va_dataset, out);
    });

    // init
    auto* in = app.add_subcommand("init", "Write starter registry/mapping files");
    std::string in_registry, in_mapping;
    in->add_option("--registry-out", in_registry, "write the builtin registry here");
    in->add_option("--mapping-out", in_mapping, "write the builtin COCOMO-81 mapping here");
    in->callback([&] {
        if (in_registry.empty() && in_mapping.empty())
            throw InputError("init needs --registry-out and/or --mapping-out");
        if (!in_registry.empty()) {
            save_registry(builtin_registry(), in_registry);
            out << "wrote " << in_registry << "\n";
        }
        if (!in_mapping.empty()) {
            save_mapping(builtin_cocomo81_mapping(), in_mapping);
            out << "wrote " << in_mapping << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace seernf::cli
