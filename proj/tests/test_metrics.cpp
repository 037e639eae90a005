#include "doctest.h"

#include "seernf/error.hpp"
#include "seernf/metrics.hpp"
#include "seernf/report.hpp"
#include "seernf/text_io.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace seernf;

TEST_CASE("relative error is signed and guarded") {
    CHECK(relative_error(120.0, 100.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(relative_error(75.0, 100.0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK_THROWS_AS(relative_error(10.0, 0.0), InputError);
    CHECK_THROWS_AS(relative_error(10.0, -5.0), InputError);
    CHECK_THROWS_AS(relative_error(std::nan(""), 5.0), InputError);
}

TEST_CASE("MMRE is the plain mean of the magnitudes") {
    const std::vector<double> m{0.1, 0.3, 0.5};
    CHECK(mmre(m) == 0.3); // (0.1 + 0.3 + 0.5) / 3, exact in binary
    CHECK(mmre(std::vector<double>{0.25}) == 0.25);
    CHECK_THROWS_WITH_AS(mmre({}), "MMRE of an empty sample", InputError);
    CHECK_THROWS_AS(mmre(std::vector<double>{0.1, -0.2}), InputError);
}

TEST_CASE("PRED counts inclusively") {
    const std::vector<double> m{0.10, 0.20, 0.30, 0.80};
    CHECK(pred(m, 0.20) == 0.5); // the 0.20 entry itself counts
    CHECK(pred(m, 0.30) == 0.75);
    CHECK(pred(m, 0.05) == 0.0);
    CHECK(pred(m, 1.00) == 1.0);
    CHECK_THROWS_AS(pred({}, 0.2), InputError);
    CHECK_THROWS_AS(pred(m, -0.1), InputError);
}

TEST_CASE("PRED is monotone in the level") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> m(20);
        for (double& v : m) v = u(gen);
        double prev = 0.0;
        for (double level : {0.1, 0.2, 0.5, 1.0, 2.0, 3.5}) {
            const double p = pred(m, level);
            CHECK(p >= prev);
            prev = p;
        }
        CHECK(prev == 1.0); // 3.5 exceeds every draw
    }
}

TEST_CASE("project outcomes carry consistent error fields") {
    const auto w = test::make_world(11, 12, 0.4);
    const NFBank defaults = NFBank::from_registry_defaults(w.reg);
    const auto outcomes = evaluate_projects(w.reg, defaults, w.projects, w.mc);
    REQUIRE(outcomes.size() == w.projects.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const ProjectOutcome& o = outcomes[i];
        CHECK(o.id == w.projects[i].id);
        CHECK(o.actual == w.projects[i].actual_effort_pm);
        CHECK(o.estimate ==
              estimate_person_months(w.reg, defaults, w.projects[i], w.mc));
        CHECK(o.re == (o.estimate - o.actual) / o.actual);
        CHECK(o.mre == std::fabs(o.re));
    }
}

TEST_CASE("a case run reports exactly what its outcome lists imply") {
    const auto w = test::make_world(21, 24, 0.3);
    const NFBank defaults = NFBank::from_registry_defaults(w.reg);
    TrainingConfig cfg;
    cfg.epochs = 8;
    cfg.seed = 5;

    const CaseRun run = run_case(CaseId::C4_1, w.reg, defaults, w.projects, w.mc, cfg);
    const CaseReport& rep = run.report;

    CHECK(rep.case_id == CaseId::C4_1);
    CHECK(rep.train_size == run.split.train.size());
    CHECK(rep.test_size == run.split.test.size());
    CHECK(rep.train_size == 18); // ceil(0.75 * 24)
    CHECK(rep.test_size == 6);
    REQUIRE(rep.baseline.size() == rep.test_size);
    REQUIRE(rep.calibrated.size() == rep.test_size);

    // the baseline outcomes are the all-project baseline restricted to the
    // test indices
    const auto baseline_all = evaluate_projects(w.reg, defaults, w.projects, w.mc);
    for (std::size_t k = 0; k < run.split.test.size(); ++k) {
        const ProjectOutcome& got = rep.baseline[k];
        const ProjectOutcome& want = baseline_all[run.split.test[k]];
        CHECK(got.id == want.id);
        CHECK(got.estimate == want.estimate);
        CHECK(got.mre == want.mre);
    }

    // every aggregate is recomputable from the outcome lists
    std::vector<double> base_m, cal_m;
    for (const auto& o : rep.baseline) base_m.push_back(o.mre);
    for (const auto& o : rep.calibrated) cal_m.push_back(o.mre);
    CHECK(rep.baseline_mmre == mmre(base_m));
    CHECK(rep.calibrated_mmre == mmre(cal_m));
    CHECK(rep.mmre_change == rep.calibrated_mmre - rep.baseline_mmre);
    for (std::size_t l = 0; l < kPredLevels.size(); ++l) {
        CHECK(rep.baseline_pred[l] == pred(base_m, kPredLevels[l]));
        CHECK(rep.calibrated_pred[l] == pred(cal_m, kPredLevels[l]));
        CHECK(rep.pred_change[l] == rep.calibrated_pred[l] - rep.baseline_pred[l]);
    }

    // the calibrated outcomes really come from the trained bank
    CHECK_NOTHROW(check_bank_invariants(run.bank, w.reg));
    const SeerProject& probe = w.projects[run.split.test[0]];
    CHECK(rep.calibrated[0].estimate ==
          estimate_person_months(w.reg, run.bank, probe, w.mc));
}

TEST_CASE("identical seeds reproduce a case run bit for bit") {
    const auto w = test::make_world(31, 16, 0.3);
    const NFBank defaults = NFBank::from_registry_defaults(w.reg);
    TrainingConfig cfg;
    cfg.epochs = 6;
    cfg.seed = 77;

    const CaseRun a = run_case(CaseId::C4_2, w.reg, defaults, w.projects, w.mc, cfg);
    const CaseRun b = run_case(CaseId::C4_2, w.reg, defaults, w.projects, w.mc, cfg);
    CHECK(a.split.train == b.split.train);
    CHECK(a.report.calibrated_mmre == b.report.calibrated_mmre);
    CHECK(render_csv(a.report) == render_csv(b.report));
    CHECK(render_markdown(a.report) == render_markdown(b.report));
}

TEST_CASE("markdown and CSV renders agree cell by cell") {
    CaseReport rep;
    rep.case_id = CaseId::C2;
    rep.train_size = 93;
    rep.test_size = 93;
    rep.baseline_mmre = 0.75051;
    rep.calibrated_mmre = 0.47339;
    rep.mmre_change = rep.calibrated_mmre - rep.baseline_mmre;
    rep.baseline_pred = {0.2903, 0.3333, 0.6452, 0.8602};
    rep.calibrated_pred = {0.1183, 0.3441, 0.7097, 0.9247};
    for (std::size_t l = 0; l < kPredLevels.size(); ++l)
        rep.pred_change[l] = rep.calibrated_pred[l] - rep.baseline_pred[l];
    rep.baseline.push_back({"p1", 100.0, 80.0, 0.25, 0.25});
    rep.calibrated.push_back({"p1", 90.0, 80.0, 0.125, 0.125});

    const std::string md = render_markdown(rep);
    CHECK(md.find("# Case C2 calibration report") != std::string::npos);
    CHECK(md.find("Trained on 93 projects; evaluated on 93.") != std::string::npos);
    CHECK(md.find("| C2 | 75.05% | 47.34% | -27.71% |") != std::string::npos);
    CHECK(md.find("| PRED(L) | 20% | 30% | 50% | 100% |") != std::string::npos);
    CHECK(md.find("| SEER-SEM | 29.03% | 33.33% | 64.52% | 86.02% |") !=
          std::string::npos);

    const std::string csv = render_csv(rep);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "case_id,metric,seer_sem,calibrated,change");
    CHECK(lines[1] == "C2,MMRE,75.05%,47.34%,-27.71%");
    CHECK(lines[6] == "C2,train_size,93,,");
    CHECK(lines[7] == "C2,test_size,93,,");

    // every percentage cell in the CSV appears verbatim in the markdown
    for (std::size_t ln = 1; ln <= 5; ++ln) {
        const auto cells = split_csv(lines[ln]);
        REQUIRE(cells.size() == 5);
        for (std::size_t c = 2; c < 5; ++c)
            CHECK(md.find(cells[c]) != std::string::npos);
    }
}

TEST_CASE("rendering an empty report is refused") {
    CaseReport rep;
    CHECK_THROWS_WITH_AS(render_markdown(rep), "report has no outcomes to render",
                         InputError);
    CHECK_THROWS_WITH_AS(render_csv(rep), "report has no outcomes to render",
                         InputError);
}

TEST_CASE("the training curve serializes at full precision") {
    TrainingHistory h;
    h.epochs.push_back({0, 0.5, 0.6});
    h.epochs.push_back({1, 0.25, 0.3125});
    const std::string csv = render_history_csv(h);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "epoch,loss,train_mmre");
    CHECK(lines[1] == "0,0.5,0.6");
    CHECK(lines[2] == "1,0.25,0.3125");

    // values survive a parse round-trip bitwise
    const auto cells = split_csv(lines[2]);
    CHECK(*parse_double(cells[1]) == 0.25);
    CHECK(*parse_double(cells[2]) == 0.3125);
}
