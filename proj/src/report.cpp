#include "seernf/report.hpp"

#include "seernf/error.hpp"
#include "seernf/text_io.hpp"

#include <cstdio>

namespace seernf {

namespace {

std::string percent(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

std::string signed_percent(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%+.2f%%", fraction * 100.0);
    return buf;
}

std::string percent_label(double level) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.0f%%", level * 100.0);
    return buf;
}

void require_outcomes(const CaseReport& r) {
    if (r.baseline.empty() || r.calibrated.empty())
        throw InputError("report has no outcomes to render");
}

} // namespace

std::string render_markdown(const CaseReport& r) {
    require_outcomes(r);
    const std::string name(case_id_name(r.case_id));
    std::string out;
    out += "# Case " + name + " calibration report\n\n";
    out += "Trained on " + std::to_string(r.train_size) + " projects; evaluated on " +
           std::to_string(r.test_size) + ".\n\n";

    out += "| Case ID | SEER-SEM | Validation | Change |\n";
    out += "| --- | --- | --- | --- |\n";
    out += "| " + name + " | " + percent(r.baseline_mmre) + " | " +
           percent(r.calibrated_mmre) + " | " + signed_percent(r.mmre_change) + " |\n\n";

    out += "| PRED(L) |";
    for (double level : kPredLevels) out += " " + percent_label(level) + " |";
    out += "\n| --- |";
    for (std::size_t l = 0; l < kPredLevels.size(); ++l) out += " --- |";
    out += "\n| SEER-SEM |";
    for (double p : r.baseline_pred) out += " " + percent(p) + " |";
    out += "\n| " + name + " |";
    for (double p : r.calibrated_pred) out += " " + percent(p) + " |";
    out += "\n| Change |";
    for (double p : r.pred_change) out += " " + signed_percent(p) + " |";
    out += "\n";
    return out;
}

std::string render_csv(const CaseReport& r) {
    require_outcomes(r);
    const std::string name(case_id_name(r.case_id));
    std::string out = "case_id,metric,seer_sem,calibrated,change\n";
    out += name + ",MMRE," + percent(r.baseline_mmre) + "," +
           percent(r.calibrated_mmre) + "," + signed_percent(r.mmre_change) + "\n";
    for (std::size_t l = 0; l < kPredLevels.size(); ++l) {
        out += name + ",PRED(" + percent_label(kPredLevels[l]) + ")," +
               percent(r.baseline_pred[l]) + "," + percent(r.calibrated_pred[l]) + "," +
               signed_percent(r.pred_change[l]) + "\n";
    }
    out += name + ",train_size," + std::to_string(r.train_size) + ",,\n";
    out += name + ",test_size," + std::to_string(r.test_size) + ",,\n";
    return out;
}

std::string render_history_csv(const TrainingHistory& h) {
    std::string out = "epoch,loss,train_mmre\n";
    for (const EpochRecord& e : h.epochs)
        out += std::to_string(e.epoch) + "," + format_full(e.loss) + "," +
               format_full(e.train_mmre) + "\n";
    return out;
}

} // namespace seernf
