#pragma once

#include "seernf/metrics.hpp"
#include "seernf/training.hpp"

#include <string>

namespace seernf {

// Two-table markdown report: an MMRE row and a PRED grid, percentages with
// two decimals. Throws InputError when the report has no outcomes.
std::string render_markdown(const CaseReport& report);

// Machine-readable flat form, one metric per row:
//   case_id,metric,seer_sem,calibrated,change
// Percentages are rendered exactly as in the markdown table so the two
// outputs can be cross-checked cell by cell.
std::string render_csv(const CaseReport& report);

// Per-epoch training curve: epoch,loss,train_mmre with full precision.
std::string render_history_csv(const TrainingHistory& history);

} // namespace seernf
