#pragma once

#include "seernf/param_registry.hpp"
#include "seernf/rating_scale.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace seernf {

// One single-input fuzzy sub-model: 18 fixed triangular membership functions
// (unit base, centers at 1..18, clamped flat outside [1,18]) and 18 learnable
// consequent values. Only the consequents are ever trained.
struct NFSubModel {
    std::string param_id;
    Direction direction = Direction::Increasing;
    std::array<double, 18> consequents{};
};

// The bank holds one sub-model per registry parameter, in registry order.
struct NFBank {
    std::vector<NFSubModel> models;

    // Untrained bank: consequents copied from the registry default tables,
    // which makes bank evaluation reproduce table interpolation exactly.
    static NFBank from_registry_defaults(const Registry& reg);

    const NFSubModel& at(std::size_t index) const { return models[index]; }
    std::size_t size() const { return models.size(); }
};

// Membership grades w_r for r = 1..18 at position x in [0,19]. The grades
// are also the rule firing strengths (single-premise rules). Throws
// DomainError outside [0,19].
std::array<double, 18> membership_grades(double x);

// Layers 1-5 for one sub-model: grades, normalized strengths, consequent
// blend. Returns sum_r (w_r / sum w) * consequents[r-1].
double evaluate_submodel(const NFSubModel& m, double x);

// Least-squares projection onto the cone of weakly monotone sequences in
// the given direction (pool-adjacent-violators). Idempotent; returns the
// input when it is already feasible. Throws InputError on non-finite input.
std::vector<double> project_monotone(std::span<const double> values, Direction direction);

// Evaluates every sub-model; ratings are aligned with registry order.
// Throws InputError if the rating count differs from the registry size.
std::vector<double> evaluate_bank(const NFBank& bank, const Registry& reg,
                                  std::span<const RatingPosition> ratings);

// Keyed variant: ratings must cover every registry parameter exactly once;
// a missing or unknown parameter is named in the error.
std::vector<double> evaluate_bank(const NFBank& bank, const Registry& reg,
                                  const std::map<std::string, RatingPosition>& ratings);

// Checks positivity and direction of every sub-model's consequents against
// the registry (and that the bank covers it one-to-one). Throws InputError.
void check_bank_invariants(const NFBank& bank, const Registry& reg);

// Bank files mirror the registry format with the learned consequents as the
// 18 values; numbers are written with full round-trip precision.
std::string serialize_bank(const NFBank& bank, const Registry& reg);
NFBank parse_bank(std::string_view content, const Registry& reg,
                  std::string_view origin = "<bank>");
void save_bank(const NFBank& bank, const Registry& reg, const std::filesystem::path& path);
NFBank load_bank(const std::filesystem::path& path, const Registry& reg);

} // namespace seernf
