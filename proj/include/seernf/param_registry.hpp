#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace seernf {

// Structural constants of the 34-parameter effort model: six factors form
// the ctbx product, one parameter is the turnaround input of the basic
// technology equation, the remaining 27 multiply into the adjustment.
inline constexpr int kParameterCount = 34;
inline constexpr int kCtbxFactorCount = 6;
inline constexpr int kAdjustmentFactorCount = 27;

enum class Site { CtbxFactor, TurnInput, AdjustmentFactor };
enum class Direction { Increasing, Decreasing };

std::string_view site_name(Site s);
std::string_view direction_name(Direction d);

struct ParameterDefinition {
    std::string mnemonic;
    Site site = Site::AdjustmentFactor;
    Direction direction = Direction::Increasing;
    // Quantitative value at each rating center r = 1..18 (defaults[r-1]).
    std::array<double, 18> defaults{};
};

// Immutable after load; lookups are pure.
class Registry {
public:
    static Registry from_definitions(std::vector<ParameterDefinition> defs);

    const std::vector<ParameterDefinition>& parameters() const { return params_; }
    const ParameterDefinition& at(std::size_t index) const { return params_[index]; }
    std::size_t size() const { return params_.size(); }

    // Index of a mnemonic (case-sensitive, canonical upper-case); throws
    // InputError for unknown names.
    std::size_t index_of(std::string_view mnemonic) const;
    bool contains(std::string_view mnemonic) const;

    // Registry-order index lists per site. ctbx_indices has 6 entries,
    // adjustment_indices 27; turn_index is the single turnaround input.
    const std::vector<std::size_t>& ctbx_indices() const { return ctbx_; }
    const std::vector<std::size_t>& adjustment_indices() const { return adjustment_; }
    std::size_t turn_index() const { return turn_; }

    // Piecewise-linear interpolation of the default table over centers
    // 1..18, clamped flat on [0,1) and (18,19]. Throws for unknown ids or
    // positions outside [0,19].
    double default_value(std::string_view mnemonic, double x) const;
    double default_value_by_index(std::size_t index, double x) const;

private:
    Registry() = default;
    std::vector<ParameterDefinition> params_;
    std::vector<std::size_t> ctbx_;
    std::vector<std::size_t> adjustment_;
    std::size_t turn_ = 0;
};

// Loads and validates a registry file: one record per parameter, fields
// `mnemonic site direction v1 .. v18`, `#` comments. Throws ParseError
// naming the offending parameter and index.
Registry load_registry(const std::filesystem::path& path);
Registry parse_registry(std::string_view content, std::string_view origin = "<registry>");

// The registry the tool ships with: six technology factors whose product is
// 4.11 at nominal, the turnaround input, and 27 effort adjustment factors
// that are 1 at nominal. Default tables run geometrically through anchors
// at ratings 1, 8 and 18.
Registry builtin_registry();

// Writes a registry in the format parse_registry reads, full precision.
std::string serialize_registry(const Registry& reg);
void save_registry(const Registry& reg, const std::filesystem::path& path);

} // namespace seernf
