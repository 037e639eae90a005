#include "seernf/param_registry.hpp"

#include "seernf/error.hpp"
#include "seernf/rating_scale.hpp"
#include "seernf/text_io.hpp"

#include <cmath>
#include <unordered_set>

namespace seernf {

namespace {

void validate_definition(const ParameterDefinition& def) {
    for (int r = 1; r <= 18; ++r) {
        const double v = def.defaults[r - 1];
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParseError("parameter " + def.mnemonic + ": value at rating " +
                             std::to_string(r) + " must be a positive number");
    }
    for (int r = 1; r < 18; ++r) {
        const double a = def.defaults[r - 1];
        const double b = def.defaults[r];
        const bool ok = def.direction == Direction::Increasing ? a <= b : a >= b;
        if (!ok)
            throw ParseError("parameter " + def.mnemonic + ": values violate " +
                             std::string(direction_name(def.direction)) +
                             " direction between ratings " + std::to_string(r) +
                             " and " + std::to_string(r + 1));
    }
}

Site parse_site(std::string_view tok, std::string_view mnemonic) {
    if (tok == "ctbx_factor") return Site::CtbxFactor;
    if (tok == "turn_input") return Site::TurnInput;
    if (tok == "adjustment_factor") return Site::AdjustmentFactor;
    throw ParseError("parameter " + std::string(mnemonic) + ": unknown site '" +
                     std::string(tok) + "'");
}

Direction parse_direction(std::string_view tok, std::string_view mnemonic) {
    if (tok == "increasing") return Direction::Increasing;
    if (tok == "decreasing") return Direction::Decreasing;
    throw ParseError("parameter " + std::string(mnemonic) +
                     ": unknown direction '" + std::string(tok) + "'");
}

} // namespace

std::string_view site_name(Site s) {
    switch (s) {
        case Site::CtbxFactor: return "ctbx_factor";
        case Site::TurnInput: return "turn_input";
        case Site::AdjustmentFactor: return "adjustment_factor";
    }
    return "?";
}

std::string_view direction_name(Direction d) {
    return d == Direction::Increasing ? "increasing" : "decreasing";
}

Registry Registry::from_definitions(std::vector<ParameterDefinition> defs) {
    if (defs.size() != kParameterCount)
        throw ParseError("expected " + std::to_string(kParameterCount) +
                         " parameters, found " + std::to_string(defs.size()));
    Registry reg;
    std::unordered_set<std::string> seen;
    bool have_turn = false;
    for (std::size_t i = 0; i < defs.size(); ++i) {
        const ParameterDefinition& def = defs[i];
        if (!seen.insert(def.mnemonic).second)
            throw ParseError("duplicate parameter mnemonic '" + def.mnemonic + "'");
        validate_definition(def);
        switch (def.site) {
            case Site::CtbxFactor: reg.ctbx_.push_back(i); break;
            case Site::AdjustmentFactor: reg.adjustment_.push_back(i); break;
            case Site::TurnInput:
                if (have_turn)
                    throw ParseError("more than one turn_input parameter (" +
                                     def.mnemonic + ")");
                have_turn = true;
                reg.turn_ = i;
                break;
        }
    }
    if (reg.ctbx_.size() != kCtbxFactorCount)
        throw ParseError("expected " + std::to_string(kCtbxFactorCount) +
                         " ctbx_factor parameters, found " +
                         std::to_string(reg.ctbx_.size()));
    if (!have_turn)
        throw ParseError("registry has no turn_input parameter");
    reg.params_ = std::move(defs);
    return reg;
}

std::size_t Registry::index_of(std::string_view mnemonic) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (params_[i].mnemonic == mnemonic) return i;
    throw InputError("unknown parameter '" + std::string(mnemonic) + "'");
}

bool Registry::contains(std::string_view mnemonic) const {
    for (const auto& p : params_)
        if (p.mnemonic == mnemonic) return true;
    return false;
}

double Registry::default_value_by_index(std::size_t index, double x) const {
    if (!(x >= kPositionMin && x <= kPositionMax))
        throw DomainError("rating position " + std::to_string(x) + " outside [0, 19]");
    const auto& table = params_[index].defaults;
    if (x <= 1.0) return table[0];
    if (x >= 18.0) return table[17];
    const int lo = static_cast<int>(std::floor(x));
    const double f = x - static_cast<double>(lo);
    return table[lo - 1] + f * (table[lo] - table[lo - 1]);
}

double Registry::default_value(std::string_view mnemonic, double x) const {
    return default_value_by_index(index_of(mnemonic), x);
}

Registry parse_registry(std::string_view content, std::string_view origin) {
    std::vector<ParameterDefinition> defs;
    const auto lines = split_lines(content);
    bool saw_header = false;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tokens = tokenize(lines[ln]);
        if (tokens.empty()) continue;
        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "seer-registry" || tokens[1] != "v1")
                throw ParseError(std::string(origin) +
                                 ": first record must be 'seer-registry v1'");
            saw_header = true;
            continue;
        }
        if (tokens.size() != 3 + 18)
            throw ParseError(std::string(origin) + " line " + std::to_string(ln + 1) +
                             ": expected 'mnemonic site direction v1..v18' (21 fields), found " +
                             std::to_string(tokens.size()));
        ParameterDefinition def;
        def.mnemonic = std::string(tokens[0]);
        def.site = parse_site(tokens[1], def.mnemonic);
        def.direction = parse_direction(tokens[2], def.mnemonic);
        for (int r = 1; r <= 18; ++r) {
            const auto v = parse_double(tokens[2 + r]);
            if (!v)
                throw ParseError("parameter " + def.mnemonic + ": value at rating " +
                                 std::to_string(r) + " is not a number");
            def.defaults[r - 1] = *v;
        }
        defs.push_back(std::move(def));
    }
    if (!saw_header)
        throw ParseError(std::string(origin) + ": empty registry file");
    return Registry::from_definitions(std::move(defs));
}

Registry load_registry(const std::filesystem::path& path) {
    return parse_registry(read_file(path), path.string());
}

namespace {

// Value tables anchored at ratings 1, 8 (the nominal value) and 18, filled
// in geometrically so the step ratio is constant on each side of nominal.
std::array<double, 18> geometric_row(double nominal, double low_ratio, double high_ratio) {
    std::array<double, 18> v{};
    for (int r = 1; r <= 18; ++r)
        v[r - 1] = r <= 8 ? nominal * std::pow(low_ratio, (8.0 - r) / 7.0)
                          : nominal * std::pow(high_ratio, (r - 8.0) / 10.0);
    return v;
}

} // namespace

Registry builtin_registry() {
    // A higher technology rating lowers its ctbx factor (capability-like),
    // which raises the technology constant and lowers effort. Adjustment
    // factors multiply effort directly.
    const double ctbx_nominal = std::pow(4.11, 1.0 / 6.0);
    std::vector<ParameterDefinition> defs;
    defs.reserve(kParameterCount);
    auto ctbx = [&](const char* name, double low, double high) {
        defs.push_back({name, Site::CtbxFactor, Direction::Decreasing,
                        geometric_row(ctbx_nominal, low, high)});
    };
    auto adj = [&](const char* name, Direction dir, double low, double high) {
        defs.push_back({name, Site::AdjustmentFactor, dir, geometric_row(1.0, low, high)});
    };

    ctbx("ACAP", 1.45, 0.72);
    ctbx("AEXP", 1.29, 0.82);
    ctbx("MODP", 1.24, 0.82);
    ctbx("PCAP", 1.42, 0.70);
    ctbx("TOOL", 1.24, 0.78);
    ctbx("TERM", 1.20, 0.85);
    defs.push_back({"TURN", Site::TurnInput, Direction::Increasing,
                    geometric_row(1.0, 0.87, 1.15)});
    adj("LANG", Direction::Increasing, 0.90, 1.25);
    adj("LEXP", Direction::Decreasing, 1.25, 0.85);
    adj("TSYS", Direction::Increasing, 0.90, 1.30);
    adj("TEXP", Direction::Decreasing, 1.22, 0.86);
    adj("DSYS", Direction::Increasing, 0.92, 1.25);
    adj("DEXP", Direction::Decreasing, 1.20, 0.88);
    adj("PSYS", Direction::Increasing, 0.93, 1.22);
    adj("PEXP", Direction::Decreasing, 1.18, 0.88);
    adj("SIBR", Direction::Increasing, 0.95, 1.30);
    adj("REUS", Direction::Increasing, 0.95, 1.45);
    adj("MULT", Direction::Increasing, 1.00, 1.30);
    adj("RDED", Direction::Decreasing, 1.20, 0.90);
    adj("RLOC", Direction::Increasing, 0.95, 1.25);
    adj("DSVL", Direction::Increasing, 0.95, 1.30);
    adj("PSVL", Direction::Increasing, 0.95, 1.28);
    adj("RVOL", Direction::Increasing, 0.92, 1.40);
    adj("SP", Direction::Increasing, 1.00, 1.25);
    adj("EC", Direction::Increasing, 0.95, 1.28);
    adj("TEST", Direction::Increasing, 0.85, 1.40);
    adj("QUAL", Direction::Increasing, 0.88, 1.38);
    adj("RHST", Direction::Increasing, 1.00, 1.35);
    adj("DISP", Direction::Increasing, 0.98, 1.30);
    adj("MEMC", Direction::Increasing, 1.00, 1.45);
    adj("TIMC", Direction::Increasing, 1.00, 1.50);
    adj("RTIM", Direction::Increasing, 1.00, 1.38);
    adj("SECR", Direction::Increasing, 1.00, 1.42);
    adj("TSVL", Direction::Increasing, 0.95, 1.32);
    return Registry::from_definitions(std::move(defs));
}

std::string serialize_registry(const Registry& reg) {
    std::string out = "seer-registry v1\n";
    for (const ParameterDefinition& p : reg.parameters()) {
        out += p.mnemonic;
        out += ' ';
        out += site_name(p.site);
        out += ' ';
        out += direction_name(p.direction);
        for (double v : p.defaults) {
            out += ' ';
            out += format_full(v);
        }
        out += '\n';
    }
    return out;
}

void save_registry(const Registry& reg, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_registry(reg));
}

} // namespace seernf
