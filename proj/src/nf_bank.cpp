#include "seernf/nf_bank.hpp"

#include "seernf/error.hpp"
#include "seernf/kernels.hpp"
#include "seernf/text_io.hpp"

#include <cmath>
#include <set>

namespace seernf {

namespace {

void check_domain(double x) {
    if (!(x >= kPositionMin && x <= kPositionMax))
        throw DomainError("rating position " + std::to_string(x) + " outside [0, 19]");
}

// Non-decreasing least-squares PAVA over (value, weight) blocks.
std::vector<double> pava_nondecreasing(std::span<const double> values) {
    struct Block {
        double mean;
        double weight;
    };
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (double v : values) {
        blocks.push_back({v, 1.0});
        while (blocks.size() >= 2 &&
               blocks[blocks.size() - 2].mean > blocks.back().mean) {
            const Block last = blocks.back();
            blocks.pop_back();
            Block& prev = blocks.back();
            prev.mean = (prev.mean * prev.weight + last.mean * last.weight) /
                        (prev.weight + last.weight);
            prev.weight += last.weight;
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (const Block& b : blocks)
        for (int i = 0; i < static_cast<int>(b.weight); ++i) out.push_back(b.mean);
    return out;
}

} // namespace

NFBank NFBank::from_registry_defaults(const Registry& reg) {
    NFBank bank;
    bank.models.reserve(reg.size());
    for (const ParameterDefinition& def : reg.parameters())
        bank.models.push_back({def.mnemonic, def.direction, def.defaults});
    return bank;
}

std::array<double, 18> membership_grades(double x) {
    check_domain(x);
    std::array<double, 18> w{};
    kernels::active_backend().membership_row(x, w.data());
    return w;
}

double evaluate_submodel(const NFSubModel& m, double x) {
    check_domain(x);
    return kernels::active_backend().fuzzy_blend(x, m.consequents.data());
}

std::vector<double> project_monotone(std::span<const double> values, Direction direction) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw InputError("monotone projection input at index " + std::to_string(i) +
                             " is not finite");
    if (direction == Direction::Increasing) return pava_nondecreasing(values);
    std::vector<double> negated(values.begin(), values.end());
    for (double& v : negated) v = -v;
    std::vector<double> projected = pava_nondecreasing(negated);
    for (double& v : projected) v = -v;
    return projected;
}

std::vector<double> evaluate_bank(const NFBank& bank, const Registry& reg,
                                  std::span<const RatingPosition> ratings) {
    if (bank.size() != reg.size())
        throw InputError("bank has " + std::to_string(bank.size()) +
                         " sub-models for a registry of " + std::to_string(reg.size()));
    if (ratings.size() != reg.size())
        throw InputError("expected " + std::to_string(reg.size()) + " ratings, got " +
                         std::to_string(ratings.size()));
    std::vector<double> out(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i)
        out[i] = evaluate_submodel(bank.models[i], ratings[i].x);
    return out;
}

std::vector<double> evaluate_bank(const NFBank& bank, const Registry& reg,
                                  const std::map<std::string, RatingPosition>& ratings) {
    std::vector<RatingPosition> aligned;
    aligned.reserve(reg.size());
    for (const ParameterDefinition& def : reg.parameters()) {
        const auto it = ratings.find(def.mnemonic);
        if (it == ratings.end())
            throw InputError("no rating for parameter " + def.mnemonic);
        aligned.push_back(it->second);
    }
    for (const auto& [name, pos] : ratings)
        if (!reg.contains(name))
            throw InputError("rating for unknown parameter " + name);
    return evaluate_bank(bank, reg, aligned);
}

void check_bank_invariants(const NFBank& bank, const Registry& reg) {
    if (bank.size() != reg.size())
        throw InputError("bank has " + std::to_string(bank.size()) +
                         " sub-models for a registry of " + std::to_string(reg.size()));
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const NFSubModel& m = bank.models[i];
        const ParameterDefinition& def = reg.at(i);
        if (m.param_id != def.mnemonic)
            throw InputError("bank slot " + std::to_string(i) + " holds " + m.param_id +
                             ", registry has " + def.mnemonic);
        if (m.direction != def.direction)
            throw InputError("bank direction for " + m.param_id +
                             " disagrees with the registry");
        for (int r = 1; r <= 18; ++r)
            if (!(m.consequents[r - 1] > 0.0) || !std::isfinite(m.consequents[r - 1]))
                throw InputError("bank consequent " + m.param_id + "[" +
                                 std::to_string(r) + "] must be positive");
        for (int r = 1; r < 18; ++r) {
            const double a = m.consequents[r - 1];
            const double b = m.consequents[r];
            const bool ok = m.direction == Direction::Increasing ? a <= b : a >= b;
            if (!ok)
                throw InputError("bank consequents for " + m.param_id + " violate " +
                                 std::string(direction_name(m.direction)) +
                                 " direction at rating " + std::to_string(r));
        }
    }
}

std::string serialize_bank(const NFBank& bank, const Registry& reg) {
    check_bank_invariants(bank, reg);
    std::string out = "seer-bank v1\n";
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const NFSubModel& m = bank.models[i];
        out += m.param_id;
        out += ' ';
        out += site_name(reg.at(i).site);
        out += ' ';
        out += direction_name(m.direction);
        for (double c : m.consequents) {
            out += ' ';
            out += format_full(c);
        }
        out += '\n';
    }
    return out;
}

NFBank parse_bank(std::string_view content, const Registry& reg, std::string_view origin) {
    const auto lines = split_lines(content);
    bool saw_header = false;
    std::map<std::string, NFSubModel> by_name;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tokens = tokenize(lines[ln]);
        if (tokens.empty()) continue;
        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "seer-bank" || tokens[1] != "v1")
                throw ParseError(std::string(origin) + ": first record must be 'seer-bank v1'");
            saw_header = true;
            continue;
        }
        if (tokens.size() != 3 + 18)
            throw ParseError(std::string(origin) + " line " + std::to_string(ln + 1) +
                             ": expected 'mnemonic site direction c1..c18' (21 fields), found " +
                             std::to_string(tokens.size()));
        NFSubModel m;
        m.param_id = std::string(tokens[0]);
        if (!reg.contains(m.param_id))
            throw ParseError(std::string(origin) + ": unknown parameter " + m.param_id);
        const ParameterDefinition& def = reg.at(reg.index_of(m.param_id));
        if (tokens[1] != site_name(def.site))
            throw ParseError(std::string(origin) + ": site of " + m.param_id +
                             " disagrees with the registry");
        if (tokens[2] != direction_name(def.direction))
            throw ParseError(std::string(origin) + ": direction of " + m.param_id +
                             " disagrees with the registry");
        m.direction = def.direction;
        for (int r = 1; r <= 18; ++r) {
            const auto v = parse_double(tokens[2 + r]);
            if (!v)
                throw ParseError(std::string(origin) + ": consequent " + m.param_id +
                                 "[" + std::to_string(r) + "] is not a number");
            m.consequents[r - 1] = *v;
        }
        if (!by_name.emplace(m.param_id, std::move(m)).second)
            throw ParseError(std::string(origin) + ": duplicate parameter " +
                             std::string(tokens[0]));
    }
    if (!saw_header)
        throw ParseError(std::string(origin) + ": empty bank file");
    NFBank bank;
    bank.models.reserve(reg.size());
    for (const ParameterDefinition& def : reg.parameters()) {
        const auto it = by_name.find(def.mnemonic);
        if (it == by_name.end())
            throw ParseError(std::string(origin) + ": no sub-model for parameter " +
                             def.mnemonic);
        bank.models.push_back(std::move(it->second));
    }
    check_bank_invariants(bank, reg);
    return bank;
}

void save_bank(const NFBank& bank, const Registry& reg, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_bank(bank, reg));
}

NFBank load_bank(const std::filesystem::path& path, const Registry& reg) {
    return parse_bank(read_file(path), reg, path.string());
}

} // namespace seernf
