#include "seernf/dataset.hpp"

#include "seernf/error.hpp"
#include "seernf/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <unordered_set>

namespace seernf {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

// Deterministic Fisher-Yates; avoids std::shuffle so the permutation does
// not depend on the standard library implementation.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 gen(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen() % i);
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

CaseSplit threshold_split(std::size_t n, std::span<const double> mre, double cap,
                          std::string_view case_name) {
    if (mre.size() != n)
        throw InputError("case " + std::string(case_name) + " needs " +
                         std::to_string(n) + " baseline MRE values, got " +
                         std::to_string(mre.size()));
    CaseSplit split;
    for (std::size_t i = 0; i < n; ++i)
        if (mre[i] <= cap) split.train.push_back(i);
    split.test = all_indices(n);
    return split;
}

CaseSplit fraction_split(std::size_t n, double fraction, std::uint64_t seed) {
    const auto order = shuffled_indices(n, seed);
    const auto cut = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    CaseSplit split;
    split.train.assign(order.begin(), order.begin() + std::min(cut, n));
    split.test.assign(order.begin() + std::min(cut, n), order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

} // namespace

std::vector<ProjectRecord> parse_projects(std::string_view content, std::string_view origin) {
    const auto lines = split_lines(content);
    std::size_t header_line = 0;
    while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
    if (header_line >= lines.size())
        throw ParseError(std::string(origin) + ": empty dataset");

    const auto header = split_csv(lines[header_line]);
    int id_col = -1, size_col = -1, effort_col = -1;
    std::vector<std::pair<int, std::string>> driver_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = upper(header[c]);
        if (name == "ID") id_col = static_cast<int>(c);
        else if (name == "SIZE_KSLOC") size_col = static_cast<int>(c);
        else if (name == "ACTUAL_EFFORT_PM") effort_col = static_cast<int>(c);
        else if (!name.empty()) driver_cols.emplace_back(static_cast<int>(c), name);
    }
    if (id_col < 0 || size_col < 0 || effort_col < 0)
        throw ParseError(std::string(origin) +
                         ": header must name id, size_ksloc and actual_effort_pm");

    std::vector<ProjectRecord> records;
    std::unordered_set<std::string> ids;
    for (std::size_t ln = header_line + 1; ln < lines.size(); ++ln) {
        if (trim(lines[ln]).empty()) continue;
        const std::size_t row = ln + 1; // 1-based, as in an editor
        const auto cells = split_csv(lines[ln]);
        if (cells.size() != header.size())
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": expected " + std::to_string(header.size()) +
                             " cells, found " + std::to_string(cells.size()));
        ProjectRecord rec;
        rec.id = cells[static_cast<std::size_t>(id_col)];
        if (rec.id.empty())
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": missing id");
        if (!ids.insert(rec.id).second)
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": duplicate id '" + rec.id + "'");
        const auto size = parse_double(cells[static_cast<std::size_t>(size_col)]);
        if (!size)
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": size_ksloc is missing or not a number");
        const auto effort = parse_double(cells[static_cast<std::size_t>(effort_col)]);
        if (!effort)
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": actual_effort_pm is missing or not a number");
        if (!(*size > 0.0))
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": size_ksloc must be positive");
        if (!(*effort > 0.0))
            throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                             ": actual_effort_pm must be positive");
        rec.size_ksloc = *size;
        rec.actual_effort_pm = *effort;
        for (const auto& [col, driver] : driver_cols) {
            const std::string& cell = cells[static_cast<std::size_t>(col)];
            if (cell.empty())
                throw ParseError(std::string(origin) + " row " + std::to_string(row) +
                                 ": missing rating for driver " + driver);
            rec.driver_ratings.emplace_back(driver, cell);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ProjectRecord> load_projects(const std::filesystem::path& path) {
    return parse_projects(read_file(path), path.string());
}

MappingConfig parse_mapping(std::string_view content, std::string_view origin) {
    MappingConfig cfg;
    std::unordered_set<std::string> targeted;
    const auto lines = split_lines(content);
    bool saw_header = false;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tokens = tokenize(lines[ln]);
        if (tokens.empty()) continue;
        const std::string where = std::string(origin) + " line " + std::to_string(ln + 1);
        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "seer-mapping" || tokens[1] != "v1")
                throw ParseError(std::string(origin) +
                                 ": first record must be 'seer-mapping v1'");
            saw_header = true;
            continue;
        }
        if (tokens[0] == "default_rating" && tokens.size() == 2) {
            parse_rating(tokens[1]); // label must be valid
            cfg.default_rating = std::string(tokens[1]);
        } else if (tokens[0] == "effort_unit_factor" && tokens.size() == 2) {
            const auto v = parse_double(tokens[1]);
            if (!v || !(*v > 0.0))
                throw ParseError(where + ": effort_unit_factor must be positive");
            cfg.effort_unit_factor = *v;
        } else if (tokens[0] == "default_d" && tokens.size() == 2) {
            const auto v = parse_double(tokens[1]);
            if (!v || !(*v > 0.0))
                throw ParseError(where + ": default_d must be positive");
            cfg.default_d = *v;
        } else if (tokens[0] == "ignore" && tokens.size() == 2) {
            cfg.ignored_drivers.insert(upper(tokens[1]));
        } else if (tokens[0] == "map" && tokens.size() >= 4) {
            DriverMapEntry entry;
            entry.driver = upper(tokens[1]);
            entry.seer_param = std::string(tokens[2]);
            if (!targeted.insert(entry.seer_param).second)
                throw ParseError(where + ": SEER parameter " + entry.seer_param +
                                 " targeted by more than one map record");
            for (std::size_t t = 3; t < tokens.size(); ++t) {
                const auto eq = tokens[t].find('=');
                if (eq == std::string_view::npos || eq == 0 || eq + 1 >= tokens[t].size())
                    throw ParseError(where + ": expected LABEL=SeerLabel, found '" +
                                     std::string(tokens[t]) + "'");
                const std::string from = upper(tokens[t].substr(0, eq));
                const std::string to(tokens[t].substr(eq + 1));
                parse_rating(to); // must be a valid SEER label
                if (!entry.label_map.emplace(from, to).second)
                    throw ParseError(where + ": duplicate label " + from);
            }
            cfg.entries.push_back(std::move(entry));
        } else {
            throw ParseError(where + ": unrecognized record '" + std::string(tokens[0]) + "'");
        }
    }
    if (!saw_header)
        throw ParseError(std::string(origin) + ": empty mapping file");
    return cfg;
}

MappingConfig load_mapping(const std::filesystem::path& path) {
    return parse_mapping(read_file(path), path.string());
}

MappingConfig builtin_cocomo81_mapping() {
    MappingConfig cfg;
    auto add = [&](const char* driver, const char* param) {
        DriverMapEntry e;
        e.driver = driver;
        e.seer_param = param;
        e.label_map = {{"VL", "VLo"}, {"L", "Low"},   {"N", "Nom"},
                       {"H", "Hi"},   {"VH", "VHi"}, {"XH", "EHi"}};
        cfg.entries.push_back(std::move(e));
    };
    add("RELY", "QUAL");
    add("CPLX", "TSYS");
    add("TIME", "TIMC");
    add("STOR", "MEMC");
    add("VIRT", "DSVL");
    add("VIRT", "TSVL");
    add("TURN", "TURN");
    add("ACAP", "ACAP");
    add("AEXP", "AEXP");
    add("PCAP", "PCAP");
    add("VEXP", "DEXP");
    add("VEXP", "TEXP");
    add("LEXP", "LEXP");
    add("MODP", "MODP");
    add("TOOL", "TOOL");
    cfg.ignored_drivers = {"SCED", "DATA"};
    return cfg;
}

std::string serialize_mapping(const MappingConfig& cfg) {
    std::string out = "seer-mapping v1\n";
    out += "default_rating " + cfg.default_rating + "\n";
    out += "effort_unit_factor " + format_full(cfg.effort_unit_factor) + "\n";
    out += "default_d " + format_full(cfg.default_d) + "\n";
    for (const DriverMapEntry& e : cfg.entries) {
        out += "map " + e.driver + " " + e.seer_param;
        for (const auto& [from, to] : e.label_map) out += " " + from + "=" + to;
        out += "\n";
    }
    for (const std::string& d : cfg.ignored_drivers) out += "ignore " + d + "\n";
    return out;
}

void save_mapping(const MappingConfig& cfg, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_mapping(cfg));
}

SeerProject map_to_seer(const ProjectRecord& rec, const MappingConfig& map,
                        const Registry& reg) {
    const RatingPosition fallback = parse_rating(map.default_rating);
    SeerProject out;
    out.id = rec.id;
    out.size_sloc = rec.size_ksloc * 1000.0;
    out.staffing_complexity = map.default_d;
    out.actual_effort_pm = rec.actual_effort_pm;
    out.ratings.assign(reg.size(), fallback);

    for (const auto& [driver, label] : rec.driver_ratings) {
        if (map.ignored_drivers.count(driver)) continue;
        const DriverMapEntry* entry = nullptr;
        std::size_t n_targets = 0;
        for (const DriverMapEntry& e : map.entries)
            if (e.driver == driver) {
                entry = &e;
                ++n_targets;
            }
        if (n_targets == 0)
            throw InputError("project " + rec.id + ": driver " + driver +
                             " is not mapped (and not ignored)");
        // A driver may fan out to several SEER parameters.
        for (const DriverMapEntry& e : map.entries) {
            if (e.driver != driver) continue;
            const auto it = e.label_map.find(upper(label));
            if (it == e.label_map.end())
                throw InputError("project " + rec.id + ": driver " + driver +
                                 " has no translation for label '" + label + "'");
            out.ratings[reg.index_of(e.seer_param)] = parse_rating(it->second);
        }
        (void)entry;
    }
    return out;
}

std::vector<SeerProject> map_all_to_seer(std::span<const ProjectRecord> records,
                                         const MappingConfig& map, const Registry& reg) {
    for (const DriverMapEntry& e : map.entries)
        if (!reg.contains(e.seer_param))
            throw InputError("mapping targets unknown SEER parameter " + e.seer_param);
    std::vector<SeerProject> out;
    out.reserve(records.size());
    for (const ProjectRecord& rec : records) out.push_back(map_to_seer(rec, map, reg));
    return out;
}

CaseId parse_case_id(std::string_view text) {
    const std::string t = upper(text);
    if (t == "C1") return CaseId::C1;
    if (t == "C2") return CaseId::C2;
    if (t == "C3") return CaseId::C3;
    if (t == "C4-1") return CaseId::C4_1;
    if (t == "C4-2") return CaseId::C4_2;
    throw InputError("unknown case id '" + std::string(text) +
                     "' (valid: C1, C2, C3, C4-1, C4-2)");
}

std::string_view case_id_name(CaseId id) {
    switch (id) {
        case CaseId::C1: return "C1";
        case CaseId::C2: return "C2";
        case CaseId::C3: return "C3";
        case CaseId::C4_1: return "C4-1";
        case CaseId::C4_2: return "C4-2";
    }
    return "?";
}

CaseSplit make_case_split(CaseId id, std::size_t n_projects,
                          std::span<const double> baseline_mre, std::uint64_t seed) {
    if (n_projects == 0)
        throw InputError("cannot split an empty project list");
    CaseSplit split;
    switch (id) {
        case CaseId::C1:
            split = threshold_split(n_projects, baseline_mre, 0.5, "C1");
            break;
        case CaseId::C2:
            split.train = all_indices(n_projects);
            split.test = all_indices(n_projects);
            break;
        case CaseId::C3:
            split = threshold_split(n_projects, baseline_mre, 1.5, "C3");
            break;
        case CaseId::C4_1:
            split = fraction_split(n_projects, 0.75, seed);
            break;
        case CaseId::C4_2:
            split = fraction_split(n_projects, 0.5, seed);
            break;
    }
    if (split.train.empty())
        throw CaseError("case " + std::string(case_id_name(id)) +
                        " produced an empty training set");
    return split;
}

} // namespace seernf
