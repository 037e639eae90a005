#pragma once

#include "seernf/param_registry.hpp"
#include "seernf/rating_scale.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace seernf {

// One historical project as recorded in a COCOMO-style CSV: driver ratings
// by column name, size in KSLOC, actual effort in person-months.
struct ProjectRecord {
    std::string id;
    std::vector<std::pair<std::string, std::string>> driver_ratings;
    double size_ksloc = 0.0;
    double actual_effort_pm = 0.0;
};

// One COCOMO driver mapped onto a SEER parameter with a label translation.
struct DriverMapEntry {
    std::string driver;
    std::string seer_param;
    std::map<std::string, std::string> label_map; // COCOMO label -> SEER label
};

struct MappingConfig {
    std::vector<DriverMapEntry> entries;
    std::set<std::string> ignored_drivers;
    std::string default_rating = "Nom"; // assigned to unmapped SEER parameters
    double effort_unit_factor = 12.0;   // person-months per person-year
    double default_d = 15.0;            // staffing complexity for D-less datasets
};

// A project in model terms: registry-aligned ratings, size in SLOC.
struct SeerProject {
    std::string id;
    std::vector<RatingPosition> ratings; // one per registry parameter, in order
    double size_sloc = 0.0;
    double staffing_complexity = 0.0;
    double actual_effort_pm = 0.0;
};

// Loads a delimited dataset. The header row must name `id`, `size_ksloc`
// and `actual_effort_pm` (any order, case-insensitive); every other column
// is a driver. Errors cite the row number.
std::vector<ProjectRecord> load_projects(const std::filesystem::path& path);
std::vector<ProjectRecord> parse_projects(std::string_view content,
                                          std::string_view origin = "<dataset>");

// Loads a mapping file: `default_rating`, `effort_unit_factor`, `default_d`
// options plus `map DRIVER SEER_PARAM L=Label ...` and `ignore DRIVER`
// records.
// The mapping the tool ships with: COCOMO-81 cost drivers onto the builtin
// registry. VIRT and VEXP each fan out to two SEER parameters; SCED and
// DATA have no counterpart and are ignored. Labels translate positionally
// (VL..XH onto VLo..EHi).
MappingConfig builtin_cocomo81_mapping();

// Writes a mapping in the format parse_mapping reads.
std::string serialize_mapping(const MappingConfig& cfg);
void save_mapping(const MappingConfig& cfg, const std::filesystem::path& path);

MappingConfig load_mapping(const std::filesystem::path& path);
MappingConfig parse_mapping(std::string_view content,
                            std::string_view origin = "<mapping>");

// Translates one record: mapped drivers through their label tables, every
// unmapped SEER parameter at the default rating, Se = KSLOC * 1000,
// D = default_d. Unknown drivers and missing labels raise InputError.
SeerProject map_to_seer(const ProjectRecord& rec, const MappingConfig& map,
                        const Registry& reg);

std::vector<SeerProject> map_all_to_seer(std::span<const ProjectRecord> records,
                                         const MappingConfig& map, const Registry& reg);

// The five case protocols.
enum class CaseId { C1, C2, C3, C4_1, C4_2 };

CaseId parse_case_id(std::string_view text); // "C1".."C4-2", throws InputError
std::string_view case_id_name(CaseId id);

struct CaseSplit {
    std::vector<std::size_t> train; // indices into the project list
    std::vector<std::size_t> test;
};

// Case semantics over n projects:
//   C1:   train = baseline MRE <= 0.5,  test = all
//   C2:   train = all,                  test = all
//   C3:   train = baseline MRE <= 1.5,  test = all
//   C4-1: seeded shuffle, train = first ceil(0.75 n), test = rest
//   C4-2: seeded shuffle, train = first ceil(0.5 n),  test = rest
// baseline_mre must cover all n projects for C1/C3. An empty training
// split raises CaseError.
CaseSplit make_case_split(CaseId id, std::size_t n_projects,
                          std::span<const double> baseline_mre, std::uint64_t seed);

} // namespace seernf
