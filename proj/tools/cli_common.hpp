// cli_common.hpp - config schema, JSON/CSV serialization for the CLI.
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "topolab/errors.hpp"
#include "topolab/invariants.hpp"
#include "topolab/mediator.hpp"
#include "topolab/realspace.hpp"
#include "topolab/symmetry.hpp"

namespace topolab::cli {

using json = nlohmann::ordered_json;

// Raised for schema problems (unknown keys, missing fields, bad values);
// mapped to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string task;                 // invariant | classify | mediate | figure | table1
    std::string figure;               // fig1..fig6 when task == figure
    std::string model_name;
    std::map<std::string, double> model_params;
    std::optional<EmitterLayout> layout;
    int grid_m = 0;                   // 0: module default
    std::array<int, 2> n_cells{0, 0};
    std::array<BC, 2> bc{BC::periodic, BC::open};
    std::string invariant_kind;       // winding_chiral | winding_spectral | chern | chern_isv
    std::optional<cxd> invariant_base;
    std::string output = "out";
    long seed = 0;                    // reserved; echoed back
};

json complex_to_json(cxd z);
cxd complex_from_json(const json& j, const std::string& where);

Config parse_config(const json& j);
json effective_config(const Config& c);

json to_json(const InvariantResult& r);
json to_json(const ClassLabel& label);
json to_json(const GapReport& report);

// Writes header + rows; every cell already formatted.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string fmt(double v);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace topolab::cli
