// tasks.hpp - CLI task entry points. Each fills recipe defaults into the
// config (so the echoed metadata reproduces the run exactly), writes its
// artifacts under outdir, and returns the results block.
#pragma once

#include <filesystem>

#include "cli_common.hpp"

namespace topolab::cli {

json run_invariant(Config& c);
json run_classify(Config& c);
json run_mediate(Config& c, const std::filesystem::path& outdir);
json run_table1(Config& c, const std::filesystem::path& outdir);
json run_figure(Config& c, const std::filesystem::path& outdir);

json list_models();

}  // namespace topolab::cli
