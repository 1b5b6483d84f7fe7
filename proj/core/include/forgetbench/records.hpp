#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "forgetbench/experiment.hpp"

namespace forgetbench {

/// Versioned JSON round-trip for run records, so `run` and `compare`
/// outputs can be re-read by `export-plots`.
std::string run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const std::string& text);

void save_run_record(const std::filesystem::path& path,
                     const RunRecord& record);
RunRecord load_run_record(const std::filesystem::path& path);

/// All *.json run records directly inside `dir`, sorted by file name.
std::vector<RunRecord> load_run_records(const std::filesystem::path& dir);

}  // namespace forgetbench
