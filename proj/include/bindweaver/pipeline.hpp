#pragma once

#include "bindweaver/concept_graph.hpp"
#include "bindweaver/config.hpp"
#include "bindweaver/surface.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bindweaver {

inline constexpr const char* data_dir_env = "BINDWEAVER_DATA";

enum ExitCode : int { exit_ok = 0, exit_io_error = 1, exit_invalid = 2 };

struct DataBundle {
    ConceptGraph graph;
    BindingTables tables;
};

// concepts.json, support/*.json and minkowski_catalog.json.
DataBundle load_data(const std::filesystem::path& data_dir);

// Flag value, then the environment variable, then the data directory the
// build was configured with.
std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag);

struct GeneratedOutputs {
    std::string library_name;
    std::string plan_text;
    std::vector<std::pair<std::string, std::string>> stub_files;  // (file name, contents)
};

GeneratedOutputs generate_outputs(const BuildConfig& config, const DataBundle& data);

// Writes everything into a staging directory next to `out_dir` and moves the
// files into place only after every write succeeded.
void write_outputs(const GeneratedOutputs& outputs, const std::filesystem::path& out_dir, bool write_plan,
                   bool write_stubs);

// Entry point of the command line tool; args exclude the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bindweaver
