#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace CLI {
class App;
}

namespace platonic::cli {

/// Entry point shared by the executable and the tests; returns the process
/// exit code (0 ok, 2 numeric-domain or usage error, 3 convergence failure).
int run(int argc, const char* const* argv);

/// Path of the config echo written next to an output file.
std::filesystem::path echo_path(const std::filesystem::path& out);

/// Writes the parsed options of `app` (defaults included) as TOML that can be
/// fed back through --config.
void write_config_echo(const CLI::App& app, const std::filesystem::path& out);

/// "# generated <UTC ISO time>" comment line.
std::string timestamp_line();

}  // namespace platonic::cli
