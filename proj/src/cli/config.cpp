#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "platonic/cli.hpp"
#include "platonic/errors.hpp"

namespace platonic::cli {

std::filesystem::path echo_path(const std::filesystem::path& out) {
  auto p = out;
  p += ".config.toml";
  return p;
}

namespace {

std::string toml_value(const std::string& v) {
  if (v == "true" || v == "false") return v;
  char* end = nullptr;
  std::strtod(v.c_str(), &end);
  if (!v.empty() && end == v.c_str() + v.size()) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"' || ch == '\\') q += '\\';
    q += ch;
  }
  return q + '"';
}

}  // namespace

void write_config_echo(const CLI::App& app, const std::filesystem::path& out) {
  const auto path = echo_path(out);
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write config echo " + path.string());
  // Only the subcommand that ran, with every option it resolved (given or default).
  std::vector<const CLI::App*> seen;
  for (const CLI::App* sub : app.get_subcommands()) {
    // a subcommand named both in --config and on the command line is listed twice
    if (std::find(seen.begin(), seen.end(), sub) != seen.end()) continue;
    seen.push_back(sub);
    os << '[' << sub->get_name() << "]\n";
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help") continue;
      std::vector<std::string> values = opt->results();
      if (opt->count() == 0) {
        if (opt->get_default_str().empty()) continue;
        values = {opt->get_default_str()};
      }
      if (opt->get_type_size_max() == 0) {
        // flags: results hold one entry per occurrence
        values = {opt->as<bool>() ? "true" : "false"};
      }
      os << name << '=';
      if (values.size() == 1 && opt->get_items_expected_max() <= 1) {
        os << toml_value(values.front());
      } else {
        os << '[';
        for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << toml_value(values[i]);
        os << ']';
      }
      os << '\n';
    }
  }
}

std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace platonic::cli
