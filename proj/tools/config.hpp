#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twotemp/solver.hpp"
#include "twotemp/sweep.hpp"

namespace twotemp::cli {

/// Every problem found in a config file, reported together.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct OutputOptions {
  std::string path;  // default destination when --out is not given
  std::size_t stride = 10;
  std::string format = "csv";
};

struct Config {
  std::optional<Scenario> scenario;  // present when the file describes a run
  std::optional<SweepSpec> sweep;    // present when the file has a [sweep] section
  OutputOptions output;
};

/// Parses the sectioned key = value dialect described in README.md.
/// Throws ConfigError.
Config parse_config(std::string_view text);

/// Reads and parses a file. Throws ConfigError, including for unreadable files.
Config load_config(const std::filesystem::path& path);

/// "k:amplitude:phase, ..." into Fourier modes. Throws std::invalid_argument.
std::vector<FourierMode> parse_modes(std::string_view text);

}  // namespace twotemp::cli
