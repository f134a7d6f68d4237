#pragma once

#include "bitlet/validation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace bitlet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitIoError = 3;

enum class Format { Text, Csv, Json };

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<Format> format;
};

int cmd_eval(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_crossover(const CommonOptions& opts, std::optional<double> dio, std::optional<std::uint64_t> pac,
                  std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, const std::string& param, const std::string& grid, std::ostream& out,
              std::ostream& err);
int cmd_power(const CommonOptions& opts, std::optional<double> tdp, std::ostream& out, std::ostream& err);
int cmd_reproduce(const CommonOptions& opts, const std::string& figure, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& scope, const CatalogFn& catalog, const ValidationOptions& vopts,
                 std::ostream& out, std::ostream& err);
int cmd_validate_program(const CommonOptions& opts, const std::string& program_path, unsigned max_fanin,
                         std::ostream& out, std::ostream& err);

// Full command-line dispatch; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bitlet::cli
