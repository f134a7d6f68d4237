#pragma once

// JSON machine/workload configuration for the bitlet CLI.
//
// {
//   "pim": {"rows": 1024, "cols": 1024, "mats": 1024,
//           "cycle_time_ns": 10, "energy_per_cycle_pj": 0.1},
//   "cpu": {"bandwidth_gbps": 4096, "energy_per_bit_pj": 15},
//   "power": {"tdp_watts": 20},
//   "workloads": [
//     {"name": "add16", "op": "ADD", "width_bits": 16, "dio_bits": 48,
//      "layout": {"misaligned_subsets": 1, "needs_vertical_relocation": true}}
//   ]
// }
//
// Every section and field is optional; omitted machine fields take the
// defaults shown. bandwidth_gbps is an integer and 1 Tbps = 1024 Gbps.
// A workload's dio_bits defaults to 3 * width_bits (two inputs, one
// output) and its layout to a perfectly aligned one. Unknown keys are
// rejected.

#include "bitlet/analysis.hpp"
#include "bitlet/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bitlet::cli {

struct Config {
    PimMachine pim = PimMachine::defaults();
    CpuMachine cpu = CpuMachine::defaults();
    std::optional<PowerBudget> power;
    std::vector<Workload> workloads;
};

// Errors are bitlet::Error(ParseError) with a "<source>:<line>: " prefix.
Config parse_config(std::string_view text, const std::string& source_name = "<config>");
Config load_config(const std::filesystem::path& path);

// 1-based line of the value addressed by a JSON pointer such as
// "/workloads/1/width_bits"; the closest existing ancestor when the path
// does not resolve. Exposed for tests.
std::size_t line_of_pointer(std::string_view text, std::string_view pointer);

} // namespace bitlet::cli
