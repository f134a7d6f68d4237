#pragma once

// Cross-checks between the closed-form catalog / PAC formulas and programs
// executed on the simulator.

#include "bitlet/op_catalog.hpp"
#include "bitlet/pac_model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bitlet {

using CatalogFn = std::function<std::uint64_t(const OpSpec&)>;

struct ValidationOptions {
    unsigned max_width = 32;
    // Widths up to this are checked on every input combination.
    unsigned exhaustive_width = 4;
    unsigned random_vectors = 1000;
    std::uint64_t seed = 0x5eed'b17e;
};

struct OperationCheck {
    OpSpec spec;
    std::uint64_t simulated_cycles = 0;
    std::optional<std::uint64_t> catalog_cycles;
    bool cycles_match = false;
    // MPY counts are reported but not required to match.
    bool cycles_informational = false;
    bool function_ok = false;
    std::uint64_t vectors = 0;
    std::string failure;
};

// Generates the microprogram, runs it on exhaustive (n <= exhaustive_width)
// or random row inputs and compares every row against integer arithmetic.
OperationCheck check_operation(const OpSpec& spec, const CatalogFn& catalog, const ValidationOptions& opts);

struct RelocationCheck {
    std::uint64_t simulated_cycles = 0;
    std::uint64_t formula_cycles = 0;
    bool cells_ok = false;
    std::string failure;
};

// Runs relocation_program on a random array and verifies every cell: target
// fields hold the relocated source values, all other columns are untouched.
RelocationCheck check_relocation(const LayoutSpec& layout, const PimMachine& pim, std::uint64_t seed);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results);

// One result per (operation, property) over widths 1..max_width.
std::vector<CheckResult> validate_catalog(const CatalogFn& catalog, const ValidationOptions& opts = {});
std::vector<CheckResult> validate_catalog(const ValidationOptions& opts = {});

// Formula / program agreement over k <= 4, n <= max_width on a 64-row
// array, plus the 16-bit shifted-operand example on a 1024-row array.
std::vector<CheckResult> validate_pac(const ValidationOptions& opts = {});

} // namespace bitlet
