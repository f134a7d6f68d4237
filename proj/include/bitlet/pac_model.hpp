#pragma once

// Placement-and-alignment complexity (PAC): extra intra-array move cycles
// needed before a row-parallel operation can run.
//
//   PAC = HMOVE + VMOVE = k * n + (needs vertical relocation ? ROW : 0)
//
// where k is the number of element groups that each need their own
// horizontal shift. Elements sharing a shift align together, one column
// per cycle across all rows. A vertical relocation moves one element per
// cycle, so it costs one cycle per row.

#include "bitlet/magic_sim.hpp"
#include "bitlet/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bitlet {

struct MoveOverrides {
    std::uint64_t hmove_cycles = 0;
    std::uint64_t vmove_cycles = 0;
    friend bool operator==(const MoveOverrides&, const MoveOverrides&) = default;
};

class LayoutSpec {
public:
    LayoutSpec(unsigned element_width_bits, unsigned misaligned_subsets, bool needs_vertical_relocation,
               std::optional<MoveOverrides> overrides = std::nullopt);

    // Perfect layout: nothing to move.
    static LayoutSpec aligned(unsigned element_width_bits);

    [[nodiscard]] unsigned element_width_bits() const noexcept { return width_; }
    [[nodiscard]] unsigned misaligned_subsets() const noexcept { return subsets_; }
    [[nodiscard]] bool needs_vertical_relocation() const noexcept { return vertical_; }
    [[nodiscard]] const std::optional<MoveOverrides>& overrides() const noexcept { return overrides_; }

    friend bool operator==(const LayoutSpec&, const LayoutSpec&) = default;

private:
    unsigned width_;
    unsigned subsets_;
    bool vertical_;
    std::optional<MoveOverrides> overrides_;
};

std::uint64_t hmove_cycles(const LayoutSpec& layout);
std::uint64_t vmove_cycles(const LayoutSpec& layout, const PimMachine& pim);
std::uint64_t pac_of(const LayoutSpec& layout, const PimMachine& pim);

// Where the move program reads and writes. Subset s occupies columns
// [source_cols[s], source_cols[s] + n) and is aligned into
// [target_cols[s], target_cols[s] + n). Vertically, the element in row
// i + row_shift ends up in row i.
//
// With k = 0 only source_cols[0] is used: the element field is shifted
// vertically in place.
struct RelocationAssignment {
    std::vector<std::uint32_t> source_cols;
    std::vector<std::uint32_t> target_cols;
    std::uint64_t row_shift = 1;
};

// Sources packed from column 0, targets packed directly after them.
RelocationAssignment packed_assignment(const LayoutSpec& layout);

// Move-only program with count_cycles == pac_of(layout, pim): n HMOVEs per
// subset, then ROW VMOVEs in ascending row order. The last row_shift moves
// come from the next array and are flagged crosses_array.
//
// Throws ColumnOverflow / RowOverflow when the assignment does not fit the
// array, Unsupported for layouts priced by explicit overrides.
NorProgram relocation_program(const LayoutSpec& layout, const PimMachine& pim,
                              const RelocationAssignment& assignment);
NorProgram relocation_program(const LayoutSpec& layout, const PimMachine& pim);

} // namespace bitlet
