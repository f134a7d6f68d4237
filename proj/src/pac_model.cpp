#include "bitlet/pac_model.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <string>

namespace bitlet {

LayoutSpec::LayoutSpec(unsigned element_width_bits, unsigned misaligned_subsets,
                       bool needs_vertical_relocation, std::optional<MoveOverrides> overrides)
    : width_(element_width_bits), subsets_(misaligned_subsets), vertical_(needs_vertical_relocation),
      overrides_(overrides)
{
    if (element_width_bits < 1) {
        throw Error(ErrorCode::InvalidParameter, "LayoutSpec: element_width_bits must be >= 1");
    }
}

LayoutSpec LayoutSpec::aligned(unsigned element_width_bits)
{
    return LayoutSpec(element_width_bits, 0, false);
}

std::uint64_t hmove_cycles(const LayoutSpec& layout)
{
    if (layout.overrides()) {
        return layout.overrides()->hmove_cycles;
    }
    return static_cast<std::uint64_t>(layout.misaligned_subsets()) * layout.element_width_bits();
}

std::uint64_t vmove_cycles(const LayoutSpec& layout, const PimMachine& pim)
{
    if (layout.overrides()) {
        return layout.overrides()->vmove_cycles;
    }
    return layout.needs_vertical_relocation() ? pim.rows() : 0;
}

std::uint64_t pac_of(const LayoutSpec& layout, const PimMachine& pim)
{
    return hmove_cycles(layout) + vmove_cycles(layout, pim);
}

RelocationAssignment packed_assignment(const LayoutSpec& layout)
{
    const unsigned n = layout.element_width_bits();
    const unsigned k = layout.misaligned_subsets();
    RelocationAssignment a;
    for (unsigned s = 0; s < std::max(k, 1U); ++s) {
        a.source_cols.push_back(s * n);
    }
    for (unsigned s = 0; s < k; ++s) {
        a.target_cols.push_back((k + s) * n);
    }
    return a;
}

NorProgram relocation_program(const LayoutSpec& layout, const PimMachine& pim,
                              const RelocationAssignment& assignment)
{
    if (layout.overrides()) {
        throw Error(ErrorCode::Unsupported, "relocation_program: override-priced layouts have no move program");
    }
    const unsigned n = layout.element_width_bits();
    const unsigned k = layout.misaligned_subsets();
    if (assignment.source_cols.size() != std::max(k, 1U) || assignment.target_cols.size() != k) {
        throw Error(ErrorCode::InvalidParameter,
                    "relocation_program: assignment needs max(k,1) source and k target fields");
    }
    const auto fits = [&](std::uint32_t lo) { return static_cast<std::uint64_t>(lo) + n <= pim.cols(); };
    for (auto c : assignment.source_cols) {
        if (!fits(c)) {
            throw Error(ErrorCode::ColumnOverflow, "relocation_program: source field exceeds array width");
        }
    }
    for (auto c : assignment.target_cols) {
        if (!fits(c)) {
            throw Error(ErrorCode::ColumnOverflow, "relocation_program: target field exceeds array width");
        }
    }

    NorProgram p;
    for (unsigned s = 0; s < k; ++s) {
        p.declare_input("subset" + std::to_string(s), {assignment.source_cols[s], n});
        p.declare_output("subset" + std::to_string(s), {assignment.target_cols[s], n});
        for (unsigned bit = 0; bit < n; ++bit) {
            p.hmove(assignment.target_cols[s] + bit, assignment.source_cols[s] + bit);
        }
    }

    if (layout.needs_vertical_relocation()) {
        const std::uint64_t rows = pim.rows();
        const std::uint64_t shift = assignment.row_shift;
        if (shift == 0 || shift >= rows) {
            throw Error(ErrorCode::RowOverflow, "relocation_program: row_shift must be in 1..ROW-1, ROW = " +
                                                    std::to_string(rows));
        }
        std::uint32_t lo = 0;
        std::uint32_t hi = 0;
        if (k == 0) {
            lo = assignment.source_cols[0];
            hi = lo + n - 1;
            p.declare_input("element", {lo, n});
            p.declare_output("element", {lo, n});
        } else {
            const auto [mn, mx] = std::minmax_element(assignment.target_cols.begin(), assignment.target_cols.end());
            lo = *mn;
            hi = *mx + n - 1;
        }
        const auto offset = -static_cast<std::int64_t>(shift);
        for (std::uint64_t i = 0; i < rows; ++i) {
            const std::uint64_t src = i + shift;
            if (src < rows) {
                p.vmove(offset, lo, hi, src);
            } else {
                p.vmove(offset, lo, hi, src - rows, true);
            }
        }
    }
    return p;
}

NorProgram relocation_program(const LayoutSpec& layout, const PimMachine& pim)
{
    return relocation_program(layout, pim, packed_assignment(layout));
}

} // namespace bitlet
