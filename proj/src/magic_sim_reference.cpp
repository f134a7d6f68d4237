// Serial, cell-at-a-time interpreter. Deliberately naive: it shares no
// storage layout or stepping logic with the word-parallel kernel and is
// used as that kernel's oracle.

#include "bitlet/magic_sim.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace bitlet {

RunResult run_reference(const NorProgram& program, const ArrayState& initial, const SimConfig& config)
{
    validate_program(program, initial.rows(), initial.cols(), config);

    const std::uint64_t rows = initial.rows();
    const std::uint32_t cols = initial.cols();
    std::vector<std::vector<std::uint8_t>> cells(rows, std::vector<std::uint8_t>(cols, 0));
    for (std::uint64_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            cells[r][c] = initial.get(r, c) ? 1 : 0;
        }
    }

    std::uint64_t cycles = 0;
    for (const auto& ins : program.instructions()) {
        ++cycles;
        if (const auto* g = std::get_if<NorGate>(&ins)) {
            for (std::uint64_t r = 0; r < rows; ++r) {
                bool any = false;
                for (unsigned k = 0; k < g->fanin; ++k) {
                    any = any || cells[r][g->srcs[k]] != 0;
                }
                cells[r][g->dest] = any ? 0 : 1;
            }
        } else if (const auto* h = std::get_if<HMove>(&ins)) {
            for (std::uint64_t r = 0; r < rows; ++r) {
                cells[r][h->dest] = cells[r][h->src];
            }
        } else {
            const auto& v = std::get<VMove>(ins);
            auto dest = static_cast<std::int64_t>(v.row) + v.row_offset;
            const auto n = static_cast<std::int64_t>(rows);
            if (dest < 0) {
                dest += n;
            } else if (dest >= n) {
                dest -= n;
            }
            for (std::uint32_t c = v.col_lo; c <= v.col_hi; ++c) {
                cells[static_cast<std::size_t>(dest)][c] = cells[v.row][c];
            }
        }
    }

    ArrayState out(rows, cols);
    for (std::uint64_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            out.set(r, c, cells[r][c] != 0);
        }
    }
    return RunResult{std::move(out), cycles};
}

} // namespace bitlet
