#pragma once

// Row-parallel stateful-NOR array simulator.
//
// An ArrayState is a ROW x COL bit matrix. A NorProgram is a list of
// instructions that each take one cycle:
//
//   NOR   dest <- NOR(src...)      in every row at once (fan-in 1..4)
//   HMOVE dest <- src              column copy, every row at once
//   VMOVE row+off <- row           copy of one row's cell range
//
// Two executors are provided: run() is the blocked, OpenMP-parallel
// kernel; run_reference() is a cell-at-a-time serial interpreter kept
// as the oracle for the kernel.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bitlet {

inline constexpr unsigned kMaxNorFanin = 4;

struct NorGate {
    std::uint32_t dest = 0;
    std::array<std::uint32_t, kMaxNorFanin> srcs{};
    std::uint8_t fanin = 0;

    [[nodiscard]] std::span<const std::uint32_t> sources() const { return {srcs.data(), fanin}; }
    friend bool operator==(const NorGate&, const NorGate&) = default;
};

struct HMove {
    std::uint32_t dest = 0;
    std::uint32_t src = 0;
    friend bool operator==(const HMove&, const HMove&) = default;
};

// Copies cells [col_lo, col_hi] of `row` into row `row + row_offset`.
// A move flagged crosses_array leaves the array: its destination lies
// outside [0, ROW). Inter-array topology is not modelled, so the
// simulator delivers it to row (row + row_offset) mod ROW of the same
// array, as if every array in the system ran the same program.
struct VMove {
    std::int64_t row_offset = 0;
    std::uint32_t col_lo = 0;
    std::uint32_t col_hi = 0;
    std::uint64_t row = 0;
    bool crosses_array = false;
    friend bool operator==(const VMove&, const VMove&) = default;
};

using NorInstr = std::variant<NorGate, HMove, VMove>;

struct ColumnRange {
    std::uint32_t lo = 0;
    std::uint32_t count = 0;
    friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

class NorProgram {
public:
    NorProgram& nor(std::uint32_t dest, std::initializer_list<std::uint32_t> srcs);
    NorProgram& nor(std::uint32_t dest, std::span<const std::uint32_t> srcs);
    NorProgram& hmove(std::uint32_t dest, std::uint32_t src);
    NorProgram& vmove(std::int64_t row_offset, std::uint32_t col_lo, std::uint32_t col_hi,
                      std::uint64_t row, bool crosses_array = false);
    NorProgram& append(const NorInstr& instr);

    void declare_input(std::string name, ColumnRange range);
    void declare_output(std::string name, ColumnRange range);

    [[nodiscard]] const std::vector<NorInstr>& instructions() const noexcept { return instrs_; }
    [[nodiscard]] std::size_t size() const noexcept { return instrs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return instrs_.empty(); }

    struct NamedRange {
        std::string name;
        ColumnRange range;
    };
    [[nodiscard]] const std::vector<NamedRange>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const std::vector<NamedRange>& outputs() const noexcept { return outputs_; }
    [[nodiscard]] ColumnRange input(std::string_view name) const;
    [[nodiscard]] ColumnRange output(std::string_view name) const;

    // Largest NOR fan-in used, 0 for a move-only program.
    [[nodiscard]] unsigned max_fanin() const noexcept;
    [[nodiscard]] std::size_t nor_count() const noexcept;
    [[nodiscard]] std::size_t hmove_count() const noexcept;
    [[nodiscard]] std::size_t vmove_count() const noexcept;

private:
    std::vector<NorInstr> instrs_;
    std::vector<NamedRange> inputs_;
    std::vector<NamedRange> outputs_;
};

// Dense ROW x COL bit matrix, stored column-major in 64-bit words so a
// row-parallel instruction touches contiguous memory.
class ArrayState {
public:
    ArrayState(std::uint64_t rows, std::uint32_t cols);

    [[nodiscard]] std::uint64_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::uint32_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t words_per_column() const noexcept { return words_per_col_; }

    [[nodiscard]] bool get(std::uint64_t row, std::uint32_t col) const;
    void set(std::uint64_t row, std::uint32_t col, bool value);

    // Bits [col, col + width) of one row as an integer, LSB at `col`. width <= 64.
    [[nodiscard]] std::uint64_t read_field(std::uint64_t row, std::uint32_t col, unsigned width) const;
    void write_field(std::uint64_t row, std::uint32_t col, unsigned width, std::uint64_t value);

    [[nodiscard]] std::span<std::uint64_t> column(std::uint32_t col);
    [[nodiscard]] std::span<const std::uint64_t> column(std::uint32_t col) const;
    // Mask of valid row bits in the last word of each column.
    [[nodiscard]] std::uint64_t tail_mask() const noexcept { return tail_mask_; }

    friend bool operator==(const ArrayState&, const ArrayState&) = default;

private:
    std::uint64_t rows_;
    std::uint32_t cols_;
    std::size_t words_per_col_;
    std::uint64_t tail_mask_;
    std::vector<std::uint64_t> words_;
};

struct SimConfig {
    unsigned max_fanin = 2;
};

struct RunResult {
    ArrayState final_state;
    std::uint64_t cycles;
};

// Throws Error(InvalidProgram) describing the first offending instruction.
void validate_program(const NorProgram& program, std::uint64_t rows, std::uint32_t cols,
                      const SimConfig& config = {});

RunResult run(const NorProgram& program, ArrayState initial, const SimConfig& config = {});
RunResult run_reference(const NorProgram& program, const ArrayState& initial,
                        const SimConfig& config = {});

[[nodiscard]] inline std::uint64_t count_cycles(const NorProgram& program) noexcept
{
    return program.size();
}

// Line-oriented text form:
//   NOR d s1 [s2 s3 s4]
//   HMOVE d s
//   VMOVE off col_lo col_hi row [cross]
// Blank lines and lines starting with '#' are ignored.
std::string to_text(const NorProgram& program);
NorProgram parse_program(std::string_view text);

} // namespace bitlet
