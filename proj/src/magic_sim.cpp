#include "bitlet/magic_sim.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include <omp.h>

namespace bitlet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(std::size_t index, const std::string& why)
{
    std::ostringstream os;
    os << "instruction " << index << ": " << why;
    throw Error(ErrorCode::InvalidProgram, os.str());
}

// Below this many words per column the thread start-up costs more than it saves.
constexpr std::size_t kParallelWordThreshold = 64;

} // namespace

// --- NorProgram --------------------------------------------------------------

NorProgram& NorProgram::nor(std::uint32_t dest, std::initializer_list<std::uint32_t> srcs)
{
    return nor(dest, std::span<const std::uint32_t>(srcs.begin(), srcs.size()));
}

NorProgram& NorProgram::nor(std::uint32_t dest, std::span<const std::uint32_t> srcs)
{
    if (srcs.empty() || srcs.size() > kMaxNorFanin) {
        throw Error(ErrorCode::InvalidProgram, "NOR needs 1 to 4 sources");
    }
    NorGate g;
    g.dest = dest;
    g.fanin = static_cast<std::uint8_t>(srcs.size());
    std::copy(srcs.begin(), srcs.end(), g.srcs.begin());
    instrs_.emplace_back(g);
    return *this;
}

NorProgram& NorProgram::hmove(std::uint32_t dest, std::uint32_t src)
{
    instrs_.emplace_back(HMove{dest, src});
    return *this;
}

NorProgram& NorProgram::vmove(std::int64_t row_offset, std::uint32_t col_lo, std::uint32_t col_hi,
                              std::uint64_t row, bool crosses_array)
{
    instrs_.emplace_back(VMove{row_offset, col_lo, col_hi, row, crosses_array});
    return *this;
}

NorProgram& NorProgram::append(const NorInstr& instr)
{
    instrs_.push_back(instr);
    return *this;
}

void NorProgram::declare_input(std::string name, ColumnRange range)
{
    inputs_.push_back({std::move(name), range});
}

void NorProgram::declare_output(std::string name, ColumnRange range)
{
    outputs_.push_back({std::move(name), range});
}

namespace {

ColumnRange find_range(const std::vector<NorProgram::NamedRange>& ranges, std::string_view name)
{
    for (const auto& r : ranges) {
        if (r.name == name) {
            return r.range;
        }
    }
    throw Error(ErrorCode::InvalidParameter, "no column range named '" + std::string(name) + "'");
}

} // namespace

ColumnRange NorProgram::input(std::string_view name) const { return find_range(inputs_, name); }
ColumnRange NorProgram::output(std::string_view name) const { return find_range(outputs_, name); }

unsigned NorProgram::max_fanin() const noexcept
{
    unsigned m = 0;
    for (const auto& ins : instrs_) {
        if (const auto* g = std::get_if<NorGate>(&ins)) {
            m = std::max<unsigned>(m, g->fanin);
        }
    }
    return m;
}

std::size_t NorProgram::nor_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(
        instrs_.begin(), instrs_.end(), [](const NorInstr& i) { return std::holds_alternative<NorGate>(i); }));
}

std::size_t NorProgram::hmove_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(
        instrs_.begin(), instrs_.end(), [](const NorInstr& i) { return std::holds_alternative<HMove>(i); }));
}

std::size_t NorProgram::vmove_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(
        instrs_.begin(), instrs_.end(), [](const NorInstr& i) { return std::holds_alternative<VMove>(i); }));
}

// --- ArrayState --------------------------------------------------------------

ArrayState::ArrayState(std::uint64_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), words_per_col_((rows + 63) / 64),
      tail_mask_(rows % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (rows % 64)) - 1)
{
    if (rows == 0 || cols == 0) {
        throw Error(ErrorCode::InvalidParameter, "ArrayState needs at least one row and one column");
    }
    words_.assign(words_per_col_ * cols_, 0);
}

bool ArrayState::get(std::uint64_t row, std::uint32_t col) const
{
    assert(row < rows_ && col < cols_);
    return (words_[col * words_per_col_ + row / 64] >> (row % 64)) & 1U;
}

void ArrayState::set(std::uint64_t row, std::uint32_t col, bool value)
{
    assert(row < rows_ && col < cols_);
    auto& w = words_[col * words_per_col_ + row / 64];
    const std::uint64_t bit = std::uint64_t{1} << (row % 64);
    w = value ? (w | bit) : (w & ~bit);
}

std::uint64_t ArrayState::read_field(std::uint64_t row, std::uint32_t col, unsigned width) const
{
    if (width > 64 || col + width > cols_ || row >= rows_) {
        throw Error(ErrorCode::InvalidParameter, "read_field out of range");
    }
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(get(row, col + i)) << i;
    }
    return v;
}

void ArrayState::write_field(std::uint64_t row, std::uint32_t col, unsigned width, std::uint64_t value)
{
    if (width > 64 || col + width > cols_ || row >= rows_) {
        throw Error(ErrorCode::InvalidParameter, "write_field out of range");
    }
    for (unsigned i = 0; i < width; ++i) {
        set(row, col + i, (value >> i) & 1U);
    }
}

std::span<std::uint64_t> ArrayState::column(std::uint32_t col)
{
    return {words_.data() + col * words_per_col_, words_per_col_};
}

std::span<const std::uint64_t> ArrayState::column(std::uint32_t col) const
{
    return {words_.data() + col * words_per_col_, words_per_col_};
}

// --- validation --------------------------------------------------------------

void validate_program(const NorProgram& program, std::uint64_t rows, std::uint32_t cols,
                      const SimConfig& config)
{
    if (config.max_fanin < 1 || config.max_fanin > kMaxNorFanin) {
        throw Error(ErrorCode::InvalidParameter, "SimConfig.max_fanin must be in 1..4");
    }
    const auto& instrs = program.instructions();
    for (std::size_t i = 0; i < instrs.size(); ++i) {
        std::visit(
            overloaded{
                [&](const NorGate& g) {
                    if (g.fanin < 1 || g.fanin > config.max_fanin) {
                        invalid(i, "NOR fan-in " + std::to_string(g.fanin) + " exceeds limit " +
                                       std::to_string(config.max_fanin));
                    }
                    if (g.dest >= cols) {
                        invalid(i, "NOR destination column out of range");
                    }
                    for (auto s : g.sources()) {
                        if (s >= cols) {
                            invalid(i, "NOR source column out of range");
                        }
                        if (s == g.dest) {
                            invalid(i, "NOR destination is also a source");
                        }
                    }
                },
                [&](const HMove& m) {
                    if (m.dest >= cols || m.src >= cols) {
                        invalid(i, "HMOVE column out of range");
                    }
                    if (m.dest == m.src) {
                        invalid(i, "HMOVE destination equals source");
                    }
                },
                [&](const VMove& m) {
                    if (m.col_lo > m.col_hi || m.col_hi >= cols) {
                        invalid(i, "VMOVE column range invalid");
                    }
                    if (m.row >= rows) {
                        invalid(i, "VMOVE source row out of range");
                    }
                    if (m.row_offset == 0) {
                        invalid(i, "VMOVE offset must be non-zero");
                    }
                    const auto srows = static_cast<std::int64_t>(rows);
                    if (m.row_offset >= srows || m.row_offset <= -srows) {
                        invalid(i, "VMOVE offset exceeds array height");
                    }
                    const std::int64_t dest = static_cast<std::int64_t>(m.row) + m.row_offset;
                    const bool inside = dest >= 0 && dest < srows;
                    if (inside == m.crosses_array) {
                        invalid(i, m.crosses_array ? "VMOVE flagged cross-array stays inside the array"
                                                   : "VMOVE destination row out of range");
                    }
                },
            },
            instrs[i]);
    }
}

namespace {

std::uint64_t vmove_destination(const VMove& m, std::uint64_t rows)
{
    const auto srows = static_cast<std::int64_t>(rows);
    const std::int64_t dest = static_cast<std::int64_t>(m.row) + m.row_offset;
    return static_cast<std::uint64_t>(((dest % srows) + srows) % srows);
}

// --- blocked parallel kernel ------------------------------------------------

// Applies instrs[first, last) -- all row-local -- to every word of the array.
// Each 64-row word block runs the whole segment before the next block is
// touched; blocks are independent, so they are distributed over threads.
void run_row_local_segment(std::span<const NorInstr> segment, ArrayState& state)
{
    const std::size_t wpc = state.words_per_column();
    const std::size_t last_word = wpc - 1;
    const std::uint64_t tail = state.tail_mask();
    std::uint64_t* base = state.column(0).data();

    const auto nwords = static_cast<std::int64_t>(wpc);
#pragma omp parallel for schedule(static) if (wpc >= kParallelWordThreshold)
    for (std::int64_t sw = 0; sw < nwords; ++sw) {
        const auto w = static_cast<std::size_t>(sw);
        const std::uint64_t mask = w == last_word ? tail : ~std::uint64_t{0};
        for (const auto& ins : segment) {
            if (const auto* g = std::get_if<NorGate>(&ins)) {
                std::uint64_t acc = 0;
                for (unsigned k = 0; k < g->fanin; ++k) {
                    acc |= base[g->srcs[k] * wpc + w];
                }
                base[g->dest * wpc + w] = ~acc & mask;
            } else {
                const auto& m = std::get<HMove>(ins);
                base[m.dest * wpc + w] = base[m.src * wpc + w];
            }
        }
    }
}

void apply_vmove(const VMove& m, ArrayState& state)
{
    const std::uint64_t dest = vmove_destination(m, state.rows());
    for (std::uint32_t c = m.col_lo; c <= m.col_hi; ++c) {
        state.set(dest, c, state.get(m.row, c));
    }
}

} // namespace

RunResult run(const NorProgram& program, ArrayState initial, const SimConfig& config)
{
    validate_program(program, initial.rows(), initial.cols(), config);

    const auto& instrs = program.instructions();
    std::size_t i = 0;
    while (i < instrs.size()) {
        if (const auto* vm = std::get_if<VMove>(&instrs[i])) {
            apply_vmove(*vm, initial);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < instrs.size() && !std::holds_alternative<VMove>(instrs[j])) {
            ++j;
        }
        run_row_local_segment(std::span<const NorInstr>(instrs).subspan(i, j - i), initial);
        i = j;
    }
    return RunResult{std::move(initial), count_cycles(program)};
}

} // namespace bitlet
