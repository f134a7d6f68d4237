#pragma once

// Operation complexity (OC, in cycles) of bit-serial PIM operations, and
// generators for the NOR microprograms that realise them.

#include "bitlet/magic_sim.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bitlet {

enum class OpKind { Not, Or, And, Xor, Add, AddFanin4, Mpy, MpyLowPrec, Custom };

inline constexpr unsigned kMaxWidthBits = 1024;

std::string_view to_string(OpKind kind);
// Accepts the upper-case names used by to_string, case-insensitively.
std::optional<OpKind> parse_op_kind(std::string_view name);

class OpSpec {
public:
    OpSpec(OpKind kind, unsigned width_bits);
    static OpSpec custom(std::uint64_t oc_cycles, unsigned width_bits = 1);

    [[nodiscard]] OpKind kind() const noexcept { return kind_; }
    [[nodiscard]] unsigned width_bits() const noexcept { return width_bits_; }
    [[nodiscard]] std::uint64_t custom_cycles() const noexcept { return custom_cycles_; }

    friend bool operator==(const OpSpec&, const OpSpec&) = default;

private:
    OpSpec(OpKind kind, unsigned width_bits, std::uint64_t custom_cycles);

    OpKind kind_;
    unsigned width_bits_;
    std::uint64_t custom_cycles_ = 0;
};

// NOT n, OR 2n, AND 3n, XOR 5n, ADD 9n, ADD_FANIN4 7n, MPY 13n^2 - 14n,
// MPY_LOWPREC 1544 at n = 16 only, CUSTOM its payload.
// Throws UnsupportedWidth for MPY_LOWPREC at n != 16 and for MPY at n = 1,
// where the closed form is negative.
std::uint64_t oc_of(const OpSpec& spec);

// Column placement for a generated microprogram. Operand fields are
// little-endian (bit i of an operand lives at column base + i).
//
//   a          n columns
//   b          n columns (binary ops)
//   carry_in   1 column  (ADD, ADD_FANIN4)
//   out        n columns; n + 1 for ADD kinds (carry-out last); 2n for MPY
//   scratch    scratch_columns(spec) columns
struct OperandColumns {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t carry_in = 0;
    std::uint32_t out = 0;
    std::uint32_t scratch = 0;
};

std::uint32_t output_columns(const OpSpec& spec);
std::uint32_t scratch_columns(const OpSpec& spec);
bool has_second_operand(OpKind kind);
bool has_carry_in(OpKind kind);

// Contiguous placement starting at column 0, in the field order above.
OperandColumns packed_columns(const OpSpec& spec);
std::uint32_t columns_required(const OpSpec& spec);

// NOR fan-in the generated program needs from the simulator.
unsigned required_fanin(OpKind kind);

// Throws Unsupported for CUSTOM and MPY_LOWPREC, ColumnOverflow when a
// field does not fit in `array_cols`, InvalidParameter on overlapping fields.
NorProgram microprogram_of(const OpSpec& spec, const OperandColumns& columns, std::uint32_t array_cols);
NorProgram microprogram_of(const OpSpec& spec);

// Rows of (kind, n, oc) for every kind/width pair that has a catalog value.
nlohmann::json catalog_table(const std::vector<OpKind>& kinds, const std::vector<unsigned>& widths);

} // namespace bitlet
