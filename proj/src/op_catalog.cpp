#include "bitlet/op_catalog.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

namespace bitlet {

namespace {

constexpr std::array<std::pair<OpKind, std::string_view>, 9> kNames{{
    {OpKind::Not, "NOT"},
    {OpKind::Or, "OR"},
    {OpKind::And, "AND"},
    {OpKind::Xor, "XOR"},
    {OpKind::Add, "ADD"},
    {OpKind::AddFanin4, "ADD_FANIN4"},
    {OpKind::Mpy, "MPY"},
    {OpKind::MpyLowPrec, "MPY_LOWPREC"},
    {OpKind::Custom, "CUSTOM"},
}};

constexpr std::uint64_t kLowPrecisionMpyWidth = 16;
constexpr std::uint64_t kLowPrecisionMpyCycles = 1544;

} // namespace

std::string_view to_string(OpKind kind)
{
    for (const auto& [k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<OpKind> parse_op_kind(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& [k, n] : kNames) {
        if (n == upper) {
            return k;
        }
    }
    return std::nullopt;
}

OpSpec::OpSpec(OpKind kind, unsigned width_bits, std::uint64_t custom_cycles)
    : kind_(kind), width_bits_(width_bits), custom_cycles_(custom_cycles)
{
    if (width_bits < 1 || width_bits > kMaxWidthBits) {
        throw Error(ErrorCode::InvalidParameter,
                    "OpSpec: width_bits must be in 1.." + std::to_string(kMaxWidthBits));
    }
}

OpSpec::OpSpec(OpKind kind, unsigned width_bits) : OpSpec(kind, width_bits, 0)
{
    if (kind == OpKind::Custom) {
        throw Error(ErrorCode::InvalidParameter, "OpSpec: use OpSpec::custom for CUSTOM operations");
    }
}

OpSpec OpSpec::custom(std::uint64_t oc_cycles, unsigned width_bits)
{
    if (oc_cycles == 0) {
        throw Error(ErrorCode::InvalidParameter, "OpSpec: CUSTOM cycle count must be positive");
    }
    return OpSpec(OpKind::Custom, width_bits, oc_cycles);
}

std::uint64_t oc_of(const OpSpec& spec)
{
    const std::uint64_t n = spec.width_bits();
    switch (spec.kind()) {
    case OpKind::Not: return n;
    case OpKind::Or: return 2 * n;
    case OpKind::And: return 3 * n;
    case OpKind::Xor: return 5 * n;
    case OpKind::Add: return 9 * n;
    case OpKind::AddFanin4: return 7 * n;
    case OpKind::Mpy:
        if (n < 2) {
            throw Error(ErrorCode::UnsupportedWidth, "MPY: 13n^2 - 14n is not a cycle count for n = 1");
        }
        return 13 * n * n - 14 * n;
    case OpKind::MpyLowPrec:
        if (n != kLowPrecisionMpyWidth) {
            throw Error(ErrorCode::UnsupportedWidth,
                        "MPY_LOWPREC has a cycle count only for n = 16, got n = " + std::to_string(n));
        }
        return kLowPrecisionMpyCycles;
    case OpKind::Custom: return spec.custom_cycles();
    }
    throw Error(ErrorCode::Unsupported, "unknown OpKind");
}

bool has_second_operand(OpKind kind) { return kind != OpKind::Not; }

bool has_carry_in(OpKind kind) { return kind == OpKind::Add || kind == OpKind::AddFanin4; }

std::uint32_t output_columns(const OpSpec& spec)
{
    const auto n = spec.width_bits();
    switch (spec.kind()) {
    case OpKind::Add:
    case OpKind::AddFanin4: return n + 1;
    case OpKind::Mpy: return 2 * n;
    default: return n;
    }
}

std::uint32_t scratch_columns(const OpSpec& spec)
{
    switch (spec.kind()) {
    case OpKind::Not: return 0;
    case OpKind::Or: return 1;
    case OpKind::And: return 2;
    case OpKind::Xor: return 4;
    case OpKind::Add: return 9;
    case OpKind::AddFanin4: return 8;
    case OpKind::Mpy: return 2 * spec.width_bits() + 11;
    default: return 0;
    }
}

unsigned required_fanin(OpKind kind) { return kind == OpKind::AddFanin4 ? 4 : 2; }

OperandColumns packed_columns(const OpSpec& spec)
{
    const auto n = spec.width_bits();
    OperandColumns c;
    std::uint32_t next = 0;
    c.a = next;
    next += n;
    if (has_second_operand(spec.kind())) {
        c.b = next;
        next += n;
    }
    if (has_carry_in(spec.kind())) {
        c.carry_in = next;
        next += 1;
    }
    c.out = next;
    next += output_columns(spec);
    c.scratch = next;
    return c;
}

std::uint32_t columns_required(const OpSpec& spec)
{
    return packed_columns(spec).scratch + scratch_columns(spec);
}

namespace {

struct Field {
    const char* name;
    std::uint32_t lo;
    std::uint32_t count;
};

void check_fields(const std::vector<Field>& fields, std::uint32_t array_cols)
{
    for (const auto& f : fields) {
        if (f.count == 0) {
            continue;
        }
        if (static_cast<std::uint64_t>(f.lo) + f.count > array_cols) {
            throw Error(ErrorCode::ColumnOverflow,
                        std::string("field '") + f.name + "' needs columns up to " +
                            std::to_string(static_cast<std::uint64_t>(f.lo) + f.count) + ", array has " +
                            std::to_string(array_cols));
        }
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            const auto& x = fields[i];
            const auto& y = fields[j];
            if (x.count == 0 || y.count == 0) {
                continue;
            }
            if (x.lo < y.lo + y.count && y.lo < x.lo + x.count) {
                throw Error(ErrorCode::InvalidParameter,
                            std::string("fields '") + x.name + "' and '" + y.name + "' overlap");
            }
        }
    }
}

// Nine two-input NORs: XNOR(a,b) in four, then XNOR with the carry in four
// more, and the carry-out as NOR(NOR(a,b), NOR(XNOR(a,b), c)).
void full_adder_9(NorProgram& p, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t sum,
                  std::uint32_t cout, std::uint32_t t)
{
    const std::uint32_t t1 = t, t2 = t + 1, t3 = t + 2, t4 = t + 3, t5 = t + 4, t6 = t + 5, t7 = t + 6;
    p.nor(t1, {a, b});
    p.nor(t2, {a, t1});
    p.nor(t3, {b, t1});
    p.nor(t4, {t2, t3});
    p.nor(t5, {t4, c});
    p.nor(t6, {t4, t5});
    p.nor(t7, {c, t5});
    p.nor(sum, {t6, t7});
    p.nor(cout, {t1, t5});
}

// Eight NORs of fan-in at most four. Eight is the minimum for a full adder
// built from NOR gates of fan-in <= 4 (see tests/full_adder_bound.cpp).
void full_adder_8(NorProgram& p, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t sum,
                  std::uint32_t cout, std::uint32_t g)
{
    const std::uint32_t g0 = g, g1 = g + 1, g2 = g + 2, g3 = g + 3, g4 = g + 4, g5 = g + 5;
    p.nor(g0, {a, b});
    p.nor(g1, {a, c, g0});
    p.nor(g2, {a, g0, g1});
    p.nor(g3, {b, c, g0});
    p.nor(g4, {b, g0, g1, g3});
    p.nor(g5, {c, g1, g3});
    p.nor(cout, {g0, g1, g3});
    p.nor(sum, {g2, g4, g5});
}

void ripple_adder(NorProgram& p, const OpSpec& spec, const OperandColumns& cols)
{
    const unsigned n = spec.width_bits();
    const bool fanin4 = spec.kind() == OpKind::AddFanin4;
    const std::uint32_t gate_scratch = cols.scratch;
    const std::uint32_t carry0 = cols.scratch + (fanin4 ? 6 : 7);
    const std::uint32_t carry1 = carry0 + 1;
    for (unsigned i = 0; i < n; ++i) {
        const std::uint32_t cin = i == 0 ? cols.carry_in : ((i - 1) % 2 == 0 ? carry0 : carry1);
        const std::uint32_t cout = i + 1 == n ? cols.out + n : (i % 2 == 0 ? carry0 : carry1);
        if (fanin4) {
            full_adder_8(p, cols.a + i, cols.b + i, cin, cols.out + i, cout, gate_scratch);
        } else {
            full_adder_9(p, cols.a + i, cols.b + i, cin, cols.out + i, cout, gate_scratch);
        }
    }
}

// Shift-and-add: partial products NOR(~a_i, ~b_j), accumulated row by row
// with nine-NOR ripple adders into the 2n-bit product field.
void shift_add_multiplier(NorProgram& p, const OpSpec& spec, const OperandColumns& cols)
{
    const unsigned n = spec.width_bits();
    const std::uint32_t not_a = cols.scratch;
    const std::uint32_t not_b = not_a + n;
    const std::uint32_t zero = not_b + n;
    const std::uint32_t pp = zero + 1;
    const std::uint32_t fa = pp + 1;
    const std::uint32_t carry0 = fa + 7;
    const std::uint32_t carry1 = carry0 + 1;
    const std::uint32_t prod = cols.out;

    for (unsigned i = 0; i < n; ++i) {
        p.nor(not_a + i, {cols.a + i});
    }
    for (unsigned j = 0; j < n; ++j) {
        p.nor(not_b + j, {cols.b + j});
    }
    if (n == 1) {
        p.nor(prod, {not_a, not_b});
        p.nor(prod + 1, {cols.a, not_a});
        return;
    }
    p.nor(zero, {cols.a, not_a});
    for (unsigned i = 0; i < n; ++i) {
        p.nor(prod + i, {not_a + i, not_b});
    }
    for (unsigned j = 1; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            // prod[n] is first written as row 1's carry-out, so row 1 reads zero there.
            const std::uint32_t acc = (j == 1 && i + 1 == n) ? zero : prod + j + i;
            const std::uint32_t cin = i == 0 ? zero : ((i - 1) % 2 == 0 ? carry0 : carry1);
            const std::uint32_t cout = i + 1 == n ? prod + j + n : (i % 2 == 0 ? carry0 : carry1);
            p.nor(pp, {not_a + i, not_b + j});
            full_adder_9(p, acc, pp, cin, prod + j + i, cout, fa);
        }
    }
}

} // namespace

NorProgram microprogram_of(const OpSpec& spec, const OperandColumns& cols, std::uint32_t array_cols)
{
    const OpKind kind = spec.kind();
    if (kind == OpKind::Custom || kind == OpKind::MpyLowPrec) {
        throw Error(ErrorCode::Unsupported,
                    std::string("no canonical NOR netlist for ") + std::string(to_string(kind)));
    }
    const unsigned n = spec.width_bits();
    check_fields({{"a", cols.a, n},
                  {"b", cols.b, has_second_operand(kind) ? n : 0},
                  {"carry_in", cols.carry_in, has_carry_in(kind) ? 1U : 0U},
                  {"out", cols.out, output_columns(spec)},
                  {"scratch", cols.scratch, scratch_columns(spec)}},
                 array_cols);

    NorProgram p;
    p.declare_input("a", {cols.a, n});
    if (has_second_operand(kind)) {
        p.declare_input("b", {cols.b, n});
    }
    if (has_carry_in(kind)) {
        p.declare_input("carry_in", {cols.carry_in, 1});
    }
    p.declare_output("out", {cols.out, output_columns(spec)});

    switch (kind) {
    case OpKind::Not:
        for (unsigned i = 0; i < n; ++i) {
            p.nor(cols.out + i, {cols.a + i});
        }
        break;
    case OpKind::Or:
        for (unsigned i = 0; i < n; ++i) {
            p.nor(cols.scratch, {cols.a + i, cols.b + i});
            p.nor(cols.out + i, {cols.scratch});
        }
        break;
    case OpKind::And:
        for (unsigned i = 0; i < n; ++i) {
            p.nor(cols.scratch, {cols.a + i});
            p.nor(cols.scratch + 1, {cols.b + i});
            p.nor(cols.out + i, {cols.scratch, cols.scratch + 1});
        }
        break;
    case OpKind::Xor:
        for (unsigned i = 0; i < n; ++i) {
            const std::uint32_t t = cols.scratch;
            p.nor(t, {cols.a + i, cols.b + i});
            p.nor(t + 1, {cols.a + i, t});
            p.nor(t + 2, {cols.b + i, t});
            p.nor(t + 3, {t + 1, t + 2});
            p.nor(cols.out + i, {t + 3});
        }
        break;
    case OpKind::Add:
    case OpKind::AddFanin4:
        ripple_adder(p, spec, cols);
        break;
    case OpKind::Mpy:
        shift_add_multiplier(p, spec, cols);
        break;
    default:
        break;
    }
    return p;
}

NorProgram microprogram_of(const OpSpec& spec)
{
    return microprogram_of(spec, packed_columns(spec), columns_required(spec));
}

nlohmann::json catalog_table(const std::vector<OpKind>& kinds, const std::vector<unsigned>& widths)
{
    auto rows = nlohmann::json::array();
    for (unsigned n : widths) {
        for (OpKind k : kinds) {
            if (k == OpKind::Custom) {
                continue;
            }
            try {
                rows.push_back({{"kind", to_string(k)}, {"n", n}, {"oc", oc_of(OpSpec(k, n))}});
            } catch (const Error& e) {
                if (e.code() != ErrorCode::UnsupportedWidth) {
                    throw;
                }
            }
        }
    }
    return rows;
}

} // namespace bitlet
