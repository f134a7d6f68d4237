#include "bitlet/validation.hpp"

#include "bitlet/error.hpp"
#include "bitlet/magic_sim.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace bitlet {

namespace {

std::uint64_t low_mask(unsigned bits)
{
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Plain integer semantics of each operation; shares nothing with the
// NOR generators.
std::uint64_t reference_result(OpKind kind, unsigned n, std::uint64_t a, std::uint64_t b, std::uint64_t cin)
{
    const std::uint64_t m = low_mask(n);
    switch (kind) {
    case OpKind::Not: return ~a & m;
    case OpKind::Or: return a | b;
    case OpKind::And: return a & b;
    case OpKind::Xor: return a ^ b;
    case OpKind::Add:
    case OpKind::AddFanin4: return a + b + cin;
    case OpKind::Mpy: return a * b;
    default: break;
    }
    throw Error(ErrorCode::Unsupported, "no reference semantics for " + std::string(to_string(kind)));
}

} // namespace

OperationCheck check_operation(const OpSpec& spec, const CatalogFn& catalog, const ValidationOptions& opts)
{
    const OpKind kind = spec.kind();
    const unsigned n = spec.width_bits();
    if (output_columns(spec) > 64) {
        throw Error(ErrorCode::InvalidParameter, "check_operation: results wider than 64 bits are not checked");
    }

    OperationCheck check{spec, 0, std::nullopt, false, false, false, 0, {}};
    const NorProgram program = microprogram_of(spec);
    check.simulated_cycles = count_cycles(program);
    try {
        check.catalog_cycles = catalog(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedWidth) {
            throw;
        }
    }
    check.cycles_informational = kind == OpKind::Mpy;
    check.cycles_match = check.catalog_cycles && *check.catalog_cycles == check.simulated_cycles;

    const bool two_operands = has_second_operand(kind);
    const bool carry = has_carry_in(kind);
    const unsigned input_bits = n * (two_operands ? 2 : 1) + (carry ? 1 : 0);
    const bool exhaustive = n <= opts.exhaustive_width;
    const std::uint64_t rows = exhaustive ? (std::uint64_t{1} << input_bits) : opts.random_vectors;
    check.vectors = rows;

    const OperandColumns cols = packed_columns(spec);
    ArrayState state(rows, columns_required(spec));
    std::mt19937_64 rng(opts.seed ^ (static_cast<std::uint64_t>(kind) << 32) ^ n);
    // Outputs and scratch start as noise: programs must not rely on initial contents.
    for (std::uint32_t c = 0; c < state.cols(); ++c) {
        for (auto& w : state.column(c)) {
            w = rng();
        }
        state.column(c).back() &= state.tail_mask();
    }

    struct Inputs {
        std::uint64_t a, b, cin;
    };
    std::vector<Inputs> inputs(rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
        Inputs in{};
        if (exhaustive) {
            in.a = r & low_mask(n);
            in.b = two_operands ? (r >> n) & low_mask(n) : 0;
            in.cin = carry ? (r >> (input_bits - 1)) & 1U : 0;
        } else {
            in.a = rng() & low_mask(n);
            in.b = two_operands ? rng() & low_mask(n) : 0;
            in.cin = carry ? rng() & 1U : 0;
        }
        inputs[r] = in;
        state.write_field(r, cols.a, n, in.a);
        if (two_operands) {
            state.write_field(r, cols.b, n, in.b);
        }
        if (carry) {
            state.write_field(r, cols.carry_in, 1, in.cin);
        }
    }

    const RunResult result = run(program, state, SimConfig{required_fanin(kind)});
    const unsigned out_width = output_columns(spec);
    for (std::uint64_t r = 0; r < rows; ++r) {
        const auto& in = inputs[r];
        const std::uint64_t expected = reference_result(kind, n, in.a, in.b, in.cin) & low_mask(out_width);
        const std::uint64_t got = result.final_state.read_field(r, cols.out, out_width);
        const bool inputs_kept = result.final_state.read_field(r, cols.a, n) == in.a &&
                                 (!two_operands || result.final_state.read_field(r, cols.b, n) == in.b);
        if (got != expected || !inputs_kept) {
            std::ostringstream os;
            os << to_string(kind) << " n=" << n << " row " << r << ": a=" << in.a << " b=" << in.b
               << " cin=" << in.cin << " expected " << expected << " got " << got
               << (inputs_kept ? "" : " (inputs clobbered)");
            check.failure = os.str();
            return check;
        }
    }
    check.function_ok = true;
    return check;
}

RelocationCheck check_relocation(const LayoutSpec& layout, const PimMachine& pim, std::uint64_t seed)
{
    RelocationCheck check;
    check.formula_cycles = pac_of(layout, pim);
    const RelocationAssignment assign = packed_assignment(layout);
    const NorProgram program = relocation_program(layout, pim, assign);
    check.simulated_cycles = count_cycles(program);

    const std::uint64_t rows = pim.rows();
    const auto cols = static_cast<std::uint32_t>(pim.cols());
    ArrayState initial(rows, cols);
    std::mt19937_64 rng(seed);
    for (std::uint32_t c = 0; c < cols; ++c) {
        for (auto& w : initial.column(c)) {
            w = rng();
        }
        initial.column(c).back() &= initial.tail_mask();
    }

    // Expected state: aligned copies first, then each row of the relocated
    // field takes the value `row_shift` rows below it. Rows past the bottom
    // edge come from the next array, which the simulator stands in for with
    // this array's already-updated rows.
    ArrayState expected = initial;
    const unsigned n = layout.element_width_bits();
    const unsigned k = layout.misaligned_subsets();
    for (unsigned s = 0; s < k; ++s) {
        for (std::uint64_t r = 0; r < rows; ++r) {
            for (unsigned bit = 0; bit < n; ++bit) {
                expected.set(r, assign.target_cols[s] + bit, initial.get(r, assign.source_cols[s] + bit));
            }
        }
    }
    if (layout.needs_vertical_relocation()) {
        std::uint32_t lo = assign.source_cols[0];
        std::uint32_t hi = lo + n - 1;
        if (k > 0) {
            lo = *std::min_element(assign.target_cols.begin(), assign.target_cols.end());
            hi = *std::max_element(assign.target_cols.begin(), assign.target_cols.end()) + n - 1;
        }
        const std::uint64_t shift = assign.row_shift;
        for (std::uint32_t c = lo; c <= hi; ++c) {
            std::vector<bool> before(rows);
            for (std::uint64_t r = 0; r < rows; ++r) {
                before[r] = expected.get(r, c);
            }
            std::vector<bool> after(rows);
            for (std::uint64_t r = 0; r < rows; ++r) {
                after[r] = r + shift < rows ? before[r + shift] : after[r + shift - rows];
            }
            for (std::uint64_t r = 0; r < rows; ++r) {
                expected.set(r, c, after[r]);
            }
        }
    }

    const RunResult result = run(program, initial);
    for (std::uint64_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            if (result.final_state.get(r, c) != expected.get(r, c)) {
                std::ostringstream os;
                os << "cell (" << r << ", " << c << ") differs after relocation (n=" << n << ", k=" << k
                   << ", vertical=" << layout.needs_vertical_relocation() << ")";
                check.failure = os.str();
                return check;
            }
        }
    }
    check.cells_ok = true;
    return check;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::vector<CheckResult> validate_catalog(const CatalogFn& catalog, const ValidationOptions& opts)
{
    std::vector<CheckResult> out;
    const std::vector<OpKind> kinds{OpKind::Not, OpKind::Or,        OpKind::And, OpKind::Xor,
                                    OpKind::Add, OpKind::AddFanin4, OpKind::Mpy};
    for (OpKind kind : kinds) {
        const std::string name(to_string(kind));
        const std::string range = " n=1.." + std::to_string(opts.max_width);
        CheckResult cycles{name + " cycles == catalog" + range, true, ""};
        CheckResult function{name + " matches integer oracle" + range, true, ""};
        std::ostringstream info;
        for (unsigned n = 1; n <= opts.max_width; ++n) {
            const OperationCheck c = check_operation(OpSpec(kind, n), catalog, opts);
            if (c.cycles_informational) {
                if (c.catalog_cycles && (n == 4 || n == 16 || n == opts.max_width)) {
                    info << " n=" << n << ": sim " << c.simulated_cycles << " / catalog " << *c.catalog_cycles
                         << ";";
                }
            } else if (!c.cycles_match && cycles.passed) {
                cycles.passed = false;
                std::ostringstream os;
                os << "first mismatch n=" << n << ": sim " << c.simulated_cycles << " vs catalog "
                   << (c.catalog_cycles ? std::to_string(*c.catalog_cycles) : std::string("n/a"));
                cycles.detail = os.str();
            }
            if (!c.function_ok && function.passed) {
                function.passed = false;
                function.detail = c.failure;
            }
        }
        if (kind == OpKind::Mpy) {
            cycles.name = name + " cycles (informational)" + range;
            cycles.detail = info.str();
        } else if (cycles.passed) {
            cycles.detail = "all widths match";
        }
        if (function.passed) {
            function.detail = "exhaustive for n<=" + std::to_string(opts.exhaustive_width) + ", " +
                              std::to_string(opts.random_vectors) + " random rows above";
        }
        out.push_back(cycles);
        out.push_back(function);
    }
    return out;
}

std::vector<CheckResult> validate_catalog(const ValidationOptions& opts)
{
    return validate_catalog(CatalogFn(static_cast<std::uint64_t (*)(const OpSpec&)>(&oc_of)), opts);
}

std::vector<CheckResult> validate_pac(const ValidationOptions& opts)
{
    const std::string range = "k<=4, n<=" + std::to_string(opts.max_width) + ", ROW=64";
    CheckResult cycles{"PAC program cycles == formula (" + range + ")", true, ""};
    CheckResult cells{"PAC relocation cell-by-cell (" + range + ")", true, ""};
    const PimMachine small(64, 8U * opts.max_width, 1, 10.0, 0.1);
    std::uint64_t layouts = 0;
    for (unsigned k = 0; k <= 4; ++k) {
        for (unsigned n = 1; n <= opts.max_width; ++n) {
            for (bool vertical : {false, true}) {
                const LayoutSpec layout(n, k, vertical);
                const RelocationCheck c = check_relocation(layout, small, opts.seed + layouts);
                ++layouts;
                if (c.simulated_cycles != c.formula_cycles && cycles.passed) {
                    cycles.passed = false;
                    cycles.detail = "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": sim " +
                                    std::to_string(c.simulated_cycles) + " vs formula " +
                                    std::to_string(c.formula_cycles);
                }
                if (!c.cells_ok && cells.passed) {
                    cells.passed = false;
                    cells.detail = c.failure;
                }
            }
        }
    }
    if (cycles.passed) {
        cycles.detail = std::to_string(layouts) + " layouts agree";
    }
    if (cells.passed) {
        cells.detail = std::to_string(layouts) + " layouts verified";
    }

    const PimMachine full = PimMachine::defaults();
    const RelocationCheck ex = check_relocation(LayoutSpec(16, 1, true), full, opts.seed);
    CheckResult example{"PAC shifted-operand example (n=16, ROW=1024) == 1040",
                        ex.simulated_cycles == 1040 && ex.formula_cycles == 1040,
                        "sim " + std::to_string(ex.simulated_cycles) + ", formula " +
                            std::to_string(ex.formula_cycles)};
    CheckResult example_cells{"PAC shifted-operand example cell-by-cell", ex.cells_ok,
                              ex.cells_ok ? "1024 rows verified" : ex.failure};
    return {cycles, cells, example, example_cells};
}

} // namespace bitlet
