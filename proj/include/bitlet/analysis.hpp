#pragma once

#include "bitlet/model.hpp"
#include "bitlet/op_catalog.hpp"
#include "bitlet/pac_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitlet {

// OC at which PIM and CPU throughput are equal:
//   ROW * MAT * DIO / (BW * CT) - PAC.
// PIM wins strictly below it, the CPU strictly above. A result <= 0
// means PIM never wins. Callers quoting "CPU wins at OC >= X" should ceil().
double crossover_oc(const PimMachine& pim, const CpuMachine& cpu, double dio_bits, std::uint64_t pac_cycles);

// OC at which both sides spend the same energy per operation:
//   E_cpu * DIO / E_pim - PAC.
double energy_breakeven_oc(const PimMachine& pim, const CpuMachine& cpu, double dio_bits,
                           std::uint64_t pac_cycles);

enum class Winner { Pim, Cpu, Tie };
std::string_view to_string(Winner w);

// Relative tolerance under which two throughputs are declared a tie.
inline constexpr double kTieTolerance = 1e-9;
Winner compare_throughput(double pim_ops, double cpu_ops);

struct Workload {
    std::string name;
    OpSpec op;
    std::optional<std::uint64_t> oc_override;
    LayoutSpec layout;
    double dio_bits;
    double weight = 1.0;
};

WorkloadPoint resolve(const Workload& workload, const PimMachine& pim);

struct Verdict {
    std::uint64_t oc_cycles = 0;
    std::uint64_t pac_cycles = 0;
    double dio_bits = 0;
    double pim_gops = 0;
    double cpu_gops = 0;
    std::optional<double> pl_pim_gops;
    std::optional<double> pl_cpu_gops;
    // Decided on the power-limited values when a budget is given.
    Winner winner = Winner::Tie;
    // pim / cpu over the same pair of values the winner was decided on.
    double speedup = 0;
    double crossover_oc = 0;
    double pim_energy_pj = 0;
    double cpu_energy_pj = 0;
    // cpu_energy_pj / pim_energy_pj.
    double energy_ratio = 0;
};

Verdict litmus(const PimMachine& pim, const CpuMachine& cpu, const WorkloadPoint& w,
               const std::optional<PowerBudget>& power = std::nullopt);
Verdict litmus(const PimMachine& pim, const CpuMachine& cpu, const Workload& w,
               const std::optional<PowerBudget>& power = std::nullopt);

// Aggregate over an operation mix: each side's throughput is
// total weight / total time, where an op of weight w costs w / throughput.
struct MixVerdict {
    double pim_gops = 0;
    double cpu_gops = 0;
    std::optional<double> pl_pim_gops;
    std::optional<double> pl_cpu_gops;
    Winner winner = Winner::Tie;
    double speedup = 0;
};

MixVerdict litmus_mix(const PimMachine& pim, const CpuMachine& cpu, std::span<const Workload> mix,
                      const std::optional<PowerBudget>& power = std::nullopt);

// --- sweeps -------------------------------------------------------------------

enum class SweepParameter { Oc, Pac, Mat, Bw, Dio, Tdp };
std::string_view to_string(SweepParameter p);
// Case-insensitive; throws Error(UnknownParameter).
SweepParameter parse_sweep_parameter(std::string_view name);

struct Grid {
    double lo = 1;
    double hi = 1;
    std::size_t steps = 1;
    bool log = false;

    // `steps` points from lo to hi inclusive, evenly spaced (geometrically
    // when log). Throws InvalidParameter for an empty or non-positive grid.
    [[nodiscard]] std::vector<double> values() const;
};

// "lo:hi:steps" or "lo:hi:steps:log".
Grid parse_grid(std::string_view text);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Oc;
    Grid grid;
    PimMachine pim = PimMachine::defaults();
    CpuMachine cpu = CpuMachine::defaults();
    WorkloadPoint base{1, 0, 48};
    // Without a budget the power-limited columns equal the raw ones,
    // except when sweeping TDP itself.
    std::optional<PowerBudget> power;
};

struct SweepRow {
    double x = 0;
    double pim_gops = 0;
    double cpu_gops = 0;
    double pl_pim_gops = 0;
    double pl_cpu_gops = 0;
    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Grid values for OC, PAC and MAT are rounded to integers; repeated
// values after rounding collapse into one row. BW is in Gbps
// (1 Tbps = 1024 Gbps), TDP in watts.
std::vector<double> sweep_points(const SweepSpec& spec);
SweepRow evaluate_point(const SweepSpec& spec, double x);

// Grid points are evaluated in parallel; sweep_serial is the reference.
std::vector<SweepRow> sweep(const SweepSpec& spec);
std::vector<SweepRow> sweep_serial(const SweepSpec& spec);

} // namespace bitlet
