#pragma once

// Closed-form PIM / CPU throughput and energy model.
//
// PIM:  ROW * MAT / ((OC + PAC) * CT), optionally capped by
//       TDP / (E_pim * (OC + PAC)).
// CPU:  BW / DIO, optionally capped by TDP / (E_cpu * DIO).
//
// Units: cycle time in ns, energies in pJ, bandwidth in bit/s,
// throughput in op/s (GOPS = 1e9 op/s). A terabit per second is
// 1024 Gbps and a gigabit per second is 1e9 bit/s.

#include <compare>
#include <cstdint>

namespace bitlet {

inline constexpr double kGiga = 1e9;
inline constexpr double kBitsPerGbps = 1e9;
inline constexpr double kGbpsPerTbps = 1024.0;

class PimMachine {
public:
    PimMachine(std::uint64_t rows, std::uint64_t cols, std::uint64_t mats,
               double cycle_time_ns, double energy_per_cycle_pj);

    // 1024x1024 arrays, 1024 arrays, 10 ns cycle, 0.1 pJ per cycle.
    static PimMachine defaults();

    [[nodiscard]] std::uint64_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::uint64_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::uint64_t mats() const noexcept { return mats_; }
    [[nodiscard]] double cycle_time_ns() const noexcept { return cycle_time_ns_; }
    [[nodiscard]] double energy_per_cycle_pj() const noexcept { return energy_per_cycle_pj_; }

    [[nodiscard]] PimMachine with_mats(std::uint64_t mats) const;

    friend bool operator==(const PimMachine&, const PimMachine&) = default;

private:
    std::uint64_t rows_;
    std::uint64_t cols_;
    std::uint64_t mats_;
    double cycle_time_ns_;
    double energy_per_cycle_pj_;
};

class CpuMachine {
public:
    CpuMachine(double bandwidth_bps, double energy_per_bit_pj);

    static CpuMachine from_gbps(double gbps, double energy_per_bit_pj = 15.0);
    static CpuMachine from_tbps(double tbps, double energy_per_bit_pj = 15.0);
    // 4 Tbps, 15 pJ per bit.
    static CpuMachine defaults();

    [[nodiscard]] double bandwidth_bps() const noexcept { return bandwidth_bps_; }
    [[nodiscard]] double bandwidth_gbps() const noexcept { return bandwidth_bps_ / kBitsPerGbps; }
    [[nodiscard]] double energy_per_bit_pj() const noexcept { return energy_per_bit_pj_; }

    friend bool operator==(const CpuMachine&, const CpuMachine&) = default;

private:
    double bandwidth_bps_;
    double energy_per_bit_pj_;
};

// One operation as seen by both sides: PIM pays OC + PAC cycles, the CPU
// moves DIO bits across the memory bus.
class WorkloadPoint {
public:
    WorkloadPoint(std::uint64_t oc_cycles, std::uint64_t pac_cycles, double dio_bits);

    [[nodiscard]] std::uint64_t oc_cycles() const noexcept { return oc_cycles_; }
    [[nodiscard]] std::uint64_t pac_cycles() const noexcept { return pac_cycles_; }
    [[nodiscard]] double dio_bits() const noexcept { return dio_bits_; }
    [[nodiscard]] std::uint64_t total_cycles() const noexcept { return oc_cycles_ + pac_cycles_; }

    friend bool operator==(const WorkloadPoint&, const WorkloadPoint&) = default;

private:
    std::uint64_t oc_cycles_;
    std::uint64_t pac_cycles_;
    double dio_bits_;
};

class PowerBudget {
public:
    // +infinity is accepted and means "no power limit".
    explicit PowerBudget(double tdp_watts);

    [[nodiscard]] double tdp_watts() const noexcept { return tdp_watts_; }

    friend bool operator==(const PowerBudget&, const PowerBudget&) = default;

private:
    double tdp_watts_;
};

class Throughput {
public:
    constexpr Throughput() = default;
    explicit Throughput(double ops_per_second);

    [[nodiscard]] double ops_per_second() const noexcept { return ops_per_second_; }
    [[nodiscard]] double gops() const noexcept { return ops_per_second_ / kGiga; }

    friend auto operator<=>(const Throughput&, const Throughput&) = default;

private:
    double ops_per_second_ = 0.0;
};

Throughput perf_pim(const PimMachine& pim, const WorkloadPoint& w);
// The power-cap branch alone: TDP / (E_pim * (OC + PAC)).
Throughput power_capped_pim(const PimMachine& pim, const WorkloadPoint& w, const PowerBudget& p);
Throughput pl_perf_pim(const PimMachine& pim, const WorkloadPoint& w, const PowerBudget& p);

// Largest MAT count whose raw throughput stays within the power cap:
// floor(TDP * CT / (E_pim * ROW)). Independent of OC and PAC.
// Saturates at UINT64_MAX for an unlimited budget.
std::uint64_t mat_power_cap(const PimMachine& pim, const PowerBudget& p);

Throughput perf_cpu(const CpuMachine& cpu, const WorkloadPoint& w);
Throughput power_capped_cpu(const CpuMachine& cpu, const WorkloadPoint& w, const PowerBudget& p);
Throughput pl_perf_cpu(const CpuMachine& cpu, const WorkloadPoint& w, const PowerBudget& p);

// Energy per operation in picojoules.
double energy_per_op_pim(const PimMachine& pim, const WorkloadPoint& w);
double energy_per_op_cpu(const CpuMachine& cpu, const WorkloadPoint& w);

} // namespace bitlet
