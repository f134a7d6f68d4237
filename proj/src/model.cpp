#include "bitlet/model.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bitlet {

namespace {

constexpr double kSecondsPerNs = 1e-9;
constexpr double kJoulesPerPj = 1e-12;

void require(bool ok, const char* what)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidParameter, what);
    }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnsupportedWidth: return "UnsupportedWidth";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ColumnOverflow: return "ColumnOverflow";
    case ErrorCode::RowOverflow: return "RowOverflow";
    case ErrorCode::InvalidProgram: return "InvalidProgram";
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

PimMachine::PimMachine(std::uint64_t rows, std::uint64_t cols, std::uint64_t mats,
                       double cycle_time_ns, double energy_per_cycle_pj)
    : rows_(rows), cols_(cols), mats_(mats), cycle_time_ns_(cycle_time_ns),
      energy_per_cycle_pj_(energy_per_cycle_pj)
{
    require(rows >= 1, "PimMachine: rows must be >= 1");
    require(cols >= 1, "PimMachine: cols must be >= 1");
    require(mats >= 1, "PimMachine: mats must be >= 1");
    require(positive_finite(cycle_time_ns), "PimMachine: cycle_time_ns must be > 0");
    require(positive_finite(energy_per_cycle_pj), "PimMachine: energy_per_cycle_pj must be > 0");
}

PimMachine PimMachine::defaults() { return PimMachine(1024, 1024, 1024, 10.0, 0.1); }

PimMachine PimMachine::with_mats(std::uint64_t mats) const
{
    return PimMachine(rows_, cols_, mats, cycle_time_ns_, energy_per_cycle_pj_);
}

CpuMachine::CpuMachine(double bandwidth_bps, double energy_per_bit_pj)
    : bandwidth_bps_(bandwidth_bps), energy_per_bit_pj_(energy_per_bit_pj)
{
    require(positive_finite(bandwidth_bps), "CpuMachine: bandwidth must be > 0");
    require(positive_finite(energy_per_bit_pj), "CpuMachine: energy_per_bit_pj must be > 0");
}

CpuMachine CpuMachine::from_gbps(double gbps, double energy_per_bit_pj)
{
    return CpuMachine(gbps * kBitsPerGbps, energy_per_bit_pj);
}

CpuMachine CpuMachine::from_tbps(double tbps, double energy_per_bit_pj)
{
    return from_gbps(tbps * kGbpsPerTbps, energy_per_bit_pj);
}

CpuMachine CpuMachine::defaults() { return from_tbps(4.0, 15.0); }

WorkloadPoint::WorkloadPoint(std::uint64_t oc_cycles, std::uint64_t pac_cycles, double dio_bits)
    : oc_cycles_(oc_cycles), pac_cycles_(pac_cycles), dio_bits_(dio_bits)
{
    require(oc_cycles >= 1, "WorkloadPoint: oc_cycles must be >= 1");
    require(std::isfinite(dio_bits) && dio_bits >= 1.0, "WorkloadPoint: dio_bits must be >= 1");
    require(pac_cycles <= std::numeric_limits<std::uint64_t>::max() - oc_cycles,
            "WorkloadPoint: oc_cycles + pac_cycles overflows");
}

PowerBudget::PowerBudget(double tdp_watts) : tdp_watts_(tdp_watts)
{
    require(!std::isnan(tdp_watts) && tdp_watts > 0.0, "PowerBudget: tdp_watts must be > 0");
}

Throughput::Throughput(double ops_per_second) : ops_per_second_(ops_per_second)
{
    if (!std::isfinite(ops_per_second) || ops_per_second < 0.0) {
        std::ostringstream os;
        os << "Throughput must be finite and non-negative, got " << ops_per_second;
        throw Error(ErrorCode::InvalidParameter, os.str());
    }
}

Throughput perf_pim(const PimMachine& pim, const WorkloadPoint& w)
{
    const double parallel_rows = static_cast<double>(pim.rows()) * static_cast<double>(pim.mats());
    const double seconds_per_op =
        static_cast<double>(w.total_cycles()) * pim.cycle_time_ns() * kSecondsPerNs;
    return Throughput(parallel_rows / seconds_per_op);
}

Throughput power_capped_pim(const PimMachine& pim, const WorkloadPoint& w, const PowerBudget& p)
{
    const double joules_per_op =
        pim.energy_per_cycle_pj() * kJoulesPerPj * static_cast<double>(w.total_cycles());
    const double cap = p.tdp_watts() / joules_per_op;
    return Throughput(std::isinf(cap) ? std::numeric_limits<double>::max() : cap);
}

Throughput pl_perf_pim(const PimMachine& pim, const WorkloadPoint& w, const PowerBudget& p)
{
    return std::min(perf_pim(pim, w), power_capped_pim(pim, w, p));
}

std::uint64_t mat_power_cap(const PimMachine& pim, const PowerBudget& p)
{
    if (std::isinf(p.tdp_watts())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    // W * ns / (pJ * rows): the 1e-9 / 1e-12 unit factors fold into 1e3.
    const double mats = p.tdp_watts() * pim.cycle_time_ns() * 1e3 /
                        (pim.energy_per_cycle_pj() * static_cast<double>(pim.rows()));
    if (mats >= 1.8e19) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    // Snap values a few ulps below an integer so that exact ratios floor correctly.
    const double nearest = std::round(mats);
    const double snapped = std::abs(mats - nearest) <= 1e-12 * std::max(1.0, mats) ? nearest : mats;
    return static_cast<std::uint64_t>(std::floor(snapped));
}

Throughput perf_cpu(const CpuMachine& cpu, const WorkloadPoint& w)
{
    return Throughput(cpu.bandwidth_bps() / w.dio_bits());
}

Throughput power_capped_cpu(const CpuMachine& cpu, const WorkloadPoint& w, const PowerBudget& p)
{
    const double joules_per_op = cpu.energy_per_bit_pj() * kJoulesPerPj * w.dio_bits();
    const double cap = p.tdp_watts() / joules_per_op;
    return Throughput(std::isinf(cap) ? std::numeric_limits<double>::max() : cap);
}

Throughput pl_perf_cpu(const CpuMachine& cpu, const WorkloadPoint& w, const PowerBudget& p)
{
    return std::min(perf_cpu(cpu, w), power_capped_cpu(cpu, w, p));
}

double energy_per_op_pim(const PimMachine& pim, const WorkloadPoint& w)
{
    return pim.energy_per_cycle_pj() * static_cast<double>(w.total_cycles());
}

double energy_per_op_cpu(const CpuMachine& cpu, const WorkloadPoint& w)
{
    return cpu.energy_per_bit_pj() * w.dio_bits();
}

} // namespace bitlet
