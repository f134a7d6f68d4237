#include "bitlet/analysis.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace bitlet {

double crossover_oc(const PimMachine& pim, const CpuMachine& cpu, double dio_bits, std::uint64_t pac_cycles)
{
    const double parallel_rows = static_cast<double>(pim.rows()) * static_cast<double>(pim.mats());
    const double cycle_s = pim.cycle_time_ns() * 1e-9;
    return parallel_rows * dio_bits / (cpu.bandwidth_bps() * cycle_s) - static_cast<double>(pac_cycles);
}

double energy_breakeven_oc(const PimMachine& pim, const CpuMachine& cpu, double dio_bits,
                           std::uint64_t pac_cycles)
{
    return cpu.energy_per_bit_pj() * dio_bits / pim.energy_per_cycle_pj() - static_cast<double>(pac_cycles);
}

std::string_view to_string(Winner w)
{
    switch (w) {
    case Winner::Pim: return "PIM";
    case Winner::Cpu: return "CPU";
    case Winner::Tie: return "TIE";
    }
    return "?";
}

Winner compare_throughput(double pim_ops, double cpu_ops)
{
    if (std::abs(pim_ops - cpu_ops) <= kTieTolerance * std::max(pim_ops, cpu_ops)) {
        return Winner::Tie;
    }
    return pim_ops > cpu_ops ? Winner::Pim : Winner::Cpu;
}

WorkloadPoint resolve(const Workload& workload, const PimMachine& pim)
{
    const std::uint64_t oc = workload.oc_override ? *workload.oc_override : oc_of(workload.op);
    return WorkloadPoint(oc, pac_of(workload.layout, pim), workload.dio_bits);
}

Verdict litmus(const PimMachine& pim, const CpuMachine& cpu, const WorkloadPoint& w,
               const std::optional<PowerBudget>& power)
{
    Verdict v;
    v.oc_cycles = w.oc_cycles();
    v.pac_cycles = w.pac_cycles();
    v.dio_bits = w.dio_bits();
    v.pim_gops = perf_pim(pim, w).gops();
    v.cpu_gops = perf_cpu(cpu, w).gops();
    double pim_cmp = v.pim_gops;
    double cpu_cmp = v.cpu_gops;
    if (power) {
        v.pl_pim_gops = pl_perf_pim(pim, w, *power).gops();
        v.pl_cpu_gops = pl_perf_cpu(cpu, w, *power).gops();
        pim_cmp = *v.pl_pim_gops;
        cpu_cmp = *v.pl_cpu_gops;
    }
    v.winner = compare_throughput(pim_cmp, cpu_cmp);
    v.speedup = pim_cmp / cpu_cmp;
    v.crossover_oc = crossover_oc(pim, cpu, w.dio_bits(), w.pac_cycles());
    v.pim_energy_pj = energy_per_op_pim(pim, w);
    v.cpu_energy_pj = energy_per_op_cpu(cpu, w);
    v.energy_ratio = v.cpu_energy_pj / v.pim_energy_pj;
    return v;
}

Verdict litmus(const PimMachine& pim, const CpuMachine& cpu, const Workload& w,
               const std::optional<PowerBudget>& power)
{
    return litmus(pim, cpu, resolve(w, pim), power);
}

MixVerdict litmus_mix(const PimMachine& pim, const CpuMachine& cpu, std::span<const Workload> mix,
                      const std::optional<PowerBudget>& power)
{
    if (mix.empty()) {
        throw Error(ErrorCode::InvalidParameter, "litmus_mix: empty operation mix");
    }
    double weight = 0;
    double pim_time = 0;
    double cpu_time = 0;
    double pl_pim_time = 0;
    double pl_cpu_time = 0;
    for (const auto& wl : mix) {
        if (!(wl.weight > 0) || !std::isfinite(wl.weight)) {
            throw Error(ErrorCode::InvalidParameter, "litmus_mix: weights must be positive");
        }
        const WorkloadPoint w = resolve(wl, pim);
        weight += wl.weight;
        pim_time += wl.weight / perf_pim(pim, w).ops_per_second();
        cpu_time += wl.weight / perf_cpu(cpu, w).ops_per_second();
        if (power) {
            pl_pim_time += wl.weight / pl_perf_pim(pim, w, *power).ops_per_second();
            pl_cpu_time += wl.weight / pl_perf_cpu(cpu, w, *power).ops_per_second();
        }
    }
    MixVerdict v;
    v.pim_gops = weight / pim_time / kGiga;
    v.cpu_gops = weight / cpu_time / kGiga;
    double pim_cmp = v.pim_gops;
    double cpu_cmp = v.cpu_gops;
    if (power) {
        v.pl_pim_gops = weight / pl_pim_time / kGiga;
        v.pl_cpu_gops = weight / pl_cpu_time / kGiga;
        pim_cmp = *v.pl_pim_gops;
        cpu_cmp = *v.pl_cpu_gops;
    }
    v.winner = compare_throughput(pim_cmp, cpu_cmp);
    v.speedup = pim_cmp / cpu_cmp;
    return v;
}

// --- sweeps -------------------------------------------------------------------

std::string_view to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::Oc: return "OC";
    case SweepParameter::Pac: return "PAC";
    case SweepParameter::Mat: return "MAT";
    case SweepParameter::Bw: return "BW";
    case SweepParameter::Dio: return "DIO";
    case SweepParameter::Tdp: return "TDP";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (auto p : {SweepParameter::Oc, SweepParameter::Pac, SweepParameter::Mat, SweepParameter::Bw,
                   SweepParameter::Dio, SweepParameter::Tdp}) {
        if (to_string(p) == upper) {
            return p;
        }
    }
    throw Error(ErrorCode::UnknownParameter,
                "unknown sweep parameter '" + std::string(name) + "' (expected OC, PAC, MAT, BW, DIO or TDP)");
}

std::vector<double> Grid::values() const
{
    if (steps == 0) {
        throw Error(ErrorCode::InvalidParameter, "grid is empty");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo <= 0 || hi <= 0) {
        throw Error(ErrorCode::InvalidParameter, "grid bounds must be positive and finite");
    }
    if (hi < lo) {
        throw Error(ErrorCode::InvalidParameter, "grid upper bound is below the lower bound");
    }
    std::vector<double> out;
    out.reserve(steps);
    if (steps == 1) {
        out.push_back(lo);
        return out;
    }
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / denom;
        double v = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
        if (i + 1 == steps) {
            v = hi;
        }
        out.push_back(v);
    }
    return out;
}

Grid parse_grid(std::string_view text)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) {
            break;
        }
        start = colon + 1;
    }
    const auto bad = [&] {
        return Error(ErrorCode::InvalidParameter,
                     "grid '" + std::string(text) + "' is not lo:hi:steps[:log]");
    };
    if (parts.size() != 3 && parts.size() != 4) {
        throw bad();
    }
    Grid g;
    const auto num = [&](std::string_view s, auto& out) {
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, out);
        if (ec != std::errc{} || ptr != end) {
            throw bad();
        }
    };
    num(parts[0], g.lo);
    num(parts[1], g.hi);
    num(parts[2], g.steps);
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            g.log = true;
        } else if (parts[3] != "lin") {
            throw bad();
        }
    }
    static_cast<void>(g.values()); // rejects empty or non-positive grids early
    return g;
}

namespace {

bool integral_parameter(SweepParameter p)
{
    return p == SweepParameter::Oc || p == SweepParameter::Pac || p == SweepParameter::Mat;
}

} // namespace

std::vector<double> sweep_points(const SweepSpec& spec)
{
    auto xs = spec.grid.values();
    if (integral_parameter(spec.parameter)) {
        for (auto& x : xs) {
            x = std::round(x);
        }
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }
    return xs;
}

SweepRow evaluate_point(const SweepSpec& spec, double x)
{
    PimMachine pim = spec.pim;
    CpuMachine cpu = spec.cpu;
    WorkloadPoint w = spec.base;
    std::optional<PowerBudget> power = spec.power;
    const auto cycles = [](double v) { return static_cast<std::uint64_t>(std::llround(v)); };

    switch (spec.parameter) {
    case SweepParameter::Oc: w = WorkloadPoint(cycles(x), w.pac_cycles(), w.dio_bits()); break;
    case SweepParameter::Pac: w = WorkloadPoint(w.oc_cycles(), cycles(x), w.dio_bits()); break;
    case SweepParameter::Mat: pim = pim.with_mats(cycles(x)); break;
    case SweepParameter::Bw: cpu = CpuMachine::from_gbps(x, cpu.energy_per_bit_pj()); break;
    case SweepParameter::Dio: w = WorkloadPoint(w.oc_cycles(), w.pac_cycles(), x); break;
    case SweepParameter::Tdp: power = PowerBudget(x); break;
    }

    SweepRow row;
    row.x = x;
    row.pim_gops = perf_pim(pim, w).gops();
    row.cpu_gops = perf_cpu(cpu, w).gops();
    row.pl_pim_gops = power ? pl_perf_pim(pim, w, *power).gops() : row.pim_gops;
    row.pl_cpu_gops = power ? pl_perf_cpu(cpu, w, *power).gops() : row.cpu_gops;
    return row;
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec)
{
    const auto xs = sweep_points(spec);
    std::vector<SweepRow> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        rows.push_back(evaluate_point(spec, x));
    }
    return rows;
}

std::vector<SweepRow> sweep(const SweepSpec& spec)
{
    const auto xs = sweep_points(spec);
    std::vector<SweepRow> rows(xs.size());
    const auto n = static_cast<std::int64_t>(xs.size());
    // Exceptions must not escape an OpenMP region; the first one is rethrown.
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (n >= 256)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = evaluate_point(spec, xs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(bitlet_sweep_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

} // namespace bitlet
