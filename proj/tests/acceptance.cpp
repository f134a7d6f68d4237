// Acceptance checks: one PASS/FAIL line per criterion, with the individual
// measurements listed underneath. Exit status is the number of failed
// criteria.

#include "cli.hpp"

#include "bitlet/analysis.hpp"
#include "bitlet/validation.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bitlet;

namespace {

// Pinned tolerances (relative).
constexpr double kPaperTol = 0.015;
constexpr double kTbps16Tol = 0.002;
constexpr double kCrossoverTol = 0.005;
constexpr double kShiftedCrossoverTol = 0.03;
constexpr double kCapTol = 0.005;
constexpr double kExact = 1e-12;
constexpr int kDraws = 10000;

struct Criterion {
    int id;
    std::string title;
    bool passed = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what)
    {
        passed = passed && ok;
        lines.push_back(std::string(ok ? "ok    " : "MISS  ") + what);
    }

    // |got - want| <= tol * |want|
    void near(double got, double want, double tol, const std::string& what)
    {
        const double rel = std::abs(got - want) / std::abs(want);
        std::ostringstream os;
        os.precision(8);
        os << what << ": " << got << " vs " << want << " (rel. dev " << rel * 100 << "%, limit " << tol * 100
           << "%)";
        check(rel <= tol, os.str());
    }
};

const PimMachine kPim = PimMachine::defaults();
const CpuMachine kCpu = CpuMachine::defaults();

double pim_gops(std::uint64_t oc, std::uint64_t pac = 0)
{
    return perf_pim(kPim, WorkloadPoint(oc, pac, 48)).gops();
}

void throughput_goldens(Criterion& c)
{
    const auto oc = [](OpKind k) { return oc_of(OpSpec(k, 16)); };
    c.near(pim_gops(oc(OpKind::Add)), 728, kPaperTol, "ADD-16 GOPS");
    c.near(pim_gops(oc(OpKind::Or)), 3276, kPaperTol, "OR-16 GOPS");
    c.near(pim_gops(oc(OpKind::Mpy)), 33.8, kPaperTol, "MPY-16 GOPS");
    c.near(pim_gops(oc(OpKind::MpyLowPrec)), 67, kPaperTol, "low-precision MPY-16 GOPS");
    const auto shifted = pac_of(LayoutSpec(16, 1, true), kPim);
    c.check(shifted == 1040, "shifted-operand PAC = " + std::to_string(shifted));
    c.near(pim_gops(oc(OpKind::Add), shifted), 88, kPaperTol, "ADD-16 with PAC=1040 GOPS");
    c.near(pim_gops(oc(OpKind::Add), pac_of(LayoutSpec(16, 1, false), kPim)), 655, kPaperTol,
           "ADD-16 with PAC=16 GOPS");
}

void cpu_goldens(Criterion& c)
{
    const auto gops = [](double tbps, double dio) {
        return perf_cpu(CpuMachine::from_tbps(tbps), WorkloadPoint(1, 0, dio)).gops();
    };
    c.near(gops(4, 48), 85, kPaperTol, "4 Tbps, DIO=48 GOPS");
    c.near(gops(1, 48), 21, kPaperTol, "1 Tbps, DIO=48 GOPS");
    c.near(gops(16, 24), 682, kTbps16Tol, "16 Tbps, DIO=24 GOPS");
}

void crossover(Criterion& c)
{
    const auto x = [](double tbps, double dio) { return crossover_oc(kPim, CpuMachine::from_tbps(tbps), dio, 0); };
    c.near(x(4, 24), 614.4, kExact, "crossover OC (4 Tbps, DIO=24)");
    c.near(x(4, 24), 612, kCrossoverTol, "crossover OC vs quoted 612");
    c.near(x(1, 24), 2500, kShiftedCrossoverTol, "crossover OC (1 Tbps, DIO=24) vs ~2500");
    c.near(x(1, 48), 5000, kShiftedCrossoverTol, "crossover OC (1 Tbps, DIO=48) vs ~5000");
}

void power_caps(Criterion& c)
{
    const auto cap20 = mat_power_cap(kPim, PowerBudget(20));
    const auto cap40 = mat_power_cap(kPim, PowerBudget(40));
    c.check(cap20 == 1953, "MAT cap at 20 W = " + std::to_string(cap20));
    c.check(cap40 == 3906, "MAT cap at 40 W = " + std::to_string(cap40));
    c.near(static_cast<double>(cap20), 1950, kCapTol, "MAT cap at 20 W vs 1950");
    c.near(static_cast<double>(cap40), 3900, kCapTol, "MAT cap at 40 W vs 3900");
    const CpuMachine fast = CpuMachine::from_tbps(16);
    const WorkloadPoint w(1, 0, 24);
    c.near(pl_perf_cpu(fast, w, PowerBudget(20)).gops(), 55, kPaperTol, "CPU PL GOPS at 20 W, DIO=24");
    c.near(pl_perf_cpu(fast, w, PowerBudget(40)).gops(), 111, kPaperTol, "CPU PL GOPS at 40 W, DIO=24");
    c.near(pl_perf_cpu(fast, w, PowerBudget(160)).gops(), 444, kPaperTol, "CPU PL GOPS at 160 W, DIO=24");
}

void energy(Criterion& c)
{
    const auto v = litmus(kPim, kCpu, WorkloadPoint(1, 0, 3));
    c.near(v.energy_ratio, 450, kExact, "single-NOR energy ratio at DIO=3");
    c.near(energy_breakeven_oc(kPim, kCpu, 48, 0), 7200, kExact, "energy break-even OC at DIO=48");
}

void simulator_catalog(Criterion& c)
{
    ValidationOptions opts;
    opts.max_width = 32;
    opts.exhaustive_width = 4;
    opts.random_vectors = 1000;
    for (const auto& r : validate_catalog(opts)) {
        c.check(r.passed, r.name + " [" + r.detail + "]");
    }
    const auto mpy4 = check_operation(OpSpec(OpKind::Mpy, 4), [](const OpSpec& s) { return oc_of(s); }, opts);
    c.check(mpy4.function_ok && mpy4.vectors == 256,
            "MPY n=4 exhaustive (" + std::to_string(mpy4.vectors) + " rows), " +
                std::to_string(mpy4.simulated_cycles) + " cycles simulated (informational)");
}

void pac_agreement(Criterion& c)
{
    ValidationOptions opts;
    opts.max_width = 32;
    for (const auto& r : validate_pac(opts)) {
        c.check(r.passed, r.name + " [" + r.detail + "]");
    }
}

void model_properties(Criterion& c)
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::uint64_t> oc(1, 50000);
    std::uniform_int_distribution<std::uint64_t> pac(0, 4096);
    std::uniform_int_distribution<std::uint64_t> rows(16, 4096);
    std::uniform_real_distribution<double> log_mats(0, std::log(65536.0));
    std::uniform_real_distribution<double> dio(1, 1024);
    std::uniform_real_distribution<double> log_tdp(std::log(0.1), std::log(1000.0));
    std::uniform_real_distribution<double> ct(1, 100);
    std::uniform_real_distribution<double> epim(0.01, 1);
    std::uniform_real_distribution<double> tbps(0.1, 64);

    int mono = 0, linear = 0, bounded = 0, saturated = 0, sign = 0, linear_draws = 0, sign_draws = 0;
    for (int i = 0; i < kDraws; ++i) {
        const auto mats = static_cast<std::uint64_t>(std::exp(log_mats(rng)));
        const PimMachine pim(rows(rng), 1024, std::max<std::uint64_t>(1, mats), ct(rng), epim(rng));
        const CpuMachine cpu = CpuMachine::from_tbps(tbps(rng));
        const PowerBudget p(std::exp(log_tdp(rng)));
        const WorkloadPoint w(oc(rng), pac(rng), dio(rng));
        const WorkloadPoint more(w.oc_cycles() + 1 + oc(rng) % 1000, w.pac_cycles() + pac(rng) % 16, w.dio_bits());

        // Throughput falls as OC + PAC grows, raw and power-limited.
        mono += perf_pim(pim, more) < perf_pim(pim, w) && pl_perf_pim(pim, more, p) <= pl_perf_pim(pim, w, p) ? 1 : 0;

        // PL <= raw on both sides.
        bounded += pl_perf_pim(pim, w, p) <= perf_pim(pim, w) && pl_perf_cpu(cpu, w, p) <= perf_cpu(cpu, w) ? 1 : 0;

        // Linear in MAT up to the cap.
        const auto cap = mat_power_cap(pim, p);
        if (cap >= 2) {
            ++linear_draws;
            const std::uint64_t m1 = 1 + rng() % std::min<std::uint64_t>(cap, 1 << 20);
            const std::uint64_t m2 = 1 + rng() % std::min<std::uint64_t>(cap, 1 << 20);
            const double r = pl_perf_pim(pim.with_mats(m2), w, p).ops_per_second() /
                             pl_perf_pim(pim.with_mats(m1), w, p).ops_per_second();
            linear += std::abs(r - static_cast<double>(m2) / static_cast<double>(m1)) <=
                              1e-9 * static_cast<double>(m2) / static_cast<double>(m1)
                          ? 1
                          : 0;
        } else {
            ++linear;
        }

        // Flat beyond the cap.
        const std::uint64_t beyond = cap + 1 + rng() % 100000;
        const double flat = pl_perf_pim(pim.with_mats(beyond), w, p).ops_per_second();
        const double at_cap1 = pl_perf_pim(pim.with_mats(cap + 1), w, p).ops_per_second();
        const double capped = power_capped_pim(pim, w, p).ops_per_second();
        saturated += flat == at_cap1 && flat == capped ? 1 : 0;

        // Litmus verdict agrees with the side of the crossover the OC is on.
        const double x = crossover_oc(pim, cpu, w.dio_bits(), w.pac_cycles());
        const double o = static_cast<double>(w.oc_cycles());
        if (std::abs(o - x) > 1e-9 * std::max(1.0, std::abs(x))) {
            ++sign_draws;
            const Winner win = litmus(pim, cpu, w).winner;
            sign += (o < x) == (win == Winner::Pim) && (o > x) == (win == Winner::Cpu) ? 1 : 0;
        } else {
            ++sign;
        }
    }
    const auto line = [&](int ok, const char* what, int draws) {
        c.check(ok == kDraws, std::string(what) + ": " + std::to_string(ok) + "/" + std::to_string(kDraws) +
                                  " draws (" + std::to_string(draws) + " non-degenerate)");
    };
    line(mono, "monotone in OC + PAC", kDraws);
    line(linear, "linear in MAT below the cap", linear_draws);
    line(bounded, "PL <= raw", kDraws);
    line(saturated, "flat beyond mat_power_cap", kDraws);
    line(sign, "litmus / crossover sign consistency", sign_draws);
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

void figure2(Criterion& c)
{
    const char* argv[] = {"bitlet", "reproduce", "fig2"};
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(3, argv, out, err);
    c.check(code == 0, "reproduce fig2 exit code " + std::to_string(code));

    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::stringstream ss(out.str());
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header.empty()) {
            header = split(line);
            continue;
        }
        std::vector<double> r;
        for (const auto& cell : split(line)) {
            r.push_back(std::stod(cell));
        }
        rows.push_back(r);
    }
    const auto column = [&](const std::string& name) -> long {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return static_cast<long>(i);
            }
        }
        return -1;
    };

    // Six-significant-digit CSV values.
    constexpr double kPrint = 5e-6;
    int pairs = 0;
    int good = 0;
    double worst_steps = 0;
    for (std::uint64_t m : {1, 16, 256, 1024, 4096, 16384}) {
        const long pc = column("pim_mat" + std::to_string(m));
        c.check(pc >= 0, "PIM diagonal for MAT=" + std::to_string(m) + " present");
        if (pc < 0) {
            continue;
        }
        const PimMachine pim = kPim.with_mats(m);
        bool diagonal = true;
        for (const auto& r : rows) {
            const double want = perf_pim(pim, WorkloadPoint(static_cast<std::uint64_t>(r[0]), 0, 48)).gops();
            diagonal = diagonal && std::abs(r[static_cast<std::size_t>(pc)] - want) <= kPrint * want;
        }
        c.check(diagonal, "MAT=" + std::to_string(m) + " column equals ROW*MAT/(OC*CT)");

        for (double dio : {24.0, 48.0}) {
            for (double tbps : {1.0, 4.0, 16.0}) {
                std::ostringstream name;
                name << "cpu_dio" << dio << "_bw" << tbps << "t";
                const long cc = column(name.str());
                if (cc < 0) {
                    c.check(false, "CPU horizontal " + name.str() + " present");
                    continue;
                }
                ++pairs;
                const double x = crossover_oc(pim, CpuMachine::from_tbps(tbps), dio, 0);
                // First grid point where the PIM diagonal is at or below the CPU line.
                std::size_t i = 0;
                while (i < rows.size() && rows[i][static_cast<std::size_t>(pc)] > rows[i][static_cast<std::size_t>(cc)]) {
                    ++i;
                }
                bool ok = false;
                if (x <= rows.front()[0]) {
                    ok = i == 0;
                } else if (x > rows.back()[0]) {
                    ok = i == rows.size();
                } else if (i > 0 && i < rows.size()) {
                    const double step = rows[i][0] - rows[i - 1][0];
                    const double dev = std::abs(rows[i][0] - x) / step;
                    worst_steps = std::max(worst_steps, dev);
                    ok = dev <= 1.0;
                }
                good += ok ? 1 : 0;
                if (!ok) {
                    c.check(false, "crossing of MAT=" + std::to_string(m) + " with " + name.str() +
                                       " not within one grid step of " + std::to_string(x));
                }
            }
        }
    }
    std::ostringstream os;
    os << "crossings match crossover_oc for " << good << "/" << pairs
       << " MAT x CPU pairs (worst deviation " << worst_steps << " grid steps)";
    c.check(good == pairs && pairs == 36, os.str());
}

} // namespace

int main()
{
    std::vector<std::pair<const char*, std::function<void(Criterion&)>>> all{
        {"PIM throughput goldens", throughput_goldens},
        {"CPU throughput goldens", cpu_goldens},
        {"crossover OC and its shifts", crossover},
        {"power caps", power_caps},
        {"energy ratio and break-even", energy},
        {"simulator / catalog equivalence", simulator_catalog},
        {"PAC program / formula agreement", pac_agreement},
        {"model properties over random draws", model_properties},
        {"fig2 reproduction crossings", figure2},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Criterion c{static_cast<int>(i + 1), all[i].first};
        all[i].second(c);
        std::printf("%s  criterion %d: %s\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const auto& l : c.lines) {
            std::printf("        %s\n", l.c_str());
        }
        failed += c.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed;
}
