#include "bitlet/error.hpp"
#include "bitlet/model.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace bitlet;

namespace {

const PimMachine kPim = PimMachine::defaults();
const CpuMachine kCpu = CpuMachine::defaults();

double gops_pim(std::uint64_t oc, std::uint64_t pac = 0, const PimMachine& pim = kPim)
{
    return perf_pim(pim, WorkloadPoint(oc, pac, 48)).gops();
}

} // namespace

TEST_CASE("defaults")
{
    CHECK(kPim.rows() == 1024);
    CHECK(kPim.cols() == 1024);
    CHECK(kPim.mats() == 1024);
    CHECK(kPim.cycle_time_ns() == 10.0);
    CHECK(kPim.energy_per_cycle_pj() == 0.1);
    CHECK(kCpu.bandwidth_gbps() == 4096.0);
    CHECK(kCpu.energy_per_bit_pj() == 15.0);
    CHECK(CpuMachine::from_tbps(1).bandwidth_bps() == 1024e9);
}

TEST_CASE("pim throughput goldens")
{
    // Frozen values: 1024 * 1024 / (cycles * 10 ns).
    CHECK(gops_pim(144) == doctest::Approx(728.177777778).epsilon(1e-12));
    CHECK(gops_pim(32) == doctest::Approx(3276.8).epsilon(1e-12));
    CHECK(gops_pim(3104) == doctest::Approx(33.781443299).epsilon(1e-10));
    CHECK(gops_pim(1544) == doctest::Approx(67.912953368).epsilon(1e-10));
    CHECK(gops_pim(144, 1040) == doctest::Approx(88.562162162).epsilon(1e-10));
    CHECK(gops_pim(144, 16) == doctest::Approx(655.36).epsilon(1e-12));
    CHECK(gops_pim(1) == doctest::Approx(104857.6).epsilon(1e-12));
}

TEST_CASE("cpu throughput goldens")
{
    CHECK(perf_cpu(kCpu, WorkloadPoint(1, 0, 48)).gops() == doctest::Approx(85.333333333).epsilon(1e-10));
    CHECK(perf_cpu(CpuMachine::from_tbps(1), WorkloadPoint(1, 0, 48)).gops() ==
          doctest::Approx(21.333333333).epsilon(1e-10));
    CHECK(perf_cpu(CpuMachine::from_tbps(16), WorkloadPoint(1, 0, 24)).gops() ==
          doctest::Approx(682.666666667).epsilon(1e-10));
}

TEST_CASE("power limited goldens")
{
    CHECK(mat_power_cap(kPim, PowerBudget(20)) == 1953);
    CHECK(mat_power_cap(kPim, PowerBudget(40)) == 3906);
    CHECK(mat_power_cap(kPim, PowerBudget(std::numeric_limits<double>::infinity())) ==
          std::numeric_limits<std::uint64_t>::max());
    // Exact ratio: 0.1024 W * 10 ns / (0.1 pJ * 1024 rows) = 10 arrays.
    CHECK(mat_power_cap(kPim, PowerBudget(0.1024)) == 10);

    const WorkloadPoint w24(1, 0, 24);
    CHECK(pl_perf_cpu(kCpu, w24, PowerBudget(20)).gops() == doctest::Approx(55.555555556).epsilon(1e-10));
    CHECK(pl_perf_cpu(kCpu, w24, PowerBudget(40)).gops() == doctest::Approx(111.111111111).epsilon(1e-10));
    CHECK(pl_perf_cpu(CpuMachine::from_tbps(16), w24, PowerBudget(160)).gops() ==
          doctest::Approx(444.444444444).epsilon(1e-10));
    // 4 Tbps at DIO=24 is bandwidth-bound at 160 W.
    CHECK(pl_perf_cpu(kCpu, w24, PowerBudget(160)).gops() == doctest::Approx(170.666666667).epsilon(1e-10));

    const WorkloadPoint add(144, 0, 48);
    CHECK(power_capped_pim(kPim, add, PowerBudget(20)).gops() == doctest::Approx(1388.888888889).epsilon(1e-10));
    CHECK(pl_perf_pim(kPim, add, PowerBudget(20)) == perf_pim(kPim, add));
    CHECK(pl_perf_pim(kPim.with_mats(4096), add, PowerBudget(20)) == power_capped_pim(kPim, add, PowerBudget(20)));
}

TEST_CASE("energy per op")
{
    CHECK(energy_per_op_pim(kPim, WorkloadPoint(1, 0, 3)) == doctest::Approx(0.1));
    CHECK(energy_per_op_cpu(kCpu, WorkloadPoint(1, 0, 3)) == doctest::Approx(45.0));
    CHECK(energy_per_op_pim(kPim, WorkloadPoint(144, 1040, 48)) == doctest::Approx(118.4));
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(PimMachine(0, 1024, 1, 10, 0.1), Error);
    CHECK_THROWS_AS(PimMachine(1024, 0, 1, 10, 0.1), Error);
    CHECK_THROWS_AS(PimMachine(1024, 1024, 0, 10, 0.1), Error);
    CHECK_THROWS_AS(PimMachine(1024, 1024, 1, 0, 0.1), Error);
    CHECK_THROWS_AS(PimMachine(1024, 1024, 1, 10, -1), Error);
    CHECK_THROWS_AS(PimMachine(1024, 1024, 1, std::nan(""), 0.1), Error);
    CHECK_THROWS_AS(CpuMachine(0, 15), Error);
    CHECK_THROWS_AS(CpuMachine(1e12, 0), Error);
    CHECK_THROWS_AS(WorkloadPoint(0, 0, 48), Error);
    CHECK_THROWS_AS(WorkloadPoint(1, 0, 0.5), Error);
    CHECK_THROWS_AS(PowerBudget(0), Error);
    CHECK_THROWS_AS(PowerBudget(-5), Error);
    CHECK_THROWS_AS(Throughput(-1), Error);
    try {
        WorkloadPoint(0, 0, 48);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidParameter);
    }
}

TEST_CASE("properties over random draws")
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> oc(1, 100000);
    std::uniform_int_distribution<std::uint64_t> pac(0, 5000);
    std::uniform_int_distribution<std::uint64_t> mats(1, 20000);
    std::uniform_real_distribution<double> dio(1, 512);
    std::uniform_real_distribution<double> watts(0.5, 500);

    for (int i = 0; i < 2000; ++i) {
        const PimMachine pim = kPim.with_mats(mats(rng));
        const WorkloadPoint w(oc(rng), pac(rng), dio(rng));
        const WorkloadPoint slower(w.oc_cycles() + 1 + oc(rng) % 100, w.pac_cycles(), w.dio_bits());
        const PowerBudget p(watts(rng));

        CHECK(perf_pim(pim, slower) < perf_pim(pim, w));
        CHECK(pl_perf_pim(pim, slower, p) <= pl_perf_pim(pim, w, p));
        CHECK(pl_perf_pim(pim, w, p) <= perf_pim(pim, w));
        CHECK(pl_perf_cpu(kCpu, w, p) <= perf_cpu(kCpu, w));

        // Doubling DIO halves CPU throughput.
        const WorkloadPoint wide(w.oc_cycles(), w.pac_cycles(), 2 * w.dio_bits());
        CHECK(perf_cpu(kCpu, wide).ops_per_second() ==
              doctest::Approx(perf_cpu(kCpu, w).ops_per_second() / 2).epsilon(1e-12));
    }
}
