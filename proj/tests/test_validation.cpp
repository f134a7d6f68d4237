#include "bitlet/validation.hpp"

#include <doctest.h>

using namespace bitlet;

namespace {

const CatalogFn kCatalog = [](const OpSpec& s) { return oc_of(s); };

} // namespace

TEST_CASE("operation checks")
{
    ValidationOptions opts;
    const auto add = check_operation(OpSpec(OpKind::Add, 4), kCatalog, opts);
    CHECK(add.function_ok);
    CHECK(add.cycles_match);
    CHECK(add.vectors == 512);

    const auto wide = check_operation(OpSpec(OpKind::Xor, 32), kCatalog, opts);
    CHECK(wide.function_ok);
    CHECK(wide.vectors == 1000);

    const auto mpy = check_operation(OpSpec(OpKind::Mpy, 4), kCatalog, opts);
    CHECK(mpy.function_ok);
    CHECK(mpy.cycles_informational);
    CHECK(mpy.simulated_cycles == 133);
    CHECK(*mpy.catalog_cycles == 152);

    const auto f4 = check_operation(OpSpec(OpKind::AddFanin4, 5), kCatalog, opts);
    CHECK(f4.function_ok);
    CHECK(f4.simulated_cycles == 40);
    CHECK_FALSE(f4.cycles_match);

    const auto mpy1 = check_operation(OpSpec(OpKind::Mpy, 1), kCatalog, opts);
    CHECK(mpy1.function_ok);
    CHECK_FALSE(mpy1.catalog_cycles.has_value());
}

TEST_CASE("a wrong catalog entry is caught")
{
    const CatalogFn off_by_one = [](const OpSpec& s) {
        return s.kind() == OpKind::And ? oc_of(s) + 1 : oc_of(s);
    };
    ValidationOptions opts;
    opts.max_width = 6;
    const auto results = validate_catalog(off_by_one, opts);
    CHECK_FALSE(all_passed(results));
    for (const auto& r : results) {
        const bool and_cycles = r.name.rfind("AND cycles", 0) == 0;
        const bool fanin4_cycles = r.name.rfind("ADD_FANIN4 cycles", 0) == 0;
        CAPTURE(r.name);
        CHECK(r.passed == !(and_cycles || fanin4_cycles));
    }
}

TEST_CASE("pac suite")
{
    ValidationOptions opts;
    opts.max_width = 8;
    const auto results = validate_pac(opts);
    CHECK(results.size() == 4);
    CHECK(all_passed(results));
}
