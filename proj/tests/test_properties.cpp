#include <doctest.h>

#include "properties.hpp"

namespace {

void check(const props::Result& r, int n) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.instances == n);
    CHECK(r.failures == 0);
}

} // namespace

TEST_CASE("range preservation") { check(props::range_preservation(1000), 1000); }
TEST_CASE("expert permutation invariance") { check(props::expert_permutation_invariance(1000), 1000); }
TEST_CASE("duplication idempotence") { check(props::duplication_idempotence(1000), 1000); }
TEST_CASE("positive scaling") { check(props::positive_scaling(1000), 1000); }
TEST_CASE("count additivity") { check(props::count_additivity(1000), 1000); }
TEST_CASE("brute-force oracle") { check(props::oracle_equivalence(2000), 2000); }
TEST_CASE("text_only reduction") { check(props::text_only_reduction(1000), 1000); }
TEST_CASE("matrix CSV round trip") { check(props::matrix_csv_round_trip(1000), 1000); }
TEST_CASE("write-time range check") { check(props::write_time_range_check(1000), 1000); }

TEST_CASE("different seeds") {
    check(props::oracle_equivalence(500, 12345), 500);
    check(props::text_only_reduction(500, 54321), 500);
}
