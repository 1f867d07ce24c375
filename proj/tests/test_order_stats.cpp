#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "maxmedian/error.hpp"
#include "maxmedian/order_stats.hpp"
#include "maxmedian/rng.hpp"

using maxmedian::RewardArchive;

TEST_CASE("insert and select small archives") {
    RewardArchive a;
    CHECK(a.empty());
    for (double x : {3.0, 1.0, 2.0}) a.insert(x);
    CHECK(a.size() == 3);
    CHECK(a.select(1) == 3.0);
    CHECK(a.select(2) == 2.0);
    CHECK(a.select(3) == 1.0);
    CHECK(a.max() == 3.0);
    CHECK(a.min() == 1.0);
}

TEST_CASE("duplicates are retained") {
    RewardArchive a;
    a.insert(5.0);
    a.insert(5.0);
    CHECK(a.size() == 2);
    CHECK(a.select(2) == 5.0);

    RewardArchive b;
    for (double x : {7.0, 7.0, 4.0}) b.insert(x);
    CHECK(b.select(2) == 7.0);
    CHECK(b.select(3) == 4.0);
}

TEST_CASE("rejects non-finite rewards and bad ranks") {
    RewardArchive a;
    CHECK_THROWS_AS(a.insert(std::nan("")), maxmedian::PreconditionError);
    CHECK_THROWS_AS(a.insert(std::numeric_limits<double>::infinity()), maxmedian::PreconditionError);
    CHECK(a.size() == 0);
    CHECK_THROWS_AS(a.select(1), maxmedian::RangeError);
    a.insert(1.0);
    CHECK_THROWS_AS(a.select(0), maxmedian::RangeError);
    CHECK_THROWS_AS(a.select(2), maxmedian::RangeError);
}

TEST_CASE("select matches a descending sort on random inserts") {
    maxmedian::UniformStream rng(2024);
    RewardArchive a;
    std::vector<double> all;
    for (int i = 0; i < 10000; ++i) {
        // Coarse grid so that ties actually occur.
        const double x = std::floor(rng.next() * 500.0) / 4.0;
        a.insert(x);
        all.push_back(x);
        CHECK(a.size() == all.size());
    }
    std::sort(all.begin(), all.end(), std::greater<>{});
    for (int i = 0; i < 100; ++i) {
        const auto zeta = 1 + static_cast<std::size_t>(rng.next() * all.size());
        CHECK(a.select(zeta) == all[zeta - 1]);
    }
    // Whole multiset is recoverable and select is nonincreasing.
    for (std::size_t z = 1; z <= a.size(); ++z) {
        REQUIRE(a.select(z) == all[z - 1]);
    }
}
