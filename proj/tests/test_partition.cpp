#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "primebag/convert.hpp"
#include "primebag/errors.hpp"
#include "primebag/order.hpp"
#include "primebag/partition.hpp"

#include "oracle.hpp"

using namespace primebag;

namespace {

std::vector<std::string> level_strings(std::uint64_t n) {
    std::vector<std::string> out;
    for (const PrimeBag& bag : enumerate_weight(n))
        out.push_back(format_pb(bag));
    return out;
}

} // namespace

TEST_CASE("weight counts interior brace pairs") {
    CHECK(weight(parse_pb("{}")) == 0);
    CHECK(weight(parse_pb("{2,1}")) == 3);
    CHECK(weight(parse_pb("{1,1,1}")) == 3);
    CHECK(weight(parse_pb("{4}")) == 4);
    CHECK(weight(parse_pb("{3:5}")) == 15);
    CHECK(weight(parse_pb("{10,7,7,1}")) == 25);

    CHECK_THROWS_AS(weight(parse_pb("-{1}")), ModeError);
    CHECK_THROWS_AS(weight(parse_pb("i{1}")), ModeError);
    CHECK_THROWS_AS(weight(parse_pb("{1:1/2}")), ModeError);
    CHECK_THROWS_AS(weight(parse_pb("{-1}")), ModeError);
    CHECK_THROWS_AS(weight(parse_pb("0")), ModeError);
    CHECK_THROWS_AS(weight(parse_pb("inf")), ModeError);
}

TEST_CASE("partition round trip") {
    PrimeBag bag = parse_pb("{5,3,3,1}");
    Partition parts = partition_of(bag);
    CHECK(parts == Partition{5, 3, 3, 1});
    CHECK(bag_of_partition(parts) == bag);

    CHECK(partition_of(parse_pb("{}")).empty());
    CHECK(bag_of_partition({}) == PrimeBag::one());
    CHECK_THROWS_AS(bag_of_partition({3, 0}), DomainError);
    CHECK_THROWS_AS(partition_of(parse_pb("-{1}")), ModeError);
}

TEST_CASE("enumerate_weight(4) in reverse-lex order with the documented values") {
    std::vector<PrimeBag> level = enumerate_weight(4);
    REQUIRE(level.size() == 5);
    CHECK(format_pb(level[0]) == "{4}");
    CHECK(format_pb(level[1]) == "{3,1}");
    CHECK(format_pb(level[2]) == "{2,2}");
    CHECK(format_pb(level[3]) == "{2,1,1}");
    CHECK(format_pb(level[4]) == "{1,1,1,1}");

    std::vector<long> expected_values{7, 10, 9, 12, 16};
    for (std::size_t i = 0; i < level.size(); ++i)
        CHECK(pb_to_rational(level[i]) == Rational(expected_values[i]));
}

TEST_CASE("weight groups: size, leading singleton, unique primes") {
    for (std::uint64_t n = 1; n <= 40; ++n) {
        std::vector<PrimeBag> level = enumerate_weight(n);
        CHECK(BigInt(level.size()) == partition_count(n));

        // Reverse-lex starts at the one-part partition, the only prime.
        CHECK(level.front() == PrimeBag::from_index(n, 1));
        std::size_t primes = 0;
        for (const PrimeBag& bag : level) {
            CHECK(weight(bag) == BigInt(n));
            if (is_prime_pb(bag))
                ++primes;
        }
        CHECK(primes == 1);
    }
    CHECK(enumerate_weight(0).size() == 1);
    CHECK(enumerate_weight(0).front() == PrimeBag::one());
}

TEST_CASE("partitions are distinct and descending") {
    for (std::uint64_t n = 1; n <= 12; ++n) {
        std::set<std::string> seen;
        for (const PrimeBag& bag : enumerate_weight(n)) {
            Partition parts = partition_of(bag);
            std::uint64_t total = 0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                total += parts[i];
                if (i > 0)
                    CHECK(parts[i] <= parts[i - 1]);
            }
            CHECK(total == n);
            CHECK(seen.insert(format_pb(bag)).second);
        }
    }
}

TEST_CASE("values within a weight group are distinct") {
    for (std::uint64_t n : {10, 15, 20}) {
        std::set<Rational> values;
        for (const PrimeBag& bag : enumerate_weight(n))
            CHECK(values.insert(pb_to_rational(bag)).second);
    }
}

TEST_CASE("enumeration ceiling") {
    CHECK_THROWS_AS(enumerate_weight(61), ResourceError);
    PartitionConfig tight;
    tight.enumeration_ceiling = 10;
    CHECK_THROWS_AS(enumerate_weight(11, tight), ResourceError);
    CHECK(enumerate_weight(10, tight).size() == 42);
}

TEST_CASE("partition_count against the pentagonal recurrence") {
    std::vector<BigInt> table = oracle::partition_table(200);
    for (std::uint64_t n = 0; n <= 200; ++n)
        CHECK(partition_count(n) == table[n]);

    std::vector<long> first{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (std::uint64_t n = 0; n <= 10; ++n)
        CHECK(partition_count(n) == BigInt(first[n]));

    CHECK(partition_count(100) == BigInt(190569292));
    CHECK(partition_count(500) == BigInt("2300165032574323995027"));
    // Past the reach of 64-bit counters.
    CHECK(mpz_sizeinbase(partition_count(500).get_mpz_t(), 2) > 64);
}

TEST_CASE("weight is additive under mul") {
    std::vector<std::vector<PrimeBag>> levels;
    for (std::uint64_t n = 0; n <= 8; ++n)
        levels.push_back(enumerate_weight(n));
    for (std::uint64_t i = 0; i <= 8; ++i)
        for (std::uint64_t j = 0; i + j <= 8; ++j)
            for (const PrimeBag& a : levels[i])
                for (const PrimeBag& b : levels[j])
                    CHECK(weight(mul(a, b)) == BigInt(i + j));
}

TEST_CASE("hr_estimate tracks the exact counts") {
    CHECK(hr_estimate(1).to_double() == doctest::Approx(1.8766).epsilon(1e-3));
    CHECK(hr_estimate(100).to_double() == doctest::Approx(1.993e8).epsilon(1e-3));

    auto ratio = [](std::uint64_t n) {
        Rational exact(partition_count(n));
        return hr_estimate(n).to_double() / mpq_get_d(exact.get_mpq_t());
    };
    double r50 = ratio(50);
    double r500 = ratio(500);
    CHECK(std::fabs(r500 - 1.0) < 0.12);
    CHECK(std::fabs(r500 - 1.0) < std::fabs(r50 - 1.0));
    // The estimate approaches from above.
    CHECK(r50 > 1.0);
    CHECK(r500 > 1.0);

    CHECK(hr_estimate(10, 50).to_double() == doctest::Approx(48.104).epsilon(1e-3));
    CHECK_THROWS_AS(hr_estimate(0), DomainError);
    CHECK_THROWS_AS(hr_estimate(10, 49), DomainError);
}

TEST_CASE("ordered generation: golden stream to weight 2") {
    OrderedGenerator gen(2);
    GeneratedPB item;

    REQUIRE(gen.next(item));
    CHECK(item.weight == 0);
    CHECK(format_pb(item.bag) == "{}");
    CHECK(item.rule == GenRule::Seed);

    REQUIRE(gen.next(item));
    CHECK(item.weight == 1);
    CHECK(format_pb(item.bag) == "{1}");
    CHECK(item.rule == GenRule::Rule1);
    CHECK(item.changed == 1);

    REQUIRE(gen.next(item));
    CHECK(item.weight == 2);
    CHECK(format_pb(item.bag) == "{2}");
    CHECK(item.rule == GenRule::Rule2);
    CHECK(item.changed == 2);

    REQUIRE(gen.next(item));
    CHECK(item.weight == 2);
    CHECK(format_pb(item.bag) == "{1,1}");
    CHECK(item.rule == GenRule::Rule1);
    CHECK(item.changed == 1);

    CHECK_FALSE(gen.next(item));
    CHECK_FALSE(gen.next(item));
}

TEST_CASE("ordered generation matches enumerate_weight level by level") {
    const std::uint64_t max_weight = 12;
    OrderedGenerator gen(max_weight);
    GeneratedPB item;
    std::uint64_t expected_total = 0;
    std::vector<std::vector<std::string>> levels;
    for (std::uint64_t n = 0; n <= max_weight; ++n) {
        levels.push_back(level_strings(n));
        expected_total += levels.back().size();
    }

    std::uint64_t seen = 0;
    std::uint64_t level = 0;
    std::size_t pos = 0;
    while (gen.next(item)) {
        if (pos == levels[level].size()) {
            ++level;
            pos = 0;
        }
        REQUIRE(level <= max_weight);
        CHECK(item.weight == level);
        CHECK(format_pb(item.bag) == levels[level][pos]);
        ++pos;
        ++seen;
    }
    CHECK(seen == expected_total);
    CHECK(level == max_weight);
    CHECK(pos == levels[max_weight].size());
}

TEST_CASE("every generated bag descends from the previous weight level") {
    const std::uint64_t max_weight = 10;
    std::vector<std::set<std::string>> levels;
    for (std::uint64_t n = 0; n <= max_weight; ++n) {
        std::vector<std::string> strings = level_strings(n);
        levels.emplace_back(strings.begin(), strings.end());
    }

    OrderedGenerator gen(max_weight);
    GeneratedPB item;
    while (gen.next(item)) {
        if (item.weight == 0) {
            CHECK(item.rule == GenRule::Seed);
            continue;
        }
        PrimeBag predecessor = item.bag;
        if (item.rule == GenRule::Rule1) {
            CHECK(item.changed == 1);
            predecessor.set_multiplicity(1, predecessor.multiplicity_of(1) - 1);
        } else {
            REQUIRE(item.rule == GenRule::Rule2);
            REQUIRE(item.changed >= 2);
            predecessor.set_multiplicity(item.changed,
                                         predecessor.multiplicity_of(item.changed) - 1);
            predecessor.set_multiplicity(item.changed - 1,
                                         predecessor.multiplicity_of(item.changed - 1) + 1);
            // The forward direction is exactly a member increment.
            CHECK(increment_member(predecessor, item.changed - 1) == item.bag);
        }
        CHECK(weight(predecessor) == BigInt(item.weight - 1));
        CHECK(levels[item.weight - 1].count(format_pb(predecessor)) == 1);
    }
}

TEST_CASE("generator ceiling and degenerate stream") {
    CHECK_THROWS_AS(OrderedGenerator(61), ResourceError);
    PartitionConfig tight;
    tight.enumeration_ceiling = 5;
    CHECK_THROWS_AS(OrderedGenerator(6, tight), ResourceError);

    OrderedGenerator empty(0);
    GeneratedPB item;
    REQUIRE(empty.next(item));
    CHECK(item.weight == 0);
    CHECK(item.bag == PrimeBag::one());
    CHECK_FALSE(empty.next(item));
}
