// Deterministic micro-benchmarks: seeded inputs, work-meter counters as the
// primary cost measure, wall time recorded but never load-bearing. Scaling
// claims are checked as fitted log-log slopes, so reports carry per-series
// fits next to the per-size medians.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace primebag {

struct BenchSpec {
    // Operation: mul, add, gcd, factor, isprime, or the synthetic calibration
    // loops poly0/poly1/poly2.
    std::string op;
    // Representation: pb, positional, decbag, mulbag, or synthetic.
    std::string repr;
    // Strictly increasing operand sizes; representation-native units (entry
    // count for pb, digit count for positional, member count for the bags).
    std::vector<std::uint64_t> sizes;
    std::uint32_t repetitions = 11; // at least 5
    // Input distribution; empty picks the representation's default
    // (random-pb-entries, random-n-digit-natural). Also accepts
    // random-n-digit-semiprime and worst-case-prime.
    std::string distribution;
    std::uint64_t seed = 1;
};

struct BenchRow {
    std::string op;
    std::string repr;
    std::uint64_t size = 0;
    std::uint64_t median_counter = 0;
    std::uint64_t median_wall_ns = 0;
    // Inter-quartile range of the counter, in counter units.
    std::uint64_t counter_iqr = 0;
    // Median bit length of the operand value, for matched-value comparisons
    // across representations measured in different native units.
    std::uint64_t value_bits = 0;
    // False when this size hit a resource ceiling; such rows carry no medians
    // and are excluded from fits.
    bool complete = true;
};

struct SeriesFit {
    std::string op;
    std::string repr;
    double slope = 0.0;
    double r2 = 1.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<SeriesFit> fits;
    // False when any series was cut short by a resource ceiling.
    bool complete = true;
};

BenchReport run_bench(const BenchSpec& spec);

// One report with a series per representation supporting the operation;
// requires at least two.
BenchReport compare_representations(const std::string& op,
                                    const std::vector<std::uint64_t>& sizes,
                                    std::uint64_t seed);

enum class ReportFormat { Csv, JsonLines };

// CSV: header "op,repr,size,counter,wall_ns,slope,r2" then one row per
// (series, size). JSON lines mirror the same seven fields.
std::string export_report(const BenchReport& report, ReportFormat format);

} // namespace primebag
