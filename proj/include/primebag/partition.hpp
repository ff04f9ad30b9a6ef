// Weight-n bags are the partitions of n (member index = part). Enumeration,
// counting, the Hardy-Ramanujan asymptotic, and the well-ordered generation
// stream that grows each weight level out of the previous one.
#pragma once

#include <cstdint>
#include <vector>

#include "primebag/prime_bag.hpp"
#include "primebag/real.hpp"

namespace primebag {

struct PartitionConfig {
    // enumerate_weight(n) returns P(n) bags; P(60) is already near 10^6.
    std::uint64_t enumeration_ceiling = 60;
};

// Parts in descending order; sum = weight.
using Partition = std::vector<std::uint64_t>;

Partition partition_of(const PrimeBag& a);   // natural bags only
PrimeBag bag_of_partition(const Partition& parts);

// Total interior brace pairs: sum of k * m_k. Natural bags only.
BigInt weight(const PrimeBag& a);

// All bags of weight n, reverse-lexicographic by partition (largest part
// first), so the singleton {n} — the only prime in the group — leads.
std::vector<PrimeBag> enumerate_weight(std::uint64_t n, const PartitionConfig& cfg = {});

// P(n), exact. The DP over parts; tests pin it against the pentagonal
// recurrence.
BigInt partition_count(std::uint64_t n);

// exp(pi*sqrt(2n/3)) / (4n*sqrt(3)), the leading Hardy-Ramanujan term.
Real hr_estimate(std::uint64_t n, unsigned long precision_bits = 128);

// Provenance of one generated bag: how it is reached from weight n-1.
enum class GenRule {
    Seed,  // the empty bag at weight 0
    Rule1, // prepend a member {} (index 1)
    Rule2  // increment one member's index
};

struct GeneratedPB {
    std::uint64_t weight = 0;
    PrimeBag bag;
    GenRule rule = GenRule::Seed;
    // Rule1: 1 (the index added). Rule2: the member index after increment,
    // chosen as the smallest part for determinism.
    PrimeIndex changed = 0;
};

// Streams weight groups 0,1,...,max_weight, each in enumerate_weight order,
// without holding more than the current partition in memory.
class OrderedGenerator {
public:
    explicit OrderedGenerator(std::uint64_t max_weight, const PartitionConfig& cfg = {});

    // False once the stream is exhausted.
    bool next(GeneratedPB& out);

private:
    std::uint64_t max_weight_;
    std::uint64_t weight_ = 0;
    bool level_started_ = false;
    bool done_ = false;
    Partition current_;
};

} // namespace primebag
