#include "primebag/partition.hpp"

#include <algorithm>

#include <mpfr.h>

#include "primebag/errors.hpp"
#include "primebag/work_meter.hpp"

namespace primebag {

namespace {

void require_natural(const PrimeBag& a, const char* op) {
    if (classify(a) != NumberClass::NaturalPB)
        throw ModeError(std::string(op) + ": defined for natural bags only");
}

// Advance `parts` to the next partition of the same total in reverse-lex
// order. Returns false from the all-ones partition (the last one).
bool next_partition(Partition& parts) {
    std::size_t i = parts.size();
    while (i > 0 && parts[i - 1] == 1)
        --i;
    if (i == 0)
        return false;
    --i;
    std::uint64_t cap = parts[i] - 1;
    std::uint64_t rem = parts.size() - i; // the freed unit plus the trailing 1s
    parts.resize(i);
    parts.push_back(cap);
    while (rem > 0) {
        std::uint64_t part = std::min(cap, rem);
        parts.push_back(part);
        rem -= part;
    }
    return true;
}

} // namespace

Partition partition_of(const PrimeBag& a) {
    require_natural(a, "partition_of");
    Partition parts;
    for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it) {
        if (!it->second.get_num().fits_ulong_p())
            throw ResourceError("partition_of: multiplicity too large to expand");
        unsigned long reps = mpz_get_ui(it->second.get_num().get_mpz_t());
        for (unsigned long r = 0; r < reps; ++r)
            parts.push_back(it->first);
    }
    return parts;
}

PrimeBag bag_of_partition(const Partition& parts) {
    PrimeBag out = PrimeBag::one();
    for (std::uint64_t part : parts) {
        if (part == 0)
            throw DomainError("bag_of_partition: parts must be positive");
        out.set_multiplicity(part, out.multiplicity_of(part) + 1);
    }
    return out;
}

BigInt weight(const PrimeBag& a) {
    require_natural(a, "weight");
    BigInt total = 0;
    for (const auto& [index, mult] : a.entries) {
        work_add(1);
        total += BigInt(index) * mult.get_num();
    }
    return total;
}

std::vector<PrimeBag> enumerate_weight(std::uint64_t n, const PartitionConfig& cfg) {
    if (n > cfg.enumeration_ceiling)
        throw ResourceError("enumerate_weight: weight exceeds the enumeration ceiling");
    std::vector<PrimeBag> out;
    if (n == 0) {
        out.push_back(PrimeBag::one());
        return out;
    }
    Partition parts{n};
    do {
        work_add(1);
        out.push_back(bag_of_partition(parts));
    } while (next_partition(parts));
    return out;
}

BigInt partition_count(std::uint64_t n) {
    // ways[j] = partitions of j into parts <= current k.
    std::vector<BigInt> ways(n + 1, BigInt(0));
    ways[0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k)
        for (std::uint64_t j = k; j <= n; ++j) {
            work_add(1);
            ways[j] += ways[j - k];
        }
    return ways[n];
}

Real hr_estimate(std::uint64_t n, unsigned long precision_bits) {
    if (n == 0)
        throw DomainError("hr_estimate: n must be positive");
    if (precision_bits < 50)
        throw DomainError("hr_estimate: needs at least 50 bits of precision");
    Real out(precision_bits);
    mpfr_t pi, t;
    mpfr_init2(pi, precision_bits + 16);
    mpfr_init2(t, precision_bits + 16);
    mpfr_const_pi(pi, MPFR_RNDN);
    // t = sqrt(2n/3)
    mpfr_set_ui(t, 2 * n, MPFR_RNDN);
    mpfr_div_ui(t, t, 3, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_mul(t, t, pi, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    // pi reused as the denominator 4n*sqrt(3).
    mpfr_sqrt_ui(pi, 3, MPFR_RNDN);
    mpfr_mul_ui(pi, pi, 4 * n, MPFR_RNDN);
    mpfr_div(t, t, pi, MPFR_RNDN);
    mpfr_set(out.get(), t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(pi);
    return out;
}

OrderedGenerator::OrderedGenerator(std::uint64_t max_weight, const PartitionConfig& cfg)
    : max_weight_(max_weight) {
    if (max_weight > cfg.enumeration_ceiling)
        throw ResourceError("OrderedGenerator: max weight exceeds the enumeration ceiling");
}

bool OrderedGenerator::next(GeneratedPB& out) {
    if (done_)
        return false;
    if (weight_ == 0) {
        out = GeneratedPB{0, PrimeBag::one(), GenRule::Seed, 0};
        weight_ = 1;
        level_started_ = false;
        if (max_weight_ == 0)
            done_ = true;
        return true;
    }
    if (!level_started_) {
        current_ = Partition{weight_};
        level_started_ = true;
    } else if (!next_partition(current_)) {
        ++weight_;
        if (weight_ > max_weight_) {
            done_ = true;
            return false;
        }
        current_ = Partition{weight_};
    }
    work_add(1);
    out.weight = weight_;
    out.bag = bag_of_partition(current_);
    std::uint64_t smallest = current_.back();
    if (smallest == 1) {
        // Drop one of the 1s and the weight-(n-1) predecessor remains.
        out.rule = GenRule::Rule1;
        out.changed = 1;
    } else {
        // Decrement the smallest part to reach the predecessor; the stream
        // reads it back as that member incremented.
        out.rule = GenRule::Rule2;
        out.changed = smallest;
    }
    if (weight_ == max_weight_ && std::all_of(current_.begin(), current_.end(),
                                              [](std::uint64_t p) { return p == 1; }))
        done_ = true;
    return true;
}

} // namespace primebag
