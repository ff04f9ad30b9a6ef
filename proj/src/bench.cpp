#include "primebag/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>

#include "primebag/altreps.hpp"
#include "primebag/convert.hpp"
#include "primebag/errors.hpp"
#include "primebag/positional.hpp"
#include "primebag/prime_bag.hpp"
#include "primebag/primes.hpp"
#include "primebag/work_meter.hpp"

namespace primebag {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t rep_seed(const BenchSpec& spec, std::uint64_t size, std::uint32_t rep) {
    std::uint64_t h = spec.seed;
    for (char c : spec.op)
        h = mix64(h ^ static_cast<std::uint64_t>(c));
    for (char c : spec.repr)
        h = mix64(h ^ static_cast<std::uint64_t>(c));
    return mix64(mix64(h ^ size) ^ rep);
}

// ---- seeded input generators ------------------------------------------------

PrimeBag random_entry_bag(std::mt19937_64& rng, std::uint64_t entries) {
    PrimeBag out = PrimeBag::one();
    std::uniform_int_distribution<std::uint64_t> index_dist(1, 2 * entries);
    std::uniform_int_distribution<int> mult_dist(1, 3);
    while (out.entries.size() < entries) {
        PrimeIndex k = index_dist(rng);
        if (out.multiplicity_of(k) == 0)
            out.set_multiplicity(k, mult_dist(rng));
    }
    return out;
}

BigInt random_digit_natural(std::mt19937_64& rng, std::uint64_t digits) {
    std::uniform_int_distribution<int> digit_dist(0, 9);
    std::uniform_int_distribution<int> lead_dist(1, 9);
    std::string text;
    text.reserve(digits);
    text.push_back(static_cast<char>('0' + lead_dist(rng)));
    for (std::uint64_t i = 1; i < digits; ++i)
        text.push_back(static_cast<char>('0' + digit_dist(rng)));
    return BigInt(text);
}

BigInt random_prime_of_digits(std::mt19937_64& rng, std::uint64_t digits) {
    BigInt candidate = random_digit_natural(rng, digits);
    if (candidate < 2)
        candidate = 2;
    if (candidate % 2 == 0)
        candidate += 1;
    while (!is_prime_natural(candidate))
        candidate += 2;
    return candidate;
}

BigInt random_semiprime(std::mt19937_64& rng, std::uint64_t digits) {
    std::uint64_t half = digits / 2;
    if (half == 0)
        half = 1;
    return random_prime_of_digits(rng, half) * random_prime_of_digits(rng, digits - half);
}

std::uint64_t bit_length(const BigInt& n) {
    if (n == 0)
        return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::uint64_t pb_value_bits(const PrimeBag& a) {
    // Entry bags used here are natural with small indices; the exact value is
    // cheap to reconstruct for the size record.
    Rational q = pb_to_rational(a);
    return bit_length(BigInt(q.get_num()));
}

// ---- per-operation measurement ----------------------------------------------

struct Sample {
    std::uint64_t counter = 0;
    std::uint64_t wall_ns = 0;
    std::uint64_t value_bits = 0;
};

template <typename Fn>
Sample timed(std::uint64_t value_bits, Fn&& fn) {
    Sample out;
    out.value_bits = value_bits;
    WorkScope scope;
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    out.counter = std::max<std::uint64_t>(scope.elapsed(), 1);
    out.wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    return out;
}

Sample measure_once(const BenchSpec& spec, std::uint64_t size, std::uint32_t rep) {
    std::mt19937_64 rng(rep_seed(spec, size, rep));
    const std::string& op = spec.op;
    const std::string& repr = spec.repr;

    if (op == "poly0" || op == "poly1" || op == "poly2") {
        // Calibration loops of known polynomial cost.
        std::uint64_t inner = op == "poly0" ? 1 : op == "poly1" ? size : size * size;
        return timed(0, [&] {
            for (std::uint64_t i = 0; i < inner; ++i)
                work_add(16);
        });
    }

    if (repr == "pb") {
        if (op == "factor") {
            PrimeBag a = random_entry_bag(rng, size);
            return timed(pb_value_bits(a), [&] { factor_pb(a); });
        }
        if (op == "isprime") {
            PrimeBag a = random_entry_bag(rng, size);
            return timed(pb_value_bits(a), [&] { is_prime_pb(a); });
        }
        if (op == "mul" || op == "gcd") {
            PrimeBag a = random_entry_bag(rng, size);
            PrimeBag b = random_entry_bag(rng, size);
            std::uint64_t bits = std::max(pb_value_bits(a), pb_value_bits(b));
            if (op == "mul")
                return timed(bits, [&] { mul(a, b); });
            return timed(bits, [&] { gcd(a, b); });
        }
        if (op == "add") {
            // Addition leaves the bag world: convert, add, factor back. The
            // operands are bags of matched value magnitude (n digits).
            ConvertConfig cfg;
            cfg.rho_seed = rep_seed(spec, size, rep ^ 0x5add);
            BigInt na = random_digit_natural(rng, size);
            BigInt nb = random_digit_natural(rng, size);
            PrimeBag a = natural_to_pb(na, nullptr, cfg);
            PrimeBag b = natural_to_pb(nb, nullptr, cfg);
            std::uint64_t bits = std::max(bit_length(na), bit_length(nb));
            return timed(bits, [&] { add(a, b, nullptr, cfg); });
        }
    }

    if (repr == "positional") {
        if (op == "factor") {
            ConvertConfig cfg;
            cfg.rho_seed = rep_seed(spec, size, rep ^ 0xfac);
            BigInt n = spec.distribution == "worst-case-prime"
                           ? random_prime_of_digits(rng, size)
                           : random_semiprime(rng, size);
            return timed(bit_length(n), [&] { natural_to_pb(n, nullptr, cfg); });
        }
        if (op == "isprime") {
            BigInt n = spec.distribution == "worst-case-prime"
                           ? random_prime_of_digits(rng, size)
                           : random_digit_natural(rng, size);
            std::uint64_t seed = rep_seed(spec, size, rep ^ 0x1539);
            return timed(bit_length(n), [&] { is_prime_natural(n, seed); });
        }
        Digits a = digits_of(random_digit_natural(rng, size));
        Digits b = digits_of(random_digit_natural(rng, size));
        std::uint64_t bits = std::max(bit_length(digits_value(a)), bit_length(digits_value(b)));
        if (op == "mul")
            return timed(bits, [&] { positional_mul(a, b); });
        if (op == "add")
            return timed(bits, [&] { positional_add(a, b); });
        if (op == "gcd")
            return timed(bits, [&] { positional_gcd(a, b); });
    }

    if (repr == "decbag") {
        DecBag a = decbag_from_natural(random_digit_natural(rng, size));
        DecBag b = decbag_from_natural(random_digit_natural(rng, size));
        std::uint64_t bits = std::max(bit_length(decbag_value(a)), bit_length(decbag_value(b)));
        if (op == "mul")
            return timed(bits, [&] { decbag_mul(a, b); });
        if (op == "add")
            return timed(bits, [&] { decbag_add(a, b); });
    }

    if (repr == "mulbag") {
        if (op == "mul") {
            std::uniform_int_distribution<std::uint64_t> member_dist(2, 1000);
            MulBag a;
            MulBag b;
            for (std::uint64_t i = 0; i < size; ++i) {
                a.members[member_dist(rng)] += 1;
                b.members[member_dist(rng)] += 1;
            }
            std::uint64_t bits = std::max(bit_length(mulbag_value(a)), bit_length(mulbag_value(b)));
            return timed(bits, [&] { mulbag_mul(a, b); });
        }
    }

    throw DomainError("run_bench: unsupported operation '" + op + "' for representation '" +
                      repr + "'");
}

std::uint64_t quantile(std::vector<std::uint64_t>& v, double q) {
    std::sort(v.begin(), v.end());
    std::size_t i = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1));
    return v[i];
}

SeriesFit fit_series(const BenchSpec& spec, const std::vector<BenchRow>& rows) {
    SeriesFit fit;
    fit.op = spec.op;
    fit.repr = spec.repr;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const BenchRow& row : rows) {
        if (!row.complete || row.op != spec.op || row.repr != spec.repr)
            continue;
        xs.push_back(std::log(static_cast<double>(row.size)));
        ys.push_back(std::log(static_cast<double>(row.median_counter)));
    }
    std::size_t n = xs.size();
    if (n < 2)
        return fit;
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    // A perfectly flat series has nothing left to explain; call that a
    // perfect fit rather than dividing by zero.
    if (syy <= 1e-12) {
        fit.r2 = 1.0;
        return fit;
    }
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double predicted = my + fit.slope * (xs[i] - mx);
        ss_res += (ys[i] - predicted) * (ys[i] - predicted);
    }
    fit.r2 = 1.0 - ss_res / syy;
    return fit;
}

void validate(const BenchSpec& spec) {
    if (spec.sizes.empty())
        throw DomainError("run_bench: size ladder is empty");
    for (std::size_t i = 1; i < spec.sizes.size(); ++i)
        if (spec.sizes[i] <= spec.sizes[i - 1])
            throw DomainError("run_bench: size ladder must be strictly increasing");
    if (spec.repetitions < 5)
        throw DomainError("run_bench: need at least 5 repetitions");
}

void run_series(const BenchSpec& spec, BenchReport& report) {
    validate(spec);
    for (std::uint64_t size : spec.sizes) {
        BenchRow row;
        row.op = spec.op;
        row.repr = spec.repr;
        row.size = size;
        std::vector<std::uint64_t> counters;
        std::vector<std::uint64_t> walls;
        std::vector<std::uint64_t> bits;
        bool ceiling_hit = false;
        for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
            try {
                Sample s = measure_once(spec, size, rep);
                counters.push_back(s.counter);
                walls.push_back(s.wall_ns);
                bits.push_back(s.value_bits);
            } catch (const ResourceError&) {
                ceiling_hit = true;
                break;
            }
        }
        if (ceiling_hit) {
            // The ladder stops here; the report says so instead of guessing.
            row.complete = false;
            report.rows.push_back(row);
            report.complete = false;
            break;
        }
        row.median_counter = quantile(counters, 0.5);
        row.median_wall_ns = quantile(walls, 0.5);
        row.counter_iqr = quantile(counters, 0.75) - quantile(counters, 0.25);
        row.value_bits = quantile(bits, 0.5);
        report.rows.push_back(row);
    }
    report.fits.push_back(fit_series(spec, report.rows));
}

const std::vector<std::string>& representations_for(const std::string& op) {
    static const std::vector<std::string> mul_reprs{"pb", "positional", "decbag", "mulbag"};
    static const std::vector<std::string> add_reprs{"pb", "positional", "decbag"};
    static const std::vector<std::string> two_reprs{"pb", "positional"};
    static const std::vector<std::string> none{};
    if (op == "mul")
        return mul_reprs;
    if (op == "add")
        return add_reprs;
    if (op == "gcd" || op == "factor" || op == "isprime")
        return two_reprs;
    return none;
}

} // namespace

BenchReport run_bench(const BenchSpec& spec) {
    BenchReport report;
    run_series(spec, report);
    return report;
}

BenchReport compare_representations(const std::string& op,
                                    const std::vector<std::uint64_t>& sizes,
                                    std::uint64_t seed) {
    const std::vector<std::string>& reprs = representations_for(op);
    if (reprs.size() < 2)
        throw DomainError("compare_representations: operation '" + op +
                          "' is not available in two representations");
    BenchReport report;
    for (const std::string& repr : reprs) {
        BenchSpec spec;
        spec.op = op;
        spec.repr = repr;
        spec.sizes = sizes;
        spec.seed = seed;
        run_series(spec, report);
    }
    return report;
}

std::string export_report(const BenchReport& report, ReportFormat format) {
    std::string out;
    auto fit_for = [&](const BenchRow& row) -> const SeriesFit* {
        for (const SeriesFit& fit : report.fits)
            if (fit.op == row.op && fit.repr == row.repr)
                return &fit;
        return nullptr;
    };
    auto real = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return std::string(buf);
    };
    if (format == ReportFormat::Csv)
        out += "op,repr,size,counter,wall_ns,slope,r2\n";
    for (const BenchRow& row : report.rows) {
        const SeriesFit* fit = fit_for(row);
        double slope = fit ? fit->slope : 0.0;
        double r2 = fit ? fit->r2 : 1.0;
        char buf[256];
        if (format == ReportFormat::Csv) {
            std::snprintf(buf, sizeof buf, "%s,%s,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%s,%s\n",
                          row.op.c_str(), row.repr.c_str(), row.size, row.median_counter,
                          row.median_wall_ns, real(slope).c_str(), real(r2).c_str());
        } else {
            std::snprintf(buf, sizeof buf,
                          "{\"op\":\"%s\",\"repr\":\"%s\",\"size\":%" PRIu64
                          ",\"counter\":%" PRIu64 ",\"wall_ns\":%" PRIu64
                          ",\"slope\":%s,\"r2\":%s}\n",
                          row.op.c_str(), row.repr.c_str(), row.size, row.median_counter,
                          row.median_wall_ns, real(slope).c_str(), real(r2).c_str());
        }
        out += buf;
    }
    return out;
}

} // namespace primebag
