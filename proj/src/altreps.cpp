#include "primebag/altreps.hpp"

#include <charconv>
#include <iterator>

#include "primebag/errors.hpp"
#include "primebag/primes.hpp"
#include "primebag/work_meter.hpp"

namespace primebag {

namespace {

// Formatting repeats every member, so runaway bags (a few cross-product
// multiplications square the member count) get a clean error instead of a
// gigabyte string.
constexpr std::uint64_t kFormatMemberCap = 10000;

using Counts = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw ResourceError(std::string(what) + ": member count overflow");
    return out;
}

Counts parse_members(std::string_view text, std::uint64_t cap, const char* what) {
    Counts counts;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError(std::string(what) + ": " + msg);
    };
    if (pos >= text.size() || text[pos] != '{')
        fail("expected '{'");
    ++pos;
    if (pos < text.size() && text[pos] == '}') {
        ++pos;
    } else {
        while (true) {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
                ++pos;
            if (pos == start)
                fail("expected a decimal member");
            if (text[start] == '0' && pos - start > 1)
                fail("leading zeros are not allowed");
            std::uint64_t member = 0;
            auto res = std::from_chars(text.data() + start, text.data() + pos, member);
            if (res.ec != std::errc())
                fail("member does not fit in 64 bits");
            if (member > cap)
                throw ResourceError(std::string(what) + ": member exceeds the configured cap");
            counts[member] = checked_add(counts[member], 1, what);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == '}') {
                ++pos;
                break;
            }
            fail("expected ',' or '}'");
        }
    }
    if (pos != text.size())
        fail("trailing input after '}'");
    return counts;
}

std::string format_members(const Counts& counts, const char* what) {
    std::uint64_t total = 0;
    for (const auto& [member, copies] : counts)
        total = checked_add(total, copies, what);
    if (total > kFormatMemberCap)
        throw ResourceError(std::string(what) + ": too many members to format");
    std::string out = "{";
    bool first = true;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        for (std::uint64_t r = 0; r < it->second; ++r) {
            if (!first)
                out += ',';
            first = false;
            out += std::to_string(it->first);
        }
    out += '}';
    return out;
}

std::uint64_t count_members(const Counts& counts, const char* what) {
    std::uint64_t total = 0;
    for (const auto& [member, copies] : counts)
        total = checked_add(total, copies, what);
    return total;
}

// Prime factorization of a small member by trial division.
Counts factor_member(std::uint64_t m) {
    Counts factors;
    for (std::uint64_t d = 2; d * d <= m; d = d == 2 ? 3 : d + 2) {
        while (m % d == 0) {
            work_add(1);
            factors[d] = checked_add(factors[d], 1, "factor");
            m /= d;
        }
        work_add(1);
    }
    if (m > 1)
        factors[m] = checked_add(factors[m], 1, "factor");
    return factors;
}

} // namespace

DecBag parse_decbag(std::string_view text, const AltBagConfig& cfg) {
    return DecBag{parse_members(text, cfg.decbag_exponent_cap, "parse_decbag")};
}

std::string format_decbag(const DecBag& a) {
    return format_members(a.members, "format_decbag");
}

DecBag decbag_from_natural(const BigInt& n) {
    if (n < 0)
        throw DomainError("decbag_from_natural: value must be non-negative");
    DecBag out;
    std::string digits = n.get_str();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        std::uint64_t digit = static_cast<std::uint64_t>(digits[digits.size() - 1 - i] - '0');
        if (digit > 0)
            out.members[i] = digit;
    }
    return out;
}

DecBag decbag_add(const DecBag& a, const DecBag& b) {
    DecBag out = a;
    for (const auto& [e, copies] : b.members) {
        work_add(1);
        out.members[e] = checked_add(out.members[e], copies, "decbag_add");
    }
    return out;
}

DecBag decbag_sub(const DecBag& a, const DecBag& b) {
    if (decbag_value(a) < decbag_value(b))
        throw DomainError("decbag_sub: minuend is smaller than subtrahend");
    // Signed working counts; deficits get borrowed away lowest exponent first.
    std::map<std::uint64_t, long long> counts;
    for (const auto& [e, copies] : a.members)
        counts[e] += static_cast<long long>(copies);
    for (const auto& [e, copies] : b.members)
        counts[e] -= static_cast<long long>(copies);
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        while (it->second < 0) {
            auto hi = std::next(it);
            while (hi != counts.end() && hi->second <= 0)
                ++hi;
            if (hi != counts.end()) {
                // Un-carry one higher member down through the gap: each
                // intermediate level keeps 9, the deficit level gains 10.
                hi->second -= 1;
                work_add(1);
                for (std::uint64_t e = hi->first; e-- > it->first + 1;) {
                    counts[e] += 9;
                    work_add(1);
                }
                it->second += 10;
            } else {
                // Nothing higher to un-carry: surplus below must combine
                // upward, ten copies at a time.
                auto lo = std::make_reverse_iterator(it);
                while (lo != counts.rend() && lo->second < 10)
                    ++lo;
                if (lo == counts.rend())
                    throw DomainError("decbag_sub: borrow failed");
                lo->second -= 10;
                counts[lo->first + 1] += 1;
                work_add(1);
            }
        }
    }
    DecBag out;
    for (const auto& [e, count] : counts)
        if (count > 0)
            out.members[e] = static_cast<std::uint64_t>(count);
    return out;
}

DecBag decbag_mul(const DecBag& a, const DecBag& b) {
    DecBag out;
    for (const auto& [e1, c1] : a.members)
        for (const auto& [e2, c2] : b.members) {
            work_add(1);
            std::uint64_t e = 0;
            std::uint64_t copies = 0;
            if (__builtin_add_overflow(e1, e2, &e))
                throw ResourceError("decbag_mul: exponent overflow");
            if (__builtin_mul_overflow(c1, c2, &copies))
                throw ResourceError("decbag_mul: member count overflow");
            out.members[e] = checked_add(out.members[e], copies, "decbag_mul");
        }
    return out;
}

DecBag decbag_normalize(const DecBag& a) {
    std::map<std::uint64_t, std::uint64_t> counts = a.members;
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second >= 10) {
            work_add(1);
            counts[it->first + 1] =
                checked_add(counts[it->first + 1], it->second / 10, "decbag_normalize");
            it->second %= 10;
        }
    }
    DecBag out;
    for (const auto& [e, count] : counts)
        if (count > 0)
            out.members[e] = count;
    return out;
}

BigInt decbag_value(const DecBag& a) {
    BigInt total = 0;
    BigInt power;
    for (const auto& [e, copies] : a.members) {
        work_add(1);
        if (e > (std::uint64_t{1} << 32))
            throw ResourceError("decbag_value: exponent too large");
        mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(e));
        mpz_addmul_ui(total.get_mpz_t(), power.get_mpz_t(), static_cast<unsigned long>(copies));
    }
    return total;
}

std::uint64_t decbag_member_count(const DecBag& a) {
    return count_members(a.members, "decbag_member_count");
}

MulBag parse_mulbag(std::string_view text, const AltBagConfig& cfg) {
    MulBag out{parse_members(text, cfg.mulbag_member_cap, "parse_mulbag")};
    for (const auto& [member, copies] : out.members) {
        (void)copies;
        if (member < 2)
            throw DomainError("parse_mulbag: members must be at least 2");
    }
    return out;
}

std::string format_mulbag(const MulBag& a) {
    return format_members(a.members, "format_mulbag");
}

BigInt mulbag_value(const MulBag& a) {
    BigInt total = 1;
    BigInt power;
    for (const auto& [member, copies] : a.members) {
        work_add(1);
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(member),
                      static_cast<unsigned long>(copies));
        total *= power;
    }
    return total;
}

MulBag mulbag_mul(const MulBag& a, const MulBag& b) {
    MulBag out = a;
    for (const auto& [member, copies] : b.members) {
        work_add(1);
        out.members[member] = checked_add(out.members[member], copies, "mulbag_mul");
    }
    return out;
}

MulBag mulbag_normalize(const MulBag& a) {
    MulBag out;
    for (const auto& [member, copies] : a.members)
        for (const auto& [prime, exponent] : factor_member(member)) {
            std::uint64_t total = 0;
            if (__builtin_mul_overflow(copies, exponent, &total))
                throw ResourceError("mulbag_normalize: member count overflow");
            out.members[prime] = checked_add(out.members[prime], total, "mulbag_normalize");
        }
    return out;
}

PrimeBag mulbag_to_pb(const MulBag& a) {
    MulBag primes = mulbag_normalize(a);
    PrimeBag out = PrimeBag::one();
    for (const auto& [prime, copies] : primes.members) {
        PrimeIndex k = prime_index_of(prime);
        out.set_multiplicity(k, out.multiplicity_of(k) + Rational(static_cast<unsigned long>(copies)));
    }
    return out;
}

std::uint64_t mulbag_member_count(const MulBag& a) {
    return count_members(a.members, "mulbag_member_count");
}

} // namespace primebag
