#include "primebag/prime_bag.hpp"

#include "primebag/errors.hpp"
#include "primebag/work_meter.hpp"

#include <algorithm>
#include <cctype>

namespace primebag {

namespace {

bool is_positive_integer(const Rational& q) {
    return q > 0 && q.get_den() == 1;
}

// How many times an index may be spelled out before canonical output switches
// to the explicit "k:m" multiplicity; keeps formatting linear in entry count,
// not in multiplicity magnitude.
constexpr unsigned long kRepetitionCap = 1000;

} // namespace

PrimeBag PrimeBag::from_index(PrimeIndex k, const Rational& m) {
    if (k == 0)
        throw DomainError("prime index is 1-based; 0 is not a valid index");
    PrimeBag out;
    out.set_multiplicity(k, m);
    return out;
}

Rational PrimeBag::multiplicity_of(PrimeIndex k) const {
    auto it = entries.find(k);
    return it == entries.end() ? Rational(0) : it->second;
}

void PrimeBag::set_multiplicity(PrimeIndex k, const Rational& m) {
    Rational reduced = m;
    reduced.canonicalize(); // mpq_class leaves literals like 2/2 unreduced
    if (reduced == 0)
        entries.erase(k);
    else
        entries[k] = reduced;
}

bool PrimeBag::operator==(const PrimeBag& other) const {
    return special == other.special && negative == other.negative &&
           imaginary == other.imaginary && entries == other.entries;
}

NumberClass classify(const PrimeBag& a) {
    if (a.is_zero())
        return NumberClass::RationalPB;
    if (a.is_infinity() || a.imaginary)
        return NumberClass::ExtendedPB;
    bool natural = !a.negative;
    for (const auto& [k, m] : a.entries) {
        if (m.get_den() != 1)
            return NumberClass::ExtendedPB;
        if (m < 0)
            natural = false;
    }
    return natural ? NumberClass::NaturalPB : NumberClass::RationalPB;
}

bool is_natural_pb(const PrimeBag& a) {
    if (!a.is_finite() || a.negative || a.imaginary)
        return false;
    for (const auto& [k, m] : a.entries) {
        if (!is_positive_integer(m))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    char take() { return s[pos++]; }
    void expect(char c, const char* what) {
        if (done() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "' " + what +
                             " at position " + std::to_string(pos));
        ++pos;
    }
};

PrimeIndex parse_index(Cursor& c) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek())))
        throw ParseError("expected a prime index at position " + std::to_string(c.pos));
    PrimeIndex k = 0;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        unsigned digit = static_cast<unsigned>(c.take() - '0');
        if (k > (UINT64_MAX - digit) / 10)
            throw ParseError("prime index out of range");
        k = k * 10 + digit;
    }
    if (k == 0)
        throw ParseError("prime index 0 is not valid (indices are 1-based)");
    return k;
}

// tower := "{" [tower] "}"; returns the brace-pair depth, which is the
// prime index the member denotes.
PrimeIndex parse_tower(Cursor& c) {
    c.expect('{', "opening a tower");
    if (c.peek() == '}') {
        c.take();
        return 1;
    }
    if (c.peek() != '{')
        throw ParseError("bracket and index members cannot be mixed; "
                         "use one grammar per literal");
    PrimeIndex depth = parse_tower(c);
    if (c.peek() == ',')
        throw ParseError("member is not a pure tower (a tower nests at most "
                         "one child); spell the bag in index form instead");
    c.expect('}', "closing a tower");
    if (depth == UINT64_MAX)
        throw ParseError("tower too deep");
    return depth + 1;
}

void parse_index_entry(Cursor& c, std::map<PrimeIndex, Rational>& entries) {
    bool negated = false;
    if (c.peek() == '-') {
        c.take();
        negated = true;
    }
    PrimeIndex k = parse_index(c);
    Rational m = negated ? -1 : 1;
    if (c.peek() == ':') {
        if (negated)
            throw ParseError("a '-' prefix and an explicit multiplicity cannot "
                             "be combined; put the sign inside the multiplicity");
        c.take();
        std::size_t end = c.pos;
        while (end < c.s.size() && c.s[end] != ',' && c.s[end] != '}')
            ++end;
        m = parse_rational(c.s.substr(c.pos, end - c.pos));
        if (m == 0)
            throw ParseError("explicit zero multiplicity is not a valid entry");
        c.pos = end;
    }
    auto [it, inserted] = entries.emplace(k, m);
    if (!inserted) {
        it->second += m;
        if (it->second == 0)
            entries.erase(it);
    }
}

} // namespace

PrimeBag parse_pb(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    }
    Cursor c{s};

    bool negative = false;
    bool imaginary = false;
    if (c.peek() == '-') {
        c.take();
        negative = true;
    }
    // "inf" must be checked before the 'i' prefix eats its first letter.
    bool inf_literal = s.compare(c.pos, 3, "inf") == 0;
    if (!inf_literal && c.peek() == 'i') {
        c.take();
        imaginary = true;
        inf_literal = s.compare(c.pos, 3, "inf") == 0;
    }

    PrimeBag out;
    if (inf_literal) {
        c.pos += 3;
        out = PrimeBag::infinity(); // sign and unit normalize away on specials
    } else if (c.peek() == '0') {
        c.take();
        out = PrimeBag::zero();
    } else if (c.peek() == '{') {
        c.take();
        if (c.peek() == '}') {
            c.take();
        } else if (c.peek() == '{') {
            // bracket form: every member is a tower
            for (;;) {
                PrimeIndex k = parse_tower(c);
                auto [it, inserted] = out.entries.emplace(k, 1);
                if (!inserted)
                    it->second += 1;
                if (c.peek() == ',') {
                    c.take();
                    continue;
                }
                break;
            }
            c.expect('}', "closing the bag");
        } else {
            for (;;) {
                parse_index_entry(c, out.entries);
                if (c.peek() == ',') {
                    c.take();
                    continue;
                }
                break;
            }
            c.expect('}', "closing the bag");
        }
        out.negative = negative;
        out.imaginary = imaginary;
    } else {
        throw ParseError("expected a PB literal ('{...}', '0', or 'inf') at "
                         "position " + std::to_string(c.pos));
    }
    if (!c.done())
        throw ParseError("trailing input after the PB literal at position " +
                         std::to_string(c.pos));
    return out;
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_pb(const PrimeBag& a, PbFormat form) {
    if (a.is_zero())
        return "0";
    if (a.is_infinity())
        return "inf";

    std::string out;
    if (a.negative)
        out += '-';
    if (a.imaginary)
        out += 'i';

    if (form == PbFormat::Bracket) {
        if (!is_natural_pb(a))
            throw DomainError("bracket form only exists for natural bags");
        out += '{';
        bool first = true;
        for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it) {
            if (!it->second.get_num().fits_ulong_p())
                throw ResourceError("bracket form would repeat a tower too often");
            unsigned long copies = it->second.get_num().get_ui();
            std::string tower(it->first, '{');
            tower.append(it->first, '}');
            for (unsigned long i = 0; i < copies; ++i) {
                if (!first)
                    out += ',';
                out += tower;
                first = false;
            }
        }
        out += '}';
        return out;
    }

    out += '{';
    bool first = true;
    auto emit = [&](const std::string& piece) {
        if (!first)
            out += ',';
        out += piece;
        first = false;
    };
    auto emit_entry = [&](PrimeIndex k, const Rational& m) {
        std::string ks = std::to_string(k);
        if (m.get_den() == 1) {
            BigInt n = m.get_num();
            BigInt mag = abs(n);
            if (mag.fits_ulong_p() && mag.get_ui() <= kRepetitionCap) {
                unsigned long copies = mag.get_ui();
                std::string piece = (n < 0 ? "-" : "") + ks;
                for (unsigned long i = 0; i < copies; ++i)
                    emit(piece);
                return;
            }
        }
        emit(ks + ":" + rational_to_string(m));
    };
    // Largest member leftmost, decimal style: prime members by descending
    // index, then reciprocal members (negative multiplicities, values < 1)
    // by ascending index, since 1/p_k shrinks as k grows.
    for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it) {
        if (it->second > 0)
            emit_entry(it->first, it->second);
    }
    for (const auto& [k, m] : a.entries) {
        if (m < 0)
            emit_entry(k, m);
    }
    out += '}';
    return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

PrimeBag mul(const PrimeBag& a, const PrimeBag& b) {
    if ((a.is_zero() && b.is_infinity()) || (a.is_infinity() && b.is_zero()))
        throw DomainError("0 * inf has no defined value");
    if (a.is_zero() || b.is_zero())
        return PrimeBag::zero();
    if (a.is_infinity() || b.is_infinity())
        return PrimeBag::infinity();

    PrimeBag out;
    out.negative = a.negative != b.negative;
    if (a.imaginary && b.imaginary)
        out.negative = !out.negative; // i * i = -1
    out.imaginary = a.imaginary != b.imaginary;

    out.entries = a.entries;
    work_add(a.entries.size());
    for (const auto& [k, m] : b.entries) {
        work_add();
        auto [it, inserted] = out.entries.emplace(k, m);
        if (!inserted) {
            it->second += m;
            if (it->second == 0)
                out.entries.erase(it);
        }
    }
    return out;
}

PrimeBag reciprocal(const PrimeBag& a) {
    if (a.is_zero())
        return PrimeBag::infinity();
    if (a.is_infinity())
        return PrimeBag::zero();
    PrimeBag out;
    out.imaginary = a.imaginary;
    // 1/i = -i, so an imaginary bag's sign flips on reciprocal.
    out.negative = a.imaginary ? !a.negative : a.negative;
    for (const auto& [k, m] : a.entries) {
        work_add();
        out.entries.emplace(k, -m);
    }
    return out;
}

PrimeBag div(const PrimeBag& a, const PrimeBag& b, DivMode mode, TruncationReport* report) {
    if (mode == DivMode::Exact) {
        if (b.is_zero())
            throw DomainError("division by zero has no defined value");
        return mul(a, reciprocal(b));
    }
    if (!is_natural_pb(a) || !is_natural_pb(b))
        throw ModeError("truncated division is only defined for natural bags");
    PrimeBag out;
    out.entries = a.entries;
    TruncationReport scratch;
    TruncationReport& rep = report ? *report : scratch;
    for (const auto& [k, m] : b.entries) {
        work_add();
        Rational have = a.multiplicity_of(k);
        Rational diff = have - m;
        if (diff < 0) {
            rep.truncated = true;
            rep.indices.push_back(k);
        }
        out.set_multiplicity(k, diff < 0 ? Rational(0) : diff);
    }
    std::sort(rep.indices.rbegin(), rep.indices.rend()); // canonical order
    return out;
}

PrimeBag gcd(const PrimeBag& a, const PrimeBag& b) {
    if (!is_natural_pb(a) || !is_natural_pb(b))
        throw ModeError("gcd is only defined for natural bags");
    PrimeBag out;
    for (const auto& [k, m] : a.entries) {
        work_add();
        Rational other = b.multiplicity_of(k);
        Rational low = std::min(m, other);
        if (low > 0)
            out.entries.emplace(k, low);
    }
    return out;
}

PrimeBag lcm(const PrimeBag& a, const PrimeBag& b) {
    if (!is_natural_pb(a) || !is_natural_pb(b))
        throw ModeError("lcm is only defined for natural bags");
    PrimeBag out;
    out.entries = a.entries;
    work_add(a.entries.size());
    for (const auto& [k, m] : b.entries) {
        work_add();
        auto [it, inserted] = out.entries.emplace(k, m);
        if (!inserted)
            it->second = std::max(it->second, m);
    }
    return out;
}

PrimeBag pow(const PrimeBag& a, const Rational& q, bool natural_output) {
    if (!a.is_finite())
        throw DomainError("pow is only defined for finite bags");
    if (q == 0)
        return PrimeBag::one();
    if ((a.negative || a.imaginary) && !is_integer(q))
        throw DomainError("a negative or imaginary bag needs an integer exponent");

    PrimeBag out;
    for (const auto& [k, m] : a.entries) {
        work_add();
        Rational scaled = m * q;
        if (natural_output && scaled.get_den() != 1)
            throw IrrationalityError(
                "index " + std::to_string(k) + " would need multiplicity " +
                    rational_to_string(scaled) + ", which no natural bag has",
                k);
        out.entries.emplace(k, scaled);
    }
    if (a.negative || a.imaginary) {
        // integer exponent: (s * i^u * v)^q = s^q * i^(u*q) * v^q
        unsigned long qm4 = mpz_fdiv_ui(q.get_num().get_mpz_t(), 4);
        bool odd = qm4 % 2 == 1;
        out.negative = a.negative && odd;
        if (a.imaginary) {
            out.imaginary = odd;
            if (qm4 >= 2) // i^2 = -1, i^3 = -i
                out.negative = !out.negative;
        }
    }
    return out;
}

bool is_prime_pb(const PrimeBag& a) {
    if (!is_natural_pb(a))
        throw ModeError("primality of a bag is only defined for natural bags");
    work_add();
    return a.entries.size() == 1 && a.entries.begin()->second == 1;
}

std::vector<std::pair<PrimeIndex, BigInt>> factor_pb(const PrimeBag& a) {
    if (!is_natural_pb(a))
        throw ModeError("factor listing is only defined for natural bags");
    std::vector<std::pair<PrimeIndex, BigInt>> out;
    out.reserve(a.entries.size());
    for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it) {
        work_add();
        out.emplace_back(it->first, it->second.get_num());
    }
    return out;
}

BigInt bag_member_count(const PrimeBag& a) {
    if (!a.is_finite())
        throw DomainError("member count is only defined for finite bags");
    if (is_natural_pb(a)) {
        BigInt total = 0;
        for (const auto& [k, m] : a.entries) {
            work_add();
            total += m.get_num();
        }
        return total;
    }
    return BigInt(static_cast<unsigned long>(a.entries.size()));
}

} // namespace primebag
