#include "primebag/rational.hpp"

#include "primebag/errors.hpp"

#include <cctype>

namespace primebag {

std::string rational_to_string(const Rational& q) {
    if (is_integer(q))
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw ParseError("empty rational literal in '" + std::string(text) + "'");

    Rational q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        BigInt b(std::string(den), 10);
        if (b == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        q = Rational(BigInt(std::string(num), 10), b);
        q.canonicalize();
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        BigInt scaled(std::string(ip.empty() ? "0" : std::string(ip)) + std::string(fp), 10);
        BigInt den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i)
            den *= 10;
        q = Rational(scaled, den);
        q.canonicalize();
    } else {
        if (!all_digits(s))
            throw ParseError("malformed integer '" + std::string(text) + "'");
        q = Rational(BigInt(std::string(s), 10));
    }
    if (negative)
        q = -q;
    return q;
}

std::size_t digit_count(const BigInt& n) {
    if (n == 0)
        return 1;
    BigInt a = abs(n);
    return a.get_str().size();
}

} // namespace primebag
