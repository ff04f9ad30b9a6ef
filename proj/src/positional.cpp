#include "primebag/positional.hpp"

#include <algorithm>

#include "primebag/errors.hpp"
#include "primebag/work_meter.hpp"

namespace primebag {

namespace {

void strip(Digits& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// -1, 0, 1 as a < b, a == b, a > b. Counts one tick per digit compared.
int compare_digits(const Digits& a, const Digits& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        work_add(1);
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

Digits digits_of(const BigInt& n) {
    if (n < 0)
        throw DomainError("digits_of: value must be non-negative");
    Digits out;
    std::string text = n.get_str();
    if (text == "0")
        return out;
    out.reserve(text.size());
    for (std::size_t i = text.size(); i-- > 0;)
        out.push_back(static_cast<std::uint8_t>(text[i] - '0'));
    return out;
}

BigInt digits_value(const Digits& a) {
    BigInt total = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        total *= 10;
        total += a[i];
    }
    return total;
}

Digits positional_add(const Digits& a, const Digits& b) {
    Digits out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    int carry = 0;
    for (std::size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
        work_add(1);
        int sum = carry;
        if (i < a.size())
            sum += a[i];
        if (i < b.size())
            sum += b[i];
        out.push_back(static_cast<std::uint8_t>(sum % 10));
        carry = sum / 10;
    }
    strip(out);
    return out;
}

Digits positional_sub(const Digits& a, const Digits& b) {
    if (compare_digits(a, b) < 0)
        throw DomainError("positional_sub: minuend is smaller than subtrahend");
    Digits out;
    out.reserve(a.size());
    int borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        work_add(1);
        int diff = a[i] - borrow - (i < b.size() ? b[i] : 0);
        borrow = diff < 0;
        if (borrow)
            diff += 10;
        out.push_back(static_cast<std::uint8_t>(diff));
    }
    strip(out);
    return out;
}

Digits positional_mul(const Digits& a, const Digits& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<std::uint32_t> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            work_add(1);
            acc[i + j] += static_cast<std::uint32_t>(a[i]) * b[j];
        }
    Digits out(acc.size());
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        work_add(1);
        std::uint32_t sum = acc[i] + carry;
        out[i] = static_cast<std::uint8_t>(sum % 10);
        carry = sum / 10;
    }
    strip(out);
    return out;
}

std::pair<Digits, Digits> positional_divmod(const Digits& a, const Digits& b) {
    if (b.empty())
        throw DomainError("positional_divmod: division by zero");
    if (compare_digits(a, b) < 0)
        return {Digits{}, a};
    Digits quotient(a.size(), 0);
    Digits remainder;
    for (std::size_t i = a.size(); i-- > 0;) {
        // remainder = remainder * 10 + a[i]
        remainder.insert(remainder.begin(), a[i]);
        strip(remainder);
        work_add(1);
        // Schoolbook digit guess by repeated subtraction, at most nine times.
        std::uint8_t digit = 0;
        while (compare_digits(remainder, b) >= 0) {
            remainder = positional_sub(remainder, b);
            ++digit;
        }
        quotient[i] = digit;
    }
    strip(quotient);
    return {quotient, remainder};
}

Digits positional_gcd(const Digits& a, const Digits& b) {
    Digits x = a;
    Digits y = b;
    strip(x);
    strip(y);
    while (!y.empty()) {
        work_add(1);
        Digits r = positional_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

} // namespace primebag
