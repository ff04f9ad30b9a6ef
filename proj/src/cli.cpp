#include "primebag/cli.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "primebag/altreps.hpp"
#include "primebag/bench.hpp"
#include "primebag/convert.hpp"
#include "primebag/errors.hpp"
#include "primebag/order.hpp"
#include "primebag/partition.hpp"
#include "primebag/prime_bag.hpp"
#include "primebag/primes.hpp"

namespace primebag {

namespace {

using Json = nlohmann::ordered_json;

enum class CliMode { Natural, Rational, Extended };

CliMode mode_from_name(const std::string& name) {
    if (name == "natural")
        return CliMode::Natural;
    if (name == "rational")
        return CliMode::Rational;
    return CliMode::Extended;
}

int rank_of(NumberClass c) {
    switch (c) {
    case NumberClass::NaturalPB: return 0;
    case NumberClass::RationalPB: return 1;
    default: return 2;
    }
}

int rank_of(CliMode m) {
    switch (m) {
    case CliMode::Natural: return 0;
    case CliMode::Rational: return 1;
    default: return 2;
    }
}

const char* class_name(NumberClass c) {
    switch (c) {
    case NumberClass::NaturalPB: return "natural";
    case NumberClass::RationalPB: return "rational";
    default: return "extended";
    }
}

void gate_bag(const PrimeBag& bag, CliMode mode, const std::string& mode_name,
              const char* what) {
    if (rank_of(classify(bag)) > rank_of(mode))
        throw ModeError(std::string(what) + " is outside --mode " + mode_name + ": " +
                        format_pb(bag));
}

std::optional<Rational> value_of(const PrimeBag& bag) {
    try {
        return pb_to_rational(bag);
    } catch (const Error&) {
        return std::nullopt; // infinite, imaginary, or irrational
    }
}

struct DecimalParts {
    std::string exact;
    std::string decimal;
    bool integral = false;
};

DecimalParts decimal_parts(const Rational& q, std::uint64_t digits) {
    if (digits == 0 || digits > 10000)
        throw DomainError("render_decimal: digits must be between 1 and 10000");
    DecimalParts out;
    out.exact = q.get_str();
    BigInt num = q.get_num();
    BigInt den = q.get_den();
    if (den == 1) {
        out.decimal = out.exact;
        out.integral = true;
        return out;
    }
    bool negative = num < 0;
    BigInt a = negative ? BigInt(-num) : num;
    BigInt ipart = a / den;
    BigInt r = a - ipart * den;
    std::string frac;
    bool terminated = false;
    for (std::uint64_t i = 0; i < digits; ++i) {
        r *= 10;
        BigInt d = r / den;
        frac += static_cast<char>('0' + mpz_get_ui(d.get_mpz_t()));
        r -= d * den;
        if (r == 0) {
            terminated = true;
            break;
        }
    }
    out.decimal = std::string(negative ? "-" : "") + ipart.get_str() + "." + frac +
                  (terminated ? "" : "..");
    return out;
}

// ---- expression parsing -----------------------------------------------------

struct Token {
    enum Kind { Atom, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
};

std::vector<Token> lex_expr(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto take_braces = [&](std::size_t start) {
        int depth = 0;
        while (i < s.size()) {
            if (s[i] == '{') {
                ++depth;
            } else if (s[i] == '}') {
                --depth;
                if (depth == 0) {
                    ++i;
                    return std::string(s.substr(start, i - start));
                }
            }
            ++i;
        }
        throw ParseError("eval: unbalanced braces in literal");
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        switch (c) {
        case '+': out.push_back({Token::Plus, "+"}); ++i; continue;
        case '-': out.push_back({Token::Minus, "-"}); ++i; continue;
        case '*': out.push_back({Token::Star, "*"}); ++i; continue;
        case '/': out.push_back({Token::Slash, "/"}); ++i; continue;
        case '^': out.push_back({Token::Caret, "^"}); ++i; continue;
        case '(': out.push_back({Token::LParen, "("}); ++i; continue;
        case ')': out.push_back({Token::RParen, ")"}); ++i; continue;
        default: break;
        }
        if (c == '{') {
            out.push_back({Token::Atom, take_braces(i)});
            continue;
        }
        if (c == 'i') {
            if (s.compare(i, 3, "inf") == 0) {
                out.push_back({Token::Atom, "inf"});
                i += 3;
                continue;
            }
            if (i + 1 < s.size() && s[i + 1] == '{') {
                std::size_t start = i;
                ++i;
                take_braces(i);
                out.push_back({Token::Atom, std::string(s.substr(start, i - start))});
                continue;
            }
            throw ParseError("eval: stray 'i' outside a literal");
        }
        if (c >= '0' && c <= '9') {
            std::size_t start = i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9')
                ++i;
            out.push_back({Token::Atom, std::string(s.substr(start, i - start))});
            continue;
        }
        throw ParseError(std::string("eval: unexpected character '") + c + "'");
    }
    out.push_back({Token::End, ""});
    return out;
}

bool all_digits(const std::string& text) {
    if (text.empty())
        return false;
    for (char c : text)
        if (c < '0' || c > '9')
            return false;
    return true;
}

class ExprParser {
public:
    ExprParser(std::string_view text, CliMode mode, const std::string& mode_name,
               ConversionReceipt& receipt, std::vector<std::string>& diagnostics)
        : tokens_(lex_expr(text)), mode_(mode), mode_name_(mode_name), receipt_(receipt),
          diagnostics_(diagnostics) {}

    PrimeBag run() {
        PrimeBag out = parse_expr();
        if (peek().kind != Token::End)
            throw ParseError("eval: trailing input after expression");
        return out;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    void expect(Token::Kind kind, const char* what) {
        if (peek().kind != kind)
            throw ParseError(std::string("eval: expected ") + what);
        ++pos_;
    }

    void gate(const PrimeBag& bag, const char* what) {
        gate_bag(bag, mode_, mode_name_, what);
    }

    PrimeBag parse_expr() {
        PrimeBag acc = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            Token op = take();
            PrimeBag rhs = parse_term();
            acc = op.kind == Token::Plus ? add(acc, rhs, &receipt_) : sub(acc, rhs, &receipt_);
            gate(acc, "result");
        }
        return acc;
    }

    PrimeBag parse_term() {
        PrimeBag acc = parse_factor();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            Token op = take();
            PrimeBag rhs = parse_factor();
            acc = op.kind == Token::Star ? mul(acc, rhs) : divide(acc, rhs);
            gate(acc, "result");
        }
        return acc;
    }

    PrimeBag divide(const PrimeBag& a, const PrimeBag& b) {
        if (mode_ != CliMode::Natural)
            return div(a, b);
        TruncationReport report;
        PrimeBag out = div(a, b, DivMode::NaturalTruncated, &report);
        if (report.truncated) {
            std::string note = "division truncated at indices";
            for (PrimeIndex k : report.indices)
                note += " " + std::to_string(k);
            diagnostics_.push_back(note);
        }
        return out;
    }

    PrimeBag parse_factor() {
        if (peek().kind == Token::Minus) {
            take();
            PrimeBag out = parse_factor();
            if (out.special == Special::Finite)
                out.negative = !out.negative;
            gate(out, "result");
            return out;
        }
        return parse_power();
    }

    PrimeBag parse_power() {
        PrimeBag base = parse_primary();
        while (peek().kind == Token::Caret) {
            take();
            Rational q = parse_exponent();
            base = pow(base, q, mode_ == CliMode::Natural);
            gate(base, "result");
        }
        return base;
    }

    // Integer exponents may stand bare; fractions need parentheses so the /
    // cannot be mistaken for division: {1,1} ^ (1/2).
    Rational parse_exponent() {
        bool parens = false;
        if (peek().kind == Token::LParen) {
            take();
            parens = true;
        }
        bool negative = false;
        if (peek().kind == Token::Minus) {
            take();
            negative = true;
        }
        if (peek().kind != Token::Atom || !all_digits(peek().text))
            throw ParseError("eval: exponent must be an integer or a parenthesized fraction");
        BigInt num(take().text);
        BigInt den = 1;
        if (parens && peek().kind == Token::Slash) {
            take();
            if (peek().kind != Token::Atom || !all_digits(peek().text))
                throw ParseError("eval: exponent denominator must be an integer");
            den = BigInt(take().text);
            if (den == 0)
                throw DomainError("eval: exponent denominator is zero");
        }
        if (parens)
            expect(Token::RParen, "')' after exponent");
        if (negative)
            num = -num;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    PrimeBag parse_primary() {
        if (peek().kind == Token::LParen) {
            take();
            PrimeBag out = parse_expr();
            expect(Token::RParen, "')'");
            return out;
        }
        if (peek().kind != Token::Atom)
            throw ParseError("eval: expected a literal or '('");
        std::string text = take().text;
        PrimeBag bag;
        if (text[0] == '{' || text[0] == 'i' || text == "inf" || text == "0")
            bag = parse_pb(text);
        else
            bag = natural_to_pb(BigInt(text), &receipt_);
        gate(bag, "operand");
        return bag;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    CliMode mode_;
    const std::string& mode_name_;
    ConversionReceipt& receipt_;
    std::vector<std::string>& diagnostics_;
};

// ---- operands outside eval --------------------------------------------------

bool looks_like_literal(const std::string& text) {
    if (text.empty())
        return false;
    if (text[0] == '{' || text[0] == 'i' || text == "0" || text == "inf")
        return true;
    return text[0] == '-' && text.size() > 1 && (text[1] == '{' || text[1] == 'i');
}

struct Operand {
    PrimeBag bag;
    bool literal = false;
};

Operand parse_operand(const std::string& text, CliMode mode, const std::string& mode_name,
                      ConversionReceipt& receipt) {
    Operand out;
    if (looks_like_literal(text)) {
        out.bag = parse_pb(text);
        out.literal = true;
    } else {
        std::string body = text;
        bool negative = false;
        if (!body.empty() && body[0] == '-') {
            negative = true;
            body.erase(0, 1);
        }
        std::size_t slash = body.find('/');
        std::string num = slash == std::string::npos ? body : body.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("operand is neither a bag literal nor a number: " + text);
        if (BigInt(den) == 0)
            throw DomainError("operand has a zero denominator: " + text);
        Rational q{BigInt(num), BigInt(den)};
        q.canonicalize();
        if (negative)
            q = -q;
        out.bag = rational_to_pb(q, &receipt);
    }
    gate_bag(out.bag, mode, mode_name, "operand");
    return out;
}

// ---- output plumbing --------------------------------------------------------

struct Cli {
    bool json = false;
    bool verbose = false;
    std::uint64_t digits = 12;
    CliMode mode = CliMode::Extended;
    std::string mode_name = "extended";
    Json doc;
    std::vector<std::string> diagnostics;
    ConversionReceipt receipt;

    void begin(const char* command, Json inputs) {
        inputs["mode"] = mode_name;
        doc["command"] = command;
        doc["inputs"] = std::move(inputs);
    }

    std::uint64_t receipt_total() const {
        return receipt.trial_divisions + receipt.rho_rounds + receipt.rho_iterations +
               receipt.primality_tests;
    }

    Json receipts_json() const {
        Json out;
        out["trial_divisions"] = receipt.trial_divisions;
        out["rho_rounds"] = receipt.rho_rounds;
        out["rho_iterations"] = receipt.rho_iterations;
        out["primality_tests"] = receipt.primality_tests;
        out["factoring_work"] = receipt.factoring_work();
        return out;
    }

    int ok(const Json& result, const std::string& human) {
        if (json) {
            doc["result"] = result;
            if (receipt_total() > 0)
                doc["receipts"] = receipts_json();
            doc["diagnostics"] = diagnostics;
            std::cout << doc.dump() << "\n";
        } else {
            if (!human.empty())
                std::cout << human << "\n";
            if (verbose && receipt_total() > 0)
                std::cerr << "conversion work: " << receipt.trial_divisions
                          << " trial divisions, " << receipt.rho_rounds << " rho rounds, "
                          << receipt.rho_iterations << " rho iterations, "
                          << receipt.primality_tests << " primality tests\n";
            for (const std::string& note : diagnostics)
                std::cerr << "note: " << note << "\n";
        }
        return 0;
    }

    int fail(int code, const char* type, const std::string& message) {
        if (json) {
            if (!doc.contains("command"))
                doc["command"] = nullptr;
            doc["result"] = nullptr;
            Json err;
            err["type"] = type;
            err["message"] = message;
            doc["error"] = err;
            doc["diagnostics"] = diagnostics;
            std::cout << doc.dump() << "\n";
        } else {
            std::cerr << "error: " << message << "\n";
        }
        return code;
    }

    Json bag_json(const PrimeBag& bag) const {
        Json out;
        out["pb"] = format_pb(bag);
        out["class"] = class_name(classify(bag));
        if (std::optional<Rational> v = value_of(bag)) {
            DecimalParts parts = decimal_parts(*v, digits);
            out["value"] = parts.exact;
            out["decimal"] = parts.decimal;
        } else {
            out["value"] = nullptr;
            out["decimal"] = nullptr;
        }
        return out;
    }

    std::string bag_line(const PrimeBag& bag) const {
        std::string line = format_pb(bag);
        if (std::optional<Rational> v = value_of(bag))
            line += " = " + render_decimal(*v, digits);
        return line;
    }
};

template <typename Fn>
int guarded(Cli& cli, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        return cli.fail(4, "parse", e.what());
    } catch (const ResourceError& e) {
        return cli.fail(3, "resource", e.what());
    } catch (const DomainError& e) {
        return cli.fail(2, "domain", e.what());
    } catch (const Error& e) {
        return cli.fail(2, "domain", e.what());
    }
}

// ---- command handlers -------------------------------------------------------

int cmd_eval(Cli& cli, const std::string& expr) {
    Json inputs;
    inputs["expr"] = expr;
    cli.begin("eval", inputs);
    return guarded(cli, [&] {
        ExprParser parser(expr, cli.mode, cli.mode_name, cli.receipt, cli.diagnostics);
        PrimeBag bag = parser.run();
        return cli.ok(cli.bag_json(bag), cli.bag_line(bag));
    });
}

int cmd_convert(Cli& cli, const std::string& operand) {
    Json inputs;
    inputs["operand"] = operand;
    cli.begin("convert", inputs);
    return guarded(cli, [&] {
        Operand in = parse_operand(operand, cli.mode, cli.mode_name, cli.receipt);
        std::string human;
        if (!in.literal) {
            human = format_pb(in.bag);
        } else if (std::optional<Rational> v = value_of(in.bag)) {
            human = render_decimal(*v, cli.digits);
        } else {
            human = format_pb(in.bag);
            cli.diagnostics.push_back("value is not an exact rational");
        }
        return cli.ok(cli.bag_json(in.bag), human);
    });
}

int cmd_factor(Cli& cli, const std::string& operand) {
    Json inputs;
    inputs["operand"] = operand;
    cli.begin("factor", inputs);
    return guarded(cli, [&] {
        Operand in = parse_operand(operand, cli.mode, cli.mode_name, cli.receipt);
        std::vector<std::pair<PrimeIndex, BigInt>> factors = factor_pb(in.bag);
        Json list = Json::array();
        std::string human;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            BigInt p = nth_prime(it->first);
            Json entry;
            entry["index"] = it->first;
            entry["prime"] = p.get_str();
            entry["multiplicity"] = it->second.get_str();
            list.push_back(entry);
            if (!human.empty())
                human += " * ";
            human += p.get_str();
            if (it->second != 1)
                human += "^" + it->second.get_str();
        }
        if (human.empty())
            human = "1";
        Json result;
        result["pb"] = format_pb(in.bag);
        result["factors"] = list;
        return cli.ok(result, human);
    });
}

int cmd_isprime(Cli& cli, const std::string& operand) {
    Json inputs;
    inputs["operand"] = operand;
    cli.begin("isprime", inputs);
    return guarded(cli, [&] {
        bool prime = false;
        if (looks_like_literal(operand)) {
            PrimeBag bag = parse_pb(operand);
            gate_bag(bag, cli.mode, cli.mode_name, "operand");
            prime = is_prime_pb(bag);
        } else if (all_digits(operand)) {
            prime = is_prime_natural(BigInt(operand));
        } else {
            throw ParseError("isprime expects a bag literal or a natural number");
        }
        Json result;
        result["prime"] = prime;
        return cli.ok(result, prime ? "prime" : "not prime");
    });
}

int cmd_gcd_lcm(Cli& cli, const char* name, const std::string& a_text,
                const std::string& b_text) {
    Json inputs;
    inputs["a"] = a_text;
    inputs["b"] = b_text;
    cli.begin(name, inputs);
    return guarded(cli, [&] {
        Operand a = parse_operand(a_text, cli.mode, cli.mode_name, cli.receipt);
        Operand b = parse_operand(b_text, cli.mode, cli.mode_name, cli.receipt);
        PrimeBag out = std::string_view(name) == "gcd" ? gcd(a.bag, b.bag) : lcm(a.bag, b.bag);
        return cli.ok(cli.bag_json(out), cli.bag_line(out));
    });
}

const char* order_name(OrderResult r) {
    switch (r) {
    case OrderResult::Less: return "Less";
    case OrderResult::Equal: return "Equal";
    case OrderResult::Greater: return "Greater";
    default: return "Incomparable";
    }
}

int cmd_cmp(Cli& cli, const std::string& a_text, const std::string& b_text) {
    Json inputs;
    inputs["a"] = a_text;
    inputs["b"] = b_text;
    cli.begin("cmp", inputs);
    return guarded(cli, [&] {
        Operand a = parse_operand(a_text, cli.mode, cli.mode_name, cli.receipt);
        Operand b = parse_operand(b_text, cli.mode, cli.mode_name, cli.receipt);
        Json result;
        std::string partial_text;
        try {
            partial_text = order_name(partial_compare(a.bag, b.bag));
            result["partial"] = partial_text;
        } catch (const Error& e) {
            result["partial"] = nullptr;
            partial_text = "unavailable";
            cli.diagnostics.push_back(std::string("partial: ") + e.what());
        }
        std::string exact_text;
        try {
            exact_text = order_name(exact_compare(a.bag, b.bag));
            result["exact"] = exact_text;
        } catch (const Error& e) {
            result["exact"] = nullptr;
            exact_text = "unavailable";
            cli.diagnostics.push_back(std::string("exact: ") + e.what());
        }
        return cli.ok(result, "partial: " + partial_text + "\nexact: " + exact_text);
    });
}

int cmd_partitions(Cli& cli, std::uint64_t n) {
    Json inputs;
    inputs["n"] = n;
    cli.begin("partitions", inputs);
    return guarded(cli, [&] {
        OrderedGenerator gen(n);
        GeneratedPB item;
        Json rows = Json::array();
        std::vector<std::array<std::string, 5>> table;
        table.push_back({"weight", "partition", "pb", "value", "prime"});
        while (gen.next(item)) {
            Partition parts = partition_of(item.bag);
            std::string shape;
            for (std::uint64_t part : parts) {
                if (!shape.empty())
                    shape += "+";
                shape += std::to_string(part);
            }
            if (shape.empty())
                shape = "()";
            Rational v = pb_to_rational(item.bag);
            bool prime = is_prime_pb(item.bag);
            Json row;
            row["weight"] = item.weight;
            row["partition"] = parts;
            row["pb"] = format_pb(item.bag);
            row["value"] = v.get_str();
            row["prime"] = prime;
            rows.push_back(row);
            table.push_back({std::to_string(item.weight), shape, format_pb(item.bag),
                             v.get_str(), prime ? "yes" : "no"});
        }
        std::array<std::size_t, 5> widths{};
        for (const auto& row : table)
            for (std::size_t c = 0; c < 5; ++c)
                widths[c] = std::max(widths[c], row[c].size());
        std::string human;
        for (const auto& row : table) {
            std::string line;
            for (std::size_t c = 0; c < 5; ++c) {
                std::string cell = row[c];
                if (c + 1 < 5)
                    cell.resize(widths[c] + 2, ' ');
                line += cell;
            }
            while (!line.empty() && line.back() == ' ')
                line.pop_back();
            if (!human.empty())
                human += "\n";
            human += line;
        }
        Json result;
        result["rows"] = rows;
        return cli.ok(result, human);
    });
}

int cmd_pi2(Cli& cli, std::uint64_t k) {
    Json inputs;
    inputs["k"] = k;
    cli.begin("pi2", inputs);
    return guarded(cli, [&] {
        Rational q = euler_pi_squared(k);
        DecimalParts parts = decimal_parts(q, cli.digits);
        Json result;
        result["value"] = parts.exact;
        result["decimal"] = parts.decimal;
        return cli.ok(result, render_decimal(q, cli.digits));
    });
}

int cmd_decbag(Cli& cli, const std::string& op, const std::vector<std::string>& args) {
    Json inputs;
    inputs["op"] = op;
    inputs["args"] = args;
    cli.begin("decbag", inputs);
    return guarded(cli, [&] {
        auto need = [&](std::size_t count) {
            if (args.size() != count)
                throw ParseError("decbag " + op + " takes " + std::to_string(count) +
                                 " bag argument" + (count == 1 ? "" : "s"));
        };
        Json result;
        std::string human;
        auto bag_out = [&](const DecBag& bag) {
            BigInt v = decbag_value(bag);
            result["bag"] = format_decbag(bag);
            result["value"] = v.get_str();
            human = format_decbag(bag) + " = " + v.get_str();
        };
        if (op == "value") {
            need(1);
            BigInt v = decbag_value(parse_decbag(args[0]));
            result["value"] = v.get_str();
            human = v.get_str();
        } else if (op == "add") {
            need(2);
            bag_out(decbag_add(parse_decbag(args[0]), parse_decbag(args[1])));
        } else if (op == "sub") {
            need(2);
            bag_out(decbag_sub(parse_decbag(args[0]), parse_decbag(args[1])));
        } else if (op == "mul") {
            need(2);
            bag_out(decbag_mul(parse_decbag(args[0]), parse_decbag(args[1])));
        } else if (op == "normalize") {
            need(1);
            bag_out(decbag_normalize(parse_decbag(args[0])));
        } else if (op == "count") {
            need(1);
            std::uint64_t count = decbag_member_count(parse_decbag(args[0]));
            result["count"] = count;
            human = std::to_string(count);
        } else {
            throw ParseError("unknown decbag operation '" + op +
                             "' (value, add, sub, mul, normalize, count)");
        }
        return cli.ok(result, human);
    });
}

int cmd_mulbag(Cli& cli, const std::string& op, const std::vector<std::string>& args) {
    Json inputs;
    inputs["op"] = op;
    inputs["args"] = args;
    cli.begin("mulbag", inputs);
    return guarded(cli, [&] {
        auto need = [&](std::size_t count) {
            if (args.size() != count)
                throw ParseError("mulbag " + op + " takes " + std::to_string(count) +
                                 " bag argument" + (count == 1 ? "" : "s"));
        };
        Json result;
        std::string human;
        auto bag_out = [&](const MulBag& bag) {
            BigInt v = mulbag_value(bag);
            result["bag"] = format_mulbag(bag);
            result["value"] = v.get_str();
            human = format_mulbag(bag) + " = " + v.get_str();
        };
        if (op == "value") {
            need(1);
            BigInt v = mulbag_value(parse_mulbag(args[0]));
            result["value"] = v.get_str();
            human = v.get_str();
        } else if (op == "mul") {
            need(2);
            bag_out(mulbag_mul(parse_mulbag(args[0]), parse_mulbag(args[1])));
        } else if (op == "normalize") {
            need(1);
            bag_out(mulbag_normalize(parse_mulbag(args[0])));
        } else if (op == "topb") {
            need(1);
            PrimeBag bag = mulbag_to_pb(parse_mulbag(args[0]));
            result = cli.bag_json(bag);
            human = cli.bag_line(bag);
        } else if (op == "count") {
            need(1);
            std::uint64_t count = mulbag_member_count(parse_mulbag(args[0]));
            result["count"] = count;
            human = std::to_string(count);
        } else {
            throw ParseError("unknown mulbag operation '" + op +
                             "' (value, mul, normalize, topb, count)");
        }
        return cli.ok(result, human);
    });
}

int cmd_bench(Cli& cli, const std::string& spec_path, const std::string& format_name,
              const std::string& out_path) {
    Json inputs;
    inputs["spec"] = spec_path;
    inputs["format"] = format_name;
    if (!out_path.empty())
        inputs["out"] = out_path;
    cli.begin("bench", inputs);
    return guarded(cli, [&] {
        std::ifstream in(spec_path);
        if (!in)
            throw ResourceError("bench: cannot open spec file '" + spec_path + "'");
        nlohmann::json spec_doc;
        try {
            in >> spec_doc;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bench: spec file: " + std::string(e.what()));
        }
        BenchReport report;
        try {
            std::string op = spec_doc.at("op").get<std::string>();
            std::vector<std::uint64_t> sizes =
                spec_doc.at("sizes").get<std::vector<std::uint64_t>>();
            std::uint64_t seed = spec_doc.value("seed", std::uint64_t{1});
            std::string repr = spec_doc.value("repr", std::string{});
            if (repr.empty() || repr == "all") {
                report = compare_representations(op, sizes, seed);
            } else {
                BenchSpec spec;
                spec.op = op;
                spec.repr = repr;
                spec.sizes = sizes;
                spec.seed = seed;
                spec.repetitions = spec_doc.value("repetitions", std::uint32_t{11});
                spec.distribution = spec_doc.value("distribution", std::string{});
                report = run_bench(spec);
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bench: spec file: " + std::string(e.what()));
        }
        if (!report.complete)
            cli.diagnostics.push_back("report incomplete: a size hit a resource ceiling");
        std::string exported = export_report(
            report, format_name == "csv" ? ReportFormat::Csv : ReportFormat::JsonLines);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out)
                throw ResourceError("bench: cannot open output file '" + out_path + "'");
            out << exported;
            out.flush();
            if (!out)
                throw ResourceError("bench: failed writing '" + out_path + "'");
        }
        Json rows = Json::array();
        for (const BenchRow& row : report.rows) {
            Json r;
            r["op"] = row.op;
            r["repr"] = row.repr;
            r["size"] = row.size;
            r["counter"] = row.median_counter;
            r["wall_ns"] = row.median_wall_ns;
            r["counter_iqr"] = row.counter_iqr;
            r["value_bits"] = row.value_bits;
            r["complete"] = row.complete;
            rows.push_back(r);
        }
        Json fits = Json::array();
        for (const SeriesFit& fit : report.fits) {
            Json f;
            f["op"] = fit.op;
            f["repr"] = fit.repr;
            f["slope"] = fit.slope;
            f["r2"] = fit.r2;
            fits.push_back(f);
        }
        Json result;
        result["complete"] = report.complete;
        result["rows"] = rows;
        result["fits"] = fits;
        std::string human = out_path.empty() ? exported : std::string{};
        while (!human.empty() && human.back() == '\n')
            human.pop_back();
        return cli.ok(result, human);
    });
}

} // namespace

std::string render_decimal(const Rational& q, std::uint64_t digits) {
    DecimalParts parts = decimal_parts(q, digits);
    return parts.integral ? parts.exact : parts.exact + " = " + parts.decimal;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"prime-bag calculator: numbers as multisets of prime indices"};
    Cli cli;
    std::string mode_name = "extended";
    app.add_option("--mode", mode_name, "operation domain: natural, rational, or extended")
        ->check(CLI::IsMember({"natural", "rational", "extended"}));
    app.add_flag("--json", cli.json, "emit one JSON document on stdout");
    app.add_flag("-v,--verbose", cli.verbose, "print conversion receipts to stderr");
    app.add_option("--digits", cli.digits, "decimal digits in rendered values (default 12)");
    app.require_subcommand(1);

    std::string expr;
    std::string operand;
    std::string a_text;
    std::string b_text;
    std::string sub_op;
    std::vector<std::string> bag_args;
    std::uint64_t n_arg = 0;
    std::uint64_t k_arg = 0;
    std::string spec_path;
    std::string format_name = "csv";
    std::string out_path;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a bag expression");
    eval_cmd->add_option("expr", expr, "expression with literals, + - * / ^, parentheses")
        ->required();

    CLI::App* convert_cmd = app.add_subcommand("convert", "convert between bags and numbers");
    convert_cmd->add_option("operand", operand, "bag literal, natural, or a/b")->required();

    CLI::App* factor_cmd = app.add_subcommand("factor", "list the prime factors");
    factor_cmd->add_option("operand", operand, "bag literal or natural")->required();

    CLI::App* isprime_cmd = app.add_subcommand("isprime", "primality check");
    isprime_cmd->add_option("operand", operand, "bag literal or natural")->required();

    CLI::App* gcd_cmd = app.add_subcommand("gcd", "greatest common divisor");
    gcd_cmd->add_option("a", a_text)->required();
    gcd_cmd->add_option("b", b_text)->required();

    CLI::App* lcm_cmd = app.add_subcommand("lcm", "least common multiple");
    lcm_cmd->add_option("a", a_text)->required();
    lcm_cmd->add_option("b", b_text)->required();

    CLI::App* cmp_cmd = app.add_subcommand("cmp", "compare two bags (partial and exact)");
    cmp_cmd->add_option("a", a_text)->required();
    cmp_cmd->add_option("b", b_text)->required();

    CLI::App* partitions_cmd =
        app.add_subcommand("partitions", "list bags by weight, in generation order");
    partitions_cmd->add_option("n", n_arg, "maximum weight")->required();

    CLI::App* pi2_cmd = app.add_subcommand("pi2", "truncated Euler product for pi^2");
    pi2_cmd->add_option("k", k_arg, "number of prime factors")->required();

    CLI::App* decbag_cmd = app.add_subcommand("decbag", "powers-of-ten bag operations");
    decbag_cmd->add_option("op", sub_op, "value, add, sub, mul, normalize, count")->required();
    decbag_cmd->add_option("args", bag_args, "bag literals");

    CLI::App* mulbag_cmd = app.add_subcommand("mulbag", "integer product bag operations");
    mulbag_cmd->add_option("op", sub_op, "value, mul, normalize, topb, count")->required();
    mulbag_cmd->add_option("args", bag_args, "bag literals");

    CLI::App* bench_cmd = app.add_subcommand("bench", "run benchmarks from a JSON spec file");
    bench_cmd->add_option("spec", spec_path, "spec file: {op, repr?, sizes, repetitions?, "
                                             "distribution?, seed?}; omit repr to compare")
        ->required();
    bench_cmd->add_option("--format", format_name, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    bench_cmd->add_option("--out", out_path, "write the report to a file");

    for (CLI::App* sub : app.get_subcommands(nullptr))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 4;
    }

    cli.mode = mode_from_name(mode_name);
    cli.mode_name = mode_name;

    if (app.got_subcommand(eval_cmd))
        return cmd_eval(cli, expr);
    if (app.got_subcommand(convert_cmd))
        return cmd_convert(cli, operand);
    if (app.got_subcommand(factor_cmd))
        return cmd_factor(cli, operand);
    if (app.got_subcommand(isprime_cmd))
        return cmd_isprime(cli, operand);
    if (app.got_subcommand(gcd_cmd))
        return cmd_gcd_lcm(cli, "gcd", a_text, b_text);
    if (app.got_subcommand(lcm_cmd))
        return cmd_gcd_lcm(cli, "lcm", a_text, b_text);
    if (app.got_subcommand(cmp_cmd))
        return cmd_cmp(cli, a_text, b_text);
    if (app.got_subcommand(partitions_cmd))
        return cmd_partitions(cli, n_arg);
    if (app.got_subcommand(pi2_cmd))
        return cmd_pi2(cli, k_arg);
    if (app.got_subcommand(decbag_cmd))
        return cmd_decbag(cli, sub_op, bag_args);
    if (app.got_subcommand(mulbag_cmd))
        return cmd_mulbag(cli, sub_op, bag_args);
    if (app.got_subcommand(bench_cmd))
        return cmd_bench(cli, spec_path, format_name, out_path);

    std::cerr << "error: no command given\n";
    return 4;
}

} // namespace primebag
