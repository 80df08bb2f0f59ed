#include "hcont/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace hcont {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Semicolon, Colon, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skipSpace();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) return tok;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            tok.kind = Tok::Number;
            tok.text = lexNumber();
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            tok.kind = Tok::Ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                tok.text += advance();
            }
            return tok;
        }
        advance();
        tok.text = std::string(1, c);
        switch (c) {
        case '+': tok.kind = Tok::Plus; break;
        case '-': tok.kind = Tok::Minus; break;
        case '*': tok.kind = Tok::Star; break;
        case '/': tok.kind = Tok::Slash; break;
        case '^': tok.kind = Tok::Caret; break;
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        case ';': tok.kind = Tok::Semicolon; break;
        case ':': tok.kind = Tok::Colon; break;
        case ',': tok.kind = Tok::Comma; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", tok.line, tok.column);
        }
        return tok;
    }

private:
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    bool digitAt(std::size_t p) const {
        return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    }

    std::string lexNumber() {
        std::string s;
        while (digitAt(pos_)) s += advance();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            s += advance();
            while (digitAt(pos_)) s += advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (digitAt(look)) {
                s += advance();
                while (pos_ < look) s += advance();
                while (digitAt(pos_)) s += advance();
            }
        }
        return s;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

/// Exact value of a decimal literal such as "12", "0.125" or "1.5e-3".
Rational decimalToRational(const std::string& s) {
    std::string mantissa;
    int scale = 0;
    bool fraction = false;
    std::size_t k = 0;
    for (; k < s.size() && s[k] != 'e' && s[k] != 'E'; ++k) {
        if (s[k] == '.') {
            fraction = true;
            continue;
        }
        mantissa += s[k];
        if (fraction) --scale;
    }
    if (k < s.size()) scale += std::stoi(s.substr(k + 1));
    // A leading zero would select octal in the integer constructor.
    mantissa.erase(0, std::min(mantissa.find_first_not_of('0'), mantissa.size()));
    Rational value{boost::multiprecision::mpz_int(mantissa.empty() ? "0" : mantissa)};
    const Rational ten(10);
    Rational factor(1);
    for (int j = 0; j < std::abs(scale); ++j) factor *= ten;
    return scale >= 0 ? Rational(value * factor) : Rational(value / factor);
}

// Sparse polynomial used during parsing: monomial (variable -> exponent,
// no zero entries) to exact coefficient.
using Monomial = std::map<std::size_t, int>;
using Expr = std::map<Monomial, ExactComplex>;

void addTerm(Expr& e, const Monomial& m, const ExactComplex& c) {
    auto [it, inserted] = e.try_emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
    }
    if (it->second.isZero()) e.erase(it);
}

Expr constant(const ExactComplex& c) {
    Expr e;
    if (!c.isZero()) e.emplace(Monomial{}, c);
    return e;
}

Expr add(const Expr& a, const Expr& b, bool subtract) {
    Expr out = a;
    for (const auto& [m, c] : b) addTerm(out, m, subtract ? -c : c);
    return out;
}

Monomial multiplyMonomials(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (const auto& [v, e] : b) {
        const int s = (out[v] += e);
        if (s == 0) out.erase(v);
    }
    return out;
}

Expr multiply(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) addTerm(out, multiplyMonomials(ma, mb), ca * cb);
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::optional<std::vector<std::string>> fixedVariables)
        : lexer_(text), fixed_(fixedVariables.has_value()) {
        if (fixedVariables) {
            for (auto& name : *fixedVariables) declare(name, 0, 0);
        }
        advance();
    }

    PolySystem parseSystem() {
        const int count = expectInteger("number of polynomials");
        if (count <= 0) fail("number of polynomials must be positive");
        int varCount = count;
        if (cur_.kind == Tok::Number && cur_.line == headerLine_) varCount = expectInteger("number of variables");
        if (varCount <= 0) fail("number of variables must be positive");

        if (cur_.kind == Tok::Ident && cur_.text == "vars") {
            Token saved = cur_;
            advance();
            if (cur_.kind != Tok::Colon) {
                // An ordinary polynomial that happens to start with "vars".
                pushback_ = cur_;
                cur_ = saved;
            } else {
                advance();
                while (true) {
                    if (cur_.kind != Tok::Ident || cur_.text == "i") fail("expected a variable name");
                    if (index_.count(cur_.text)) fail("variable '" + cur_.text + "' declared twice");
                    declare(cur_.text, cur_.line, cur_.column);
                    advance();
                    if (cur_.kind == Tok::Comma) {
                        advance();
                        continue;
                    }
                    expect(Tok::Semicolon, "';' after variable declaration");
                    break;
                }
                fixed_ = true;
                if (static_cast<int>(names_.size()) != varCount) {
                    throw ParseError("declared " + std::to_string(varCount) + " variables but listed " +
                                         std::to_string(names_.size()),
                                     1, 1);
                }
            }
        }

        std::vector<Expr> exprs;
        for (int k = 0; k < count; ++k) {
            if (cur_.kind == Tok::End) fail("expected " + std::to_string(count) + " polynomials, found " + std::to_string(k));
            exprs.push_back(parseExpression());
            expect(Tok::Semicolon, "';' terminating the polynomial");
        }
        if (cur_.kind != Tok::End) fail("unexpected text after the last polynomial");
        if (static_cast<int>(names_.size()) != varCount) {
            throw ParseError("inconsistent variable count: header declares " + std::to_string(varCount) +
                                 " but the polynomials use " + std::to_string(names_.size()),
                             1, 1);
        }
        std::vector<LaurentPolynomial> polys;
        polys.reserve(exprs.size());
        for (const Expr& e : exprs) polys.push_back(toPolynomial(e));
        return PolySystem(names_, std::move(polys));
    }

    LaurentPolynomial parseSingle() {
        Expr e = parseExpression();
        if (cur_.kind == Tok::Semicolon) advance();
        if (cur_.kind != Tok::End) fail("unexpected text after the polynomial");
        return toPolynomial(e);
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cur_.line, cur_.column); }

    void advance() {
        if (pushback_) {
            cur_ = *pushback_;
            pushback_.reset();
            return;
        }
        cur_ = lexer_.next();
    }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) fail("expected " + what);
        advance();
    }

    int expectInteger(const std::string& what) {
        if (cur_.kind != Tok::Number || cur_.text.find_first_not_of("0123456789") != std::string::npos) {
            fail("expected an integer (" + what + ")");
        }
        headerLine_ = cur_.line;
        const int v = std::stoi(cur_.text);
        advance();
        return v;
    }

    void declare(const std::string& name, int, int) {
        index_.emplace(name, names_.size());
        names_.push_back(name);
    }

    std::size_t variable(const Token& tok) {
        auto it = index_.find(tok.text);
        if (it != index_.end()) return it->second;
        if (fixed_) throw ParseError("unknown variable '" + tok.text + "'", tok.line, tok.column);
        declare(tok.text, tok.line, tok.column);
        return names_.size() - 1;
    }

    // expression := term (('+'|'-') term)*
    Expr parseExpression() {
        Expr value = parseTerm();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool subtract = cur_.kind == Tok::Minus;
            advance();
            value = add(value, parseTerm(), subtract);
        }
        return value;
    }

    // term := unary (('*'|'/') unary)*
    Expr parseTerm() {
        Expr value = parseUnary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const bool divide = cur_.kind == Tok::Slash;
            const Token op = cur_;
            advance();
            Expr rhs = parseUnary();
            value = divide ? multiply(value, invert(rhs, op)) : multiply(value, rhs);
        }
        return value;
    }

    // unary := ('+'|'-') unary | power
    Expr parseUnary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return add(Expr{}, parseUnary(), true);
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return parseUnary();
        }
        return parsePower();
    }

    // power := primary ('^' exponent)?
    Expr parsePower() {
        Expr base = parsePrimary();
        if (cur_.kind != Tok::Caret) return base;
        const Token op = cur_;
        advance();
        const int e = parseExponent();
        if (e < 0) return power(invert(base, op), -e);
        return power(base, e);
    }

    int parseExponent() {
        bool parens = false;
        if (cur_.kind == Tok::LParen) {
            parens = true;
            advance();
        }
        int sign = 1;
        if (cur_.kind == Tok::Minus || cur_.kind == Tok::Plus) {
            if (cur_.kind == Tok::Minus) sign = -1;
            advance();
        }
        if (cur_.kind != Tok::Number || cur_.text.find_first_not_of("0123456789") != std::string::npos) {
            fail("exponent must be an integer");
        }
        const int e = sign * std::stoi(cur_.text);
        advance();
        if (parens) expect(Tok::RParen, "')' after exponent");
        return e;
    }

    Expr parsePrimary() {
        const Token tok = cur_;
        switch (tok.kind) {
        case Tok::Number:
            advance();
            return constant({decimalToRational(tok.text), Rational(0)});
        case Tok::Ident:
            advance();
            if (tok.text == "i") return constant({Rational(0), Rational(1)});
            return Expr{{Monomial{{variable(tok), 1}}, ExactComplex{Rational(1), Rational(0)}}};
        case Tok::LParen: {
            advance();
            Expr inner = parseExpression();
            expect(Tok::RParen, "')'");
            return inner;
        }
        default:
            fail(tok.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok.text + "'");
        }
    }

    Expr invert(const Expr& e, const Token& at) const {
        if (e.empty()) throw ParseError("division by zero", at.line, at.column);
        if (e.size() != 1) {
            throw ParseError("denominator is not a monomial; multiply the equation through by it manually", at.line,
                             at.column);
        }
        const auto& [m, c] = *e.begin();
        Monomial inv;
        for (const auto& [v, k] : m) inv[v] = -k;
        return Expr{{inv, ExactComplex{Rational(1), Rational(0)} / c}};
    }

    static Expr power(const Expr& base, int e) {
        Expr out = constant({Rational(1), Rational(0)});
        for (int k = 0; k < e; ++k) out = multiply(out, base);
        return out;
    }

    LaurentPolynomial toPolynomial(const Expr& e) const {
        std::vector<Term> terms;
        terms.reserve(e.size());
        for (const auto& [m, c] : e) {
            ExponentVector exps(names_.size(), 0);
            for (const auto& [v, k] : m) exps[v] = k;
            terms.push_back({Coefficient(c), std::move(exps)});
        }
        return LaurentPolynomial(names_, std::move(terms));
    }

    Lexer lexer_;
    Token cur_;
    std::optional<Token> pushback_;
    bool fixed_;
    int headerLine_ = 1;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace

PolySystem parseSystem(std::string_view text) {
    Parser parser(text, std::nullopt);
    return parser.parseSystem();
}

PolySystem parseSystemFile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open system file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseSystem(buffer.str());
}

LaurentPolynomial parsePolynomial(std::string_view text, const std::vector<std::string>& variables) {
    Parser parser(text, variables);
    return parser.parseSingle();
}

} // namespace hcont
