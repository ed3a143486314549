#include <cctype>
#include <string>
#include <variant>

#include "qseries/expr.hpp"

namespace qs {

namespace {

enum class Tok { Int, Name, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t col = 0;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.col = i + 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = src.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Name;
            t.text = src.substr(i, j - i);
            i = j;
        } else if (std::string("*/^()+-,;[]=").find(c) != std::string::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, c);
            ++i;
        } else {
            throw Error(ErrorKind::ParseError,
                        "col " + std::to_string(i + 1) + ": unexpected character '" + std::string(1, c) + "' (see docs/dsl.md)");
        }
        out.push_back(t);
    }
    Token end;
    end.col = src.size() + 1;
    out.push_back(end);
    return out;
}

bool is_keyword(const std::string& s) {
    return s == "poch" || s == "phi" || s == "W" || s == "binom" || s == "n" || s == "inf" || s == "pm" ||
           s == "nonterminating";
}

/// Intermediate parse value: a monomial possibly carrying z^pm style markers,
/// Pochhammer factors and at most one series.
struct Term {
    Monomial mono;
    std::map<std::string, long> pm;
    std::vector<PochFactor> pochs;
    std::optional<SeriesTemplate> series;

    bool pure() const { return pochs.empty() && !series; }
};

struct PmExp {};
using Exponent = std::variant<Affine, PmExp>;

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

    Expr parse_top() {
        Term t = product();
        expect_end();
        if (!t.pm.empty()) fail("'^pm' is only allowed inside parameter lists");
        Expr e;
        e.prefactor = t.mono;
        e.pochs = std::move(t.pochs);
        e.series = std::move(t.series);
        return e;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_name(const char* s) const { return peek().kind == Tok::Name && peek().text == s; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw Error(ErrorKind::ParseError,
                    "col " + std::to_string(t.col) + " near " + near + ": " + msg + " (see docs/dsl.md)");
    }

    void expect_sym(const char* s) {
        if (!at_sym(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }

    void expect_end() {
        if (peek().kind != Tok::End) fail("expected end of expression");
    }

    long integer() {
        if (peek().kind != Tok::Int) fail("expected integer");
        return std::stol(toks_[pos_++].text);
    }

    long signed_integer() {
        bool neg = false;
        if (at_sym("-")) {
            neg = true;
            ++pos_;
        } else if (at_sym("+")) {
            ++pos_;
        }
        long v = integer();
        return neg ? -v : v;
    }

    // aterm := INT [['*'] ('n' | 'binom')] | 'n' | 'binom'
    Affine affine_term() {
        long c = 1;
        bool have_int = false;
        if (peek().kind == Tok::Int) {
            c = integer();
            have_int = true;
            if (at_sym("*") && (peek(1).kind == Tok::Name && (peek(1).text == "n" || peek(1).text == "binom"))) ++pos_;
        }
        if (at_name("n")) {
            ++pos_;
            return Affine::n_times(c);
        }
        if (at_name("binom")) {
            ++pos_;
            return {0, 0, c};
        }
        if (!have_int) fail("expected integer, 'n' or 'binom'");
        return Affine::constant(c);
    }

    Affine affine() {
        Affine total;
        bool neg = false;
        if (at_sym("-")) {
            neg = true;
            ++pos_;
        } else if (at_sym("+")) {
            ++pos_;
        }
        Affine t = affine_term();
        total = neg ? -t : t;
        while (at_sym("+") || at_sym("-")) {
            bool minus = at_sym("-");
            ++pos_;
            Affine u = affine_term();
            total = minus ? total - u : total + u;
        }
        return total;
    }

    // exponent := '(' affine ')' | ['-'] INT | ['-'] 'n' | ['-'] 'binom' | 'pm'
    Exponent exponent() {
        if (at_name("pm")) {
            ++pos_;
            return PmExp{};
        }
        if (at_sym("(")) {
            ++pos_;
            Affine a = affine();
            expect_sym(")");
            return a;
        }
        bool neg = false;
        if (at_sym("-")) {
            neg = true;
            ++pos_;
        }
        Affine a = affine_term();
        return neg ? -a : a;
    }

    Term product() {
        Term acc = unary();
        while (at_sym("*") || at_sym("/")) {
            bool divide = at_sym("/");
            ++pos_;
            Term rhs = unary();
            if (divide) {
                if (rhs.series) fail("cannot divide by a series");
                for (auto& f : rhs.pochs) f.denominator = !f.denominator;
                acc.mono = acc.mono / rhs.mono;
                for (const auto& [k, v] : rhs.pm) acc.pm[k] -= v;
            } else {
                acc.mono = acc.mono * rhs.mono;
                for (const auto& [k, v] : rhs.pm) acc.pm[k] += v;
            }
            for (auto& f : rhs.pochs) acc.pochs.push_back(std::move(f));
            if (rhs.series) {
                if (acc.series) fail("at most one series per expression");
                acc.series = std::move(rhs.series);
            }
            std::erase_if(acc.pm, [](const auto& kv) { return kv.second == 0; });
        }
        return acc;
    }

    Term unary() {
        if (at_sym("-")) {
            ++pos_;
            Term t = unary();
            t.mono = t.mono * Monomial::scalar(Exact(-1L));
            return t;
        }
        return power();
    }

    Term power() {
        std::size_t start = pos_;
        Term base = primary();
        if (!at_sym("^")) return base;
        ++pos_;
        if (!base.pure()) fail("only monomials can be raised to a power");
        Exponent e = exponent();
        if (std::holds_alternative<PmExp>(e)) {
            bool single_name = toks_[start].kind == Tok::Name && pos_ - start == 3 && base.pm.empty();
            if (!single_name) fail("'^pm' applies to a bare parameter name");
            Term t;
            t.pm[toks_[start].text] = 1;
            return t;
        }
        if (!base.pm.empty()) fail("cannot raise a '^pm' marker to a power");
        base.mono = base.mono.pow(std::get<Affine>(e));
        return base;
    }

    Term primary() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            ++pos_;
            Term r;
            r.mono = Monomial::scalar(Exact(mpq_class(mpz_class(t.text))));
            return r;
        }
        if (t.kind == Tok::Sym && t.text == "(") {
            ++pos_;
            Term r = product();
            expect_sym(")");
            return r;
        }
        if (t.kind == Tok::Name) {
            if (t.text == "poch") return poch();
            if (t.text == "phi" || t.text == "W") return series();
            if (is_keyword(t.text)) fail("keyword '" + t.text + "' cannot be used as a parameter");
            ++pos_;
            Term r;
            r.mono = Monomial::name(t.text);
            return r;
        }
        fail("expected number, name, '(', poch or series");
    }

    std::vector<Monomial> element() {
        Term t = product();
        if (!t.pure()) fail("list entries must be monomials");
        if (t.pm.empty()) return {t.mono};
        Monomial plus = t.mono, minus = t.mono;
        for (const auto& [k, v] : t.pm) {
            plus = plus * Monomial::name(k, Affine::constant(v));
            minus = minus * Monomial::name(k, Affine::constant(-v));
        }
        return {plus, minus};
    }

    std::vector<Monomial> list_until(const char* stop) {
        std::vector<Monomial> out;
        if (at_sym(stop)) return out;
        for (;;) {
            for (auto& m : element()) out.push_back(std::move(m));
            if (!at_sym(",")) break;
            ++pos_;
        }
        return out;
    }

    int base() {
        if (!at_name("q")) fail("expected base 'q', 'q^-1' or 'q^2'");
        ++pos_;
        if (!at_sym("^")) return 1;
        ++pos_;
        Exponent e = exponent();
        const Affine* a = std::get_if<Affine>(&e);
        if (!a || !a->is_constant() || (a->c0 != -1 && a->c0 != 2 && a->c0 != 1)) {
            fail("base exponent must be -1, 1 or 2");
        }
        return static_cast<int>(a->c0);
    }

    Term poch() {
        ++pos_;
        expect_sym("(");
        PochFactor f;
        f.args = list_until(";");
        if (f.args.empty()) fail("poch needs at least one argument");
        expect_sym(";");
        f.base_power = base();
        expect_sym(";");
        if (at_name("inf")) {
            ++pos_;
            f.infinite = true;
            f.length = Affine{};
        } else {
            f.length = affine();
            if (f.length.c2 != 0 || f.length.c1 < 0 || f.length.c1 > 2 || (f.length.c1 == 0 && f.length.c0 < 0)) {
                fail("length must be a nonnegative constant, n, 2n or inf");
            }
        }
        expect_sym(")");
        Term t;
        t.pochs.push_back(std::move(f));
        return t;
    }

    static bool is_marker(const Monomial& m, int base_power) {
        return m.coeff.is_one() && m.sign.is_zero() && m.powers.size() == 1 && m.powers.count("q") &&
               m.powers.at("q") == Affine::n_times(-base_power);
    }

    Term series() {
        SeriesTemplate s;
        s.kind = peek().text == "W" ? SeriesKind::W : SeriesKind::phi;
        ++pos_;
        expect_sym("[");
        if (!at_name("p")) fail("expected 'p=' in series options");
        ++pos_;
        expect_sym("=");
        s.p = static_cast<int>(signed_integer());
        if (at_sym(",")) {
            ++pos_;
            if (!at_name("nonterminating")) fail("expected 'nonterminating'");
            ++pos_;
            s.terminating = false;
        }
        expect_sym("]");
        expect_sym("(");
        std::size_t marker_pos = 0;
        std::vector<Monomial> first;
        if (s.kind == SeriesKind::W) {
            if (!s.terminating) fail("W series must terminate");
            auto head = element();
            if (head.size() != 1) fail("W head cannot carry '^pm'");
            s.head = head.front();
            expect_sym(";");
            marker_pos = pos_;
            first = list_until(";");
        } else {
            marker_pos = pos_;
            first = list_until(";");
            expect_sym(";");
            s.denominator = list_until(";");
        }
        expect_sym(";");
        s.base_power = base();
        expect_sym(";");
        auto arg = element();
        if (arg.size() != 1) fail("series argument cannot carry '^pm'");
        s.argument = arg.front();
        expect_sym(")");
        if (s.terminating) {
            if (first.empty() || !is_marker(first.front(), s.base_power)) {
                pos_ = marker_pos;
                fail("expected termination marker q^-n as the first numerator entry");
            }
            first.erase(first.begin());
        } else if (first.empty() && s.denominator.empty()) {
            pos_ = marker_pos;
            fail("empty nonterminating series");
        }
        s.numerator = std::move(first);
        Term t;
        t.series = std::move(s);
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse_top(); }

}  // namespace qs
