#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qseries/scalar.hpp"
#include "qseries/series.hpp"

namespace qs {

/// c0 + c1*n + c2*binom(n,2).
struct Affine {
    long c0 = 0;
    long c1 = 0;
    long c2 = 0;

    static Affine constant(long c) { return {c, 0, 0}; }
    static Affine n_times(long c) { return {0, c, 0}; }

    long at(long n) const { return c0 + c1 * n + c2 * (n * (n - 1) / 2); }
    bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
    bool is_constant() const { return c1 == 0 && c2 == 0; }

    Affine operator+(const Affine& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Affine operator-(const Affine& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Affine operator-() const { return {-c0, -c1, -c2}; }
    Affine scaled(long k) const { return {c0 * k, c1 * k, c2 * k}; }
    /// Product, using n^2 = 2 binom(n,2) + n; throws when n*binom terms arise.
    Affine times(const Affine& o) const;
    /// Reduce every coefficient mod 2 (for sign exponents).
    Affine mod2() const;

    friend bool operator==(const Affine&, const Affine&) = default;
    friend auto operator<=>(const Affine&, const Affine&) = default;
};

/// coeff * (-1)^sign * prod name^power.  "q" and "z" are ordinary names.
struct Monomial {
    Exact coeff{1L};
    Affine sign;
    std::map<std::string, Affine> powers;

    static Monomial scalar(const Exact& c);
    static Monomial name(const std::string& nm, Affine power = Affine::constant(1));

    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;
    Monomial pow(const Affine& e) const;
    Monomial inv() const { return Monomial{}.operator/(*this); }
    bool is_one() const;

    /// Canonical form: positive real coefficient sign folded into `sign`,
    /// zero powers dropped, sign coefficients mod 2.
    void normalize();

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.coeff == b.coeff && a.sign == b.sign && a.powers == b.powers;
    }
};

struct PochFactor {
    std::vector<Monomial> args;
    int base_power = 1;  // base is q^{base_power}: 1, -1 or 2
    bool infinite = false;
    Affine length = Affine::n_times(1);
    bool denominator = false;

    friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

struct SeriesTemplate {
    SeriesKind kind = SeriesKind::phi;
    int p = 0;
    bool terminating = true;
    std::vector<Monomial> numerator;  // phi: after q^-n; W: tail after q^-n
    std::vector<Monomial> denominator;
    Monomial head;
    int base_power = 1;
    Monomial argument;

    friend bool operator==(const SeriesTemplate&, const SeriesTemplate&) = default;
};

struct Expr {
    Monomial prefactor;
    std::vector<PochFactor> pochs;
    std::optional<SeriesTemplate> series;

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct Assignment {
    std::map<std::string, Exact> values;
    Exact q{1L};
    std::optional<Exact> z;
    long n = 0;
};

/// Parameter names other than q and z.
std::set<std::string> free_params(const Expr& e);

/// True when some factor needs floating point (infinite products or a
/// nonterminating series).
bool needs_float(const Expr& e);

Expr parse_expr(const std::string& text);
std::string render(const Expr& e);
std::string render(const Monomial& m);

/// Order-insensitive structural key: parameter lists are sorted.
std::string canonical_key(const Expr& e);

/// Replace names by monomials throughout (used for parameter maps).
Expr substitute(const Expr& e, const std::map<std::string, Monomial>& map);
Monomial substitute(const Monomial& m, const std::map<std::string, Monomial>& map);

template <class S>
S eval_monomial(const Monomial& m, const Assignment& a);

template <class S>
SeriesSpec<S> instantiate(const SeriesTemplate& t, const Assignment& a);

template <class S>
S eval_expr(const Expr& e, const Assignment& a);

/// Float value of an expression that needs infinite products or a
/// nonterminating series: everything else is computed exactly and the
/// nonterminating series uses exact partial sums.
Float eval_expr_mixed(const Expr& e, const Assignment& a);

/// Exact check that evaluation would not hit a pole or violated guard.
/// Returns a description of the first problem, or nullopt if admissible.
std::optional<std::string> check_admissible(const Expr& e, const Assignment& a);

}  // namespace qs
