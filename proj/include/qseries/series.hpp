#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qseries/qpoch.hpp"
#include "qseries/scalar.hpp"

namespace qs {

enum class SeriesKind { phi, W };

/// A fully instantiated series.
///
/// For `phi`, `numerator` excludes the terminating entry q^{-n}, which is
/// implied whenever `n` is set.  For `W`, `head` is the very-well-poised
/// parameter a and `numerator` holds the tail a_5.. after q^{-n};
/// `denominator` is unused.  `p` counts zero parameters: p > 0 appends p
/// zeros to the denominator, p < 0 appends -p zeros to the numerator.
template <class S>
struct SeriesSpec {
    SeriesKind kind = SeriesKind::phi;
    std::vector<S> numerator;
    std::vector<S> denominator;
    S head{};
    int p = 0;
    S base{};
    S argument{};
    std::optional<long> n;

    /// Exponent of (-1)^k q^{binom(k,2)} in each term.
    int sign_exponent() const {
        if (kind == SeriesKind::W) return p;
        int r_total = static_cast<int>(numerator.size()) + (n ? 1 : 0);
        return 1 + static_cast<int>(denominator.size()) - r_total + p;
    }
};

enum class ViolationCode {
    BaseZero,
    BaseOnUnitCircle,
    ExplicitZero,
    DenominatorZero,
    DenominatorInOmega,
    HeadDegenerate,
    NotTerminating,
};

struct Violation {
    ViolationCode code;
    int index = -1;  // parameter slot, -1 when not slot-specific
    long k = -1;     // witness exponent for Omega membership
    std::string message;
};

template <class S>
std::vector<Violation> guards(const SeriesSpec<S>& spec);

template <class S>
S eval_phi(const SeriesSpec<S>& spec);

template <class S>
S eval_w(const SeriesSpec<S>& spec);

/// Dispatch on spec.kind.
template <class S>
S eval_series(const SeriesSpec<S>& spec) {
    return spec.kind == SeriesKind::W ? eval_w(spec) : eval_phi(spec);
}

/// Partial sums of a (possibly nonterminating) phi series until the tail
/// bound drops below rel_tol.  Requires |q| < 1.
Float eval_phi_nonterminating(const SeriesSpec<Float>& spec, double rel_tol);

/// Same sum with exact partial sums; only the result is rounded.
Float eval_phi_nonterminating(const SeriesSpec<Exact>& spec, double rel_tol);

/// The literal phi form of a W series given s with s^2 = head.
template <class S>
SeriesSpec<S> expand_w_with_root(const SeriesSpec<S>& w, const S& s);

struct Classification {
    std::optional<long> balanced;  // l with q^l * prod(num) = prod(den)
    bool well_poised = false;
    bool very_well_poised = false;
};

template <class S>
Classification classify(const SeriesSpec<S>& spec);

/// The factor (-1)^k q^{binom(k,2)} raised to e, for direct oracles.
template <class S>
S sign_power(const S& q, long k, int e) {
    S base = pow_int(q, k * (k - 1) / 2);
    if (k % 2 != 0) base = -base;
    return pow_int(base, e);
}

}  // namespace qs
