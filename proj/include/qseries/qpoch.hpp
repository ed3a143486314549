#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qseries/scalar.hpp"

namespace qs {

/// (a;q)_n = prod_{j<n} (1 - a q^j).
template <class S>
S qpoch(const S& a, const S& q, long n) {
    S result(1L);
    S aq = a;
    for (long j = 0; j < n; ++j) {
        result *= S(1L) - aq;
        if (j + 1 < n) aq *= q;
    }
    return result;
}

template <class S>
S qpoch_multi(const std::vector<S>& args, const S& q, long n) {
    S result(1L);
    for (const S& a : args) result *= qpoch(a, q, n);
    return result;
}

/// True when a = q^{-k} for some 0 <= k <= n-1, i.e. (a;q)_n = 0.
template <class S>
bool in_omega(const S& a, const S& q, long n) {
    S aq = a;
    for (long k = 0; k < n; ++k) {
        if (aq.is_one()) return true;
        aq *= q;
    }
    return false;
}

/// (a;q)_inf, truncated once |a q^N| / (1 - |q|) < rel_tol.
Float qpoch_inf(const Float& a, const Float& q, double rel_tol);

/// (a;q)_b = (a;q)_inf / (a q^b;q)_inf for |q| < 1 and complex b.
Float qpoch_general(const Float& a, const Float& q, const Float& b, double rel_tol);

/// Sample point for the Pochhammer identity suite.  For identities that
/// carry square roots, `a` and `q` hold s and t with the identity read at
/// a = s^2 and q = t^2.
struct PochPoint {
    Exact a;
    Exact b;
    Exact q;
    long n = 0;
    long k = 0;
};

/// Names accepted by poch_identity_residual, in suite order.
const std::vector<std::string>& poch_identity_names();

/// True when the identity is read under the square-root substitution.
bool poch_identity_uses_squares(const std::string& name);

/// LHS - RHS of the named Pochhammer identity at the point; exactly zero
/// when the identity holds.  Throws GuardViolated for excluded points.
Exact poch_identity_residual(const std::string& name, const PochPoint& pt);

/// |(a lam;q)_n/(b lam;q)_n - (a/b)^n| along a ladder of lam values.
std::vector<double> scaled_ratio_errors(const Float& a, const Float& b, const Float& q, long n,
                                    const std::vector<double>& ladder);

}  // namespace qs
