#pragma once

#include <string>

#include "qseries/series.hpp"

namespace qs {

/// source = prefactor * target at the point of application.
template <class S>
struct TransformResult {
    S prefactor{1L};
    SeriesSpec<S> target;
};

/// Inversion of a terminating phi^p: reverses the order of summation.
/// Throws ZeroParameter for a vanishing numerator entry and GuardViolated
/// when the source or the reflected denominators are inadmissible.
template <class S>
TransformResult<S> invert(const SeriesSpec<S>& spec);

/// Inversion of a terminating W^p: head a -> q^{-2n}/a, tail a_k -> q^{-n} a_k / a.
template <class S>
TransformResult<S> invert_w(const SeriesSpec<S>& spec);

/// Balanced terminating 4phi3 at argument q to a very-well-poised 8W7.
/// Exact mode checks the balance condition exactly, float mode to 1e-9.
template <class S>
TransformResult<S> watson(const SeriesSpec<S>& spec);

/// r+1 phi r in base q to the same series in base 1/q (prefactor 1).
template <class S>
TransformResult<S> q_inverse(const SeriesSpec<S>& spec);

enum class LimitRule { inf1, inf3, zero1, zero3 };

std::string to_string(LimitRule r);
LimitRule parse_limit_rule(const std::string& s);

template <class S>
struct LimitPair {
    SeriesSpec<S> lhs;  // the source with the last tail entry scaled
    SeriesSpec<S> rhs;  // the limit, one tail entry shorter
};

/// `spec` is the unscaled W series whose last tail entry a_{r+1} and
/// argument z carry the limit.  inf rules scale by lambda, zero rules by
/// epsilon = 1/lambda, so every rule converges as lambda grows.
template <class S>
LimitPair<S> limit_transition(const SeriesSpec<S>& spec, LimitRule rule, const S& lambda);

}  // namespace qs
