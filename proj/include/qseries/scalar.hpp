#pragma once

#include <gmpxx.h>

#include <atomic>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include "qseries/error.hpp"

namespace qs {

class Float;

/// Exact Gaussian rational re + im*i with re, im reduced rationals.
/// Each component is canonical, so equality is structural.
class Exact {
public:
    Exact() = default;
    Exact(long v) : re_(v) {}  // NOLINT: implicit by design
    Exact(mpq_class re, mpq_class im = 0);

    static Exact ratio(long p, long r);
    static Exact i() { return Exact(0, 1); }
    /// Accepts "p", "p/r", "p/r+s/t i", "s/t i", "i", "-i".
    static Exact parse(std::string_view text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    /// |x|^2, exact.
    mpq_class abs2() const { return re_ * re_ + im_ * im_; }
    /// Largest bit length over the four integers of the representation.
    std::size_t height_bits() const;

    Exact operator-() const { return Exact(-re_, -im_); }
    Exact& operator+=(const Exact& o);
    Exact& operator-=(const Exact& o);
    Exact& operator*=(const Exact& o);
    Exact& operator/=(const Exact& o);
    Exact inv() const;

    friend Exact operator+(Exact a, const Exact& b) { return a += b; }
    friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
    friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
    friend Exact operator/(Exact a, const Exact& b) { return a /= b; }
    friend bool operator==(const Exact& a, const Exact& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

    std::string to_string() const;
    Float to_float() const;

    /// Bit-length cap applied after every multiplication and division.
    static void set_height_cap_bits(std::size_t bits) { cap_bits_.store(bits); }
    static std::size_t height_cap_bits() { return cap_bits_.load(); }

private:
    void check_height() const;

    mpq_class re_;
    mpq_class im_;
    static inline std::atomic<std::size_t> cap_bits_{16384};
};

/// Approximate complex scalar with the same arithmetic surface as Exact.
class Float {
public:
    Float() = default;
    Float(double re) : v_(re, 0.0) {}  // NOLINT: implicit by design
    Float(long v) : v_(static_cast<double>(v), 0.0) {}  // NOLINT
    Float(int v) : v_(static_cast<double>(v), 0.0) {}  // NOLINT
    Float(std::complex<double> v) : v_(v) {}  // NOLINT

    static Float i() { return Float(std::complex<double>(0.0, 1.0)); }

    std::complex<double> value() const { return v_; }
    double re() const { return v_.real(); }
    double im() const { return v_.imag(); }
    double abs() const { return std::abs(v_); }
    double abs2() const { return std::norm(v_); }

    bool is_zero() const { return v_ == std::complex<double>(0.0, 0.0); }
    bool is_one() const { return v_ == std::complex<double>(1.0, 0.0); }
    bool is_finite() const;

    Float operator-() const { return Float(-v_); }
    Float& operator+=(const Float& o) { v_ += o.v_; return *this; }
    Float& operator-=(const Float& o) { v_ -= o.v_; return *this; }
    Float& operator*=(const Float& o) { v_ *= o.v_; return *this; }
    Float& operator/=(const Float& o);
    Float inv() const { return Float(1.0) /= *this; }

    friend Float operator+(Float a, const Float& b) { return a += b; }
    friend Float operator-(Float a, const Float& b) { return a -= b; }
    friend Float operator*(Float a, const Float& b) { return a *= b; }
    friend Float operator/(Float a, const Float& b) { return a /= b; }
    friend bool operator==(const Float& a, const Float& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Float& a, const Float& b) { return !(a == b); }

    std::string to_string() const;

private:
    std::complex<double> v_{0.0, 0.0};
};

/// |a-b| <= rel_tol * max(1, |a|, |b|).
bool approx_eq(const Float& a, const Float& b, double rel_tol);

/// Relative residual |a-b| / max(1, |a|, |b|).
double rel_residual(const Float& a, const Float& b);

/// Convert an exact value into the scalar type S.
template <class S>
S from_exact(const Exact& x);

template <>
inline Exact from_exact<Exact>(const Exact& x) { return x; }

template <>
inline Float from_exact<Float>(const Exact& x) { return x.to_float(); }

template <class S>
S pow_int(S a, long k) {
    if (k < 0) {
        if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero raised to a negative power");
        a = a.inv();
        k = -k;
    }
    S result(1L);
    while (k > 0) {
        if (k & 1) result *= a;
        k >>= 1;
        if (k > 0) a *= a;
    }
    return result;
}

/// True when |q| == 1 (exact for Exact, by comparison for Float).
inline bool on_unit_circle(const Exact& q) { return q.abs2() == 1; }
inline bool on_unit_circle(const Float& q) { return q.abs2() == 1.0; }

inline bool inside_unit_disk(const Exact& q) { return q.abs2() < 1; }
inline bool inside_unit_disk(const Float& q) { return q.abs2() < 1.0; }

}  // namespace qs
