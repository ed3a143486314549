#include "qseries/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qs {

namespace {

std::size_t bits_of(const mpz_class& z) {
    return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t bits_of(const mpq_class& x) {
    return std::max(bits_of(x.get_num()), bits_of(x.get_den()));
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::ParseError, "empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
            throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
        }
    }
    std::string t = text[0] == '+' ? text.substr(1) : text;
    mpq_class r;
    if (r.set_str(t, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
    if (sgn(r.get_den()) == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

}  // namespace

Exact::Exact(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Exact Exact::ratio(long p, long r) {
    if (r == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    mpq_class v(p, r);
    v.canonicalize();
    return Exact(v);
}

Exact Exact::parse(std::string_view raw) {
    std::string s = trim(raw);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty scalar literal");
    if (s.back() != 'i') return Exact(parse_rational(s));
    // Imaginary part present: split at the last top-level sign that is not leading.
    std::string body = trim(std::string_view(s).substr(0, s.size() - 1));
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_text, im_text;
    if (split == std::string::npos) {
        im_text = body;
    } else {
        re_text = trim(std::string_view(body).substr(0, split));
        im_text = trim(std::string_view(body).substr(split));
    }
    auto coeff = [](const std::string& t) -> mpq_class {
        if (t.empty() || t == "+") return 1;
        if (t == "-") return -1;
        std::string u;
        for (char c : t) {
            if (!std::isspace(static_cast<unsigned char>(c))) u.push_back(c);
        }
        if (u == "+" || u.empty()) return 1;
        if (u == "-") return -1;
        return parse_rational(u);
    };
    mpq_class re = re_text.empty() ? mpq_class(0) : parse_rational(re_text);
    return Exact(re, coeff(im_text));
}

std::size_t Exact::height_bits() const { return std::max(bits_of(re_), bits_of(im_)); }

void Exact::check_height() const {
    std::size_t cap = cap_bits_.load(std::memory_order_relaxed);
    // Limb count gives a cheap upper bound; only compute exactly near the cap.
    auto limbs = [](const mpq_class& x) {
        return std::max(mpz_size(x.get_num_mpz_t()), mpz_size(x.get_den_mpz_t()));
    };
    std::size_t approx = std::max(limbs(re_), limbs(im_)) * GMP_NUMB_BITS;
    if (approx <= cap) return;
    if (height_bits() > cap) {
        throw Error(ErrorKind::HeightOverflow, "height exceeds " + std::to_string(cap) + " bits");
    }
}

Exact& Exact::operator+=(const Exact& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Exact& Exact::operator-=(const Exact& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Exact& Exact::operator*=(const Exact& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
    } else {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
    }
    check_height();
    return *this;
}

Exact& Exact::operator/=(const Exact& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
    } else {
        mpq_class d = o.abs2();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
    }
    check_height();
    return *this;
}

Exact Exact::inv() const { return Exact(1) /= *this; }

std::string Exact::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string out;
    if (sgn(re_) != 0) out = re_.get_str();
    std::string im = im_.get_str();
    if (sgn(re_) != 0 && sgn(im_) > 0) out += "+";
    if (im_ == 1) {
        out += "i";
    } else if (im_ == -1) {
        out += "-i";
    } else {
        out += im + " i";
    }
    return out;
}

Float Exact::to_float() const {
    return Float(std::complex<double>(re_.get_d(), im_.get_d()));
}

bool Float::is_finite() const { return std::isfinite(v_.real()) && std::isfinite(v_.imag()); }

Float& Float::operator/=(const Float& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Float::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << v_.real();
    if (v_.imag() != 0.0) os << (v_.imag() < 0 ? "" : "+") << v_.imag() << " i";
    return os.str();
}

double rel_residual(const Float& a, const Float& b) {
    double scale = std::max({1.0, a.abs(), b.abs()});
    return (a - b).abs() / scale;
}

bool approx_eq(const Float& a, const Float& b, double rel_tol) {
    return (a - b).abs() <= rel_tol * std::max({1.0, a.abs(), b.abs()});
}

}  // namespace qs
