#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qgal {

using Rat = boost::multiprecision::cpp_rational;
using Int = long long;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian rational re + im*i with i^2 = -1.
struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(long r) : re(r) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return {Rat(0), Rat(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussRat conj() const { return {re, -im}; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator/(const GaussRat& o) const {
        Rat n = o.re * o.re + o.im * o.im;
        if (n == 0) throw error("GaussRat: division by zero");
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    GaussRat& operator+=(const GaussRat& o) { *this = *this + o; return *this; }
    GaussRat& operator-=(const GaussRat& o) { *this = *this - o; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    double to_double() const {
        if (im != 0) throw error("GaussRat: complex value in real context");
        return static_cast<double>(re);
    }
};

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline GaussRat factorial(Int n) {
    Rat f = 1;
    for (Int k = 2; k <= n; ++k) f *= k;
    return GaussRat(f);
}

inline GaussRat binomial(Int n, Int k) {
    if (k < 0 || k > n) return GaussRat(Rat(0));
    Rat b = 1;
    for (Int j = 0; j < k; ++j) b = b * (n - j) / (j + 1);
    return GaussRat(b);
}

} // namespace qgal
