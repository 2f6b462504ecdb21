#pragma once

#include "qgal/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgal {

/// Coefficient symbols: deformation parameter a, character parameters alpha, beta.
enum class Sym : int { a = 0, alpha = 1, beta = 2 };

inline const char* sym_name(Sym s) {
    switch (s) {
        case Sym::a: return "a";
        case Sym::alpha: return "alpha";
        case Sym::beta: return "beta";
    }
    return "?";
}

/// Exponent vector over (a, alpha, beta); a and beta are Laurent, alpha >= 0.
struct ExpVec {
    std::array<Int, 3> e{0, 0, 0};

    Int total() const { return e[0] + e[1] + e[2]; }
    bool is_unit() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }

    bool operator==(const ExpVec& o) const { return e == o.e; }
};

/// Graded-lex over (a, alpha, beta).
struct ExpVecLess {
    bool operator()(const ExpVec& x, const ExpVec& y) const {
        if (x.total() != y.total()) return x.total() < y.total();
        return x.e < y.e;
    }
};

inline Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw error("exponent overflow");
    return r;
}

/// Exact Laurent polynomial in (a, beta) and polynomial in alpha over the
/// Gaussian rationals. Canonical: no zero coefficients, graded-lex term order.
class Scalar {
public:
    using Terms = std::map<ExpVec, GaussRat, ExpVecLess>;

    Scalar() = default;
    Scalar(GaussRat c) {
        if (!c.is_zero()) terms_[ExpVec{}] = std::move(c);
    }
    Scalar(long n) : Scalar(GaussRat(n)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(GaussRat(1L)); }
    static Scalar imag() { return Scalar(GaussRat::i()); }

    static Scalar monomial(GaussRat c, Int ea, Int ealpha, Int ebeta) {
        if (ealpha < 0) throw error("Scalar: negative alpha exponent");
        Scalar s;
        if (!c.is_zero()) s.terms_[ExpVec{{ea, ealpha, ebeta}}] = std::move(c);
        return s;
    }
    static Scalar sym(Sym v, Int exp = 1) {
        switch (v) {
            case Sym::a: return monomial(GaussRat(1L), exp, 0, 0);
            case Sym::alpha: return monomial(GaussRat(1L), 0, exp, 0);
            case Sym::beta: return monomial(GaussRat(1L), 0, 0, exp);
        }
        throw error("Scalar: unknown symbol");
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
               terms_.begin()->second.is_one();
    }
    bool is_single_term() const { return terms_.size() == 1; }

    /// Numeric value when the scalar is a plain Gaussian rational.
    std::optional<GaussRat> as_constant() const {
        if (terms_.empty()) return GaussRat(Rat(0));
        if (terms_.size() == 1 && terms_.begin()->first.is_unit())
            return terms_.begin()->second;
        return std::nullopt;
    }

    Scalar operator-() const {
        Scalar r;
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Scalar operator+(const Scalar& o) const {
        Scalar r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Scalar operator-(const Scalar& o) const {
        Scalar r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Scalar operator*(const Scalar& o) const {
        Scalar r;
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) {
                ExpVec m;
                for (int k = 0; k < 3; ++k) m.e[k] = checked_add(m1.e[k], m2.e[k]);
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return terms_ != o.terms_; }

    /// Exact division by a one-term scalar; Laurent exponents may go negative
    /// for a and beta, never for alpha.
    Scalar div_monomial(const Scalar& m) const {
        if (m.terms_.size() != 1)
            throw error("div_monomial: divisor must have exactly one term");
        const auto& [dm, dc] = *m.terms_.begin();
        Scalar r;
        for (auto& [tm, tc] : terms_) {
            ExpVec q;
            for (int k = 0; k < 3; ++k) q.e[k] = checked_add(tm.e[k], -dm.e[k]);
            if (q.e[1] < 0) throw error("div_monomial: negative alpha exponent");
            r.add_term(q, tc / dc);
        }
        return r;
    }

    /// Substitute numeric values for a subset of the symbols. Binding a symbol
    /// to zero while it occurs with a negative exponent is a pole.
    Scalar eval(const std::map<Sym, GaussRat>& bindings) const {
        Scalar r;
        for (auto& [m, c] : terms_) {
            GaussRat f = c;
            ExpVec rest = m;
            for (auto& [v, val] : bindings) {
                Int ex = m.e[static_cast<int>(v)];
                rest.e[static_cast<int>(v)] = 0;
                if (ex == 0) continue;
                if (val.is_zero()) {
                    if (ex < 0)
                        throw error(std::string("pole at ") + sym_name(v) +
                                    "=0 in term " + term_string(m, c));
                    f = GaussRat(Rat(0));
                    break;
                }
                GaussRat p(Rat(1));
                GaussRat base = ex > 0 ? val : GaussRat(Rat(1)) / val;
                for (Int k = 0; k < (ex > 0 ? ex : -ex); ++k) p *= base;
                f *= p;
            }
            r.add_term(rest, f);
        }
        return r;
    }

    Scalar conj() const {
        Scalar r;
        for (auto& [m, c] : terms_) r.terms_[m] = c.conj();
        return r;
    }

    std::string str() const;

private:
    void add_term(const ExpVec& m, GaussRat c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static std::string term_string(const ExpVec& m, const GaussRat& c);

    Terms terms_;
};

namespace detail {

inline std::string coeff_body(const GaussRat& c) {
    // magnitude-style body; caller handles the overall sign when foldable
    if (c.im == 0) return to_string(c.re);
    if (c.re == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "-i";
        return to_string(c.im) + "*i";
    }
    std::string s = "(" + to_string(c.re);
    if (c.im > 0)
        s += " + " + (c.im == 1 ? std::string("i") : to_string(c.im) + "*i");
    else
        s += " - " + (c.im == -1 ? std::string("i") : to_string(-c.im) + "*i");
    return s + ")";
}

// Sign that may be folded into a leading +/- separator; 0 means unfoldable.
inline int coeff_sign(const GaussRat& c) {
    if (c.im == 0) return c.re < 0 ? -1 : 1;
    if (c.re == 0) return c.im < 0 ? -1 : 1;
    return 0;
}

inline GaussRat coeff_abs(const GaussRat& c) {
    int s = coeff_sign(c);
    return s < 0 ? -c : c;
}

inline std::string pow_string(const std::string& name, Int e) {
    if (e == 1) return name;
    std::ostringstream os;
    os << name << "^" << e;
    return os.str();
}

} // namespace detail

inline std::string Scalar::term_string(const ExpVec& m, const GaussRat& c) {
    std::vector<std::string> factors;
    for (int k = 0; k < 3; ++k)
        if (m.e[k] != 0)
            factors.push_back(detail::pow_string(sym_name(static_cast<Sym>(k)), m.e[k]));
    GaussRat mag = detail::coeff_abs(c);
    std::string body = detail::coeff_body(mag);
    if (!factors.empty()) {
        std::string mono = factors[0];
        for (size_t k = 1; k < factors.size(); ++k) mono += "*" + factors[k];
        if (mag.is_one()) {
            body = mono;
        } else {
            if (body.find(' ') != std::string::npos && body.front() != '(')
                body = "(" + body + ")";
            body += "*" + mono;
        }
    }
    return body;
}

inline std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // descending graded-lex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        int sign = detail::coeff_sign(it->second);
        std::string body = term_string(it->first, it->second);
        if (first) {
            out = (sign < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (sign < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace qgal
