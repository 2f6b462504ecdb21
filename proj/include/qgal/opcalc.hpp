#pragma once

#include "qgal/freealg.hpp"
#include "qgal/report.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qgal {

/// Variables of the auxiliary commutative algebra, in canonical order.
enum class Var : int { v = 0, mu = 1, x = 2, t = 3 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::v: return "v";
        case Var::mu: return "mu";
        case Var::x: return "x";
        case Var::t: return "t";
    }
    return "?";
}

inline Var var_of(const std::string& s) {
    for (int k = 0; k < 4; ++k)
        if (s == var_name(static_cast<Var>(k))) return static_cast<Var>(k);
    throw error("unknown wavefunction variable '" + s + "'");
}

struct WfExp {
    std::array<Int, 4> e{0, 0, 0, 0};
    Int total() const { return e[0] + e[1] + e[2] + e[3]; }
    bool operator==(const WfExp& o) const { return e == o.e; }
};

struct WfExpLess {
    bool operator()(const WfExp& x, const WfExp& y) const {
        if (x.total() != y.total()) return x.total() < y.total();
        return x.e < y.e;
    }
};

/// Commutative polynomial in (v, mu, x, t) with Scalar coefficients.
class WaveFunction {
public:
    using Terms = std::map<WfExp, Scalar, WfExpLess>;

    WaveFunction() = default;

    static WaveFunction zero() { return WaveFunction(); }
    static WaveFunction constant(Scalar c) {
        WaveFunction f;
        f.add_term(WfExp{}, std::move(c));
        return f;
    }
    static WaveFunction one() { return constant(Scalar::one()); }
    static WaveFunction var(Var v, Int exp = 1) {
        if (exp < 0) throw error("negative wavefunction exponent");
        WfExp m;
        m.e[static_cast<int>(v)] = exp;
        WaveFunction f;
        f.add_term(m, Scalar::one());
        return f;
    }
    static WaveFunction monomial(const std::array<Int, 4>& exps, Scalar c) {
        WaveFunction f;
        f.add_term(WfExp{exps}, std::move(c));
        return f;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int degree_in(Var v) const {
        Int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.e[static_cast<int>(v)]);
        return d;
    }

    void add_term(const WfExp& m, Scalar c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WaveFunction operator+(const WaveFunction& o) const {
        WaveFunction r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    WaveFunction operator-(const WaveFunction& o) const {
        WaveFunction r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    WaveFunction operator-() const {
        WaveFunction r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    WaveFunction operator*(const WaveFunction& o) const {
        WaveFunction r;
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) {
                WfExp m;
                for (int k = 0; k < 4; ++k) m.e[k] = checked_add(m1.e[k], m2.e[k]);
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    WaveFunction scaled(const Scalar& s) const {
        WaveFunction r;
        for (auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    bool operator==(const WaveFunction& o) const { return terms_ == o.terms_; }
    bool operator!=(const WaveFunction& o) const { return terms_ != o.terms_; }

    /// a -> 0 (or any symbol substitution) applied coefficient-wise.
    WaveFunction eval_coeffs(const std::map<Sym, GaussRat>& bindings) const {
        WaveFunction r;
        for (auto& [m, c] : terms_) r.add_term(m, c.eval(bindings));
        return r;
    }

    std::string str() const;

private:
    Terms terms_;
};

// ---------------------------------------------------------------------------
// primitive linear operators
// ---------------------------------------------------------------------------

inline WaveFunction deriv(Var v, const WaveFunction& f) {
    int k = static_cast<int>(v);
    WaveFunction r;
    for (auto& [m, c] : f.terms()) {
        if (m.e[k] == 0) continue;
        WfExp n = m;
        n.e[k] -= 1;
        r.add_term(n, c * Scalar(GaussRat(Rat(m.e[k]))));
    }
    return r;
}

inline WaveFunction mult(Var v, const WaveFunction& f) {
    return WaveFunction::var(v) * f;
}

/// Substitution var -> var + c a for integer c.
inline WaveFunction shift(Var v, Int c, const WaveFunction& f) {
    int k = static_cast<int>(v);
    WaveFunction r;
    for (auto& [m, co] : f.terms()) {
        Int n = m.e[k];
        // (var + c a)^n expanded binomially
        for (Int j = 0; j <= n; ++j) {
            Rat cj = 1;
            for (Int q = 0; q < n - j; ++q) cj *= c;
            GaussRat bc = binomial(n, j) * GaussRat(cj);
            if (bc.is_zero()) continue;
            Scalar coef = Scalar::monomial(bc, n - j, 0, 0);
            WfExp nm = m;
            nm.e[k] = j;
            r.add_term(nm, co * coef);
        }
    }
    return r;
}

/// Formal-sum-of-compositions operator; factors apply right to left.
struct LinearOperator {
    struct Primitive {
        enum Kind { Mult, Deriv, Shift } kind;
        Var var;
        Int c = 0;  // shift step multiplier
    };
    struct Term {
        Scalar coeff;
        std::vector<Primitive> factors;
    };
    std::vector<Term> terms;

    static LinearOperator identity() { return {{{Scalar::one(), {}}}}; }

    WaveFunction apply(const WaveFunction& f) const {
        WaveFunction out;
        for (auto& t : terms) {
            WaveFunction g = f;
            for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
                switch (it->kind) {
                    case Primitive::Mult: g = mult(it->var, g); break;
                    case Primitive::Deriv: g = deriv(it->var, g); break;
                    case Primitive::Shift: g = shift(it->var, it->c, g); break;
                }
            }
            out = out + g.scaled(t.coeff);
        }
        return out;
    }
};

/// (shift(+1) - shift(-1)) / (2a); the numerator is divisible by a because
/// only odd shift powers survive.
inline WaveFunction sinh_shift_over_a(Var v, const WaveFunction& f) {
    WaveFunction num = shift(v, 1, f) - shift(v, -1, f);
    WaveFunction r;
    Scalar twoa = Scalar::monomial(GaussRat(2L), 1, 0, 0);
    for (auto& [m, c] : num.terms()) {
        for (auto& [cm, cc] : c.terms())
            if (cm.e[0] < 1)
                throw error("sinh_shift_over_a: numerator not divisible by a");
        r.add_term(m, c.div_monomial(twoa));
    }
    return r;
}

/// (2 id - shift(+1) - shift(-1)) / (2 a^2); a->0 limit is -(1/2) d^2/dvar^2.
inline WaveFunction one_minus_cosh_over_a2(Var v, const WaveFunction& f) {
    WaveFunction num = f + f - shift(v, 1, f) - shift(v, -1, f);
    WaveFunction r;
    Scalar twoa2 = Scalar::monomial(GaussRat(2L), 2, 0, 0);
    for (auto& [m, c] : num.terms()) {
        for (auto& [cm, cc] : c.terms())
            if (cm.e[0] < 2)
                throw error("one_minus_cosh_over_a2: numerator not divisible by a^2");
        r.add_term(m, c.div_monomial(twoa2));
    }
    return r;
}

/// The operator [cosh(a(dx - v dmu)) - cosh(a dx)] / (a^2 dmu), defined by its
/// exact finite expansion
///   sum_{m even >= 2} (a^{m-2}/m!) sum_{n=1}^{m} C(m,n) (-1)^n v^n dmu^{n-1} dx^{m-n}.
inline WaveFunction cosh_diff_over_a2_dmu(const WaveFunction& f) {
    Int cap = f.degree_in(Var::x) + f.degree_in(Var::mu) + 1;
    WaveFunction out;
    for (Int m = 2; m <= cap; m += 2) {
        Rat fact = 1;
        for (Int k = 2; k <= m; ++k) fact *= k;
        for (Int n = 1; n <= m; ++n) {
            GaussRat coef = binomial(m, n) * GaussRat(Rat(n % 2 == 0 ? 1 : -1) / fact);
            WaveFunction g = f;
            for (Int k = 0; k < m - n; ++k) g = deriv(Var::x, g);
            for (Int k = 0; k < n - 1; ++k) g = deriv(Var::mu, g);
            for (Int k = 0; k < n; ++k) g = mult(Var::v, g);
            if (g.is_zero()) continue;
            Scalar c = Scalar::monomial(coef, m - 2, 0, 0);
            out = out + g.scaled(c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// the two regular actions of uq_kmph on the auxiliary algebra
// ---------------------------------------------------------------------------

/// Right-multiplication dual:  K|>f = [dv - x dmu - t sinh(a dx)/a] f,
/// M|> = dmu, P|> = dx, H|> = dt; E^z|> shifts x by z a.
inline WaveFunction act_triangleright(const std::string& g, const WaveFunction& f) {
    if (g == "K")
        return deriv(Var::v, f) - mult(Var::x, deriv(Var::mu, f)) -
               mult(Var::t, sinh_shift_over_a(Var::x, f));
    if (g == "M") return deriv(Var::mu, f);
    if (g == "P") return deriv(Var::x, f);
    if (g == "H") return deriv(Var::t, f);
    throw error("act_triangleright: unknown generator " + g);
}

/// Left-multiplication dual: f<|K = dv f, f<|M = dmu f,
/// f<|P = [dx - v dmu] f, f<|H = [dt + cosh-difference/(a^2 dmu)] f.
inline WaveFunction act_triangleleft(const WaveFunction& f, const std::string& g) {
    if (g == "K") return deriv(Var::v, f);
    if (g == "M") return deriv(Var::mu, f);
    if (g == "P") return deriv(Var::x, f) - mult(Var::v, deriv(Var::mu, f));
    if (g == "H") return deriv(Var::t, f) + cosh_diff_over_a2_dmu(f);
    throw error("act_triangleleft: unknown generator " + g);
}

/// |> extended to uq_kmph elements: a monomial K^m M^n P^p E^z H^q acts as the
/// composition of generator actions, rightmost factor first.
inline WaveFunction act_triangleright_elem(const NCPolynomial& u, const WaveFunction& f) {
    const Presentation* p = u.pres();
    if (p != preset("uq_kmph")) throw error("act_triangleright_elem: expects uq_kmph");
    WaveFunction out;
    for (auto& [m, c] : u.terms()) {
        WaveFunction g = f;
        Word w = NCPolynomial::monomial_elem(p, m, Scalar::one()).monomial_word(m);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            if (it->gen == kEGen) {
                g = shift(Var::x, it->exp, g);
            } else {
                for (Int k = 0; k < it->exp; ++k)
                    g = act_triangleright(p->gens[it->gen], g);
            }
        }
        out = out + g.scaled(c);
    }
    return out;
}

/// <| extended to uq_kmph elements: f <| (u1 u2) = (f <| u1) <| u2, applied
/// along the canonical factor order. f <| E^z = exp(z a (dx - v dmu)) f.
inline WaveFunction act_triangleleft_elem(const WaveFunction& f, const NCPolynomial& u) {
    const Presentation* p = u.pres();
    if (p != preset("uq_kmph")) throw error("act_triangleleft_elem: expects uq_kmph");
    auto left_E = [](const WaveFunction& g0, Int z) {
        // exp(z a (dx - v dmu)) = shift(x, z) . exp(-z a v dmu); the second
        // factor truncates at the mu-degree
        WaveFunction g = shift(Var::x, z, g0);
        WaveFunction out = g;
        WaveFunction term = g;
        Rat fact = 1;
        for (Int k = 1; !term.is_zero(); ++k) {
            fact *= k;
            term = mult(Var::v, deriv(Var::mu, term));
            if (term.is_zero()) break;
            Rat zk = 1;
            for (Int j = 0; j < k; ++j) zk *= -z;
            out = out + term.scaled(Scalar::monomial(GaussRat(zk / fact), k, 0, 0));
        }
        return out;
    };
    WaveFunction out;
    for (auto& [m, c] : u.terms()) {
        WaveFunction g = f;
        Word w = NCPolynomial::monomial_elem(p, m, Scalar::one()).monomial_word(m);
        for (auto& en : w) {
            if (en.gen == kEGen) {
                g = left_E(g, en.exp);
            } else {
                for (Int k = 0; k < en.exp; ++k) g = act_triangleleft(g, p->gens[en.gen]);
            }
        }
        out = out + g.scaled(c);
    }
    return out;
}

/// Bilinear form <K^m M^n P^p H^q, v^m' mu^n' x^p' t^q'> = m! n! p! q! delta,
/// with E^z expanded as the finite P-series up to the x-degree of f.
inline Scalar pairing_A(const NCPolynomial& u, const WaveFunction& f) {
    if (u.pres() != preset("uq_kmph")) throw error("pairing_A: expects uq_kmph");
    Scalar out = Scalar::zero();
    for (auto& [um, uc] : u.terms()) {
        Int m = um.exps[0], n = um.exps[1], pp = um.exps[2], q = um.exps[3];
        for (auto& [fm, fc] : f.terms()) {
            Int mv = fm.e[0], nmu = fm.e[1], px = fm.e[2], qt = fm.e[3];
            if (m != mv || n != nmu || q != qt) continue;
            Int k = px - pp;  // E^z contributes (za)^k P^k / k!
            if (k < 0) continue;
            if (k > 0 && um.e == 0) continue;
            Rat zk = 1;
            Rat kfact = 1;
            for (Int j = 0; j < k; ++j) {
                zk *= um.e;
                kfact *= j + 1;
            }
            GaussRat fac = factorial(m) * factorial(n) * factorial(px) * factorial(q);
            Scalar c = Scalar::monomial(fac * GaussRat(zk / kfact), k, 0, 0);
            out += uc * fc * c;
        }
    }
    return out;
}

/// Certifies that |> and <| are the pairing duals of right and left
/// multiplication: <h|>f, u> = <f, u h> and <f<|h, u> = <f, h u>, swept over
/// E-free basis monomials u and monomials f of total degree <= degree_cap.
inline VerificationReport check_duality(Int degree_cap) {
    if (degree_cap < 1) throw error("check_duality: degree_cap must be >= 1");
    const Presentation* p = preset("uq_kmph");
    VerificationReport rep;
    rep.suite = "duality";

    std::vector<NCPolynomial> basis;
    std::vector<WaveFunction> fs;
    std::vector<std::array<Int, 4>> idx;
    for (Int m = 0; m <= degree_cap; ++m)
        for (Int n = 0; m + n <= degree_cap; ++n)
            for (Int pp = 0; m + n + pp <= degree_cap; ++pp)
                for (Int q = 0; m + n + pp + q <= degree_cap; ++q)
                    idx.push_back({m, n, pp, q});
    for (auto& l : idx) {
        Monomial mo{std::vector<Int>{l[0], l[1], l[2], l[3]}, 0};
        basis.push_back(NCPolynomial::monomial_elem(p, mo, Scalar::one()));
        fs.push_back(WaveFunction::monomial({l[0], l[1], l[2], l[3]}, Scalar::one()));
    }

    Int bad = 0;
    for (auto g : {"K", "M", "P", "H"}) {
        NCPolynomial h = NCPolynomial::gen(p, g);
        for (auto& u : basis)
            for (auto& f : fs) {
                Scalar lhs = pairing_A(u, act_triangleright(g, f));
                Scalar rhs = pairing_A(multiply(u, h), f);
                if (lhs != rhs) {
                    ++bad;
                    rep.add("right[" + std::string(g) + "," + u.str() + "," + f.str() + "]",
                            false, lhs.str() + " vs " + rhs.str());
                }
                Scalar lhs2 = pairing_A(u, act_triangleleft(f, g));
                Scalar rhs2 = pairing_A(multiply(h, u), f);
                if (lhs2 != rhs2) {
                    ++bad;
                    rep.add("left[" + std::string(g) + "," + u.str() + "," + f.str() + "]",
                            false, lhs2.str() + " vs " + rhs2.str());
                }
            }
    }
    rep.add("action/multiplication duality, total degree <= " +
                std::to_string(degree_cap),
            bad == 0);
    return rep;
}

inline std::string WaveFunction::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const WfExp& m = it->first;
        std::string mono;
        for (int k = 0; k < 4; ++k)
            if (m.e[k] != 0)
                mono += (mono.empty() ? "" : "*") +
                        detail::pow_string(var_name(static_cast<Var>(k)), m.e[k]);

        Scalar coeff = it->second;
        bool neg = false;
        bool wrap;
        if (coeff.is_single_term()) {
            if (detail::coeff_sign(coeff.terms().begin()->second) < 0) {
                neg = true;
                coeff = -coeff;
            }
            std::string cs0 = coeff.str();
            wrap = cs0.find(' ') != std::string::npos && cs0.front() != '(';
        } else {
            wrap = true;
        }
        std::string cs = coeff.str();
        if (wrap) cs = "(" + cs + ")";

        std::string body;
        if (mono.empty())
            body = cs;
        else if (coeff.is_one())
            body = mono;
        else
            body = cs + "*" + mono;

        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace qgal
