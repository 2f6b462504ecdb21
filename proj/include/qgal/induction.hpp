#pragma once

#include "qgal/hopf.hpp"
#include "qgal/opcalc.hpp"
#include "qgal/report.hpp"

#include <string>
#include <vector>

namespace qgal {

/// Character of the subalgebra <M, K>: K acts as alpha, M as beta. Either
/// value may stay symbolic (the coefficient symbols alpha, beta) or be a
/// numeric Gaussian rational.
struct Character {
    Scalar alpha = Scalar::sym(Sym::alpha);
    Scalar beta = Scalar::sym(Sym::beta);

    static Character symbolic() { return {}; }
    static Character numeric(GaussRat a, GaussRat b) {
        return {Scalar(std::move(a)), Scalar(std::move(b))};
    }

    /// 1/beta when it exists: symbolic beta (a Laurent monomial) or a nonzero
    /// numeric value.
    Scalar beta_inverse() const {
        if (auto c = beta.as_constant()) {
            if (c->is_zero()) throw error("M acts non-invertibly (beta = 0)");
            return Scalar(GaussRat(Rat(1)) / *c);
        }
        if (!beta.is_single_term()) throw error("beta must be a monomial or numeric");
        return Scalar::one().div_monomial(beta);
    }
};

/// Carrier element e^{alpha v} e^{beta mu} phi(x,t); only phi is stored.
struct CarrierElement {
    Character character;
    WaveFunction phi;  // polynomial in x, t only
};

/// Induced action of a uq_kmph element on phi(x,t):
///   K = alpha - beta x - t sinh(a dx)/a,  M = beta,  P = dx,  H = dt,
/// E^z shifts x by z a; monomials compose rightmost factor first.
inline WaveFunction induced_action(const Character& ch, const NCPolynomial& u,
                                   const WaveFunction& phi) {
    const Presentation* p = u.pres();
    if (p != preset("uq_kmph")) throw error("induced_action: expects uq_kmph");
    auto gen_act = [&](const std::string& g, const WaveFunction& f) {
        if (g == "K")
            return f.scaled(ch.alpha) - mult(Var::x, f).scaled(ch.beta) -
                   mult(Var::t, sinh_shift_over_a(Var::x, f));
        if (g == "M") return f.scaled(ch.beta);
        if (g == "P") return deriv(Var::x, f);
        if (g == "H") return deriv(Var::t, f);
        throw error("induced_action: unknown generator " + g);
    };
    WaveFunction out;
    for (auto& [m, c] : u.terms()) {
        WaveFunction g = phi;
        Word w = NCPolynomial::monomial_elem(p, m, Scalar::one()).monomial_word(m);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            if (it->gen == kEGen) {
                g = shift(Var::x, it->exp, g);
            } else {
                for (Int k = 0; k < it->exp; ++k) g = gen_act(p->gens[it->gen], g);
            }
        }
        out = out + g.scaled(c);
    }
    return out;
}

inline WaveFunction induced_action(const Character& ch, const std::string& g,
                                   const WaveFunction& phi) {
    return induced_action(ch, NCPolynomial::gen(preset("uq_kmph"), g), phi);
}

/// Operator identities of the induced module on all x^p t^q, p+q <= degree_cap:
/// [P,K] = -beta id and [H,K] = -sinh(a dx)/a.
inline VerificationReport check_relations_on_module(const Character& ch, Int degree_cap) {
    if (degree_cap < 1) throw error("check_relations_on_module: degree_cap must be >= 1");
    VerificationReport rep;
    rep.suite = "relations";
    Int bad = 0;
    for (Int px = 0; px <= degree_cap; ++px)
        for (Int qt = 0; px + qt <= degree_cap; ++qt) {
            WaveFunction phi = WaveFunction::monomial({0, 0, px, qt}, Scalar::one());
            WaveFunction pk = induced_action(ch, "P", induced_action(ch, "K", phi)) -
                              induced_action(ch, "K", induced_action(ch, "P", phi));
            WaveFunction want_pk = -phi.scaled(ch.beta);
            if (pk != want_pk) {
                ++bad;
                rep.add("[P,K] on " + phi.str(), false, (pk - want_pk).str());
            }
            WaveFunction hk = induced_action(ch, "H", induced_action(ch, "K", phi)) -
                              induced_action(ch, "K", induced_action(ch, "H", phi));
            WaveFunction want_hk = -sinh_shift_over_a(Var::x, phi);
            if (hk != want_hk) {
                ++bad;
                rep.add("[H,K] on " + phi.str(), false, (hk - want_hk).str());
            }
        }
    rep.add("module relations, x^p t^q with p+q <= " + std::to_string(degree_cap),
            bad == 0);
    return rep;
}

namespace detail {

/// e^{alpha v} e^{beta mu} phi truncated at total (v, mu)-order < N+1.
inline WaveFunction truncated_carrier(const Character& ch, const WaveFunction& phi, Int N) {
    WaveFunction out;
    Rat fi = 1;
    for (Int i = 0; i <= N; ++i) {
        if (i > 0) fi *= i;
        Rat fj = 1;
        for (Int j = 0; i + j <= N; ++j) {
            if (j > 0) fj *= j;
            Scalar ap = Scalar::one(), bp = Scalar::one();
            for (Int k = 0; k < i; ++k) ap *= ch.alpha;
            for (Int k = 0; k < j; ++k) bp *= ch.beta;
            Scalar c = ap * bp * Scalar(GaussRat(Rat(1) / (fi * fj)));
            out = out + (WaveFunction::var(Var::v, i) * WaveFunction::var(Var::mu, j) * phi)
                            .scaled(c);
        }
    }
    return out;
}

/// Drop every term whose (v, mu)-degree is >= bound.
inline WaveFunction below_vmu_order(const WaveFunction& f, Int bound) {
    WaveFunction out;
    for (auto& [m, c] : f.terms())
        if (m.e[0] + m.e[1] < bound) out.add_term(m, c);
    return out;
}

} // namespace detail

/// Equivariance of the truncated carrier e^{alpha v} e^{beta mu} phi:
/// f <| K = alpha f, f <| M = beta f, and g |> f = carrier * (g induced phi),
/// all compared below the truncation boundary.
inline VerificationReport check_equivariance(const Character& ch, Int N) {
    if (N < 2) throw error("check_equivariance: truncation order must be >= 2");
    VerificationReport rep;
    rep.suite = "equivariance";

    std::vector<WaveFunction> phis = {
        WaveFunction::one(), WaveFunction::var(Var::x),
        WaveFunction::var(Var::t),
        WaveFunction::monomial({0, 0, 2, 1}, Scalar::one())};

    for (auto& phi : phis) {
        WaveFunction f = detail::truncated_carrier(ch, phi, N);
        WaveFunction dk = detail::below_vmu_order(
            act_triangleleft(f, "K") - f.scaled(ch.alpha), N);
        rep.add("f<|K = alpha f [phi=" + phi.str() + "]", dk.is_zero(), dk.str());
        WaveFunction dm = detail::below_vmu_order(
            act_triangleleft(f, "M") - f.scaled(ch.beta), N);
        rep.add("f<|M = beta f [phi=" + phi.str() + "]", dm.is_zero(), dm.str());

        for (auto g : {"K", "M", "P", "H"}) {
            WaveFunction lhs = act_triangleright(g, f);
            WaveFunction rhs =
                detail::truncated_carrier(ch, induced_action(ch, g, phi), N);
            WaveFunction d = detail::below_vmu_order(lhs - rhs, N);
            rep.add(std::string(g) + "|> restricts to induced [phi=" + phi.str() + "]",
                    d.is_zero(), d.str());
        }
    }
    return rep;
}

/// q-Casimir C_a = M H + (1 - (E + E^-1)/2) / a^2 in uq_kmph.
inline NCPolynomial casimir_element() {
    const Presentation* p = preset("uq_kmph");
    Scalar inv_a2 = Scalar::monomial(GaussRat(1L), -2, 0, 0);
    Scalar half_a2 = Scalar::monomial(GaussRat(Rat(1, 2)), -2, 0, 0);
    return multiply(NCPolynomial::gen(p, "M"), NCPolynomial::gen(p, "H")) +
           NCPolynomial::scalar(p, inv_a2) -
           NCPolynomial::gen(p, "E", 1).scaled(half_a2) -
           NCPolynomial::gen(p, "E", -1).scaled(half_a2);
}

/// Direct Casimir action beta dt + (1 - cosh(a dx))/a^2.
inline WaveFunction casimir_action(const Character& ch, const WaveFunction& phi) {
    return deriv(Var::t, phi).scaled(ch.beta) + one_minus_cosh_over_a2(Var::x, phi);
}

/// Action of C'_a = M^-1 C_a: dt + (1/beta)(1 - cosh(a dx))/a^2.
inline WaveFunction reduced_casimir_action(const Character& ch, const WaveFunction& phi) {
    Scalar binv = ch.beta_inverse();
    return deriv(Var::t, phi) + one_minus_cosh_over_a2(Var::x, phi).scaled(binv);
}

/// a -> 0 limit applied coefficient-wise; propagates the pole error when a
/// negative a-power survives.
inline WaveFunction classical_limit(const WaveFunction& f) {
    return f.eval_coeffs({{Sym::a, GaussRat(Rat(0))}});
}

/// Star structure: K* = -K, M* = -M, P* = -P, H* = -H, E* = E^-1, extended as
/// a coefficient-conjugating anti-multiplicative involution.
inline NCPolynomial star(const NCPolynomial& u) {
    const Presentation* p = u.pres();
    if (p != preset("uq_kmph")) throw error("star: expects uq_kmph");
    NCPolynomial out(p);
    for (auto& [m, c] : u.terms()) {
        NCPolynomial t = NCPolynomial::one(p);
        Word w = NCPolynomial::monomial_elem(p, m, Scalar::one()).monomial_word(m);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            if (it->gen == kEGen) {
                t = multiply(t, NCPolynomial::gen(p, "E", -it->exp));
            } else {
                NCPolynomial sg = -NCPolynomial::gen(p, p->gens[it->gen]);
                for (Int k = 0; k < it->exp; ++k) t = multiply(t, sg);
            }
        }
        out = out + t.scaled(c.conj());
    }
    return out;
}

/// star is an involution and maps each defining relation to a valid relation.
inline VerificationReport check_star_consistency() {
    const Presentation* p = preset("uq_kmph");
    VerificationReport rep;
    rep.suite = "star";
    std::vector<NCPolynomial> gens;
    for (auto& g : p->gens) gens.push_back(NCPolynomial::gen(p, g));
    gens.push_back(NCPolynomial::gen(p, "E"));
    gens.push_back(NCPolynomial::gen(p, "E", -1));

    for (auto& g : gens) {
        bool inv = star(star(g)) == g;
        rep.add("star^2[" + g.str() + "]", inv);
    }
    // star(uv) = star(v) star(u) on sample products
    for (auto& g : gens)
        for (auto& h : gens) {
            bool am = star(multiply(g, h)) == multiply(star(h), star(g));
            rep.add("anti-mult[" + g.str() + "," + h.str() + "]", am);
        }
    // relations map to valid relations: ([P,K])* = [K*,P*], ([H,K])* = [K*,H*]
    NCPolynomial K = NCPolynomial::gen(p, "K"), P = NCPolynomial::gen(p, "P"),
                 H = NCPolynomial::gen(p, "H");
    bool r1 = star(commutator(P, K)) == commutator(star(K), star(P));
    rep.add("([P,K])* = [K*,P*]", r1);
    bool r2 = star(commutator(H, K)) == commutator(star(K), star(H));
    rep.add("([H,K])* = [K*,H*]", r2);
    // involution on a mixed element with complex coefficient
    NCPolynomial mixed = multiply(K, P).scaled(Scalar::imag()) + H;
    rep.add("star^2 on i*K*P + H", star(star(mixed)) == mixed);
    return rep;
}

/// (alpha, beta) ~ (0, beta): generator actions agree except K, which picks up
/// alpha * id.
inline VerificationReport check_equivalence_alpha(Int degree_cap) {
    VerificationReport rep;
    rep.suite = "equivalence";
    Character full = Character::symbolic();
    Character zero{Scalar::zero(), Scalar::sym(Sym::beta)};
    Int bad = 0;
    for (Int px = 0; px <= degree_cap; ++px)
        for (Int qt = 0; px + qt <= degree_cap; ++qt) {
            WaveFunction phi = WaveFunction::monomial({0, 0, px, qt}, Scalar::one());
            for (auto g : {"M", "P", "H"}) {
                WaveFunction d = induced_action(full, g, phi) - induced_action(zero, g, phi);
                if (!d.is_zero()) {
                    ++bad;
                    rep.add(std::string(g) + " on " + phi.str(), false, d.str());
                }
            }
            WaveFunction dk = induced_action(full, "K", phi) -
                              induced_action(zero, "K", phi) -
                              phi.scaled(Scalar::sym(Sym::alpha));
            if (!dk.is_zero()) {
                ++bad;
                rep.add("K on " + phi.str(), false, dk.str());
            }
        }
    rep.add("alpha-rescaling equivalence, degree <= " + std::to_string(degree_cap),
            bad == 0);
    return rep;
}

} // namespace qgal
