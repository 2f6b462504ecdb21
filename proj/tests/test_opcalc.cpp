#include "qgal/opcalc.hpp"

#include <doctest.h>

#include <random>

using namespace qgal;

namespace {

WaveFunction wf_v() { return WaveFunction::var(Var::v); }
WaveFunction wf_mu() { return WaveFunction::var(Var::mu); }
WaveFunction wf_x(Int e = 1) { return WaveFunction::var(Var::x, e); }
WaveFunction wf_t() { return WaveFunction::var(Var::t); }

}  // namespace

TEST_CASE("primitive operators") {
    WaveFunction x3 = wf_x(3);
    CHECK(deriv(Var::x, x3) == wf_x(2).scaled(Scalar(3L)));
    CHECK(deriv(Var::v, x3).is_zero());
    CHECK(mult(Var::t, wf_x()) == wf_x() * wf_t());

    // shift(x, 2): x -> x + 2a
    WaveFunction sh = shift(Var::x, 2, wf_x(2));
    WaveFunction want = wf_x(2) + wf_x().scaled(Scalar::monomial(GaussRat(4L), 1, 0, 0)) +
                        WaveFunction::constant(Scalar::monomial(GaussRat(4L), 2, 0, 0));
    CHECK(sh == want);
    CHECK(shift(Var::x, 0, x3) == x3);
    // shifts in distinct variables commute; opposite shifts invert
    CHECK(shift(Var::x, -1, shift(Var::x, 1, x3)) == x3);
}

TEST_CASE("symmetric difference quotients") {
    // sinh-type: x -> 1, x^3 -> 3x^2 + a^2
    CHECK(sinh_shift_over_a(Var::x, wf_x()) == WaveFunction::one());
    CHECK(sinh_shift_over_a(Var::x, wf_x(3)) ==
          wf_x(2).scaled(Scalar(3L)) +
              WaveFunction::constant(Scalar::sym(Sym::a, 2)));
    CHECK(sinh_shift_over_a(Var::x, WaveFunction::one()).is_zero());

    // cosh-type: x^2 -> -1, x^4 -> -6x^2 - a^2
    CHECK(one_minus_cosh_over_a2(Var::x, wf_x(2)) ==
          WaveFunction::constant(-Scalar::one()));
    CHECK(one_minus_cosh_over_a2(Var::x, wf_x(4)) ==
          wf_x(2).scaled(Scalar(-6L)) +
              WaveFunction::constant(-Scalar::sym(Sym::a, 2)));

    // small-a limit of the cosh quotient is -(1/2) f''
    WaveFunction lim = one_minus_cosh_over_a2(Var::x, wf_x(4))
                           .eval_coeffs({{Sym::a, GaussRat(0L)}});
    CHECK(lim == wf_x(2).scaled(Scalar(-6L)));
}

TEST_CASE("mixed cosh difference operator") {
    // mu x -> -v mu + 1/2 v^2 x
    WaveFunction f = wf_mu() * wf_x();
    WaveFunction want = -(wf_v() * wf_mu()) +
                        (wf_v() * wf_v() * wf_x()).scaled(Scalar(GaussRat(Rat(1, 2))));
    CHECK(cosh_diff_over_a2_dmu(f) == want);

    // x^2 -> -2 v x
    CHECK(cosh_diff_over_a2_dmu(wf_x(2)) == (wf_v() * wf_x()).scaled(Scalar(-2L)));
    CHECK(cosh_diff_over_a2_dmu(WaveFunction::one()).is_zero());
    CHECK(cosh_diff_over_a2_dmu(wf_t()).is_zero());
}

TEST_CASE("generator actions") {
    // K|>(v mu) = mu - v x
    CHECK(act_triangleright("K", wf_v() * wf_mu()) == wf_mu() - wf_v() * wf_x());
    // K|>(t x^3) = -3 t^2 x^2 - a^2 t^2
    CHECK(act_triangleright("K", wf_t() * wf_x(3)) ==
          (wf_t() * wf_t() * wf_x(2)).scaled(Scalar(-3L)) +
              (wf_t() * wf_t()).scaled(-Scalar::sym(Sym::a, 2)));
    CHECK(act_triangleright("M", wf_mu() * wf_v()) == wf_v());
    CHECK(act_triangleright("P", wf_x(2)) == wf_x().scaled(Scalar(2L)));
    CHECK(act_triangleright("H", wf_t() * wf_t()) == wf_t().scaled(Scalar(2L)));

    // (v mu)<|P = -v^2
    CHECK(act_triangleleft(wf_v() * wf_mu(), "P") == -(wf_v() * wf_v()));
    // (mu x)<|H picks up the cosh-difference correction
    CHECK(act_triangleleft(wf_mu() * wf_x(), "H") ==
          -(wf_v() * wf_mu()) +
              (wf_v() * wf_v() * wf_x()).scaled(Scalar(GaussRat(Rat(1, 2)))));
    CHECK(act_triangleleft(wf_v() * wf_mu(), "K") == wf_mu());
}

TEST_CASE("group-like generator acts by shifting x") {
    const Presentation* p = preset("uq_kmph");
    NCPolynomial E = NCPolynomial::gen(p, "E");
    CHECK(act_triangleright_elem(E, wf_x()) ==
          wf_x() + WaveFunction::constant(Scalar::sym(Sym::a)));
    NCPolynomial Em2 = NCPolynomial::gen(p, "E", -2);
    CHECK(act_triangleright_elem(Em2, act_triangleright_elem(NCPolynomial::gen(p, "E", 2),
                                                             wf_x(3))) == wf_x(3));
}

TEST_CASE("actions respect the relations") {
    const Presentation* p = preset("uq_kmph");
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> gpick(0, 4);
    std::uniform_int_distribution<Int> len(1, 3), zpick(-1, 1), fdeg(0, 2);
    auto rand_elem = [&] {
        Word w;
        Int L = len(rng);
        for (Int j = 0; j < L; ++j) {
            int g = gpick(rng);
            if (g == 4) {
                Int z = zpick(rng);
                if (z != 0) w.push_back({kEGen, z});
            } else {
                w.push_back({g, 1});
            }
        }
        return normal_order(p, {{Scalar::one(), w}});
    };
    auto rand_f = [&] {
        return WaveFunction::monomial({fdeg(rng), fdeg(rng), fdeg(rng), fdeg(rng)},
                                      Scalar::one());
    };
    for (int k = 0; k < 40; ++k) {
        NCPolynomial u1 = rand_elem(), u2 = rand_elem();
        WaveFunction f = rand_f();
        CHECK(act_triangleright_elem(multiply(u1, u2), f) ==
              act_triangleright_elem(u1, act_triangleright_elem(u2, f)));
        CHECK(act_triangleleft_elem(f, multiply(u1, u2)) ==
              act_triangleleft_elem(act_triangleleft_elem(f, u1), u2));
    }
}

TEST_CASE("pairing of monomials") {
    const Presentation* p = preset("uq_kmph");
    auto elem = [&](Int m, Int n, Int pp, Int q, Int z) {
        Monomial mo{std::vector<Int>{m, n, pp, q}, z};
        return NCPolynomial::monomial_elem(p, mo, Scalar::one());
    };
    CHECK(pairing_A(elem(1, 1, 1, 1, 0),
                    WaveFunction::monomial({1, 1, 1, 1}, Scalar::one())) == Scalar::one());
    CHECK(pairing_A(elem(0, 0, 2, 0, 0), wf_x(2)) == Scalar(2L));
    CHECK(pairing_A(elem(0, 0, 1, 0, 0), wf_x(2)).is_zero());
    CHECK(pairing_A(elem(2, 0, 0, 0, 0), WaveFunction::monomial({2, 0, 0, 0}, Scalar::one())) ==
          Scalar(2L));
    // group-like factor expands as the finite x-derivative series
    CHECK(pairing_A(elem(0, 0, 0, 0, 1), wf_x()) == Scalar::sym(Sym::a));
    CHECK(pairing_A(elem(0, 0, 0, 0, 2), wf_x(2)) ==
          Scalar::monomial(GaussRat(4L), 2, 0, 0));
    CHECK(pairing_A(elem(0, 0, 0, 0, 1), WaveFunction::one()) == Scalar::one());
    CHECK(pairing_A(elem(0, 0, 0, 0, 1), wf_v()).is_zero());
}

TEST_CASE("action/multiplication duality sweep") {
    CHECK(check_duality(3).all_pass());
}

TEST_CASE("wavefunction text form") {
    WaveFunction f = wf_x(2).scaled(Scalar(-1L)) + wf_v() * wf_mu() +
                     WaveFunction::constant(Scalar::sym(Sym::a));
    CHECK(f.str() == "v*mu - x^2 + a");
    CHECK(WaveFunction::zero().str() == "0");
}
