#include "qgal/induction.hpp"

#include <doctest.h>

using namespace qgal;

namespace {

WaveFunction wx(Int e = 1) { return WaveFunction::var(Var::x, e); }
WaveFunction wt(Int e = 1) { return WaveFunction::var(Var::t, e); }

}  // namespace

TEST_CASE("induced generator actions") {
    Character ch = Character::symbolic();
    Scalar al = Scalar::sym(Sym::alpha), be = Scalar::sym(Sym::beta);

    // K . x = alpha x - beta x^2 - t
    CHECK(induced_action(ch, "K", wx()) ==
          wx().scaled(al) - wx(2).scaled(be) - wt());
    // K . x^3 = alpha x^3 - beta x^4 - 3 x^2 t - a^2 t
    CHECK(induced_action(ch, "K", wx(3)) ==
          wx(3).scaled(al) - wx(4).scaled(be) - (wx(2) * wt()).scaled(Scalar(3L)) -
              wt().scaled(Scalar::sym(Sym::a, 2)));
    CHECK(induced_action(ch, "M", wx()) == wx().scaled(be));
    CHECK(induced_action(ch, "P", wx(2)) == wx().scaled(Scalar(2L)));
    CHECK(induced_action(ch, "H", wt(2)) == wt().scaled(Scalar(2L)));

    // E^z shifts x by z a
    const Presentation* p = preset("uq_kmph");
    CHECK(induced_action(ch, NCPolynomial::gen(p, "E"), wx()) ==
          wx() + WaveFunction::constant(Scalar::sym(Sym::a)));

    // classical boost limit: a -> 0 in K . x^4
    CHECK(classical_limit(induced_action(ch, "K", wx(4))) ==
          wx(4).scaled(al) - wx(5).scaled(be) - (wx(3) * wt()).scaled(Scalar(4L)));
}

TEST_CASE("module relations hold up to degree 8") {
    CHECK(check_relations_on_module(Character::symbolic(), 8).all_pass());
    CHECK(check_relations_on_module(Character::numeric(GaussRat(1L), GaussRat(2L)), 8)
              .all_pass());
}

TEST_CASE("truncated carrier is equivariant") {
    CHECK(check_equivariance(Character::symbolic(), 3).all_pass());
}

TEST_CASE("casimir element is central") {
    const Presentation* p = preset("uq_kmph");
    NCPolynomial C = casimir_element();
    for (auto g : {"K", "M", "P", "H"})
        CHECK(commutator(C, NCPolynomial::gen(p, g)).is_zero());
    CHECK(commutator(C, NCPolynomial::gen(p, "E", 1)).is_zero());
    CHECK(commutator(C, NCPolynomial::gen(p, "E", -1)).is_zero());
}

TEST_CASE("casimir action matches the induced action of the element") {
    Character ch = Character::symbolic();
    NCPolynomial C = casimir_element();
    for (Int px = 0; px <= 6; ++px)
        for (Int qt = 0; px + qt <= 6; ++qt) {
            WaveFunction phi = WaveFunction::monomial({0, 0, px, qt}, Scalar::one());
            CHECK(induced_action(ch, C, phi) == casimir_action(ch, phi));
        }
}

TEST_CASE("reduced casimir action") {
    Character ch = Character::symbolic();
    Scalar binv = ch.beta_inverse();
    // x^2 t -> x^2 - (1/beta) t
    CHECK(reduced_casimir_action(ch, wx(2) * wt()) == wx(2) - wt().scaled(binv));
    // classical limit is the free evolution equation operator dt - (1/(2 beta)) dx^2
    WaveFunction r = reduced_casimir_action(ch, wx(4));
    CHECK(classical_limit(r) == wx(2).scaled(binv * Scalar(-6L)));

    Character degenerate = Character::numeric(GaussRat(0L), GaussRat(0L));
    CHECK_THROWS_WITH(reduced_casimir_action(degenerate, wx()),
                      "M acts non-invertibly (beta = 0)");
}

TEST_CASE("classical limit propagates pole errors") {
    WaveFunction f = wx().scaled(Scalar::monomial(GaussRat(1L), -1, 0, 0));
    CHECK_THROWS_AS(classical_limit(f), error);
}

TEST_CASE("star structure") {
    const Presentation* p = preset("uq_kmph");
    NCPolynomial K = NCPolynomial::gen(p, "K");
    CHECK(star(K) == -K);
    CHECK(star(NCPolynomial::gen(p, "E", 2)) == NCPolynomial::gen(p, "E", -2));
    // coefficient conjugation: (i K)* = i K
    CHECK(star(K.scaled(Scalar::imag())) == K.scaled(Scalar::imag()));
    CHECK(check_star_consistency().all_pass());
}

TEST_CASE("alpha can be rescaled away") {
    CHECK(check_equivalence_alpha(6).all_pass());
}
