#include "qgal/freealg.hpp"

#include <doctest.h>

#include <random>

using namespace qgal;

namespace {

NCPolynomial word_elem(const Presentation* p, std::initializer_list<WordEntry> w) {
    return normal_order(p, {{Scalar::one(), Word(w)}});
}

} // namespace

TEST_CASE("preset relations rewrite as expected") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
         P = NCPolynomial::gen(p, "P"), H = NCPolynomial::gen(p, "H");

    CHECK(word_elem(p, {{2, 1}, {0, 1}}) == multiply(K, P) - M);  // P*K
    CHECK(word_elem(p, {{1, 1}, {0, 1}}) == multiply(K, M));      // M*K commutes

    // H*K = K*H - (E - E^-1)/(2a)
    Scalar half = Scalar::monomial(GaussRat(Rat(1, 2)), -1, 0, 0);
    NCPolynomial want = multiply(K, H) - NCPolynomial::gen(p, "E", 1).scaled(half) +
                        NCPolynomial::gen(p, "E", -1).scaled(half);
    CHECK(word_elem(p, {{3, 1}, {0, 1}}) == want);

    const Presentation* f = preset("fq");
    auto v = NCPolynomial::gen(f, "v"), mu = NCPolynomial::gen(f, "mu"),
         x = NCPolynomial::gen(f, "x");
    // x*mu = mu*x + 2a*mu
    CHECK(multiply(x, mu) ==
          multiply(mu, x) + mu.scaled(Scalar::monomial(GaussRat(2L), 1, 0, 0)));
    // x*v = v*x + 2a*v
    CHECK(multiply(x, v) ==
          multiply(v, x) + v.scaled(Scalar::monomial(GaussRat(2L), 1, 0, 0)));
}

TEST_CASE("reordering identity M P H K") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
         P = NCPolynomial::gen(p, "P"), H = NCPolynomial::gen(p, "H");
    // M P H K = K M P H - M^2 H - (1/(2a)) M P (E - E^-1)
    NCPolynomial lhs = multiply(multiply(multiply(M, P), H), K);
    Scalar half = Scalar::monomial(GaussRat(Rat(1, 2)), -1, 0, 0);
    NCPolynomial sinh = (NCPolynomial::gen(p, "E", 1) - NCPolynomial::gen(p, "E", -1))
                            .scaled(half);
    NCPolynomial rhs = multiply(multiply(multiply(K, M), P), H) -
                       multiply(multiply(M, M), H) - multiply(multiply(M, P), sinh);
    CHECK(lhs == rhs);
}

TEST_CASE("commutator tables") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
         P = NCPolynomial::gen(p, "P"), H = NCPolynomial::gen(p, "H");

    CHECK(commutator(P, K) == -M);
    CHECK(commutator(M, H).is_zero());

    Scalar half = Scalar::monomial(GaussRat(Rat(1, 2)), -1, 0, 0);
    CHECK(commutator(H, K) ==
          (NCPolynomial::gen(p, "E", -1) - NCPolynomial::gen(p, "E", 1)).scaled(half));

    // [E, K] = -a M E
    NCPolynomial E = NCPolynomial::gen(p, "E");
    CHECK(commutator(E, K) ==
          multiply(M, E).scaled(-Scalar::sym(Sym::a)));

    // oracle: same commutator from the truncated exponential series in aP
    Int ord = 6;
    NCPolynomial Etr = expand_grouplike(E, ord);
    NCPolynomial series = commutator(Etr, K);
    NCPolynomial closed = expand_grouplike(multiply(M, E).scaled(-Scalar::sym(Sym::a)), ord);
    // compare after dropping a-powers beyond the truncation order
    auto truncate_a = [](const NCPolynomial& u, Int amax) {
        NCPolynomial r(u.pres());
        for (auto& [m, c] : u.terms()) {
            Scalar kept = Scalar::zero();
            for (auto& [cm, cc] : c.terms())
                if (cm.e[0] <= amax) kept += Scalar::monomial(cc, cm.e[0], cm.e[1], cm.e[2]);
            r.add_term(m, kept);
        }
        return r;
    };
    CHECK(truncate_a(series, ord) == truncate_a(closed, ord));
}

TEST_CASE("uq_iphn relations") {
    const Presentation* p = preset("uq_iphn");
    auto I = NCPolynomial::gen(p, "I"), P = NCPolynomial::gen(p, "P"),
         H = NCPolynomial::gen(p, "H"), N = NCPolynomial::gen(p, "N");
    NCPolynomial E2m = NCPolynomial::gen(p, "E", -2);

    CHECK(commutator(I, N) == multiply(E2m, multiply(I, I)).scaled(-Scalar::sym(Sym::a)));
    CHECK(commutator(P, N) == -multiply(E2m, I));
    Scalar half = Scalar::monomial(GaussRat(Rat(1, 2)), -1, 0, 0);
    CHECK(commutator(H, N) == (E2m - NCPolynomial::one(p)).scaled(half));
    CHECK(commutator(I, P).is_zero());
    CHECK(commutator(I, H).is_zero());
}

TEST_CASE("grouplike power rule agrees with repeated unit applications") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K");
    for (Int z = -4; z <= 4; ++z) {
        if (z == 0) continue;
        NCPolynomial direct = multiply(NCPolynomial::gen(p, "E", z), K);
        NCPolynomial step = K;
        NCPolynomial e1 = NCPolynomial::gen(p, "E", z > 0 ? 1 : -1);
        for (Int k = 0; k < (z > 0 ? z : -z); ++k) step = multiply(e1, step);
        CHECK(direct == step);
    }
}

TEST_CASE("associativity on random monomial triples") {
    std::mt19937 rng(1234);
    for (auto name : {"uq_kmph", "uq_iphn", "fq"}) {
        const Presentation* p = preset(name);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(p->gens.size()) - 1);
        std::uniform_int_distribution<Int> len(0, 4), zdist(-2, 2);
        auto rand_word = [&] {
            Word w;
            Int L = len(rng);
            for (Int j = 0; j < L; ++j) w.push_back({pick(rng), 1});
            if (p->e_slot >= 0) {
                Int z = zdist(rng);
                if (z != 0) w.insert(w.begin() + static_cast<long>(w.size() / 2), {kEGen, z});
            }
            return normal_order(p, {{Scalar::one(), w}});
        };
        for (int k = 0; k < 120; ++k) {
            NCPolynomial u = rand_word(), v = rand_word(), w = rand_word();
            CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
        }
    }
}

TEST_CASE("termination within fuel on long random words") {
    std::mt19937 rng(99);
    for (auto name : {"uq_kmph", "uq_iphn", "fq"}) {
        const Presentation* p = preset(name);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(p->gens.size()) - 1);
        for (int k = 0; k < 40; ++k) {
            Word w;
            for (int j = 0; j < 12; ++j) w.push_back({pick(rng), 1});
            CHECK_NOTHROW(normal_order(p, {{Scalar::one(), w}}));
        }
    }
}

TEST_CASE("convert_basis") {
    const Presentation* kmph = preset("uq_kmph");
    const Presentation* iphn = preset("uq_iphn");
    auto K = NCPolynomial::gen(kmph, "K"), M = NCPolynomial::gen(kmph, "M"),
         P = NCPolynomial::gen(kmph, "P");

    // K -> E N, 1 -> 1
    CHECK(convert_basis(K, iphn) ==
          multiply(NCPolynomial::gen(iphn, "E"), NCPolynomial::gen(iphn, "N")));
    CHECK(convert_basis(NCPolynomial::one(kmph), iphn) == NCPolynomial::one(iphn));

    // [P, convert(K)] = -E^-1 I, converting back to -M
    NCPolynomial c = commutator(NCPolynomial::gen(iphn, "P"), convert_basis(K, iphn));
    CHECK(c == -multiply(NCPolynomial::gen(iphn, "E", -1), NCPolynomial::gen(iphn, "I")));
    CHECK(convert_basis(c, kmph) == -M);
    (void)P;

    // round trip and algebra map on random pairs
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<Int> len(0, 3), zdist(-1, 1);
    for (int k = 0; k < 60; ++k) {
        auto rand_elem = [&](const Presentation* p) {
            Word w;
            Int L = len(rng);
            for (Int j = 0; j < L; ++j) w.push_back({pick(rng), 1});
            Int z = zdist(rng);
            if (z != 0) w.push_back({kEGen, z});
            return normal_order(p, {{Scalar::one(), w}});
        };
        NCPolynomial u = rand_elem(kmph), v = rand_elem(kmph);
        CHECK(convert_basis(convert_basis(u, iphn), kmph) == u);
        CHECK(convert_basis(multiply(u, v), iphn) ==
              multiply(convert_basis(u, iphn), convert_basis(v, iphn)));
    }
}

TEST_CASE("tensor multiply") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M");
    auto E = [&](Int z) { return NCPolynomial::gen(p, "E", z); };
    NCPolynomial one = NCPolynomial::one(p);

    CHECK(tensor_multiply(TensorElement::of(K, E(-1)), TensorElement::of(one, E(1))) ==
          TensorElement::of(K, one));

    // dM * dM = M^2 (x) E^-2 + 2 M E (x) M E^-1 + E^2 (x) M^2
    TensorElement dM = TensorElement::of(M, E(-1)) + TensorElement::of(E(1), M);
    TensorElement want =
        TensorElement::of(multiply(M, M), E(-2)) +
        TensorElement::of(multiply(M, E(1)), multiply(M, E(-1))).scaled(Scalar(2L)) +
        TensorElement::of(E(2), multiply(M, M));
    CHECK(tensor_multiply(dM, dM) == want);

    auto P = NCPolynomial::gen(p, "P");
    CHECK(tensor_multiply(TensorElement::of(P, one), TensorElement::of(one, P)) ==
          TensorElement::of(P, P));
}

TEST_CASE("exp_truncated") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
         P = NCPolynomial::gen(p, "P");
    SeriesInS e = exp_truncated(K, 2);
    CHECK(e[0] == NCPolynomial::one(p));
    CHECK(e[1] == K);
    CHECK(e[2] == multiply(K, K).scaled(Scalar(GaussRat(Rat(1, 2)))));

    SeriesInS z = exp_truncated(NCPolynomial::zero(p), 3);
    CHECK(z[0] == NCPolynomial::one(p));
    for (Int n = 1; n <= 3; ++n) CHECK(z[n].is_zero());

    // P (1 + sK) = P + s (KP - M)
    SeriesInS e1 = exp_truncated(K, 1);
    SeriesInS ps(p, 1);
    ps[0] = P;
    SeriesInS prod = ps * e1;
    CHECK(prod[0] == P);
    CHECK(prod[1] == multiply(K, P) - M);
}

TEST_CASE("flow lemma as formal series") {
    FlowLemmaReport rep1 = verify_flow_lemma(1);
    CHECK(rep1.all_pass());
    FlowLemmaReport rep = verify_flow_lemma(6);
    CHECK(rep.all_pass());
    CHECK(rep.lines.size() == 3);
}

TEST_CASE("classical flow") {
    FlowPoint id = flow_phi(0.0, {1.0, 0.5, -0.25}, 0.1);
    CHECK(id.m == doctest::Approx(1.0));
    CHECK(id.p == doctest::Approx(0.5));
    CHECK(id.h == doctest::Approx(-0.25));

    // phi^s(1, 0, 0) = (1, -s, (cosh(a s) - 1)/a^2)
    double a = 0.3, s = 0.7;
    FlowPoint got = flow_phi(s, {1.0, 0.0, 0.0}, a);
    CHECK(got.p == doctest::Approx(-s));
    CHECK(got.h == doctest::Approx((std::cosh(a * s) - 1.0) / (a * a)));

    CHECK_THROWS_AS(flow_phi(1.0, {0.0, 1.0, 1.0}, a), error);

    // group law at random points
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        FlowPoint pt{d(rng) + 1.5, d(rng), d(rng)};
        double s1 = d(rng), s2 = d(rng);
        FlowPoint one_step = flow_phi(s1 + s2, pt, a);
        FlowPoint two_step = flow_phi(s1, flow_phi(s2, pt, a), a);
        CHECK(std::abs(one_step.p - two_step.p) < 1e-12);
        CHECK(std::abs(one_step.h - two_step.h) < 1e-12);
    }

    // exact flow agrees with the floating one
    FlowExact ex = flow_phi_exact(Rat(7, 10), Rat(1), Rat(0), Rat(0));
    CHECK(ex.eval(a) == doctest::Approx(flow_phi(0.7, {1.0, 0.0, 0.0}, a).h));
}

TEST_CASE("classical limit of the relations") {
    const Presentation* p = preset("uq_kmph");
    auto K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
         P = NCPolynomial::gen(p, "P"), H = NCPolynomial::gen(p, "H");
    auto limit = [](const NCPolynomial& u) {
        NCPolynomial r(u.pres());
        for (auto& [m, c] : u.terms()) r.add_term(m, c.eval({{Sym::a, GaussRat(Rat(0))}}));
        return r;
    };
    CHECK(limit(expand_grouplike(commutator(H, K), 5)) == -P);
    CHECK(limit(expand_grouplike(commutator(P, K), 5)) == -M);
}

TEST_CASE("fuel exhaustion is a hard error") {
    const Presentation* p = preset("fq");
    Int saved = p->fuel;
    p->fuel = 3;
    Word w;
    for (int j = 0; j < 10; ++j) w.push_back({j % 2 == 0 ? 2 : 0, 1});  // x v x v ...
    CHECK_THROWS_AS(normal_order(p, {{Scalar::one(), w}}), error);
    p->fuel = saved;
}
