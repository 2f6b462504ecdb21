#pragma once

#include "qgal/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qgal {

// Generator code inside a word: ordinary generator index, or kEGen for the
// designated group-like generator E (integer exponent slot).
constexpr int kEGen = -1;

struct WordEntry {
    int gen;   // ordinary index or kEGen
    Int exp;   // >= 0 for ordinary generators, any integer for E
};
using Word = std::vector<WordEntry>;

struct WordTerm {
    Scalar coeff;
    Word word;
};

/// Normal-ordered monomial: one nonnegative exponent per ordinary generator
/// plus the integer E exponent.
struct Monomial {
    std::vector<Int> exps;
    Int e = 0;

    Int degree() const {
        Int d = e >= 0 ? e : -e;
        for (Int x : exps) d += x;
        return d;
    }
    bool is_unit() const {
        if (e != 0) return false;
        for (Int x : exps)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const Monomial& o) const { return e == o.e && exps == o.exps; }
};

class Presentation;

struct MonomialLess {
    const Presentation* pres;
    bool operator()(const Monomial& x, const Monomial& y) const;
};

class NCPolynomial;

/// Presented associative algebra with a fixed PBW generator order and
/// normal-ordering rewrite rules for out-of-order adjacent pairs.
class Presentation {
public:
    using TailFn = std::function<std::vector<WordTerm>(const WordEntry&, const WordEntry&)>;

    std::string name;
    std::vector<std::string> gens;  // ordinary generators, in canonical order
    int e_slot = -1;                // display position of E among the slots, -1 if absent

    int num_slots() const { return static_cast<int>(gens.size()) + (e_slot >= 0 ? 1 : 0); }

    // display position of a word-entry generator
    int slot(int gen) const {
        if (gen == kEGen) return e_slot;
        int s = gen;
        if (e_slot >= 0 && s >= e_slot) ++s;
        return s;
    }

    int gen_index(const std::string& g) const {
        for (size_t k = 0; k < gens.size(); ++k)
            if (gens[k] == g) return static_cast<int>(k);
        if (e_slot >= 0 && g == "E") return kEGen;
        throw error("unknown generator '" + g + "' in presentation " + name);
    }

    bool has_rule(int left, int right) const { return rules_.count({left, right}) != 0; }

    // Tail terms of L*R = R*L + tail for an out-of-order adjacent pair.
    // Ordinary entries are single units; E entries carry their full exponent.
    std::vector<WordTerm> tail(const WordEntry& L, const WordEntry& R) const {
        auto it = rules_.find({L.gen, R.gen});
        if (it == rules_.end()) return {};
        return it->second(L, R);
    }

    void add_rule(int left, int right, TailFn fn) { rules_[{left, right}] = std::move(fn); }

    mutable Int fuel = 1000000;  // rewrite step cap

private:
    std::map<std::pair<int, int>, TailFn> rules_;
};

inline bool MonomialLess::operator()(const Monomial& x, const Monomial& y) const {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    // lex over the display slots, E compared in its slot position
    int n = pres->num_slots();
    for (int s = 0; s < n; ++s) {
        Int xe, ye;
        if (pres->e_slot == s) {
            xe = x.e;
            ye = y.e;
        } else {
            int gi = s - (pres->e_slot >= 0 && s > pres->e_slot ? 1 : 0);
            xe = x.exps[gi];
            ye = y.exps[gi];
        }
        if (xe != ye) return xe < ye;
    }
    return false;
}

/// Element of a presented algebra in PBW normal form.
class NCPolynomial {
public:
    using Terms = std::map<Monomial, Scalar, MonomialLess>;

    explicit NCPolynomial(const Presentation* p)
        : pres_(p), terms_(MonomialLess{p}) {}

    static NCPolynomial zero(const Presentation* p) { return NCPolynomial(p); }
    static NCPolynomial scalar(const Presentation* p, Scalar c) {
        NCPolynomial r(p);
        r.add_term(Monomial{std::vector<Int>(p->gens.size(), 0), 0}, std::move(c));
        return r;
    }
    static NCPolynomial one(const Presentation* p) { return scalar(p, Scalar::one()); }
    static NCPolynomial gen(const Presentation* p, const std::string& g, Int exp = 1) {
        int gi = p->gen_index(g);
        Monomial m{std::vector<Int>(p->gens.size(), 0), 0};
        if (gi == kEGen)
            m.e = exp;
        else {
            if (exp < 0) throw error("negative power of non-group-like generator " + g);
            m.exps[gi] = exp;
        }
        NCPolynomial r(p);
        r.add_term(m, Scalar::one());
        return r;
    }
    static NCPolynomial monomial_elem(const Presentation* p, Monomial m, Scalar c) {
        NCPolynomial r(p);
        r.add_term(std::move(m), std::move(c));
        return r;
    }

    const Presentation* pres() const { return pres_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, Scalar c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    NCPolynomial operator+(const NCPolynomial& o) const {
        check_same(o);
        NCPolynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    NCPolynomial operator-(const NCPolynomial& o) const {
        check_same(o);
        NCPolynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    NCPolynomial operator-() const {
        NCPolynomial r(pres_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    NCPolynomial scaled(const Scalar& s) const {
        NCPolynomial r(pres_);
        for (auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    bool operator==(const NCPolynomial& o) const {
        return pres_ == o.pres_ && terms_ == o.terms_;
    }
    bool operator!=(const NCPolynomial& o) const { return !(*this == o); }

    Word monomial_word(const Monomial& m) const {
        Word w;
        int n = pres_->num_slots();
        for (int s = 0; s < n; ++s) {
            if (pres_->e_slot == s) {
                if (m.e != 0) w.push_back({kEGen, m.e});
            } else {
                int gi = s - (pres_->e_slot >= 0 && s > pres_->e_slot ? 1 : 0);
                if (m.exps[gi] != 0) w.push_back({gi, m.exps[gi]});
            }
        }
        return w;
    }

    std::string str() const;

private:
    void check_same(const NCPolynomial& o) const {
        if (pres_ != o.pres_) throw error("presentation mismatch");
    }

    const Presentation* pres_;
    Terms terms_;
};

/// Rewrites a list of word terms into PBW normal form; leftmost out-of-order
/// adjacent pair first, with a fuel cap.
inline NCPolynomial normal_order(const Presentation* p, std::vector<WordTerm> input) {
    NCPolynomial result(p);
    std::deque<WordTerm> work(input.begin(), input.end());
    Int fuel = p->fuel;
    while (!work.empty()) {
        WordTerm t = std::move(work.front());
        work.pop_front();
        if (t.coeff.is_zero()) continue;

        // merge adjacent equal generators, drop trivial entries
        Word w;
        for (auto& en : t.word) {
            if (en.exp == 0) continue;
            if (en.gen != kEGen && en.exp < 0)
                throw error("negative power of ordinary generator in word");
            if (!w.empty() && w.back().gen == en.gen) {
                w.back().exp += en.exp;
                if (w.back().exp == 0) w.pop_back();
            } else {
                w.push_back(en);
            }
        }

        // leftmost out-of-order adjacent pair
        size_t pos = w.size();
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            if (p->slot(w[k].gen) > p->slot(w[k + 1].gen)) {
                pos = k;
                break;
            }
        }
        if (pos == w.size()) {
            Monomial m{std::vector<Int>(p->gens.size(), 0), 0};
            for (auto& en : w) {
                if (en.gen == kEGen)
                    m.e = en.exp;
                else
                    m.exps[en.gen] = en.exp;
            }
            result.add_term(m, t.coeff);
            continue;
        }

        if (--fuel <= 0) throw error("normal_order: fuel exhausted");

        // peel single units off ordinary entries so the rewritten pair is
        // unit x unit (E keeps its whole exponent)
        Word pre(w.begin(), w.begin() + pos);
        Word post(w.begin() + pos + 2, w.end());
        WordEntry L = w[pos], R = w[pos + 1];
        if (L.gen != kEGen && L.exp > 1) {
            pre.push_back({L.gen, L.exp - 1});
            L.exp = 1;
        }
        if (R.gen != kEGen && R.exp > 1) {
            post.insert(post.begin(), {R.gen, R.exp - 1});
            R.exp = 1;
        }

        // main term: swapped pair
        {
            Word nw = pre;
            nw.push_back(R);
            nw.push_back(L);
            nw.insert(nw.end(), post.begin(), post.end());
            work.push_front({t.coeff, std::move(nw)});
        }
        for (auto& tail : p->tail(L, R)) {
            Word nw = pre;
            nw.insert(nw.end(), tail.word.begin(), tail.word.end());
            nw.insert(nw.end(), post.begin(), post.end());
            work.push_back({t.coeff * tail.coeff, std::move(nw)});
        }
    }
    return result;
}

inline NCPolynomial multiply(const NCPolynomial& u, const NCPolynomial& w) {
    if (u.pres() != w.pres()) throw error("presentation mismatch");
    std::vector<WordTerm> input;
    for (auto& [mu, cu] : u.terms())
        for (auto& [mw, cw] : w.terms()) {
            Word word = u.monomial_word(mu);
            Word tail = w.monomial_word(mw);
            word.insert(word.end(), tail.begin(), tail.end());
            input.push_back({cu * cw, std::move(word)});
        }
    return normal_order(u.pres(), std::move(input));
}

inline NCPolynomial commutator(const NCPolynomial& u, const NCPolynomial& w) {
    return multiply(u, w) - multiply(w, u);
}

namespace detail {

inline Scalar half_over_a() {
    // 1/(2a)
    return Scalar::monomial(GaussRat(Rat(1, 2)), -1, 0, 0);
}

inline void validate_jacobi(const Presentation* p);

} // namespace detail

/// The three bundled presentations.
///   uq_kmph : U_q in the (K, M, P, E, H) order, E = e^{aP}
///   uq_iphn : U_q in the (I, P, E, H, N) order
///   fq      : F_q in the (v, mu, x, t) order
inline const Presentation* preset(const std::string& name) {
    static std::map<std::string, std::unique_ptr<Presentation>> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second.get();

    auto p = std::make_unique<Presentation>();
    p->name = name;
    if (name == "uq_kmph") {
        p->gens = {"K", "M", "P", "H"};  // display K M P E H
        p->e_slot = 3;
        const int K = 0, M = 1;
        // P K = K P - M
        p->add_rule(2, K, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{{Scalar(-1L), {{1, 1}}}};
        });
        // H K = K H - (E - E^-1)/(2a)
        p->add_rule(3, K, [](const WordEntry&, const WordEntry&) {
            Scalar h = detail::half_over_a();
            return std::vector<WordTerm>{{-h, {{kEGen, 1}}}, {h, {{kEGen, -1}}}};
        });
        // E^z K = K E^z - z a M E^z
        p->add_rule(kEGen, K, [](const WordEntry& L, const WordEntry&) {
            Scalar c = Scalar::monomial(GaussRat(Rat(-L.exp)), 1, 0, 0);
            return std::vector<WordTerm>{{c, {{1, 1}, {kEGen, L.exp}}}};
        });
        (void)M;
    } else if (name == "uq_iphn") {
        p->gens = {"I", "P", "H", "N"};  // display I P E H N
        p->e_slot = 2;
        const int I = 0, P = 1, H = 2, N = 3;
        // N I = I N + a E^-2 I^2
        p->add_rule(N, I, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{
                {Scalar::sym(Sym::a), {{0, 2}, {kEGen, -2}}}};
        });
        // N P = P N + E^-2 I
        p->add_rule(N, P, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{{Scalar::one(), {{0, 1}, {kEGen, -2}}}};
        });
        // N H = H N + (1 - E^-2)/(2a)
        p->add_rule(N, H, [](const WordEntry&, const WordEntry&) {
            Scalar h = detail::half_over_a();
            return std::vector<WordTerm>{{h, {}}, {-h, {{kEGen, -2}}}};
        });
        // N E^z = E^z N + z a E^(z-2) I
        p->add_rule(N, kEGen, [](const WordEntry&, const WordEntry& R) {
            Scalar c = Scalar::monomial(GaussRat(Rat(R.exp)), 1, 0, 0);
            return std::vector<WordTerm>{{c, {{0, 1}, {kEGen, R.exp - 2}}}};
        });
    } else if (name == "fq") {
        p->gens = {"v", "mu", "x", "t"};
        const int v = 0, mu = 1, x = 2;
        // mu v = v mu + a v^2
        p->add_rule(mu, v, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{{Scalar::sym(Sym::a), {{0, 2}}}};
        });
        // x v = v x + 2a v
        p->add_rule(x, v, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{
                {Scalar::monomial(GaussRat(2L), 1, 0, 0), {{0, 1}}}};
        });
        // x mu = mu x + 2a mu
        p->add_rule(x, mu, [](const WordEntry&, const WordEntry&) {
            return std::vector<WordTerm>{
                {Scalar::monomial(GaussRat(2L), 1, 0, 0), {{1, 1}}}};
        });
    } else {
        throw error("unknown preset '" + name + "'");
    }
    const Presentation* raw = p.get();
    cache.emplace(name, std::move(p));
    detail::validate_jacobi(raw);
    return raw;
}

namespace detail {

inline void validate_jacobi(const Presentation* p) {
    std::vector<NCPolynomial> gs;
    for (auto& g : p->gens) gs.push_back(NCPolynomial::gen(p, g));
    if (p->e_slot >= 0) gs.push_back(NCPolynomial::gen(p, "E"));
    for (auto& g1 : gs)
        for (auto& g2 : gs)
            for (auto& g3 : gs) {
                NCPolynomial j = commutator(commutator(g1, g2), g3) +
                                 commutator(commutator(g2, g3), g1) +
                                 commutator(commutator(g3, g1), g2);
                if (!j.is_zero())
                    throw error("Jacobi identity fails in preset " + p->name);
            }
}

} // namespace detail

/// Basis change between the two U_q presentations: M = E^-1 I, K = E N
/// and inversely I = E M, N = E^-1 K; P, H, E are shared.
inline NCPolynomial convert_basis(const NCPolynomial& u, const Presentation* to) {
    const Presentation* from = u.pres();
    const Presentation *kmph = preset("uq_kmph"), *iphn = preset("uq_iphn");
    if (!((from == kmph && to == iphn) || (from == iphn && to == kmph)))
        throw error("convert_basis: unsupported presentation pair");

    auto image = [&](int gen, Int exp) -> std::vector<WordTerm> {
        // single word per generator image
        Word w;
        if (gen == kEGen) {
            w = {{kEGen, exp}};
            return {{Scalar::one(), w}};
        }
        const std::string& g = from->gens[gen];
        std::vector<WordEntry> one_img;
        if (from == kmph) {
            if (g == "K") one_img = {{kEGen, 1}, {to->gen_index("N"), 1}};
            else if (g == "M") one_img = {{kEGen, -1}, {to->gen_index("I"), 1}};
            else one_img = {{to->gen_index(g), 1}};
        } else {
            if (g == "I") one_img = {{kEGen, 1}, {to->gen_index("M"), 1}};
            else if (g == "N") one_img = {{kEGen, -1}, {to->gen_index("K"), 1}};
            else one_img = {{to->gen_index(g), 1}};
        }
        for (Int k = 0; k < exp; ++k) w.insert(w.end(), one_img.begin(), one_img.end());
        return {{Scalar::one(), w}};
    };

    NCPolynomial out(to);
    for (auto& [m, c] : u.terms()) {
        Word w;
        for (auto& en : u.monomial_word(m)) {
            auto img = image(en.gen, en.exp);
            w.insert(w.end(), img[0].word.begin(), img[0].word.end());
        }
        out = out + normal_order(to, {{c, w}});
    }
    return out;
}

/// Finite sum of two-leg tensors with normal-ordered legs.
class TensorElement {
public:
    struct KeyLess {
        MonomialLess less;
        bool operator()(const std::pair<Monomial, Monomial>& x,
                        const std::pair<Monomial, Monomial>& y) const {
            if (less(x.first, y.first)) return true;
            if (less(y.first, x.first)) return false;
            return less(x.second, y.second);
        }
    };
    using Terms = std::map<std::pair<Monomial, Monomial>, Scalar, KeyLess>;

    explicit TensorElement(const Presentation* p)
        : pres_(p), terms_(KeyLess{MonomialLess{p}}) {}

    static TensorElement zero(const Presentation* p) { return TensorElement(p); }
    static TensorElement of(const NCPolynomial& l, const NCPolynomial& r) {
        if (l.pres() != r.pres()) throw error("presentation mismatch");
        TensorElement t(l.pres());
        for (auto& [ml, cl] : l.terms())
            for (auto& [mr, cr] : r.terms()) t.add_term(ml, mr, cl * cr);
        return t;
    }

    const Presentation* pres() const { return pres_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& l, const Monomial& r, Scalar c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(l, r);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TensorElement operator+(const TensorElement& o) const {
        TensorElement r = *this;
        for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
        return r;
    }
    TensorElement operator-(const TensorElement& o) const {
        TensorElement r = *this;
        for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
        return r;
    }
    TensorElement scaled(const Scalar& s) const {
        TensorElement r(pres_);
        for (auto& [k, c] : terms_) r.add_term(k.first, k.second, c * s);
        return r;
    }
    bool operator==(const TensorElement& o) const {
        return pres_ == o.pres_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    const Presentation* pres_;
    Terms terms_;
};

inline TensorElement tensor_multiply(const TensorElement& t1, const TensorElement& t2) {
    if (t1.pres() != t2.pres()) throw error("presentation mismatch");
    const Presentation* p = t1.pres();
    TensorElement out(p);
    for (auto& [k1, c1] : t1.terms())
        for (auto& [k2, c2] : t2.terms()) {
            NCPolynomial l = multiply(NCPolynomial::monomial_elem(p, k1.first, Scalar::one()),
                                      NCPolynomial::monomial_elem(p, k2.first, Scalar::one()));
            NCPolynomial r = multiply(NCPolynomial::monomial_elem(p, k1.second, Scalar::one()),
                                      NCPolynomial::monomial_elem(p, k2.second, Scalar::one()));
            Scalar c = c1 * c2;
            for (auto& [ml, cl] : l.terms())
                for (auto& [mr, cr] : r.terms())
                    out.add_term(ml, mr, c * cl * cr);
        }
    return out;
}

/// Truncated formal power series in s with NCPolynomial coefficients.
class SeriesInS {
public:
    SeriesInS(const Presentation* p, Int order)
        : pres_(p), coeffs_(static_cast<size_t>(order) + 1, NCPolynomial::zero(p)) {}

    const Presentation* pres() const { return pres_; }
    Int order() const { return static_cast<Int>(coeffs_.size()) - 1; }
    NCPolynomial& operator[](Int n) { return coeffs_[static_cast<size_t>(n)]; }
    const NCPolynomial& operator[](Int n) const { return coeffs_[static_cast<size_t>(n)]; }

    SeriesInS operator*(const SeriesInS& o) const {
        Int N = order();
        SeriesInS r(pres_, N);
        for (Int m = 0; m <= N; ++m)
            for (Int n = 0; n + m <= N && n <= o.order(); ++n)
                r[m + n] = r[m + n] + multiply(coeffs_[static_cast<size_t>(m)], o[n]);
        return r;
    }
    SeriesInS operator-(const SeriesInS& o) const {
        Int N = order();
        SeriesInS r(pres_, N);
        for (Int n = 0; n <= N; ++n) r[n] = coeffs_[static_cast<size_t>(n)] - o[n];
        return r;
    }
    bool is_zero() const {
        for (auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    const Presentation* pres_;
    std::vector<NCPolynomial> coeffs_;
};

/// exp(s u) truncated at order N: coefficient of s^n is u^n / n!.
inline SeriesInS exp_truncated(const NCPolynomial& u, Int N) {
    SeriesInS r(u.pres(), N);
    NCPolynomial pw = NCPolynomial::one(u.pres());
    Rat fact = 1;
    for (Int n = 0; n <= N; ++n) {
        if (n > 0) {
            pw = multiply(pw, u);
            fact *= n;
        }
        r[n] = pw.scaled(Scalar(GaussRat(Rat(1) / fact)));
    }
    return r;
}

/// Expand every E^z factor as the truncated exponential series in a P, up to
/// P-power `order`. Used for classical-limit checks and series oracles.
inline NCPolynomial expand_grouplike(const NCPolynomial& u, Int order) {
    const Presentation* p = u.pres();
    int Pi = p->gen_index("P");
    NCPolynomial out(p);
    for (auto& [m, c] : u.terms()) {
        if (m.e == 0) {
            out.add_term(m, c);
            continue;
        }
        Rat fact = 1;
        for (Int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            // (z a)^k / k! P^k
            Rat zk = 1;
            for (Int j = 0; j < k; ++j) zk *= m.e;
            Scalar coef = Scalar::monomial(GaussRat(zk / fact), k, 0, 0);
            Monomial nm = m;
            nm.e = 0;
            nm.exps[Pi] += k;
            out.add_term(nm, c * coef);
        }
    }
    return out;
}

/// Classical flow of the vector field generated by K on the (m, p, h) chart:
/// (m, p - s m, h + (cosh(a(p - s m)) - cosh(a p)) / (a^2 m)).
struct FlowPoint {
    double m, p, h;
};

inline FlowPoint flow_phi(double s, FlowPoint pt, double a) {
    if (pt.m == 0) throw error("flow_phi: singular flow at m = 0");
    double p2 = pt.p - s * pt.m;
    double h2 = pt.h + (std::cosh(a * p2) - std::cosh(a * pt.p)) / (a * a * pt.m);
    return {pt.m, p2, h2};
}

/// Exact form of the flow: m and p stay rational, h picks up
/// (cosh(a u) - cosh(a w)) / (a^2 m) with rational arguments u, w.
struct FlowExact {
    Rat m, p;        // transported coordinates
    Rat h_base;      // untouched h
    Rat cosh_new;    // argument u of cosh(a u)
    Rat cosh_old;    // argument w of cosh(a w)

    double eval(double a) const {
        return static_cast<double>(h_base) +
               (std::cosh(a * static_cast<double>(cosh_new)) -
                std::cosh(a * static_cast<double>(cosh_old))) /
                   (a * a * static_cast<double>(m));
    }
};

inline FlowExact flow_phi_exact(const Rat& s, const Rat& m, const Rat& p, const Rat& h) {
    if (m == 0) throw error("flow_phi: singular flow at m = 0");
    Rat p2 = p - s * m;
    return {m, p2, h, p2, p};
}

/// Per-identity outcome of the flow identity series check.
struct FlowLemmaReport {
    struct Line {
        std::string identity;
        bool pass;
        Int first_bad_order;    // -1 when pass
        std::string residual;
    };
    std::vector<Line> lines;
    bool all_pass() const {
        for (auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

/// Checks the three conjugation identities
///   M e^{sK} = e^{sK} M
///   P e^{sK} = e^{sK} (P - s M)
///   H e^{sK} = e^{sK} (H + sum_{k>=1} s^k a^{k-2} M^{k-1} ((-1)^k E + E^-1)/(2 k!))
/// as formal series in s up to order N.
inline FlowLemmaReport verify_flow_lemma(Int N) {
    if (N < 1) throw error("verify_flow_lemma: order must be >= 1");
    const Presentation* p = preset("uq_kmph");
    NCPolynomial K = NCPolynomial::gen(p, "K"), M = NCPolynomial::gen(p, "M"),
                 P = NCPolynomial::gen(p, "P"), H = NCPolynomial::gen(p, "H");
    SeriesInS ex = exp_truncated(K, N);

    auto constant = [&](const NCPolynomial& u) {
        SeriesInS s(p, N);
        s[0] = u;
        return s;
    };
    auto check = [&](const std::string& name, const SeriesInS& lhs, const SeriesInS& rhs,
                     FlowLemmaReport& rep) {
        SeriesInS d = lhs - rhs;
        for (Int n = 0; n <= N; ++n)
            if (!d[n].is_zero()) {
                rep.lines.push_back({name, false, n, d[n].str()});
                return;
            }
        rep.lines.push_back({name, true, -1, ""});
    };

    FlowLemmaReport rep;
    check("M·exp(sK) = exp(sK)·M", constant(M) * ex, ex * constant(M), rep);

    SeriesInS pminus(p, N);
    pminus[0] = P;
    pminus[1] = -M;
    check("P·exp(sK) = exp(sK)·(P - sM)", constant(P) * ex, ex * pminus, rep);

    SeriesInS bracket(p, N);
    bracket[0] = H;
    Rat fact = 1;
    NCPolynomial mpow = NCPolynomial::one(p);
    for (Int k = 1; k <= N; ++k) {
        fact *= k;
        if (k > 1) mpow = multiply(mpow, M);
        // a^{k-2} M^{k-1} ((-1)^k E + E^-1) / (2 k!)
        Scalar c = Scalar::monomial(GaussRat(Rat(1) / (2 * fact)), k - 2, 0, 0);
        NCPolynomial epart =
            NCPolynomial::gen(p, "E", 1).scaled(Scalar(GaussRat(Rat(k % 2 == 0 ? 1 : -1)))) +
            NCPolynomial::gen(p, "E", -1);
        bracket[k] = multiply(mpow, epart).scaled(c);
    }
    check("H·exp(sK) = exp(sK)·(H + [cosh(a(P-sM)) - cosh(aP)]/(a^2 M))",
          constant(H) * ex, ex * bracket, rep);
    return rep;
}

inline std::string NCPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        const Scalar& c = it->second;
        std::vector<std::string> factors;
        int n = pres_->num_slots();
        for (int s = 0; s < n; ++s) {
            if (pres_->e_slot == s) {
                if (m.e != 0) factors.push_back(detail::pow_string("E", m.e));
            } else {
                int gi = s - (pres_->e_slot >= 0 && s > pres_->e_slot ? 1 : 0);
                if (m.exps[gi] != 0)
                    factors.push_back(detail::pow_string(pres_->gens[gi], m.exps[gi]));
            }
        }
        std::string mono;
        for (size_t k = 0; k < factors.size(); ++k)
            mono += (k ? "*" : "") + factors[k];

        // fold the coefficient's sign when it is a single foldable term
        Scalar coeff = c;
        bool neg = false;
        std::string cs;
        bool wrap = false;
        if (c.is_single_term()) {
            const auto& [cm, cc] = *c.terms().begin();
            int sgn = detail::coeff_sign(cc);
            if (sgn < 0) {
                neg = true;
                coeff = -c;
            }
            cs = coeff.str();
            wrap = false;
            if (cs.find(' ') != std::string::npos && cs.front() != '(') wrap = true;
            (void)cm;
        } else {
            cs = coeff.str();
            wrap = true;
        }

        std::string body;
        if (mono.empty())
            body = wrap ? "(" + cs + ")" : cs;
        else if (coeff.is_one())
            body = mono;
        else
            body = (wrap ? "(" + cs + ")" : cs) + "*" + mono;

        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

inline std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        NCPolynomial l = NCPolynomial::monomial_elem(pres_, it->first.first, it->second);
        NCPolynomial r = NCPolynomial::monomial_elem(pres_, it->first.second, Scalar::one());
        if (!first) out += " + ";
        out += "(" + l.str() + ") (x) (" + r.str() + ")";
        first = false;
    }
    return out;
}

} // namespace qgal
