// Command-line front end: expression parsing, action/pairing evaluation,
// verification suites, and the lattice dispersion/evolution tools.

#include "qgal/qgal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qgal;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

Character character_from(const std::string& alpha, const std::string& beta) {
    return Character{parse_scalar(alpha), parse_scalar(beta)};
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

VerificationReport lemma_report(Int order) {
    FlowLemmaReport fl = verify_flow_lemma(order);
    VerificationReport rep;
    rep.suite = "lemma";
    for (auto& l : fl.lines)
        rep.add(l.identity, l.pass,
                l.pass ? "" : "order " + std::to_string(l.first_bad_order) + ": " + l.residual);
    return rep;
}

VerificationReport hopf_reports(Int degree) {
    VerificationReport rep;
    rep.suite = "hopf";
    for (auto name : {"uq_kmph", "uq_iphn", "fq"}) {
        VerificationReport r = name == std::string("uq_kmph")   ? check_hopf_axioms(hopf_uq_kmph(), degree)
                               : name == std::string("uq_iphn") ? check_hopf_axioms(hopf_uq_iphn(), degree)
                                                                : check_hopf_axioms(hopf_fq(), degree);
        for (auto& c : r.checks) rep.add(std::string(name) + "/" + c.id, c.pass, c.residual);
    }
    return rep;
}

std::vector<VerificationReport> run_suites(const std::string& suite, Int degree) {
    std::vector<VerificationReport> out;
    auto want = [&](const char* s) { return suite == s || suite == "all"; };
    if (want("hopf")) out.push_back(hopf_reports(std::min<Int>(degree, 4)));
    if (want("pairing")) out.push_back(check_pairing_diagonal(degree));
    if (want("duality")) out.push_back(check_duality(degree));
    if (want("lemma")) out.push_back(lemma_report(degree + 2));
    if (want("relations"))
        out.push_back(check_relations_on_module(Character::symbolic(), degree + 4));
    if (want("star")) out.push_back(check_star_consistency());
    if (want("equivalence")) out.push_back(check_equivalence_alpha(degree + 2));
    if (out.empty()) throw error("unknown suite '" + suite + "'");
    return out;
}

json report_json(const VerificationReport& r) {
    json checks = json::array();
    for (auto& c : r.checks) {
        json e{{"id", c.id}, {"pass", c.pass}};
        if (!c.residual.empty()) e["residual"] = c.residual;
        checks.push_back(std::move(e));
    }
    return json{{"suite", r.suite}, {"checks", std::move(checks)}, {"overall", r.all_pass()}};
}

// ---------------------------------------------------------------------------
// act / casimir, shared by `limit`
// ---------------------------------------------------------------------------

struct ActOptions {
    std::string action = "induced";
    std::string alpha = "0";
    std::string beta = "beta";
    std::string elem;
    std::string wf;
};

WaveFunction run_act(const ActOptions& o) {
    WaveFunction f = parse_wavefunction(o.wf);
    NCPolynomial u = parse_algebra(o.elem, preset("uq_kmph"));
    if (o.action == "right") return act_triangleright_elem(u, f);
    if (o.action == "left") return act_triangleleft_elem(f, u);
    if (o.action == "induced")
        return induced_action(character_from(o.alpha, o.beta), u, f);
    throw error("unknown action '" + o.action + "'");
}

struct CasimirOptions {
    bool reduced = false;
    std::string alpha = "0";
    std::string beta = "beta";
    std::string wf;
};

WaveFunction run_casimir(const CasimirOptions& o) {
    WaveFunction f = parse_wavefunction(o.wf);
    Character ch = character_from(o.alpha, o.beta);
    return o.reduced ? reduced_casimir_action(ch, f) : casimir_action(ch, f);
}

void add_act_flags(CLI::App* cmd, ActOptions& o) {
    cmd->add_option("--action", o.action, "right, left, or induced")
        ->check(CLI::IsMember({"right", "left", "induced"}));
    cmd->add_option("--alpha", o.alpha, "character value of K (induced action)");
    cmd->add_option("--beta", o.beta, "character value of M (induced action)");
    cmd->add_option("elem", o.elem, "algebra element over K M P H E")->required();
    cmd->add_option("wf", o.wf, "polynomial in v mu x t")->required();
}

void add_casimir_flags(CLI::App* cmd, CasimirOptions& o) {
    cmd->add_flag("--reduced", o.reduced, "apply the reduced (M^-1-scaled) element");
    cmd->add_option("--alpha", o.alpha, "character value of K");
    cmd->add_option("--beta", o.beta, "character value of M");
    cmd->add_option("wf", o.wf, "polynomial in v mu x t")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic workbench for a quantum-deformed Galilei symmetry"};
    app.require_subcommand(1);

    // normal-order
    std::string no_alg = "uq_kmph", no_expr;
    auto* no = app.add_subcommand("normal-order", "rewrite an expression to canonical form");
    no->add_option("--alg", no_alg, "presentation: uq_kmph, uq_iphn, or fq")
        ->check(CLI::IsMember({"uq_kmph", "uq_iphn", "fq"}));
    no->add_option("expr", no_expr, "algebra expression")->required();

    // pair
    std::string pr_side = "hopf", pr_u, pr_f;
    auto* pr = app.add_subcommand("pair", "evaluate a dual pairing");
    pr->add_option("--side", pr_side, "hopf: uq_iphn vs fq; A: uq_kmph vs wavefunction")
        ->check(CLI::IsMember({"hopf", "A"}));
    pr->add_option("u", pr_u, "algebra element")->required();
    pr->add_option("f", pr_f, "dual element")->required();

    // act
    ActOptions act_o;
    auto* ac = app.add_subcommand("act", "apply an algebra element to a wavefunction");
    add_act_flags(ac, act_o);

    // casimir
    CasimirOptions cas_o;
    auto* ca = app.add_subcommand("casimir", "apply the central element to a wavefunction");
    add_casimir_flags(ca, cas_o);

    // limit: same operations followed by the a -> 0 specialization
    auto* li = app.add_subcommand("limit", "run act or casimir, then send a to 0");
    li->require_subcommand(1);
    ActOptions lact_o;
    auto* lac = li->add_subcommand("act", "act, then a -> 0");
    add_act_flags(lac, lact_o);
    CasimirOptions lcas_o;
    auto* lca = li->add_subcommand("casimir", "casimir, then a -> 0");
    add_casimir_flags(lca, lcas_o);

    // verify
    std::string vf_suite = "all";
    Int vf_degree = 3;
    bool vf_json = false;
    auto* vf = app.add_subcommand("verify", "run consistency suites and report");
    vf->add_option("--suite", vf_suite, "suite name or 'all'")
        ->check(CLI::IsMember({"hopf", "pairing", "duality", "lemma", "relations", "star",
                               "equivalence", "all"}));
    vf->add_option("--degree", vf_degree, "sweep depth")->check(CLI::Range(1, 6));
    vf->add_flag("--json", vf_json, "emit the report as JSON");

    // lattice
    lattice::LatticeParams lp;
    int lt_mode = 1;
    double lt_time = 0.0;
    std::vector<double> lt_study;
    auto* lt = app.add_subcommand("lattice", "dispersion and spectral evolution");
    lt->add_option("--a", lp.a, "lattice spacing");
    lt->add_option("--sites", lp.sites, "number of periodic sites");
    lt->add_option("--mass", lp.mass, "particle mass");
    lt->add_option("--hbar", lp.hbar, "Planck constant");
    lt->add_option("--k-mode", lt_mode, "integer mode index");
    lt->add_option("--time", lt_time, "evolution time for the norm-drift line");
    lt->add_option("--study", lt_study, "comma-separated spacings for the error table")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (no->parsed()) {
            std::cout << parse_algebra(no_expr, preset(no_alg)).str() << "\n";
        } else if (pr->parsed()) {
            Scalar s = pr_side == "hopf"
                           ? hopf_pairing(parse_algebra(pr_u, preset("uq_iphn")),
                                          parse_algebra(pr_f, preset("fq")))
                           : pairing_A(parse_algebra(pr_u, preset("uq_kmph")),
                                       parse_wavefunction(pr_f));
            std::cout << s.str() << "\n";
        } else if (ac->parsed()) {
            std::cout << run_act(act_o).str() << "\n";
        } else if (ca->parsed()) {
            std::cout << run_casimir(cas_o).str() << "\n";
        } else if (li->parsed()) {
            WaveFunction f = lac->parsed() ? run_act(lact_o) : run_casimir(lcas_o);
            std::cout << classical_limit(f).str() << "\n";
        } else if (vf->parsed()) {
            auto reports = run_suites(vf_suite, vf_degree);
            bool ok = true;
            if (vf_json) {
                json out = json::array();
                for (auto& r : reports) {
                    out.push_back(report_json(r));
                    ok = ok && r.all_pass();
                }
                std::cout << out.dump(2) << "\n";
            } else {
                for (auto& r : reports) {
                    std::cout << r.text();
                    ok = ok && r.all_pass();
                }
                std::cout << "combined: " << (ok ? "PASS" : "FAIL") << "\n";
            }
            return ok ? kExitPass : kExitVerifyFail;
        } else if (lt->parsed()) {
            lp.validate();
            if (!lt_study.empty()) {
                double k = lattice::wavenumber(lt_mode, lp);
                std::cout << lattice::dispersion_csv(lattice::dispersion_study(lt_study, k, lp));
            } else {
                double k = lattice::wavenumber(lt_mode, lp);
                std::cout << "k: " << fmt(k) << "\n"
                          << "omega_a: " << fmt(lattice::dispersion(lt_mode, lp)) << "\n"
                          << "omega_0: " << fmt(lattice::continuum_dispersion(k, lp)) << "\n";
                if (lt_time > 0) {
                    lattice::LatticeState s = lattice::plane_wave(lp, lt_mode);
                    std::cout << "norm_drift: " << fmt(lattice::check_unitarity(s, lt_time))
                              << "\n";
                }
            }
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitPass;
}
