// Acceptance suite: one line per criterion, PASS/FAIL, exact arithmetic
// throughout (tolerance zero). Criterion 10 drives the installed CLI binary
// over the shipped fixture corpus; pass its path with --cli and the fixture
// directory with --fixtures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fixtures_common.hpp"
#include "opal/deform.hpp"
#include "opal/runner.hpp"
#include "oracle_hochschild.hpp"

using namespace opal;
using namespace fixtures;

namespace {

int g_failures = 0;
std::string g_cli_path, g_fixture_dir;

struct Criterion {
    int number;
    double limit_seconds;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    Criterion(int n, double limit) : number(n), limit_seconds(limit) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    ~Criterion() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (secs > limit_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2fs", secs);
        std::cout << "CRITERION " << number << ": " << (ok ? "PASS" : "FAIL") << " [" << buf
                  << "]" << (detail.empty() ? "" : " - " + detail) << "\n";
        if (!ok) ++g_failures;
    }
};

json load_fixture(const std::string& name) {
    std::ifstream in(g_fixture_dir + "/" + name);
    if (!in) throw input_error("fixture not found: " + name);
    return json::parse(in);
}

// ---------------------------------------------------------------------------

void criterion1_hopf_kernel() {
    Criterion c(1, 1.0);
    std::vector<std::pair<const char*, std::shared_ptr<const HopfAlgebra>>> algebras = {
        {"trivial", hopf_k()},
        {"Z/2", hopf_c2()},
        {"Z/3", hopf_z3()},
        {"Z/2xZ/2", hopf_v4()},
    };
    for (auto& [name, h] : algebras) {
        c.require(h->verify().ok(), std::string(name) + " fails an axiom");

        // one-entry corruptions, each must fail with a witness
        long g = h->dim - 1;
        {
            HopfAlgebra bad = *h;
            bad.unit[0] += Rational(1);  // one unit entry
            CheckReport r = bad.verify();
            c.require(!r.ok(), std::string(name) + ": corrupted unit passes");
        }
        {
            HopfAlgebra bad = *h;
            bad.counit[g] = Rational(2);
            CheckReport r = bad.verify();
            bool witnessed = false;
            for (const auto& line : r.lines)
                if (!line.ok() && !line.failures.empty()) witnessed = true;
            c.require(witnessed, std::string(name) + ": corrupted counit has no witness");
        }
        if (h->dim > 1) {
            HopfAlgebra bad = *h;
            bad.comult[g][g * h->dim + 0] += Rational(1);  // one entry of Delta(g)
            c.require(!bad.verify().ok(), std::string(name) + ": corrupted Delta passes");

            HopfAlgebra bad2 = *h;
            bad2.antipode.at(0, g) += Rational(1);  // one antipode entry
            c.require(!bad2.verify().ok(), std::string(name) + ": corrupted antipode passes");

            HopfAlgebra bad3 = *h;
            bad3.mult[0][g][g] += Rational(2);  // one product entry
            c.require(!bad3.verify().ok(), std::string(name) + ": corrupted product passes");
        }
    }
}

void criterion2_quotient_dims() {
    Criterion c(2, 10.0);
    for (auto h : {hopf_k(), hopf_c2(), hopf_z3()}) {
        for (auto m : {make_trivial_module(h, 2), make_regular_module(h)}) {
            for (long n = 1; n <= 3; ++n) {
                long expect = m->dim;
                for (long i = 1; i < n; ++i) expect *= h->dim;
                auto sp = m->space(n);
                // qdim is ambient minus relation-matrix rank, so this equality
                // is exactly the rank check
                c.require(sp->qdim == expect,
                          "dim mismatch at dim H=" + std::to_string(h->dim) +
                              " n=" + std::to_string(n));
                c.require(sp->ambient_dim - sp->relation_rank == sp->qdim,
                          "rank arithmetic broken");
            }
        }
    }
}

void criterion3_classical_reduction() {
    Criterion c(3, 30.0);
    for (auto [name, mult] :
         {std::pair<const char*, std::vector<std::vector<Vec>>>{"k[x]/(x^2)", a2_mult()},
          {"k x k", kxk_mult()}}) {
        auto s = constant_structure(make_trivial_module(hopf_k(), 2), omega_trivial(), mult,
                                    VarietySpec{Variety::associative, Indexing::plain, false});
        oracle::ClassicalAlgebra oa{2, mult};

        // checker agreement on the good fixture and on a corrupted one
        c.require(check_variety(*s).ok(), std::string(name) + " checker disagrees");
        auto bad_mult = mult;
        bad_mult[0][0] = vec_scale(Rational(2), bad_mult[0][0]);
        auto bad = constant_structure(make_trivial_module(hopf_k(), 2), omega_trivial(),
                                      bad_mult,
                                      VarietySpec{Variety::associative, Indexing::plain,
                                                  false});
        bool oracle_bad_assoc = oracle::hochschild_d(oracle::ClassicalAlgebra{2, bad_mult}, 0)
                                    .rows >= 0;  // oracle builds regardless
        (void)oracle_bad_assoc;

        CochainComplex cx(s, adjoint_bimodule(s));
        for (long n = 0; n <= 3; ++n)
            c.require(cx.d(n) == oracle::hochschild_d(oa, n),
                      std::string(name) + " d" + std::to_string(n) + " differs from oracle");
        CheckReport dd = cx.verify_complex(3);
        c.require(dd.ok(), std::string(name) + " d o d != 0");
        for (long n = 0; n <= 2; ++n) {
            auto ours = cx.ranks(n);
            auto ref = oracle::hochschild_ranks(oa, n);
            c.require(ours.cocycles == ref.z && ours.coboundaries == ref.b &&
                          ours.cohomology == ref.h,
                      std::string(name) + " H^" + std::to_string(n) + " differs from oracle");
        }

        // the corrupted product must fail both the checker and the classical
        // associativity brute force
        bool classical_ok = true;
        auto mulv = [&](const Vec& x, const Vec& y) {
            Vec r(2);
            for (long i = 0; i < 2; ++i)
                for (long j = 0; j < 2; ++j)
                    if (!x[i].is_zero() && !y[j].is_zero())
                        vec_add_scaled(r, x[i] * y[j], bad_mult[i][j]);
            return r;
        };
        for (long i = 0; i < 2 && classical_ok; ++i)
            for (long j = 0; j < 2 && classical_ok; ++j)
                for (long k = 0; k < 2 && classical_ok; ++k)
                    if (mulv(bad_mult[i][j], unit_vec(2, k)) !=
                        mulv(unit_vec(2, i), bad_mult[j][k]))
                        classical_ok = false;
        c.require(check_variety(*bad).ok() == classical_ok,
                  std::string(name) + " corrupted-case disagreement");
    }
}

void criterion4_construction_soundness() {
    Criterion c(4, 120.0);
    // every constructor, applied to every applicable shipped fixture; each
    // constructor re-verifies its own output and throws on failure
    try {
        BuiltDocument ka2 = parse_document(load_fixture("fix_k_a2.json"));
        BuiltDocument zin = parse_document(load_fixture("fix_zinbiel_k.json"));
        BuiltDocument dnd = parse_document(load_fixture("fix_dend_k.json"));
        BuiltDocument rbf = parse_document(load_fixture("fix_rb_family.json"));
        BuiltDocument oop = parse_document(load_fixture("fix_oop_k.json"));
        BuiltDocument ut2 = parse_document(load_fixture("fix_ut2.json"));
        BuiltDocument cur = parse_document(load_fixture("fix_current_c2.json"));
        BuiltDocument zc2 = parse_document(load_fixture("fix_zero_c2.json"));

        // pack (Prop 3.4) on every omega-associative structure fixture
        semigroup_pack(*ka2.structures.at("A2OM2"));
        semigroup_pack(*zc2.structures.at("ZERO"));
        semigroup_pack(*cur.structures.at("A2RB.current"));

        // current (Prop 3.5) incl. the H' = k collapse, and Eq 3.10
        auto c2 = rbf.hopf.at("C2");
        auto full = rbf.substructures.at("FULL");
        const OrdinaryAlgebra& a2rb = rbf.classical.at("A2RB");
        current(c2, full, a2rb, CurrentFormula::prop35);
        Matrix unit_inc(2, 1);
        unit_inc.set_col(0, c2->unit);
        auto hk = make_substructure(c2, unit_inc, SubStructure::Kind::subbialgebra);
        current(c2, hk, a2rb, CurrentFormula::prop35);  // Remark 3.6(2)
        Matrix ginc(2, 1);
        ginc.at(1, 0) = Rational(1);
        auto spang = make_substructure(c2, ginc, SubStructure::Kind::subcoalgebra);
        current(c2, spang, a2rb, CurrentFormula::eq310);
        OrdinaryAlgebra prelie = a2rb;
        prelie.variety = "omega-pre-lie";
        prelie.rb.reset();
        current(c2, spang, prelie, CurrentFormula::eq310);  // Example 3.18 proper

        // Example 2.5 lift
        OrdinaryAlgebra withfam = a2rb;
        withfam.rb.reset();
        withfam.op_family = OrdinaryAlgebra::ClassicalOpFamily{
            {rbf.classical.at("A2RB").rb->maps[0], rbf.classical.at("A2RB").rb->maps[1]}};
        example25_lift(c2, withfam);

        // Rota-Baxter lift (Cor 3.7)
        rota_baxter_lift(c2, full, a2rb);

        // dendriform sum / pre-Lie (Props 2.8, 2.10, 3.12, 3.22, Cor 3.13)
        auto dend = dnd.structures.at("DEND");
        auto sum = dendriform_sum(*dend);
        auto pl = dendriform_to_prelie(*dend);

        // commutator Lie (Prop 3.19, Cors 3.20/3.21)
        commutator_lie(*ka2.structures.at("A2OM2"), CommutatorSource::associative);
        commutator_lie(*ut2.structures.at("UT2"), CommutatorSource::associative);
        commutator_lie(*pl, CommutatorSource::prelie);

        // zinbiel bridges (Props 3.26-3.28, Lemma 3.25 checked by the checker)
        auto z = zin.structures.at("ZIN");
        auto zd = zinbiel_bridge(*z, ZinbielDirection::to_dendriform);
        zinbiel_bridge(*zd, ZinbielDirection::from_dendriform);
        auto sym = zinbiel_bridge(*z, ZinbielDirection::symmetrize);

        // pair-indexed dendriform bridges on the zinbiel-derived structure
        // (Props 3.12, 3.22 over a nontrivial semigroup)
        dendriform_sum(*zd);
        auto zd_pl = dendriform_to_prelie(*zd);
        commutator_lie(*zd_pl, CommutatorSource::prelie);

        // family-indexed paths (Prop 3.11 embedding; Cor 3.13, Prop 3.23,
        // Cor 3.21, Prop 3.27)
        {
            long a = z->dim(), wz = z->w();
            std::vector<Vec> fam_star(static_cast<size_t>(wz) * a * a);
            for (long al = 0; al < wz; ++al)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j)
                        fam_star[(al * a + i) * a + j] = z->op("star").at(al, 0, i, j);
            std::map<std::string, std::vector<Vec>> ftab{{"star", fam_star}};
            auto zfam = make_structure(z->carrier, z->omega,
                                       VarietySpec{Variety::zinbiel, Indexing::family, false},
                                       ftab, /*family_indexed=*/true);
            verify_or_throw(*zfam, "family zinbiel fixture");
            auto fd = zinbiel_bridge(*zfam, ZinbielDirection::to_dendriform);
            zinbiel_bridge(*fd, ZinbielDirection::from_dendriform);
            dendriform_sum(*fd);
            auto fpl = dendriform_to_prelie(*fd);
            commutator_lie(*fpl, CommutatorSource::prelie_family);
        }

        // operator-induced structures (Prop 4.2, Thm 4.3, Prop 2.9)
        auto fam = oop.op_families.at("T");
        auto ind = oop_induced_structure(*fam);
        oop_induced_bimodule(*fam, ind);
        auto dhalves = oop_induced_dendriform(*fam);
        auto dsum = dendriform_sum(*dhalves);
        // the dendriform halves live over the trivial semigroup; their sum
        // must equal the Prop 4.2 product of the single-operator family
        auto single = make_operator_family(fam->bimodule, trivial_semigroup(),
                                           {fam->maps[0]});
        c.require(dsum->op("star").data ==
                      oop_induced_structure(*single)->op("star").data,
                  "Prop 2.9 halves do not sum to the Prop 4.2 product");

        // Poisson (Prop 6.3)
        commutative_to_poisson(*ka2.structures.at("A2OM2"));
        commutative_to_poisson(*sym);

        (void)sum;
    } catch (const std::exception& e) {
        c.require(false, std::string("constructor failed: ") + e.what());
    }
}

void criterion5_biconditionals() {
    Criterion c(5, 120.0);
    // Prop 3.4 in both directions under single-entry mutation
    auto s = structure_a2_om2_k();
    VarietySpec assoc_pair{Variety::associative, Indexing::pair, false};
    VarietySpec assoc_plain{Variety::associative, Indexing::plain, false};
    c.require(check_variety(*s, assoc_pair).ok() &&
                  check_variety(*semigroup_pack_raw(*s), assoc_plain).ok(),
              "Prop 3.4 forward direction fails on the valid fixture");
    long w = s->w(), a = s->dim();
    long flipped = 0;
    for (long e = 0; e < w * w * a * a; ++e) {
        auto tab = s->op("star").data;
        if (vec_is_zero(tab[e])) continue;
        tab[e] = vec_scale(Rational(2), tab[e]);
        std::map<std::string, std::vector<Vec>> tables{{"star", tab}};
        auto mut = make_structure(s->carrier, s->omega, assoc_pair, tables);
        bool direct = check_variety(*mut, assoc_pair).ok();
        bool packed = check_variety(*semigroup_pack_raw(*mut), assoc_plain).ok();
        c.require(direct == packed, "Prop 3.4 iff broken by mutation " + std::to_string(e));
        if (!direct) ++flipped;
    }
    c.require(flipped > 0, "no Prop 3.4 mutation flipped the identity");

    // Prop 2.6 in both directions under single-entry mutation
    auto om = omega_om2();
    auto plain = constant_structure(module_a2(hopf_k()), omega_trivial(), a2_mult(),
                                    VarietySpec{Variety::associative, Indexing::plain, false});
    auto bim = adjoint_bimodule(plain);
    Matrix t(2, 2);
    t.at(1, 0) = Rational(1);
    auto good = make_operator_family(bim, om, {t, t});
    c.require(check_operator_family(*good).ok() &&
                  check_operator_family(*pack_operator_family(*good).op).ok(),
              "Prop 2.6 forward direction fails on the valid fixture");
    long flipped26 = 0;
    for (long r = 0; r < 2; ++r)
        for (long cc = 0; cc < 2; ++cc) {
            Matrix bad = t;
            bad.at(r, cc) += Rational(1);
            auto fam = make_operator_family(bim, om, {bad, t});
            bool family_ok = check_operator_family(*fam).ok();
            bool packed_ok = check_operator_family(*pack_operator_family(*fam).op).ok();
            c.require(family_ok == packed_ok, "Prop 2.6 iff broken by mutation");
            if (!family_ok) ++flipped26;
        }
    c.require(flipped26 > 0, "no Prop 2.6 mutation flipped the identity");
}

void criterion6_cohomology_complex() {
    Criterion c(6, 300.0);
    // d^n o d^{n-1} = 0 for n in {1,2,3} on four fixtures, one with
    // dim H = 2 and |Omega| = 2
    std::vector<std::pair<std::string, std::shared_ptr<const PseudoStructure>>> fixtures;
    fixtures.emplace_back("k[x]/(x^2) plain",
                          constant_structure(make_trivial_module(hopf_k(), 2),
                                             omega_trivial(), a2_mult(),
                                             VarietySpec{Variety::associative,
                                                         Indexing::plain, false}));
    fixtures.emplace_back("k x k plain",
                          constant_structure(make_trivial_module(hopf_k(), 2),
                                             omega_trivial(), kxk_mult(),
                                             VarietySpec{Variety::associative,
                                                         Indexing::plain, false}));
    fixtures.emplace_back("dim H = 2, |Omega| = 2 current", current_k_om2(hopf_c2()));
    fixtures.emplace_back("k[x]/(x^2) over OM2", structure_a2_om2_k());
    for (auto& [name, s] : fixtures) {
        CochainComplex cx(s, adjoint_bimodule(s));
        CheckReport rep = cx.verify_complex(3);
        c.require(rep.ok(), name + ": d o d != 0");
    }

    // delta complex equals the induced d complex entry for entry (asserted
    // inside delta(); a mismatch throws)
    try {
        BuiltDocument oop = parse_document(load_fixture("fix_oop_k.json"));
        OOPComplex ox(oop.op_families.at("T"));
        ox.delta(0);
        ox.delta(1);
        ox.delta(2);
        c.require(ox.verify_complex(2).ok(), "delta o delta != 0");

        auto zero_fam = make_operator_family(oop.bimodules.at("ADJ"), omega_om2(),
                                             {Matrix(2, 2), Matrix(2, 2)});
        OOPComplex oz(zero_fam);
        oz.delta(0);
        oz.delta(1);
        c.require(oz.delta(1).is_zero(), "zero family has a nonzero delta");
    } catch (const std::exception& e) {
        c.require(false, std::string("delta complex: ") + e.what());
    }
}

void criterion7_deformation_suite() {
    Criterion c(7, 30.0);
    try {
        BuiltDocument dq = parse_document(load_fixture("fix_defquad.json"));
        const DeformationJet& jet = dq.jets.at("J");
        CheckReport rep = check_jet(jet);
        c.require(rep.ok(), "defquad jet fails its deformation equations");
        const CheckLine* s1 = rep.find("deformation-equation-s1");
        const CheckLine* coc = rep.find("infinitesimal-cocycle");
        c.require(s1 && s1->ok(), "Eq 5.2 route failed");
        c.require(coc && coc->ok(), "d2 route failed or disagreed");

        // coboundary-shifted jet passes with its gauge
        Matrix g(2, 2);
        g.at(1, 0) = Rational(1);
        std::vector<Matrix> phi{g, g};
        OpFamily dphi = d1_of_maps(*jet.base, phi);
        std::vector<Vec> shifted = jet.term(1).data;
        for (size_t e = 0; e < shifted.size(); ++e)
            shifted[e] = vec_sub(shifted[e], dphi.data[e]);
        auto j2 = make_jet(jet.base, {shifted});
        DeformationJet j1{jet.base, {jet.term(1)}};
        c.require(first_order_equivalent(j1, j2, EquivalenceData{phi}).ok(),
                  "coboundary-shifted jet not recognized as equivalent");

        // engineered non-cohomologous pair fails
        long a = jet.base->dim(), w = jet.base->w();
        auto sp2 = jet.base->carrier->space(2);
        std::vector<Vec> zero(static_cast<size_t>(w) * w * a * a, Vec(sp2->qdim));
        auto jz = make_jet(jet.base, {zero});
        CheckReport ne = first_order_equivalent(j1, jz,
                                                EquivalenceData{{Matrix(2, 2), Matrix(2, 2)}});
        c.require(!ne.ok(), "non-cohomologous pair passed");
        const CheckLine* exist = ne.find("cohomologous-infinitesimals");
        c.require(exist && !exist->ok(), "gauge existence solve did not fail");
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
}

void criterion8_rigidity() {
    Criterion c(8, 30.0);
    try {
        BuiltDocument kk = parse_document(load_fixture("fix_kxk.json"));
        RigidityReport r = rigidity_report(kk.structures.at("KXK"));
        c.require(r.rigid && r.verdict() == "RIGID", "k x k not reported RIGID");
        c.require(r.h2.cohomology == 0, "H^2(k x k) != 0");
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
}

void criterion9_poisson() {
    Criterion c(9, 60.0);
    try {
        for (const char* fx : {"fix_defquad.json", "fix_jet_skew.json"}) {
            BuiltDocument b = parse_document(load_fixture(fx));
            for (const auto& [name, jet] : b.jets) {
                PoissonExtraction p = poisson_extract(jet);
                CheckReport vr = check_variety(*p.poisson);
                c.require(vr.ok(), std::string(fx) + "." + name + ": poisson checker failed");
                // the explicit identity battery: Eqs 3.8, 3.9, 6.1 and base
                // commutativity all appear as lines
                for (const char* line : {"skew-symmetry", "jacobi", "poisson-compatibility",
                                         "commutativity"}) {
                    const CheckLine* l = vr.find(line);
                    c.require(l && l->ok(), std::string(name) + ": " + line + " missing/failed");
                }
                c.require(p.lemmas.ok(),
                          std::string(fx) + "." + name + ": Lemma 6.4-6.6 identities failed");
            }
        }
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
}

int run_cli(const std::string& args, const std::string& out_path) {
    std::string cmd = g_cli_path + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion10_cli() {
    Criterion c(10, 300.0);
    if (g_cli_path.empty()) {
        c.require(false, "no --cli path given");
        return;
    }
    std::vector<std::pair<std::string, int>> corpus = {
        {"fix_k_a2.json", 0},       {"fix_groups.json", 0},
        {"fix_c2_modules.json", 0}, {"fix_zero_c2.json", 0},
        {"fix_dend_k.json", 0},     {"fix_zinbiel_k.json", 0},
        {"fix_rb_family.json", 0},  {"fix_oop_k.json", 0},
        {"fix_defquad.json", 0},    {"fix_jet_skew.json", 0},
        {"fix_ut2.json", 0},        {"fix_kxk.json", 0},
        {"fix_current_c2.json", 0}, {"broken_hopf_counit.json", 1},
        {"broken_semigroup.json", 1}, {"broken_variety.json", 1},
        {"broken_linearity.json", 1}, {"broken_rational.json", 2},
        {"broken_dangling.json", 2},
    };
    long goods = 0, brokens = 0;
    for (const auto& [name, expected] : corpus) {
        std::string out1 = "/tmp/opal_accept_1.txt", out2 = "/tmp/opal_accept_2.txt";
        int e1 = run_cli("verify " + g_fixture_dir + "/" + name, out1);
        int e2 = run_cli("verify " + g_fixture_dir + "/" + name, out2);
        c.require(e1 == expected, name + ": exit " + std::to_string(e1) + " expected " +
                                      std::to_string(expected));
        c.require(e1 == e2, name + ": exit code not stable");
        c.require(slurp(out1) == slurp(out2), name + ": report not byte-identical");
        (expected == 0 ? goods : brokens) += 1;
    }
    c.require(goods >= 10, "fewer than 10 good fixtures");
    c.require(brokens >= 3, "fewer than 3 broken fixtures");

    // documented report example and json mode determinism
    int er = run_cli("report " + g_fixture_dir + "/fix_k_a2.json --format json",
                     "/tmp/opal_accept_j1.txt");
    int er2 = run_cli("report " + g_fixture_dir + "/fix_k_a2.json --format json",
                      "/tmp/opal_accept_j2.txt");
    c.require(er == 0 && er2 == 0, "json report failed");
    c.require(slurp("/tmp/opal_accept_j1.txt") == slurp("/tmp/opal_accept_j2.txt"),
              "json report not byte-identical");

    // cohomology and deform subcommands honor the documented surface
    c.require(run_cli("cohomology " + g_fixture_dir +
                          "/fix_k_a2.json --structure A2OM2 --degree 2",
                      "/tmp/opal_accept_c.txt") == 0,
              "cohomology subcommand failed");
    std::string ctext = slurp("/tmp/opal_accept_c.txt");
    c.require(ctext.find("dim Z^2") != std::string::npos &&
                  ctext.find("dim H^2") != std::string::npos,
              "cohomology output missing dimensions");
    c.require(run_cli("deform " + g_fixture_dir + "/fix_defquad.json --jet J --poisson",
                      "/tmp/opal_accept_d.txt") == 0,
              "deform --poisson failed");
    c.require(slurp("/tmp/opal_accept_d.txt").find("bracket table") != std::string::npos,
              "deform --poisson output missing the bracket table");
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--cli") g_cli_path = argv[i + 1];
        else if (flag == "--fixtures") g_fixture_dir = argv[i + 1];
    }
    if (g_fixture_dir.empty()) g_fixture_dir = "fixtures";

    criterion1_hopf_kernel();
    criterion2_quotient_dims();
    criterion3_classical_reduction();
    criterion4_construction_soundness();
    criterion5_biconditionals();
    criterion6_cohomology_complex();
    criterion7_deformation_suite();
    criterion8_rigidity();
    criterion9_poisson();
    criterion10_cli();

    std::cout << (g_failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS\n"
                                  : "ACCEPTANCE: " + std::to_string(g_failures) +
                                        " CRITERIA FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
