#include <doctest.h>

#include "fixtures_common.hpp"
#include "opal/construct.hpp"

using namespace opal;
using namespace fixtures;

namespace {

Matrix integration_map() {
    Matrix t(2, 2);
    t.at(1, 0) = Rational(1);  // T(1) = x, T(x) = 0
    return t;
}

std::shared_ptr<const OperatorFamily> integration_family(
    std::shared_ptr<const FiniteSemigroup> om) {
    auto s = constant_structure(module_a2(hopf_k()), omega_trivial(), a2_mult(),
                                VarietySpec{Variety::associative, Indexing::plain, false});
    auto b = adjoint_bimodule(s);
    std::vector<Matrix> maps(om->size, integration_map());
    return make_operator_family(b, std::move(om), std::move(maps));
}

// classical oracle: ut2_mult is associative, noncommutative
bool classicalcheck_ut2() {
    auto m = ut2_mult();
    auto mulv = [&](const Vec& x, const Vec& y) {
        Vec r(3);
        for (long i = 0; i < 3; ++i)
            for (long j = 0; j < 3; ++j)
                if (!x[i].is_zero() && !y[j].is_zero())
                    vec_add_scaled(r, x[i] * y[j], m[i][j]);
        return r;
    };
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j)
            for (long k = 0; k < 3; ++k)
                if (mulv(m[i][j], unit_vec(3, k)) != mulv(unit_vec(3, i), m[j][k]))
                    return false;
    return mulv(unit_vec(3, 0), unit_vec(3, 2)) != mulv(unit_vec(3, 2), unit_vec(3, 0));
}

}  // namespace

TEST_CASE("semigroup packing and unpacking round-trip") {
    SUBCASE("zero structure packs to the zero structure") {
        auto z = make_zero_structure(module_a2(hopf_k()), omega_om2(),
                                     VarietySpec{Variety::associative, Indexing::pair, false});
        auto packed = semigroup_pack(*z);
        for (const auto& v : packed->op("star").data) CHECK(vec_is_zero(v));
    }

    SUBCASE("A2 x OM2 packs to a verified 4-dimensional associative structure") {
        auto s = structure_a2_om2_k();
        auto packed = semigroup_pack(*s);
        CHECK(packed->dim() == 4);
        CHECK(check_variety(*packed).ok());
        auto back = semigroup_unpack(*packed, s->carrier, s->omega, s->claimed);
        CHECK(back->op("star").data == s->op("star").data);
    }

    SUBCASE("round-trip over a nontrivial Hopf algebra") {
        auto s = current_a2_om2(hopf_c2());
        auto packed = semigroup_pack(*s);
        auto back = semigroup_unpack(*packed, s->carrier, s->omega, s->claimed);
        CHECK(back->op("star").data == s->op("star").data);
    }
}

TEST_CASE("Prop 3.4 biconditional under single-entry mutation") {
    auto s = structure_a2_om2_k();
    VarietySpec assoc_pair{Variety::associative, Indexing::pair, false};
    VarietySpec assoc_plain{Variety::associative, Indexing::plain, false};

    // valid fixture: both sides hold
    CHECK(check_variety(*s, assoc_pair).ok());
    CHECK(check_variety(*semigroup_pack_raw(*s), assoc_plain).ok());

    // mutate each table entry in turn by scaling with 2; the iff must hold in
    // both directions for every corruption
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
        CHECK(direct == packed);
        if (!direct) ++flipped;
    }
    CHECK(flipped > 0);  // at least one corruption actually breaks associativity
}

TEST_CASE("current construction, Prop 3.5") {
    SUBCASE("H = k with H' = k recovers the classical product") {
        auto h = hopf_k();
        auto sub = make_substructure(h, Matrix::identity(1), SubStructure::Kind::subbialgebra);
        auto out = current(h, sub, classical_a2_om2(), CurrentFormula::prop35);
        CHECK(out->dim() == 2);
        CHECK(check_variety(*out).ok());
        // table-for-table the Remark 3.6(2) product is the classical one
        auto ref = structure_a2_om2_k();
        CHECK(out->op("star").data == ref->op("star").data);
    }

    SUBCASE("FIX-C2 with H' = H gives a verified 8-dimensional structure") {
        auto h = hopf_c2();
        auto sub = make_substructure(h, Matrix::identity(2), SubStructure::Kind::subbialgebra);
        auto out = current(h, sub, classical_a2_om2(), CurrentFormula::prop35);
        CHECK(out->dim() == 8);
        CHECK(check_variety(*out).ok());  // Eq 3.1 over all 8 triples x 512 basis triples
    }

    SUBCASE("subcoalgebra input is rejected for prop35") {
        auto h = hopf_c2();
        Matrix inc(2, 1);
        inc.at(1, 0) = Rational(1);
        auto sub = make_substructure(h, inc, SubStructure::Kind::subcoalgebra);
        CHECK_THROWS_AS(current(h, sub, classical_a2_om2(), CurrentFormula::prop35),
                        check_error);
    }
}

TEST_CASE("current construction, Eq 3.10 over a subcoalgebra") {
    auto h = hopf_c2();
    Matrix inc(2, 1);
    inc.at(1, 0) = Rational(1);  // C = span{g}
    auto sub = make_substructure(h, inc, SubStructure::Kind::subcoalgebra);

    OrdinaryAlgebra alg = classical_a2_om2();
    alg.variety = "omega-pre-lie";
    auto out = current(h, sub, alg, CurrentFormula::eq310);
    CHECK(out->dim() == 4);
    CHECK(check_variety(*out, VarietySpec{Variety::pre_lie, Indexing::pair, false}).ok());

    // omega-associative input gives an omega-associative output
    OrdinaryAlgebra alg2 = classical_a2_om2();
    auto out2 = current(h, sub, alg2, CurrentFormula::eq310);
    CHECK(check_variety(*out2, VarietySpec{Variety::associative, Indexing::pair, false}).ok());
}

TEST_CASE("Rota-Baxter family lift, Cor 3.7") {
    auto h = hopf_c2();
    auto sub = make_substructure(h, Matrix::identity(2), SubStructure::Kind::subbialgebra);

    SUBCASE("zero family with weight 1 degenerates to the plain product") {
        OrdinaryAlgebra alg = classical_a2_om2();
        alg.rb = OrdinaryAlgebra::RBFamily{Rational(1), {Matrix(2, 2), Matrix(2, 2)}};
        auto out = rota_baxter_lift(h, sub, alg);
        auto ref = current(h, sub, classical_a2_om2(), CurrentFormula::prop35);
        CHECK(out->op("star").data == ref->op("star").data);
    }

    SUBCASE("identity family with weight -1 satisfies the identity and lifts") {
        OrdinaryAlgebra alg = classical_a2_om2();
        alg.rb = OrdinaryAlgebra::RBFamily{Rational(-1),
                                           {Matrix::identity(2), Matrix::identity(2)}};
        CHECK(check_rb_family(alg).ok());
        CHECK_NOTHROW(rota_baxter_lift(h, sub, alg));
    }

    SUBCASE("integration family with weight 0") {
        OrdinaryAlgebra alg = classical_a2_om2();
        alg.rb = OrdinaryAlgebra::RBFamily{Rational(0),
                                           {integration_map(), integration_map()}};
        CHECK(check_rb_family(alg).ok());
        auto out = rota_baxter_lift(h, sub, alg);
        CHECK(check_variety(*out).ok());
    }

    SUBCASE("a non-Rota-Baxter family is refused with a witness") {
        OrdinaryAlgebra alg = classical_a2_om2();
        Matrix bad = integration_map();
        bad.at(0, 1) = Rational(1);  // T(x) = 1 breaks the identity
        alg.rb = OrdinaryAlgebra::RBFamily{Rational(0), {bad, bad}};
        CHECK_THROWS_WITH_AS(rota_baxter_lift(h, sub, alg),
                             doctest::Contains("rb identity failed"), check_error);
    }
}

TEST_CASE("operator-induced structures, Prop 4.2 / Thm 4.3 / Prop 2.9") {
    SUBCASE("zero family induces the zero structure") {
        auto s = constant_structure(module_a2(hopf_k()), omega_trivial(), a2_mult(),
                                    VarietySpec{Variety::associative, Indexing::plain, false});
        auto b = adjoint_bimodule(s);
        auto fam = make_operator_family(b, omega_om2(), {Matrix(2, 2), Matrix(2, 2)});
        auto ind = oop_induced_structure(*fam);
        for (const auto& v : ind->op("star").data) CHECK(vec_is_zero(v));
        CHECK_NOTHROW(oop_induced_bimodule(*fam, ind));
    }

    SUBCASE("integration family: induced structure, bimodule back, dendriform halves") {
        auto fam = integration_family(omega_trivial());
        auto ind = oop_induced_structure(*fam);
        CHECK(check_variety(*ind).ok());

        auto back = oop_induced_bimodule(*fam, ind);
        CHECK(check_bimodule(*back).ok());

        auto dend = oop_induced_dendriform(*fam);
        CHECK(check_variety(*dend).ok());
        // Prop 2.9 halves sum to the Prop 4.2 product
        auto sum = dendriform_sum(*dend);
        CHECK(sum->op("star").data == ind->op("star").data);
    }

    SUBCASE("Example 2.5 lift over FIX-C2 passes the full chain") {
        OrdinaryAlgebra alg = classical_a2_om2();
        alg.op_family = OrdinaryAlgebra::ClassicalOpFamily{
            {integration_map(), integration_map()}};
        auto lift = example25_lift(hopf_c2(), alg);
        CHECK(check_variety(*lift.algebra).ok());
        CHECK(check_bimodule(*lift.bimodule).ok());
        CHECK(check_operator_family(*lift.family).ok());

        auto ind = oop_induced_structure(*lift.family);
        CHECK(check_variety(*ind).ok());
        auto back = oop_induced_bimodule(*lift.family, ind);
        CHECK(check_bimodule(*back).ok());
    }
}

TEST_CASE("Prop 2.6 biconditional under single-entry mutation") {
    auto om = omega_om2();

    auto build_family = [&](const Matrix& t0, const Matrix& t1) {
        auto s = constant_structure(module_a2(hopf_k()), omega_trivial(), a2_mult(),
                                    VarietySpec{Variety::associative, Indexing::plain, false});
        auto b = adjoint_bimodule(s);
        return make_operator_family(b, om, {t0, t1});
    };

    // valid family: both sides hold
    auto good = build_family(integration_map(), integration_map());
    CHECK(check_operator_family(*good).ok());
    CHECK(check_operator_family(*pack_operator_family(*good).op).ok());

    // corrupt each matrix entry of T_0 in turn
    long flipped = 0;
    for (long r = 0; r < 2; ++r)
        for (long c = 0; c < 2; ++c) {
            Matrix bad = integration_map();
            bad.at(r, c) += Rational(1);
            auto fam = build_family(bad, integration_map());
            bool family_ok = check_operator_family(*fam).ok();
            bool packed_ok = check_operator_family(*pack_operator_family(*fam).op).ok();
            CHECK(family_ok == packed_ok);
            if (!family_ok) ++flipped;
        }
    CHECK(flipped > 0);
}

TEST_CASE("dendriform bridges") {
    auto fam = integration_family(omega_trivial());
    auto dend = oop_induced_dendriform(*fam);

    SUBCASE("zero dendriform maps to zero everywhere") {
        auto z = make_zero_structure(module_a2(hopf_k()), omega_om2(),
                                     VarietySpec{Variety::dendriform, Indexing::pair, false});
        auto sum = dendriform_sum(*z);
        for (const auto& v : sum->op("star").data) CHECK(vec_is_zero(v));
        auto pl = dendriform_to_prelie(*z);
        for (const auto& v : pl->op("star").data) CHECK(vec_is_zero(v));
    }

    SUBCASE("dendriform to pre-Lie passes the checker and matches the classical formula") {
        auto pl = dendriform_to_prelie(*dend);
        CHECK(check_variety(*pl).ok());
        // classical formula x o y = x > y - y < x at H = k
        const OpFamily& prec = dend->op("prec");
        const OpFamily& succ = dend->op("succ");
        const OpFamily& circ = pl->op("star");
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) {
                QElement expect = succ.value(0, 0, i, j) -
                                  permute(prec.value(0, 0, j, i), perm_swap12(2));
                CHECK(circ.value(0, 0, i, j) == expect);
            }
    }

    SUBCASE("commutator of the sum equals the antisymmetrized pre-Lie product") {
        auto sum = dendriform_sum(*dend);
        auto lie1 = commutator_lie(*sum, CommutatorSource::associative);
        auto pl = dendriform_to_prelie(*dend);
        auto lie2 = commutator_lie(*pl, CommutatorSource::prelie);
        CHECK(lie1->op("star").data == lie2->op("star").data);
    }
}

TEST_CASE("family-mode dendriform sum realizes the mixed-index product") {
    // constant integration-induced family over OM2; Cor 3.13 gives
    // x *_{a,b} y = x >_a y + x <_b y through the embedded tables
    auto carrier = module_a2(hopf_k());
    auto sp2 = carrier->space(2);
    long a = 2, w = 2;
    Matrix t = integration_map();
    auto m = a2_mult();
    auto mulv = [&](const Vec& x, const Vec& y) {
        Vec r(2);
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j)
                if (!x[i].is_zero() && !y[j].is_zero())
                    vec_add_scaled(r, x[i] * y[j], m[i][j]);
        return r;
    };
    std::vector<Vec> prec(static_cast<size_t>(w) * a * a), succ = prec;
    for (long al = 0; al < w; ++al)
        for (long i = 0; i < a; ++i)
            for (long j = 0; j < a; ++j) {
                Vec pv = mulv(unit_vec(2, i), t.col(j));
                Vec sv = mulv(t.col(i), unit_vec(2, j));
                Vec pa(sp2->ambient_dim), sa(sp2->ambient_dim);
                for (long cc = 0; cc < 2; ++cc) {
                    pa[cc] = pv[cc];
                    sa[cc] = sv[cc];
                }
                prec[(al * a + i) * a + j] = sp2->reduce(pa);
                succ[(al * a + i) * a + j] = sp2->reduce(sa);
            }
    std::map<std::string, std::vector<Vec>> tables{{"prec", prec}, {"succ", succ}};
    auto fam = make_structure(carrier, omega_om2(),
                              VarietySpec{Variety::dendriform, Indexing::family, false},
                              tables, /*family_indexed=*/true);
    REQUIRE(check_variety(*fam).ok());
    auto sum = dendriform_sum(*fam);
    CHECK(check_variety(*sum).ok());
    // entry-wise: star_{a,b} = succ_a + prec_b
    const OpFamily& star = sum->op("star");
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j)
                    CHECK(star.at(al, be, i, j) ==
                          vec_add(succ[(al * a + i) * a + j], prec[(be * a + i) * a + j]));
}

TEST_CASE("commutator Lie algebras") {
    SUBCASE("commutative input gives the zero bracket") {
        auto s = structure_a2_om2_k();
        auto lie = commutator_lie(*s, CommutatorSource::associative);
        for (const auto& v : lie->op("star").data) CHECK(vec_is_zero(v));
    }

    SUBCASE("upper-triangular matrices give the classical matrix commutator") {
        REQUIRE(classicalcheck_ut2());
        auto s = constant_structure(make_trivial_module(hopf_k(), 3), omega_trivial(),
                                    ut2_mult(),
                                    VarietySpec{Variety::associative, Indexing::plain, false});
        CHECK(check_variety(*s).ok());
        auto lie = commutator_lie(*s, CommutatorSource::associative);
        CHECK(check_variety(*lie).ok());
        // [E11, E12] = E12, [E11, E22] = 0, [E12, E22] = E12
        auto sp = s->carrier->space(2);
        Vec e12(sp->ambient_dim);
        e12[2] = Rational(1);
        CHECK(lie->op("star").value(0, 0, 0, 2) == qreduce(sp, e12));
        CHECK(lie->op("star").at(0, 0, 0, 1) == Vec(sp->qdim));
    }
}

TEST_CASE("zinbiel bridges, Props 3.26-3.28") {
    // zinbiel fixture span{x, x^2}: x*x = x^2, rest zero
    std::vector<std::vector<Vec>> zm(2, std::vector<Vec>(2, Vec(2)));
    zm[0][0] = unit_vec(2, 1);
    auto z = constant_structure(module_a2(hopf_k()), omega_om2(), zm,
                                VarietySpec{Variety::zinbiel, Indexing::pair, false});
    REQUIRE(check_variety(*z).ok());

    SUBCASE("zero chain") {
        auto zz = make_zero_structure(module_a2(hopf_k()), omega_om2(),
                                      VarietySpec{Variety::zinbiel, Indexing::pair, false});
        auto d = zinbiel_bridge(*zz, ZinbielDirection::to_dendriform);
        for (const auto& v : d->op("prec").data) CHECK(vec_is_zero(v));
        auto c = zinbiel_bridge(*zz, ZinbielDirection::symmetrize);
        for (const auto& v : c->op("star").data) CHECK(vec_is_zero(v));
    }

    SUBCASE("zinbiel -> dendriform -> zinbiel returns the original table") {
        auto d = zinbiel_bridge(*z, ZinbielDirection::to_dendriform);
        CHECK(check_variety(*d).ok());
        auto back = zinbiel_bridge(*d, ZinbielDirection::from_dendriform);
        CHECK(back->op("star").data == z->op("star").data);
    }

    SUBCASE("symmetrization is commutative omega-associative and Poisson-compatible") {
        auto c = zinbiel_bridge(*z, ZinbielDirection::symmetrize);
        CHECK(check_variety(*c).ok());
        auto p = commutative_to_poisson(*c);
        CHECK(check_variety(*p).ok());
    }
}

TEST_CASE("family-indexed zinbiel bridges round-trip") {
    // zinbiel family on span{x, x^2}: x *_a x = x^2 for every index
    auto carrier = module_a2(hopf_k());
    auto sp2 = carrier->space(2);
    std::vector<Vec> fam(static_cast<size_t>(2) * 2 * 2, Vec(sp2->qdim));
    Vec amb(sp2->ambient_dim);
    amb[1] = Rational(1);
    Vec x2 = sp2->reduce(amb);
    fam[(0 * 2 + 0) * 2 + 0] = x2;
    fam[(1 * 2 + 0) * 2 + 0] = x2;
    std::map<std::string, std::vector<Vec>> tables{{"star", fam}};
    auto z = make_structure(carrier, omega_om2(),
                            VarietySpec{Variety::zinbiel, Indexing::family, false}, tables,
                            /*family_indexed=*/true);
    CheckReport rep = check_variety(*z);
    CHECK(rep.ok());
    // both the family identity and the embedded pair identity appear
    CHECK(rep.find("zinbiel-family") != nullptr);
    CHECK(rep.find("omega-zinbiel") != nullptr);

    auto d = zinbiel_bridge(*z, ZinbielDirection::to_dendriform);
    CHECK(d->claimed.indexing == Indexing::family);
    CHECK(check_variety(*d).ok());
    auto back = zinbiel_bridge(*d, ZinbielDirection::from_dendriform);
    CHECK(back->op("star").data == z->op("star").data);

    auto pl = dendriform_to_prelie(*d);
    CHECK(pl->claimed.indexing == Indexing::family);
    CHECK(check_variety(*pl).ok());
    auto lie = commutator_lie(*pl, CommutatorSource::prelie_family);
    CHECK(check_variety(*lie).ok());

    auto sym = zinbiel_bridge(*z, ZinbielDirection::symmetrize);
    CHECK(check_variety(*sym).ok());
}

TEST_CASE("Prop 6.3 standing property: commutative associative to Poisson") {
    for (auto h : {hopf_k(), hopf_c2()}) {
        auto s = h->dim == 1 ? structure_a2_om2_k() : current_a2_om2(h);
        auto p = commutative_to_poisson(*s);
        CHECK(check_variety(*p).ok());
        // strictly commutative input: zero bracket
        for (const auto& v : p->op("bracket").data) CHECK(vec_is_zero(v));
    }
    // non-commutative input is rejected
    auto ut2 = constant_structure(make_trivial_module(hopf_k(), 3), omega_trivial(),
                                  ut2_mult(),
                                  VarietySpec{Variety::associative, Indexing::plain, false});
    CHECK_THROWS_AS(commutative_to_poisson(*ut2), check_error);
}
