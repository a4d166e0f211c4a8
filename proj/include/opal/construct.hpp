#pragma once

#include "opal/classical.hpp"
#include "opal/pseudo.hpp"

namespace opal {

// Construction functors. Every constructor re-verifies the variety its output
// claims and raises check_error on failure: a silent transcription slip in a
// formula must surface here, not downstream.

inline void verify_or_throw(const PseudoStructure& s, const char* who) {
    CheckReport rep = check_variety(s);
    if (!rep.ok()) {
        for (const auto& line : rep.lines)
            if (!line.ok())
                throw check_error(std::string(who) + ": output fails " + line.check + " at " +
                                  line.failures[0].to_string());
    }
}

inline std::shared_ptr<const FiniteSemigroup> trivial_semigroup() {
    return make_semigroup({{0}}, 0, true);
}

// ---------------------------------------------------------------------------
// Packing A (x) k[Omega], basis (x_i (x) g) at index i*w + g.

inline std::shared_ptr<const HModule> packed_module(const HModule& m, long w) {
    std::vector<Matrix> act;
    for (const auto& ah : m.action) {
        Matrix big(m.dim * w, m.dim * w);
        for (long r = 0; r < m.dim; ++r)
            for (long c = 0; c < m.dim; ++c)
                if (!ah.at(r, c).is_zero())
                    for (long g = 0; g < w; ++g) big.at(r * w + g, c * w + g) = ah.at(r, c);
        act.push_back(std::move(big));
    }
    return make_hmodule(m.hopf, std::move(act));
}

// Constant-in-omega lift of an unindexed structure (Remark 3.2(1)).
inline std::shared_ptr<const PseudoStructure> constant_omega_lift(
    const PseudoStructure& s, std::shared_ptr<const FiniteSemigroup> omega) {
    if (s.w() != 1) throw input_error("constant_omega_lift: input must be unindexed");
    long a = s.dim(), w = omega->size;
    std::map<std::string, std::vector<Vec>> tables;
    for (const auto& [name, f] : s.ops) {
        std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a);
        for (long al = 0; al < w; ++al)
            for (long be = 0; be < w; ++be)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j)
                        tab[((al * w + be) * a + i) * a + j] = f.at(0, 0, i, j);
        tables[name] = std::move(tab);
    }
    VarietySpec claimed = s.claimed;
    claimed.indexing = Indexing::pair;
    return make_structure(s.carrier, std::move(omega), claimed, tables);
}

// (x (x) a) * (y (x) b) = x *_{a,b} y (x) ab over the trivial semigroup.
// The raw variant skips the associativity verification so both directions of
// the packing equivalence can be tested on deliberately broken inputs.
inline std::shared_ptr<const PseudoStructure> semigroup_pack_raw(const PseudoStructure& s) {
    long a = s.dim(), w = s.w();
    auto packed_carrier = packed_module(*s.carrier, w);
    auto sp_packed = packed_carrier->space(2);
    const QuotientTensorSpace& spA = *s.op("star").target;

    std::vector<Vec> tab(static_cast<size_t>(a * w) * (a * w), Vec(sp_packed->qdim));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be) {
            long ab = s.omega->op(al, be);
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    Vec amb = spA.lift(s.op("star").at(al, be, i, j));
                    Vec big(sp_packed->ambient_dim);
                    for (long t = 0; t < spA.ambient_dim; ++t) {
                        if (amb[t].is_zero()) continue;
                        long c = t % a, pq = t / a;
                        big[pq * (a * w) + (c * w + ab)] = amb[t];
                    }
                    tab[static_cast<size_t>(i * w + al) * (a * w) + (j * w + be)] =
                        sp_packed->reduce(std::move(big));
                }
        }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    VarietySpec claimed{Variety::associative, Indexing::plain, s.claimed.commutative};
    return make_structure(packed_carrier, trivial_semigroup(), claimed, tables);
}

inline std::shared_ptr<const PseudoStructure> semigroup_pack(const PseudoStructure& s) {
    auto out = semigroup_pack_raw(s);
    verify_or_throw(*out, "semigroup_pack");
    return out;
}

// Inverse of the packing; throws when a table value has support off the
// product index (the failing direction of the Prop 3.4 iff).
inline std::shared_ptr<const PseudoStructure> semigroup_unpack(
    const PseudoStructure& packed, std::shared_ptr<const HModule> carrier,
    std::shared_ptr<const FiniteSemigroup> omega, VarietySpec claimed) {
    long a = carrier->dim, w = omega->size;
    if (packed.dim() != a * w || packed.w() != 1)
        throw input_error("unpack: shape mismatch");
    auto spA = carrier->space(2);
    const QuotientTensorSpace& spP = *packed.op("star").target;
    std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a, Vec(spA->qdim));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be) {
            long ab = omega->op(al, be);
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    Vec amb = spP.lift(packed.op("star").at(0, 0, i * w + al, j * w + be));
                    Vec small(spA->ambient_dim);
                    for (long t = 0; t < spP.ambient_dim; ++t) {
                        if (amb[t].is_zero()) continue;
                        long cw = t % (a * w), pq = t / (a * w);
                        long c = cw / w, g = cw % w;
                        if (g != ab)
                            throw check_error("unpack: value has support off the product index");
                        small[pq * a + c] = amb[t];
                    }
                    tab[((al * w + be) * a + i) * a + j] = spA->reduce(std::move(small));
                }
        }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    return make_structure(std::move(carrier), std::move(omega), claimed, tables);
}

// Bimodule over an unindexed algebra packed against a family's semigroup,
// indices multiplying in argument order.
inline std::shared_ptr<const BimoduleStructure> pack_bimodule(
    const BimoduleStructure& b, const std::shared_ptr<const FiniteSemigroup>& omega,
    const std::shared_ptr<const PseudoStructure>& packed_algebra) {
    if (b.algebra->w() != 1) throw input_error("pack_bimodule: algebra must be unindexed");
    long a = b.algebra->dim(), m = b.carrier->dim, w = omega->size;
    auto packed_m = packed_module(*b.carrier, w);
    auto spPM = packed_m->space(2);
    const QuotientTensorSpace& spM = *b.left.target;
    auto embed = [&](const Vec& coords, long g) {
        Vec amb = spM.lift(coords);
        Vec big(spPM->ambient_dim);
        for (long t = 0; t < spM.ambient_dim; ++t) {
            if (amb[t].is_zero()) continue;
            long c = t % m, pq = t / m;
            big[pq * (m * w) + (c * w + g)] = amb[t];
        }
        return spPM->reduce(std::move(big));
    };
    std::vector<Vec> left(static_cast<size_t>(a * w) * (m * w), Vec(spPM->qdim));
    std::vector<Vec> right(static_cast<size_t>(m * w) * (a * w), Vec(spPM->qdim));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be) {
            long ab = omega->op(al, be);
            for (long i = 0; i < a; ++i)
                for (long u = 0; u < m; ++u) {
                    left[static_cast<size_t>(i * w + al) * (m * w) + (u * w + be)] =
                        embed(b.left.at(0, 0, i, u), ab);
                    right[static_cast<size_t>(u * w + al) * (a * w) + (i * w + be)] =
                        embed(b.right.at(0, 0, u, i), ab);
                }
        }
    return make_bimodule(packed_algebra, packed_m, left, right);
}

// Prop 2.6 packing of a family to the single operator T(u (x) a) = T_a(u) (x) a.
struct PackedOperator {
    std::shared_ptr<const PseudoStructure> algebra;   // A (x) k[Omega]
    std::shared_ptr<const BimoduleStructure> bimodule;  // M (x) k[Omega]
    std::shared_ptr<const OperatorFamily> op;           // single operator
};

inline PackedOperator pack_operator_family(const OperatorFamily& t) {
    const BimoduleStructure& b = *t.bimodule;
    long a = b.algebra->dim(), m = b.carrier->dim, w = t.omega->size;
    PackedOperator out;
    out.algebra = semigroup_pack(*constant_omega_lift(*b.algebra, t.omega));
    out.bimodule = pack_bimodule(b, t.omega, out.algebra);
    Matrix big(a * w, m * w);
    for (long al = 0; al < w; ++al)
        for (long u = 0; u < m; ++u) {
            Vec tu = t.maps[al].col(u);
            for (long r = 0; r < a; ++r)
                if (!tu[r].is_zero()) big.at(r * w + al, u * w + al) = tu[r];
        }
    out.op = make_operator_family(out.bimodule, trivial_semigroup(), {std::move(big)});
    return out;
}

// ---------------------------------------------------------------------------
// Current constructions: classical algebra to pseudoalgebra.

enum class CurrentFormula { prop35, eq310, ex25 };

namespace detail {

// columns (p, s') -> e_p (x) incl(e_{s'}) of H (x) H', for re-expressing
// comultiplications of subspace elements
inline LinearSolver sub_expansion_solver(const HopfAlgebra& H, const SubStructure& sub) {
    long d = H.dim, k = sub.dim();
    Matrix e(d * d, d * k);
    for (long p = 0; p < d; ++p)
        for (long s = 0; s < k; ++s)
            for (long q = 0; q < d; ++q)
                e.at(p * d + q, p * k + s) = sub.inclusion.at(q, s);
    return LinearSolver(e);
}

inline LinearSolver sub_membership_solver(const SubStructure& sub) {
    return LinearSolver(sub.inclusion);
}

}  // namespace detail

// carrier H (x) H' (x) A with H acting on the first factor; basis index
// ((f)*subdim + s)*adim + x
inline std::shared_ptr<const HModule> current_module(
    const std::shared_ptr<const HopfAlgebra>& H, long subdim, long adim) {
    long d = H->dim;
    long cdim = d * subdim * adim;
    std::vector<Matrix> act;
    for (long h = 0; h < d; ++h) {
        Matrix big(cdim, cdim);
        for (long f = 0; f < d; ++f) {
            const Vec& hf = H->mult[h][f];
            for (long r = 0; r < d; ++r)
                if (!hf[r].is_zero())
                    for (long s = 0; s < subdim; ++s)
                        for (long x = 0; x < adim; ++x)
                            big.at((r * subdim + s) * adim + x, (f * subdim + s) * adim + x) =
                                hf[r];
        }
        act.push_back(std::move(big));
    }
    return make_hmodule(H, std::move(act));
}

// Prop 3.5 ((f (x) a (x) x) * (g (x) b (x) y) = (f (x) g a1) (x)_H (1 (x) b a2 (x) x.y))
// and Example 3.18 / Eq 3.10 (f a S(b1) (x) g (x)_H (1 (x) b2 (x) x.y)).
inline std::shared_ptr<const PseudoStructure> current(
    const std::shared_ptr<const HopfAlgebra>& H, const std::shared_ptr<const SubStructure>& sub,
    const OrdinaryAlgebra& alg, CurrentFormula formula) {
    if (formula == CurrentFormula::ex25) throw input_error("use example25_lift for ex25");
    if (sub->parent.get() != H.get()) throw input_error("current: substructure of a different H");

    // kind and variety preconditions
    if (formula == CurrentFormula::prop35) {
        if (sub->kind != SubStructure::Kind::subbialgebra)
            throw check_error("kind mismatch: prop35 requires a subbialgebra");
        CheckReport pre = check_ordinary_associative(
            alg, alg.variety == "commutative-omega-associative");
        if (!pre.ok()) throw check_error("current: classical input is not omega-associative");
    } else {
        if (sub->kind != SubStructure::Kind::subcoalgebra &&
            sub->kind != SubStructure::Kind::subbialgebra)
            throw check_error("kind mismatch: eq310 requires a subcoalgebra");
        CheckReport pre = alg.variety == "omega-pre-lie"
                              ? check_ordinary_prelie(alg)
                              : check_ordinary_associative(
                                    alg, alg.variety == "commutative-omega-associative");
        if (!pre.ok()) throw check_error("current: classical input fails its variety");
    }

    long d = H->dim, k = sub->dim(), adim = alg.dim, w = alg.w();
    auto carrier = current_module(H, k, adim);
    auto sp2 = carrier->space(2);
    LinearSolver expand = detail::sub_expansion_solver(*H, *sub);
    LinearSolver member = detail::sub_membership_solver(*sub);

    // Delta(incl(e_s)) in H (x) H' coordinates, per subspace basis element
    std::vector<Vec> delta_sub(k);
    for (long s = 0; s < k; ++s) {
        auto c = expand.solve(H->comult_v(sub->inclusion.col(s)));
        if (!c) throw check_error("kind mismatch: Delta leaves H (x) H'");
        delta_sub[s] = *c;
    }
    // products of subspace basis elements back in H'-coordinates
    auto sub_mult = [&](const Vec& u_sub, const Vec& v_sub) {
        Vec prod = H->mult_vv(sub->embed(u_sub), sub->embed(v_sub));
        auto c = member.solve(prod);
        if (!c) throw check_error("kind mismatch: product leaves the subspace");
        return *c;
    };

    long cdim = carrier->dim;
    std::vector<Vec> tab(static_cast<size_t>(w) * w * cdim * cdim, Vec(sp2->qdim));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long f = 0; f < d; ++f)
                for (long sa = 0; sa < k; ++sa)
                    for (long x = 0; x < adim; ++x)
                        for (long g = 0; g < d; ++g)
                            for (long sb = 0; sb < k; ++sb)
                                for (long y = 0; y < adim; ++y) {
                                    Vec amb(sp2->ambient_dim);
                                    const Vec& xy = alg.prod(al, be, x, y);
                                    if (formula == CurrentFormula::prop35) {
                                        // sum over Delta(a) = a1 (x) a2 in H (x) H'
                                        const Vec& da = delta_sub[sa];
                                        for (long p = 0; p < d; ++p)
                                            for (long s2 = 0; s2 < k; ++s2) {
                                                const Rational& c = da[p * k + s2];
                                                if (c.is_zero()) continue;
                                                Vec ga1 =
                                                    H->mult_vv(H->basis_vec(g), H->basis_vec(p));
                                                Vec ba2 = sub_mult(unit_vec(k, sb),
                                                                   unit_vec(k, s2));
                                                for (long q = 0; q < d; ++q) {
                                                    if (ga1[q].is_zero()) continue;
                                                    for (long u = 0; u < d; ++u) {
                                                        if (H->unit[u].is_zero()) continue;
                                                        for (long s3 = 0; s3 < k; ++s3) {
                                                            if (ba2[s3].is_zero()) continue;
                                                            for (long z = 0; z < adim; ++z) {
                                                                if (xy[z].is_zero()) continue;
                                                                long carrier_idx =
                                                                    (u * k + s3) * adim + z;
                                                                amb[(f * d + q) * cdim +
                                                                    carrier_idx] +=
                                                                    c * ga1[q] * H->unit[u] *
                                                                    xy[z];
                                                            }
                                                        }
                                                    }
                                                }
                                            }
                                    } else {
                                        // Eq 3.10: f a S(b1) (x) g (x)_H (1 (x) b2 (x) x.y)
                                        const Vec& db = delta_sub[sb];
                                        Vec fa = H->mult_vv(H->basis_vec(f),
                                                            sub->embed(unit_vec(k, sa)));
                                        for (long p = 0; p < d; ++p)
                                            for (long s2 = 0; s2 < k; ++s2) {
                                                const Rational& c = db[p * k + s2];
                                                if (c.is_zero()) continue;
                                                Vec faSb1 =
                                                    H->mult_vv(fa, H->antipode.col(p));
                                                for (long q = 0; q < d; ++q) {
                                                    if (faSb1[q].is_zero()) continue;
                                                    for (long u = 0; u < d; ++u) {
                                                        if (H->unit[u].is_zero()) continue;
                                                        for (long z = 0; z < adim; ++z) {
                                                            if (xy[z].is_zero()) continue;
                                                            long carrier_idx =
                                                                (u * k + s2) * adim + z;
                                                            amb[(q * d + g) * cdim +
                                                                carrier_idx] +=
                                                                c * faSb1[q] * H->unit[u] *
                                                                xy[z];
                                                        }
                                                    }
                                                }
                                            }
                                    }
                                    long i = (f * k + sa) * adim + x;
                                    long j = (g * k + sb) * adim + y;
                                    tab[((al * w + be) * cdim + i) * cdim + j] =
                                        sp2->reduce(std::move(amb));
                                }

    VarietySpec claimed;
    if (alg.variety == "omega-pre-lie")
        claimed = VarietySpec{Variety::pre_lie, Indexing::pair, false};
    else
        claimed = VarietySpec{Variety::associative, Indexing::pair, false};
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    auto out = make_structure(carrier, alg.omega, claimed, tables);
    verify_or_throw(*out, formula == CurrentFormula::prop35 ? "current(prop35)"
                                                            : "current(eq310)");
    return out;
}

// Example 2.5: H (x) A with (f (x) a) * (g (x) b) = f (x) g (x)_H (1 (x) ab),
// the lifted bimodule H (x) M and the lifted family id (x) T_a.
struct Ex25Lift {
    std::shared_ptr<const PseudoStructure> algebra;
    std::shared_ptr<const BimoduleStructure> bimodule;
    std::shared_ptr<const OperatorFamily> family;
};

inline Ex25Lift example25_lift(const std::shared_ptr<const HopfAlgebra>& H,
                               const OrdinaryAlgebra& alg) {
    if (!alg.product_is_constant())
        throw input_error("example25_lift: classical product must be index-constant");
    if (!alg.op_family) throw input_error("example25_lift: classical operator family required");
    CheckReport pre = check_ordinary_associative(alg, false);
    pre.append(check_ordinary_bimodule(alg));
    pre.append(check_classical_op_family(alg));
    if (!pre.ok()) throw check_error("example25_lift: classical input fails verification");

    long d = H->dim, adim = alg.dim, mdim = alg.module_dim();
    auto modA = current_module(H, 1, adim);  // H (x) A with left multiplication
    auto modM = current_module(H, 1, mdim);
    auto spA2 = modA->space(2);
    auto spM2 = modM->space(2);

    auto triv = trivial_semigroup();
    long cdim = d * adim;
    auto make_tab = [&](long ldim, long rdim, long tdim,
                        const std::shared_ptr<const QuotientTensorSpace>& sp,
                        const std::function<Vec(long, long)>& val) {
        std::vector<Vec> tab(static_cast<size_t>(d) * ldim * d * rdim, Vec(sp->qdim));
        for (long f = 0; f < d; ++f)
            for (long x = 0; x < ldim; ++x)
                for (long g = 0; g < d; ++g)
                    for (long y = 0; y < rdim; ++y) {
                        Vec prod = val(x, y);  // in the target classical space
                        Vec amb(sp->ambient_dim);
                        for (long u = 0; u < d; ++u) {
                            if (H->unit[u].is_zero()) continue;
                            for (long z = 0; z < tdim; ++z)
                                if (!prod[z].is_zero())
                                    amb[(f * d + g) * (d * tdim) + (u * tdim + z)] +=
                                        H->unit[u] * prod[z];
                        }
                        tab[static_cast<size_t>((f * ldim + x) * d + g) * rdim + y] =
                            sp->reduce(std::move(amb));
                    }
        return tab;
    };

    Ex25Lift out;
    std::map<std::string, std::vector<Vec>> tables{
        {"star", make_tab(adim, adim, adim, spA2,
                          [&](long x, long y) { return alg.prod(0, 0, x, y); })}};
    out.algebra = make_structure(modA, triv,
                                 VarietySpec{Variety::associative, Indexing::plain, false},
                                 tables);
    verify_or_throw(*out.algebra, "example25_lift");

    std::vector<Vec> left = make_tab(adim, mdim, mdim, spM2, [&](long x, long y) {
        return alg.act_left(x, unit_vec(mdim, y));
    });
    std::vector<Vec> right = make_tab(mdim, adim, mdim, spM2, [&](long x, long y) {
        return alg.act_right(unit_vec(mdim, x), y);
    });
    out.bimodule = make_bimodule(out.algebra, modM, left, right);
    CheckReport brep = check_bimodule(*out.bimodule);
    if (!brep.ok()) throw check_error("example25_lift: lifted bimodule fails Def 2.2");

    std::vector<Matrix> lifted;
    for (const auto& t : alg.op_family->maps) {
        Matrix big(cdim, d * mdim);
        for (long f = 0; f < d; ++f)
            for (long u = 0; u < mdim; ++u) {
                Vec tu = t.col(u);
                for (long r = 0; r < adim; ++r)
                    if (!tu[r].is_zero()) big.at(f * adim + r, f * mdim + u) = tu[r];
            }
        lifted.push_back(std::move(big));
    }
    out.family = make_operator_family(out.bimodule, alg.omega, std::move(lifted));
    CheckReport frep = check_operator_family(*out.family);
    if (!frep.ok()) throw check_error("example25_lift: lifted family fails Eq 2.1");
    return out;
}

// Cor 3.7: verified Rota-Baxter family -> induced omega-associative algebra
// x *_{a,b} y = P_a(x) y + x P_b(y) + lambda x y -> current(prop35).
inline std::shared_ptr<const PseudoStructure> rota_baxter_lift(
    const std::shared_ptr<const HopfAlgebra>& H, const std::shared_ptr<const SubStructure>& sub,
    const OrdinaryAlgebra& alg) {
    if (!alg.rb) throw input_error("rota_baxter_lift: no Rota-Baxter family present");
    CheckReport rb = check_rb_family(alg);
    if (!rb.ok())
        throw check_error("rb identity failed at " + rb.lines[0].failures[0].to_string());

    OrdinaryAlgebra induced;
    induced.dim = alg.dim;
    induced.omega = alg.omega;
    induced.variety = "omega-associative";
    long w = alg.w(), dd = alg.dim;
    induced.products.assign(static_cast<size_t>(w) * w * dd * dd, Vec(dd));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < dd; ++i)
                for (long j = 0; j < dd; ++j) {
                    Vec v = alg.prod_vec(0, 0, alg.rb->maps[al].col(i), unit_vec(dd, j));
                    v = vec_add(v, alg.prod_vec(0, 0, unit_vec(dd, i), alg.rb->maps[be].col(j)));
                    v = vec_add(v, vec_scale(alg.rb->weight, alg.prod(0, 0, i, j)));
                    induced.products[((al * w + be) * dd + i) * dd + j] = std::move(v);
                }
    CheckReport cls = check_ordinary_associative(induced, false);
    if (!cls.ok())
        throw check_error("rota_baxter_lift: induced classical product is not associative");
    return current(H, sub, induced, CurrentFormula::prop35);
}

// ---------------------------------------------------------------------------
// Dendriform / pre-Lie / zinbiel bridges. All work uniformly through the
// embedded pair-indexed tables; family inputs produce family outputs where
// the statements say so.

inline std::shared_ptr<const PseudoStructure> dendriform_sum(const PseudoStructure& dend) {
    CheckReport pre = check_variety(dend);
    if (!pre.ok()) throw check_error("dendriform_sum: input fails the dendriform axioms");
    const OpFamily& prec = dend.op("prec");
    const OpFamily& succ = dend.op("succ");
    long a = dend.dim(), w = dend.w();
    std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j)
                    tab[((al * w + be) * a + i) * a + j] =
                        vec_add(succ.at(al, be, i, j), prec.at(al, be, i, j));
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    VarietySpec claimed{Variety::associative,
                        dend.claimed.indexing == Indexing::plain ? Indexing::plain
                                                                 : Indexing::pair,
                        false};
    auto out = make_structure(dend.carrier, dend.omega, claimed, tables);
    verify_or_throw(*out, "dendriform_sum");
    return out;
}

inline std::shared_ptr<const PseudoStructure> dendriform_to_prelie(const PseudoStructure& dend) {
    CheckReport pre = check_variety(dend);
    if (!pre.ok()) throw check_error("dendriform_to_prelie: input fails the dendriform axioms");
    bool family = dend.claimed.indexing == Indexing::family;
    if (!family && !dend.omega->commutative && dend.w() > 1)
        throw check_error("dendriform_to_prelie: omega must be commutative");
    const OpFamily& prec = dend.op("prec");
    const OpFamily& succ = dend.op("succ");
    long a = dend.dim(), w = dend.w();
    auto sp2 = dend.carrier->space(2);
    auto sw = perm_swap12(2);

    if (family) {
        // x o_a y = x >_a y - (sigma (x) id) y <_a x
        std::vector<Vec> fam(static_cast<size_t>(w) * a * a);
        for (long al = 0; al < w; ++al)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    QElement v = succ.value(al, 0, i, j) -
                                 permute(prec.value(0, al, j, i), sw);
                    fam[(al * a + i) * a + j] = v.coords;
                }
        std::map<std::string, std::vector<Vec>> tables{{"star", std::move(fam)}};
        auto out = make_structure(dend.carrier, dend.omega,
                                  VarietySpec{Variety::pre_lie, Indexing::family, false},
                                  tables, /*family_indexed=*/true);
        verify_or_throw(*out, "dendriform_to_prelie(family)");
        return out;
    }

    std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    QElement v = succ.value(al, be, i, j) -
                                 permute(prec.value(be, al, j, i), sw);
                    tab[((al * w + be) * a + i) * a + j] = v.coords;
                }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    VarietySpec claimed{Variety::pre_lie,
                        dend.claimed.indexing == Indexing::plain ? Indexing::plain
                                                                 : Indexing::pair,
                        false};
    auto out = make_structure(dend.carrier, dend.omega, claimed, tables);
    verify_or_throw(*out, "dendriform_to_prelie");
    return out;
}

enum class CommutatorSource { associative, prelie, prelie_family };

// [x *_{a,b} y] = x o_{a,b} y - (sigma (x)_H id)(y o_{b,a} x); the family
// bracket of Cor 3.21 is this formula read through the embedded tables.
inline std::shared_ptr<const PseudoStructure> commutator_lie(const PseudoStructure& s,
                                                             CommutatorSource source) {
    VarietySpec want;
    switch (source) {
        case CommutatorSource::associative:
            want = VarietySpec{Variety::associative, s.claimed.indexing, s.claimed.commutative};
            break;
        case CommutatorSource::prelie:
            want = VarietySpec{Variety::pre_lie, Indexing::pair, false};
            break;
        case CommutatorSource::prelie_family:
            want = VarietySpec{Variety::pre_lie, Indexing::family, false};
            break;
    }
    CheckReport pre = check_variety(s, want);
    if (!pre.ok()) throw check_error("commutator_lie: input fails its source variety");
    if (!s.omega->commutative && s.w() > 1)
        throw check_error("commutator_lie: omega must be commutative");

    const OpFamily& f = s.op("star");
    long a = s.dim(), w = s.w();
    auto sw = perm_swap12(2);
    std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    QElement v = f.value(al, be, i, j) - permute(f.value(be, al, j, i), sw);
                    tab[((al * w + be) * a + i) * a + j] = v.coords;
                }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    auto out = make_structure(s.carrier, s.omega,
                              VarietySpec{Variety::lie, Indexing::pair, false}, tables);
    verify_or_throw(*out, "commutator_lie");
    return out;
}

enum class ZinbielDirection { to_dendriform, from_dendriform, symmetrize };

inline std::shared_ptr<const PseudoStructure> zinbiel_bridge(const PseudoStructure& s,
                                                             ZinbielDirection dir) {
    long a = s.dim(), w = s.w();
    auto sw = perm_swap12(2);
    bool family = s.claimed.indexing == Indexing::family;

    if (dir == ZinbielDirection::to_dendriform) {
        // Prop 3.26(2) / 3.27(2): prec from the sigma flip, succ = star
        CheckReport pre = check_variety(s);
        if (!pre.ok()) throw check_error("zinbiel_bridge: input fails the zinbiel axioms");
        const OpFamily& f = s.op("star");
        if (family) {
            std::vector<Vec> prec(static_cast<size_t>(w) * a * a), succ = prec;
            for (long al = 0; al < w; ++al)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j) {
                        succ[(al * a + i) * a + j] = f.at(al, 0, i, j);
                        prec[(al * a + i) * a + j] =
                            permute(f.value(al, 0, j, i), sw).coords;
                    }
            std::map<std::string, std::vector<Vec>> tables{{"prec", std::move(prec)},
                                                           {"succ", std::move(succ)}};
            auto out = make_structure(
                s.carrier, s.omega, VarietySpec{Variety::dendriform, Indexing::family, false},
                tables, /*family_indexed=*/true);
            verify_or_throw(*out, "zinbiel_bridge(to_dendriform,family)");
            return out;
        }
        std::vector<Vec> prec(static_cast<size_t>(w) * w * a * a), succ = prec;
        for (long al = 0; al < w; ++al)
            for (long be = 0; be < w; ++be)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j) {
                        succ[((al * w + be) * a + i) * a + j] = f.at(al, be, i, j);
                        prec[((al * w + be) * a + i) * a + j] =
                            permute(f.value(be, al, j, i), sw).coords;
                    }
        std::map<std::string, std::vector<Vec>> tables{{"prec", std::move(prec)},
                                                       {"succ", std::move(succ)}};
        auto out = make_structure(
            s.carrier, s.omega,
            VarietySpec{Variety::dendriform,
                        s.claimed.indexing == Indexing::plain ? Indexing::plain : Indexing::pair,
                        false},
            tables);
        verify_or_throw(*out, "zinbiel_bridge(to_dendriform)");
        return out;
    }

    if (dir == ZinbielDirection::from_dendriform) {
        // Prop 3.26(1) / 3.27(1): requires x succ y = (sigma (x) id) y prec x
        CheckReport pre = check_variety(s);
        if (!pre.ok()) throw check_error("zinbiel_bridge: input fails the dendriform axioms");
        const OpFamily& prec = s.op("prec");
        const OpFamily& succ = s.op("succ");
        for (long al = 0; al < w; ++al)
            for (long be = 0; be < w; ++be)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j)
                        if (!(succ.value(al, be, i, j) ==
                              permute(prec.value(be, al, j, i), sw)))
                            throw check_error(
                                "symmetry hypothesis failed at indices (" +
                                std::to_string(al) + "," + std::to_string(be) + ") basis (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        if (family) {
            std::vector<Vec> fam(static_cast<size_t>(w) * a * a);
            for (long al = 0; al < w; ++al)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j)
                        fam[(al * a + i) * a + j] = succ.at(al, 0, i, j);
            std::map<std::string, std::vector<Vec>> tables{{"star", std::move(fam)}};
            auto out = make_structure(
                s.carrier, s.omega, VarietySpec{Variety::zinbiel, Indexing::family, false},
                tables, /*family_indexed=*/true);
            verify_or_throw(*out, "zinbiel_bridge(from_dendriform,family)");
            return out;
        }
        std::map<std::string, std::vector<Vec>> tables{{"star", succ.data}};
        auto out = make_structure(s.carrier, s.omega,
                                  VarietySpec{Variety::zinbiel, Indexing::pair, false}, tables);
        verify_or_throw(*out, "zinbiel_bridge(from_dendriform)");
        return out;
    }

    // Prop 3.28: symmetrization into a commutative omega-associative product
    CheckReport pre = check_variety(s);
    if (!pre.ok()) throw check_error("zinbiel_bridge: input fails the zinbiel axioms");
    const OpFamily& f = s.op("star");
    std::vector<Vec> tab(static_cast<size_t>(w) * w * a * a);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    QElement v = f.value(al, be, i, j) + permute(f.value(be, al, j, i), sw);
                    tab[((al * w + be) * a + i) * a + j] = v.coords;
                }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    auto out = make_structure(s.carrier, s.omega,
                              VarietySpec{Variety::associative, Indexing::pair, true}, tables);
    verify_or_throw(*out, "zinbiel_bridge(symmetrize)");
    return out;
}

// ---------------------------------------------------------------------------
// Structures induced by a pseudo-O-operator family.

enum class OOPOutput { omega_assoc, bimodule_back, dendriform };

// Prop 4.2: u *^_{a,b} v = T_a(u) * v + u * T_b(v) on M.
inline std::shared_ptr<const PseudoStructure> oop_induced_structure(const OperatorFamily& t) {
    CheckReport pre = check_operator_family(t);
    if (!pre.ok())
        throw check_error("operator identity failed at " +
                          pre.lines[0].failures[0].to_string());
    const BimoduleStructure& b = *t.bimodule;
    long m = t.mdim(), w = t.omega->size;
    std::vector<Vec> tab(static_cast<size_t>(w) * w * m * m);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long u = 0; u < m; ++u)
                for (long v = 0; v < m; ++v) {
                    QElement q = b.left.value_vec(0, 0, t.maps[al].col(u), unit_vec(m, v)) +
                                 b.right.value_vec(0, 0, unit_vec(m, u), t.maps[be].col(v));
                    tab[((al * w + be) * m + u) * m + v] = q.coords;
                }
    std::map<std::string, std::vector<Vec>> tables{{"star", std::move(tab)}};
    auto out = make_structure(b.carrier, t.omega,
                              VarietySpec{Variety::associative, Indexing::pair, false}, tables);
    verify_or_throw(*out, "oop_induced(omega-assoc)");
    return out;
}

// Thm 4.3: the A-valued bimodule over the Prop 4.2 structure,
//   u |>_{a,b} x = T_a(u) * x - T_{ab}(u * x)
//   x <|_{a,b} u = x * T_b(u) - T_{ab}(x * u).
inline std::shared_ptr<const BimoduleStructure> oop_induced_bimodule(
    const OperatorFamily& t, const std::shared_ptr<const PseudoStructure>& induced) {
    const BimoduleStructure& b = *t.bimodule;
    const OpFamily& star = b.algebra->op("star");
    long m = t.mdim(), adim = t.adim(), w = t.omega->size;
    auto spA2 = b.algebra->carrier->space(2);
    std::vector<Vec> left(static_cast<size_t>(w) * w * m * adim, Vec(spA2->qdim));
    std::vector<Vec> right(static_cast<size_t>(w) * w * adim * m, Vec(spA2->qdim));
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be) {
            long ab = t.omega->op(al, be);
            for (long u = 0; u < m; ++u)
                for (long x = 0; x < adim; ++x) {
                    QElement l = star.value_vec(0, 0, t.maps[al].col(u), unit_vec(adim, x)) -
                                 map_coefficients(b.right.value(0, 0, u, x), t.maps[ab], spA2);
                    left[((al * w + be) * m + u) * adim + x] = l.coords;
                    QElement r = star.value_vec(0, 0, unit_vec(adim, x), t.maps[be].col(u)) -
                                 map_coefficients(b.left.value(0, 0, x, u), t.maps[ab], spA2);
                    right[((al * w + be) * adim + x) * m + u] = r.coords;
                }
        }
    auto out = make_bimodule(induced, b.algebra->carrier, left, right);
    CheckReport rep = check_bimodule(*out);
    if (!rep.ok())
        throw check_error("oop_induced(bimodule-back): output fails Def 4.1 at " +
                          rep.lines[0].failures[0].to_string());
    return out;
}

// Prop 2.9: single operator -> dendriform halves u < v = u * T(v),
// u > v = T(u) * v on M (trivial semigroup).
inline std::shared_ptr<const PseudoStructure> oop_induced_dendriform(const OperatorFamily& t) {
    CheckReport pre = check_operator_family(t);
    if (!pre.ok()) throw check_error("oop_induced(dendriform): operator identity failed");
    for (size_t i = 1; i < t.maps.size(); ++i)
        if (t.maps[i] != t.maps[0])
            throw input_error("oop_induced(dendriform): family is not a single operator");
    const BimoduleStructure& b = *t.bimodule;
    long m = t.mdim();
    std::vector<Vec> prec(static_cast<size_t>(m) * m), succ = prec;
    for (long u = 0; u < m; ++u)
        for (long v = 0; v < m; ++v) {
            prec[u * m + v] = b.right.value_vec(0, 0, unit_vec(m, u), t.maps[0].col(v)).coords;
            succ[u * m + v] = b.left.value_vec(0, 0, t.maps[0].col(u), unit_vec(m, v)).coords;
        }
    std::map<std::string, std::vector<Vec>> tables{{"prec", std::move(prec)},
                                                   {"succ", std::move(succ)}};
    auto out = make_structure(b.carrier, trivial_semigroup(),
                              VarietySpec{Variety::dendriform, Indexing::plain, false}, tables);
    verify_or_throw(*out, "oop_induced(dendriform)");
    return out;
}

// Prop 6.3: commutative omega-associative -> omega-Poisson with the
// commutator bracket (zero on strictly commutative inputs; the formula is
// kept general so the checker gets exercised).
inline std::shared_ptr<const PseudoStructure> commutative_to_poisson(const PseudoStructure& s) {
    VarietySpec want{Variety::associative, Indexing::pair, true};
    CheckReport pre = check_variety(s, want);
    if (!pre.ok())
        throw check_error("commutative_to_poisson: input is not commutative omega-associative");
    const OpFamily& f = s.op("star");
    long a = s.dim(), w = s.w();
    auto sw = perm_swap12(2);
    std::vector<Vec> bracket(static_cast<size_t>(w) * w * a * a);
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < a; ++i)
                for (long j = 0; j < a; ++j) {
                    QElement v = f.value(al, be, i, j) - permute(f.value(be, al, j, i), sw);
                    bracket[((al * w + be) * a + i) * a + j] = v.coords;
                }
    std::map<std::string, std::vector<Vec>> tables{{"star", f.data},
                                                   {"bracket", std::move(bracket)}};
    auto out = make_structure(s.carrier, s.omega,
                              VarietySpec{Variety::poisson, Indexing::pair, false}, tables);
    verify_or_throw(*out, "commutative_to_poisson");
    return out;
}

}  // namespace opal
