#pragma once

#include <optional>

#include "opal/hopf.hpp"
#include "opal/report.hpp"

namespace opal {

// Ordinary algebra over the rationals with omega-indexed products: the H = k
// level the current and Rota-Baxter constructions start from. Plain algebras
// use the one-element semigroup. Optional passengers: a Rota-Baxter operator
// family, a classical bimodule, a classical O-operator family.
struct OrdinaryAlgebra {
    long dim = 0;
    std::shared_ptr<const FiniteSemigroup> omega;
    std::vector<Vec> products;  // [((al*w + be)*dim + i)*dim + j]
    std::string variety = "omega-associative";

    struct RBFamily {
        Rational weight;
        std::vector<Matrix> maps;  // P_a per semigroup element
    };
    std::optional<RBFamily> rb;

    struct ClassicalBimodule {
        long dim = 0;
        std::vector<Vec> left;   // [i*mdim + u] -> Vec(mdim): a_i . m_u
        std::vector<Vec> right;  // [u*adim + i] -> Vec(mdim): m_u . a_i
    };
    std::optional<ClassicalBimodule> bimodule;

    struct ClassicalOpFamily {
        std::vector<Matrix> maps;  // T_a : M -> A, indexed by omega
    };
    std::optional<ClassicalOpFamily> op_family;

    long w() const { return omega->size; }
    const Vec& prod(long al, long be, long i, long j) const {
        return products[((al * w() + be) * dim + i) * dim + j];
    }
    Vec prod_vec(long al, long be, const Vec& x, const Vec& y) const {
        Vec r(dim);
        for (long i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (long j = 0; j < dim; ++j) {
                if (y[j].is_zero()) continue;
                Rational c = x[i] * y[j];
                vec_add_scaled(r, c, prod(al, be, i, j));
            }
        }
        return r;
    }

    bool product_is_constant() const {
        for (long al = 0; al < w(); ++al)
            for (long be = 0; be < w(); ++be)
                for (long i = 0; i < dim; ++i)
                    for (long j = 0; j < dim; ++j)
                        if (prod(al, be, i, j) != prod(0, 0, i, j)) return false;
        return true;
    }

    // classical bimodule actions, defaulting to the adjoint one
    Vec act_left(long i, const Vec& m) const {
        if (!bimodule) return prod_vec(0, 0, unit_vec(dim, i), m);
        Vec r(bimodule->dim);
        for (long u = 0; u < bimodule->dim; ++u)
            if (!m[u].is_zero()) vec_add_scaled(r, m[u], bimodule->left[i * bimodule->dim + u]);
        return r;
    }
    Vec act_right(const Vec& m, long i) const {
        if (!bimodule) return prod_vec(0, 0, m, unit_vec(dim, i));
        Vec r(bimodule->dim);
        for (long u = 0; u < bimodule->dim; ++u)
            if (!m[u].is_zero()) vec_add_scaled(r, m[u], bimodule->right[u * dim + i]);
        return r;
    }
    long module_dim() const { return bimodule ? bimodule->dim : dim; }
};

inline CheckReport check_ordinary_associative(const OrdinaryAlgebra& a, bool commutative) {
    CheckReport rep;
    rep.subject = "ordinary algebra";
    long w = a.w(), d = a.dim;
    CheckLine line{"classical-omega-associativity", "Eq 3.1 at H=k", d * d * d, w * w * w, {}};
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long ga = 0; ga < w; ++ga)
                for (long i = 0; i < d; ++i)
                    for (long j = 0; j < d; ++j)
                        for (long k = 0; k < d; ++k) {
                            Vec lhs = a.prod_vec(a.omega->op(al, be), ga,
                                                 a.prod(al, be, i, j), unit_vec(d, k));
                            Vec rhs = a.prod_vec(al, a.omega->op(be, ga), unit_vec(d, i),
                                                 a.prod(be, ga, j, k));
                            if (lhs != rhs) line.failures.push_back({{al, be, ga}, {i, j, k}, ""});
                        }
    rep.lines.push_back(std::move(line));
    if (commutative) {
        CheckLine c{"classical-commutativity", "x.y = y.x at H=k", d * d, w * w, {}};
        for (long al = 0; al < w; ++al)
            for (long be = 0; be < w; ++be)
                for (long i = 0; i < d; ++i)
                    for (long j = 0; j < d; ++j)
                        if (a.prod(al, be, i, j) != a.prod(be, al, j, i))
                            c.failures.push_back({{al, be}, {i, j}, ""});
        rep.lines.push_back(std::move(c));
    }
    return rep;
}

inline CheckReport check_ordinary_prelie(const OrdinaryAlgebra& a) {
    CheckReport rep;
    rep.subject = "ordinary algebra";
    long w = a.w(), d = a.dim;
    CheckLine line{"classical-omega-pre-lie", "Def 3.15 at H=k", d * d * d, w * w * w, {}};
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long ga = 0; ga < w; ++ga)
                for (long i = 0; i < d; ++i)
                    for (long j = 0; j < d; ++j)
                        for (long k = 0; k < d; ++k) {
                            Vec l1 = a.prod_vec(a.omega->op(al, be), ga,
                                                a.prod(al, be, i, j), unit_vec(d, k));
                            Vec l2 = a.prod_vec(al, a.omega->op(be, ga), unit_vec(d, i),
                                                a.prod(be, ga, j, k));
                            Vec r1 = a.prod_vec(a.omega->op(be, al), ga,
                                                a.prod(be, al, j, i), unit_vec(d, k));
                            Vec r2 = a.prod_vec(be, a.omega->op(al, ga), unit_vec(d, j),
                                                a.prod(al, ga, i, k));
                            if (vec_sub(l1, l2) != vec_sub(r1, r2))
                                line.failures.push_back({{al, be, ga}, {i, j, k}, ""});
                        }
    rep.lines.push_back(std::move(line));
    return rep;
}

// P_a(x) P_b(y) = P_{ab}( P_a(x) y + x P_b(y) + lambda x y ), plain product.
inline CheckReport check_rb_family(const OrdinaryAlgebra& a) {
    CheckReport rep;
    rep.subject = "rota-baxter family";
    if (!a.rb) throw input_error("algebra has no Rota-Baxter family");
    if (!a.product_is_constant())
        throw input_error("Rota-Baxter family requires an index-constant product");
    long w = a.w(), d = a.dim;
    const auto& rb = *a.rb;
    CheckLine line{"rb-family-identity", "Sec 3 Rota-Baxter family of weight lambda",
                   d * d, w * w, {}};
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) {
                    Vec px = rb.maps[al].col(i), py = rb.maps[be].col(j);
                    Vec lhs = a.prod_vec(0, 0, px, py);
                    Vec inner = a.prod_vec(0, 0, px, unit_vec(d, j));
                    inner = vec_add(inner, a.prod_vec(0, 0, unit_vec(d, i), py));
                    inner = vec_add(inner,
                                    vec_scale(rb.weight, a.prod(0, 0, i, j)));
                    Vec rhs = rb.maps[a.omega->op(al, be)].apply(inner);
                    if (lhs != rhs) line.failures.push_back({{al, be}, {i, j}, ""});
                }
    rep.lines.push_back(std::move(line));
    return rep;
}

// classical bimodule axioms over the plain product
inline CheckReport check_ordinary_bimodule(const OrdinaryAlgebra& a) {
    CheckReport rep;
    rep.subject = "classical bimodule";
    long d = a.dim, m = a.module_dim();
    CheckLine line{"classical-bimodule", "Def 2.2 at H=k", d * d * m * 3, 0, {}};
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j)
            for (long u = 0; u < m; ++u) {
                Vec lhs = Vec(m), rhs = Vec(m);
                // (ab).m = a.(b.m)
                const Vec& ab = a.prod(0, 0, i, j);
                for (long c = 0; c < d; ++c)
                    if (!ab[c].is_zero()) vec_add_scaled(lhs, ab[c], a.act_left(c, unit_vec(m, u)));
                rhs = a.act_left(i, a.act_left(j, unit_vec(m, u)));
                if (lhs != rhs) line.failures.push_back({{}, {i, j, u}, "(ab)m=a(bm)"});
                // (a.m).b = a.(m.b)
                Vec am = a.act_left(i, unit_vec(m, u));
                if (a.act_right(am, j) != a.act_left(i, a.act_right(unit_vec(m, u), j)))
                    line.failures.push_back({{}, {i, j, u}, "(am)b=a(mb)"});
                // (m.a).b = m.(ab)
                Vec ma = a.act_right(unit_vec(m, u), i);
                Vec l3 = a.act_right(ma, j);
                Vec r3(m);
                const Vec& ab2 = a.prod(0, 0, i, j);
                for (long c = 0; c < d; ++c)
                    if (!ab2[c].is_zero())
                        vec_add_scaled(r3, ab2[c], a.act_right(unit_vec(m, u), c));
                if (l3 != r3) line.failures.push_back({{}, {i, j, u}, "(ma)b=m(ab)"});
            }
    rep.lines.push_back(std::move(line));
    return rep;
}

// classical O-operator family identity over the classical bimodule
inline CheckReport check_classical_op_family(const OrdinaryAlgebra& a) {
    CheckReport rep;
    rep.subject = "classical operator family";
    if (!a.op_family) throw input_error("algebra has no classical operator family");
    if (!a.product_is_constant())
        throw input_error("classical operator family requires an index-constant product");
    long w = a.w(), m = a.module_dim();
    const auto& fam = *a.op_family;
    CheckLine line{"classical-oop-family", "Eq 2.1 at H=k", m * m, w * w, {}};
    for (long al = 0; al < w; ++al)
        for (long be = 0; be < w; ++be)
            for (long u = 0; u < m; ++u)
                for (long v = 0; v < m; ++v) {
                    Vec tu = fam.maps[al].col(u), tv = fam.maps[be].col(v);
                    Vec lhs = a.prod_vec(0, 0, tu, tv);
                    Vec inner(m);
                    for (long c = 0; c < a.dim; ++c)
                        if (!tu[c].is_zero())
                            vec_add_scaled(inner, tu[c], a.act_left(c, unit_vec(m, v)));
                    for (long c = 0; c < a.dim; ++c)
                        if (!tv[c].is_zero())
                            vec_add_scaled(inner, tv[c],
                                           a.act_right(unit_vec(m, u), c));
                    Vec rhs = fam.maps[a.omega->op(al, be)].apply(inner);
                    if (lhs != rhs) line.failures.push_back({{al, be}, {u, v}, ""});
                }
    rep.lines.push_back(std::move(line));
    return rep;
}

inline CheckReport check_ordinary(const OrdinaryAlgebra& a) {
    CheckReport rep;
    if (a.variety == "omega-associative")
        rep = check_ordinary_associative(a, false);
    else if (a.variety == "commutative-omega-associative")
        rep = check_ordinary_associative(a, true);
    else if (a.variety == "omega-pre-lie")
        rep = check_ordinary_prelie(a);
    else
        throw input_error("unsupported classical variety: " + a.variety);
    if (a.rb) rep.append(check_rb_family(a));
    if (a.bimodule) rep.append(check_ordinary_bimodule(a));
    if (a.op_family) rep.append(check_classical_op_family(a));
    return rep;
}

}  // namespace opal
