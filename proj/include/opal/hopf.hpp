#pragma once

#include <memory>
#include <optional>

#include "opal/matrix.hpp"
#include "opal/report.hpp"

namespace opal {

// Finite-dimensional Hopf algebra over the rationals, given by structure
// tensors on a fixed basis e_0 .. e_{dim-1}.
//
//   mult[i][j]   coordinates of e_i e_j
//   unit         coordinates of 1
//   comult[i]    coordinates of Delta(e_i) in H (x) H, index j*dim + k
//   counit[i]    eps(e_i)
//   antipode     matrix acting on coordinate columns
struct HopfAlgebra {
    long dim = 0;
    std::vector<std::vector<Vec>> mult;
    Vec unit;
    std::vector<Vec> comult;
    Vec counit;
    Matrix antipode;

    Vec mult_vv(const Vec& x, const Vec& y) const {
        Vec r(dim);
        for (long i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (long j = 0; j < dim; ++j) {
                if (y[j].is_zero()) continue;
                Rational c = x[i] * y[j];
                vec_add_scaled(r, c, mult[i][j]);
            }
        }
        return r;
    }

    Vec comult_v(const Vec& x) const {
        Vec r(dim * dim);
        for (long i = 0; i < dim; ++i)
            if (!x[i].is_zero()) vec_add_scaled(r, x[i], comult[i]);
        return r;
    }

    Rational counit_v(const Vec& x) const {
        Rational r;
        for (long i = 0; i < dim; ++i)
            if (!x[i].is_zero()) r += counit[i] * x[i];
        return r;
    }

    // product on H (x) H, componentwise on pure tensors
    Vec mult2(const Vec& x, const Vec& y) const {
        Vec r(dim * dim);
        for (long i = 0; i < dim * dim; ++i) {
            if (x[i].is_zero()) continue;
            long i1 = i / dim, i2 = i % dim;
            for (long j = 0; j < dim * dim; ++j) {
                if (y[j].is_zero()) continue;
                long j1 = j / dim, j2 = j % dim;
                Rational c = x[i] * y[j];
                const Vec& p1 = mult[i1][j1];
                const Vec& p2 = mult[i2][j2];
                for (long k1 = 0; k1 < dim; ++k1) {
                    if (p1[k1].is_zero()) continue;
                    for (long k2 = 0; k2 < dim; ++k2)
                        if (!p2[k2].is_zero()) r[k1 * dim + k2] += c * p1[k1] * p2[k2];
                }
            }
        }
        return r;
    }

    // Delta^{(n-1)}: H -> H^{(x)n}, iterated on the last factor; Delta^{(0)} = id.
    Vec iterated_comult(long n, const Vec& x) const {
        if (n < 1) throw input_error("iterated_comult: arity must be >= 1");
        Vec cur = x;
        long arity = 1;
        while (arity < n) {
            long len = 1;
            for (long t = 0; t < arity + 1; ++t) len *= dim;
            Vec next(len);
            long curlen = static_cast<long>(cur.size());
            for (long idx = 0; idx < curlen; ++idx) {
                if (cur[idx].is_zero()) continue;
                long last = idx % dim, prefix = idx / dim;
                const Vec& d = comult[last];
                for (long jk = 0; jk < dim * dim; ++jk)
                    if (!d[jk].is_zero()) next[prefix * dim * dim + jk] += cur[idx] * d[jk];
            }
            cur = std::move(next);
            ++arity;
        }
        return cur;
    }

    Vec basis_vec(long i) const {
        Vec v(dim);
        v[i] = Rational(1);
        return v;
    }

    // Checks every algebra/coalgebra/bialgebra/antipode/cocommutativity axiom
    // on basis elements; failures are data, not errors.
    CheckReport verify() const;
};

inline CheckReport HopfAlgebra::verify() const {
    CheckReport rep;
    rep.subject = "hopf algebra";

    CheckLine assoc{"mult-associativity", "H axiom (ab)c=a(bc)", dim * dim * dim, 0, {}};
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            for (long k = 0; k < dim; ++k) {
                Vec lhs = mult_vv(mult[i][j], basis_vec(k));
                Vec rhs = mult_vv(basis_vec(i), mult[j][k]);
                if (lhs != rhs) assoc.failures.push_back({{}, {i, j, k}, ""});
            }
    rep.lines.push_back(std::move(assoc));

    CheckLine unitl{"unit-law", "H axiom 1a=a=a1", 2 * dim, 0, {}};
    for (long i = 0; i < dim; ++i) {
        if (mult_vv(unit, basis_vec(i)) != basis_vec(i))
            unitl.failures.push_back({{}, {i}, "left unit"});
        if (mult_vv(basis_vec(i), unit) != basis_vec(i))
            unitl.failures.push_back({{}, {i}, "right unit"});
    }
    rep.lines.push_back(std::move(unitl));

    CheckLine coassoc{"coassociativity", "H axiom (Delta x id)Delta=(id x Delta)Delta", dim, 0, {}};
    for (long i = 0; i < dim; ++i) {
        // (Delta x id)Delta(e_i) vs (id x Delta)Delta(e_i)
        Vec lhs(dim * dim * dim), rhs(dim * dim * dim);
        for (long jk = 0; jk < dim * dim; ++jk) {
            if (comult[i][jk].is_zero()) continue;
            long j = jk / dim, k = jk % dim;
            const Vec& dj = comult[j];
            for (long pq = 0; pq < dim * dim; ++pq)
                if (!dj[pq].is_zero()) lhs[pq * dim + k] += comult[i][jk] * dj[pq];
            const Vec& dk = comult[k];
            for (long pq = 0; pq < dim * dim; ++pq)
                if (!dk[pq].is_zero()) rhs[j * dim * dim + pq] += comult[i][jk] * dk[pq];
        }
        if (lhs != rhs) coassoc.failures.push_back({{}, {i}, ""});
    }
    rep.lines.push_back(std::move(coassoc));

    CheckLine couni{"counit-law", "H axiom (eps x id)Delta=id=(id x eps)Delta", 2 * dim, 0, {}};
    for (long i = 0; i < dim; ++i) {
        Vec left(dim), right(dim);
        for (long jk = 0; jk < dim * dim; ++jk) {
            if (comult[i][jk].is_zero()) continue;
            long j = jk / dim, k = jk % dim;
            left[k] += comult[i][jk] * counit[j];
            right[j] += comult[i][jk] * counit[k];
        }
        if (left != basis_vec(i)) couni.failures.push_back({{}, {i}, "eps x id"});
        if (right != basis_vec(i)) couni.failures.push_back({{}, {i}, "id x eps"});
    }
    rep.lines.push_back(std::move(couni));

    CheckLine bialg{"bialgebra-compatibility", "H axiom Delta(ab)=Delta(a)Delta(b)",
                    dim * dim + dim + 2, 0, {}};
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            Vec lhs = comult_v(mult[i][j]);
            Vec rhs = mult2(comult[i], comult[j]);
            if (lhs != rhs) bialg.failures.push_back({{}, {i, j}, "Delta multiplicative"});
        }
    {
        Vec d1 = comult_v(unit);
        Vec u2(dim * dim);
        for (long p = 0; p < dim; ++p)
            for (long q = 0; q < dim; ++q) u2[p * dim + q] = unit[p] * unit[q];
        if (d1 != u2) bialg.failures.push_back({{}, {}, "Delta(1) != 1 x 1"});
        if (counit_v(unit) != Rational(1)) bialg.failures.push_back({{}, {}, "eps(1) != 1"});
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j)
                if (counit_v(mult[i][j]) != counit[i] * counit[j]) {
                    bialg.failures.push_back({{}, {i, j}, "eps multiplicative"});
                }
    }
    rep.lines.push_back(std::move(bialg));

    CheckLine anti{"antipode-identity", "H axiom m(S x id)Delta=eta eps=m(id x S)Delta",
                   2 * dim, 0, {}};
    for (long i = 0; i < dim; ++i) {
        Vec left(dim), right(dim);
        for (long jk = 0; jk < dim * dim; ++jk) {
            if (comult[i][jk].is_zero()) continue;
            long j = jk / dim, k = jk % dim;
            vec_add_scaled(left, comult[i][jk], mult_vv(antipode.col(j), basis_vec(k)));
            vec_add_scaled(right, comult[i][jk], mult_vv(basis_vec(j), antipode.col(k)));
        }
        Vec expect = vec_scale(counit[i], unit);
        if (left != expect) anti.failures.push_back({{}, {i}, "m(S x id)Delta"});
        if (right != expect) anti.failures.push_back({{}, {i}, "m(id x S)Delta"});
    }
    rep.lines.push_back(std::move(anti));

    CheckLine cocomm{"cocommutativity", "H standing hypothesis tau Delta=Delta", dim, 0, {}};
    for (long i = 0; i < dim; ++i) {
        Vec flip(dim * dim);
        for (long jk = 0; jk < dim * dim; ++jk)
            flip[(jk % dim) * dim + jk / dim] = comult[i][jk];
        if (flip != comult[i]) cocomm.failures.push_back({{}, {i}, ""});
    }
    rep.lines.push_back(std::move(cocomm));

    return rep;
}

// Group algebra k[G] of a finite group given by its multiplication table.
// Delta(g) = g x g, eps(g) = 1, S(g) = g^{-1}; cocommutative for every G.
inline std::shared_ptr<const HopfAlgebra> make_group_algebra(
    const std::vector<std::vector<int>>& table) {
    long n = static_cast<long>(table.size());
    if (n == 0) throw check_error("not a group: empty table");
    for (const auto& row : table) {
        if (static_cast<long>(row.size()) != n) throw check_error("not a group: ragged table");
        for (int v : row)
            if (v < 0 || v >= n) throw check_error("not a group: index out of range");
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            for (long k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw check_error("not a group: associativity fails at (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
    long id = -1;
    for (long e = 0; e < n; ++e) {
        bool ok = true;
        for (long g = 0; g < n; ++g)
            if (table[e][g] != g || table[g][e] != g) { ok = false; break; }
        if (ok) { id = e; break; }
    }
    if (id < 0) throw check_error("not a group: no two-sided identity");
    std::vector<long> inv(n, -1);
    for (long g = 0; g < n; ++g) {
        for (long h = 0; h < n; ++h)
            if (table[g][h] == id && table[h][g] == id) { inv[g] = h; break; }
        if (inv[g] < 0)
            throw check_error("not a group: element " + std::to_string(g) + " has no inverse");
    }

    auto h = std::make_shared<HopfAlgebra>();
    h->dim = n;
    h->mult.assign(n, std::vector<Vec>(n, Vec(n)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) h->mult[i][j][table[i][j]] = Rational(1);
    h->unit = Vec(n);
    h->unit[id] = Rational(1);
    h->comult.assign(n, Vec(n * n));
    for (long i = 0; i < n; ++i) h->comult[i][i * n + i] = Rational(1);
    h->counit.assign(n, Rational(1));
    h->antipode = Matrix(n, n);
    for (long g = 0; g < n; ++g) h->antipode.at(inv[g], g) = Rational(1);
    return h;
}

// Finite semigroup indexing the operation families. Unit is optional; the
// cohomology modules insist on one, the structure checkers do not.
struct FiniteSemigroup {
    long size = 0;
    std::vector<std::vector<int>> table;
    std::optional<long> unit;
    bool commutative = false;

    long op(long a, long b) const { return table[a][b]; }
};

inline std::shared_ptr<const FiniteSemigroup> make_semigroup(
    const std::vector<std::vector<int>>& table, std::optional<long> unit, bool commutative) {
    long n = static_cast<long>(table.size());
    if (n == 0) throw input_error("semigroup: empty table");
    for (const auto& row : table) {
        if (static_cast<long>(row.size()) != n) throw input_error("semigroup: ragged table");
        for (int v : row)
            if (v < 0 || v >= n) throw input_error("semigroup: index out of range");
    }
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw check_error("semigroup not associative at (" + std::to_string(a) +
                                      "," + std::to_string(b) + "," + std::to_string(c) + ")");
    if (unit) {
        long e = *unit;
        if (e < 0 || e >= n) throw input_error("semigroup: unit index out of range");
        for (long g = 0; g < n; ++g)
            if (table[e][g] != g || table[g][e] != g)
                throw check_error("semigroup unit not neutral at " + std::to_string(g));
    }
    if (commutative) {
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                if (table[a][b] != table[b][a])
                    throw check_error("semigroup not commutative at (" + std::to_string(a) +
                                      "," + std::to_string(b) + ")");
    }
    auto s = std::make_shared<FiniteSemigroup>();
    s->size = n;
    s->table = table;
    s->unit = unit;
    s->commutative = commutative;
    return s;
}

// Subspace of a Hopf algebra claiming closure under the operations its kind
// demands: subbialgebra (mult, unit, Delta, eps) or subcoalgebra (Delta, eps).
struct SubStructure {
    std::shared_ptr<const HopfAlgebra> parent;
    Matrix inclusion;  // columns = basis of the subspace, in H coordinates
    enum class Kind { subbialgebra, subcoalgebra } kind;

    long dim() const { return inclusion.cols; }
    Vec embed(const Vec& sub_coords) const { return inclusion.apply(sub_coords); }
};

// Verifies the claimed closure; throws input_error with the failing element
// on kind mismatch.
inline std::shared_ptr<const SubStructure> make_substructure(
    std::shared_ptr<const HopfAlgebra> parent, Matrix inclusion, SubStructure::Kind kind) {
    long d = parent->dim;
    long k = inclusion.cols;
    if (inclusion.rows != d) throw input_error("substructure: basis vectors have wrong length");
    if (rank(inclusion) != k) throw input_error("substructure: basis not linearly independent");

    LinearSolver member(inclusion);
    auto in_span = [&](const Vec& v) { return member.solve(v).has_value(); };

    // Delta(c) must lie in C (x) C for both kinds
    Matrix cc(d * d, k * k);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            for (long p = 0; p < d; ++p)
                for (long q = 0; q < d; ++q)
                    cc.at(p * d + q, i * k + j) = inclusion.at(p, i) * inclusion.at(q, j);
    LinearSolver member2(cc);
    for (long c = 0; c < k; ++c) {
        Vec dv = parent->comult_v(inclusion.col(c));
        if (!member2.solve(dv).has_value())
            throw check_error("kind mismatch: Delta(basis " + std::to_string(c) +
                              ") leaves the subspace");
    }

    if (kind == SubStructure::Kind::subbialgebra) {
        if (!in_span(parent->unit))
            throw check_error("kind mismatch: subbialgebra does not contain the unit");
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j)
                if (!in_span(parent->mult_vv(inclusion.col(i), inclusion.col(j))))
                    throw check_error("kind mismatch: product of basis " + std::to_string(i) +
                                      "," + std::to_string(j) + " leaves the subspace");
    }

    auto s = std::make_shared<SubStructure>();
    s->parent = std::move(parent);
    s->inclusion = std::move(inclusion);
    s->kind = kind;
    return s;
}

}  // namespace opal
