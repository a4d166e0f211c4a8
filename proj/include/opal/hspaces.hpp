#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "opal/hopf.hpp"

namespace opal {

// Left H-module given by one action matrix per H-basis element.
struct HModule : std::enable_shared_from_this<HModule> {
    std::shared_ptr<const HopfAlgebra> hopf;
    long dim = 0;
    std::vector<Matrix> action;  // action[h] applied to coordinate columns

    Matrix action_of(const Vec& h) const {
        Matrix m(dim, dim);
        for (long i = 0; i < hopf->dim; ++i)
            if (!h[i].is_zero())
                for (size_t k = 0; k < m.a.size(); ++k) m.a[k] += h[i] * action[i].a[k];
        return m;
    }

    CheckReport verify() const {
        CheckReport rep;
        rep.subject = "h-module";
        CheckLine un{"module-unit", "action(1_H)=id", 1, 0, {}};
        if (action_of(hopf->unit) != Matrix::identity(dim)) un.failures.push_back({{}, {}, ""});
        rep.lines.push_back(std::move(un));
        CheckLine as{"module-associativity", "action(gh)=action(g)action(h)",
                     hopf->dim * hopf->dim, 0, {}};
        for (long g = 0; g < hopf->dim; ++g)
            for (long h = 0; h < hopf->dim; ++h)
                if (action_of(hopf->mult[g][h]) != action[g].mul(action[h]))
                    as.failures.push_back({{}, {g, h}, ""});
        rep.lines.push_back(std::move(as));
        return rep;
    }

    // quotient spaces are expensive; built once per arity and shared
    std::shared_ptr<const struct QuotientTensorSpace> space(long arity) const;

private:
    mutable std::mutex cache_mu_;
    mutable std::map<long, std::shared_ptr<const struct QuotientTensorSpace>> cache_;
};

inline std::shared_ptr<const HModule> make_hmodule(std::shared_ptr<const HopfAlgebra> hopf,
                                                   std::vector<Matrix> action) {
    auto m = std::make_shared<HModule>();
    m->hopf = std::move(hopf);
    m->dim = action.empty() ? 0 : action[0].rows;
    m->action = std::move(action);
    if (static_cast<long>(m->action.size()) != m->hopf->dim)
        throw input_error("h-module: one action matrix per H basis element required");
    for (const auto& mat : m->action)
        if (mat.rows != m->dim || mat.cols != m->dim)
            throw input_error("h-module: action matrices must be square of equal size");
    CheckReport rep = m->verify();
    if (!rep.ok()) throw check_error("h-module axioms fail: " + rep.lines[0].check);
    return m;
}

inline std::shared_ptr<const HModule> make_trivial_module(
    std::shared_ptr<const HopfAlgebra> hopf, long dim) {
    // every h acts as eps(h) id
    std::vector<Matrix> act;
    for (long i = 0; i < hopf->dim; ++i) {
        Matrix m(dim, dim);
        for (long k = 0; k < dim; ++k) m.at(k, k) = hopf->counit[i];
        act.push_back(std::move(m));
    }
    return make_hmodule(std::move(hopf), std::move(act));
}

inline std::shared_ptr<const HModule> make_regular_module(
    std::shared_ptr<const HopfAlgebra> hopf) {
    std::vector<Matrix> act;
    for (long i = 0; i < hopf->dim; ++i) {
        Matrix m(hopf->dim, hopf->dim);
        for (long j = 0; j < hopf->dim; ++j) m.set_col(j, hopf->mult[i][j]);
        act.push_back(std::move(m));
    }
    return make_hmodule(std::move(hopf), std::move(act));
}

// Mixed-radix index helpers for H^{(x)n} (x) M: the n H-factors are most
// significant, the module index least significant.
struct TensorIndex {
    long hdim = 0, arity = 0, mdim = 0;

    long ambient_dim() const {
        long r = mdim;
        for (long i = 0; i < arity; ++i) r *= hdim;
        return r;
    }
    long htuple_count() const {
        long r = 1;
        for (long i = 0; i < arity; ++i) r *= hdim;
        return r;
    }
    long pack(const std::vector<long>& h, long m) const {
        long idx = 0;
        for (long i = 0; i < arity; ++i) idx = idx * hdim + h[i];
        return idx * mdim + m;
    }
    void unpack(long idx, std::vector<long>& h, long& m) const {
        m = idx % mdim;
        idx /= mdim;
        h.assign(arity, 0);
        for (long i = arity; i-- > 0;) {
            h[i] = idx % hdim;
            idx /= hdim;
        }
    }
};

// The quotient H^{(x)n} (x)_H M with a fixed canonical form. The relation
// subspace is spanned by  F.Delta^{(n-1)}(h) (x) m  -  F (x) h.m  over basis
// triples; canonical coordinates live on the ambient coordinates away from
// the relation pivots. Arity 0 is k (x)_H M = M / H_+ M with the counit in
// place of the iterated comultiplication.
struct QuotientTensorSpace {
    std::shared_ptr<const HModule> module;
    long arity = 0;
    TensorIndex ix;
    long ambient_dim = 0;
    long qdim = 0;
    long relation_rank = 0;
    std::vector<std::pair<long, Vec>> rref_rows;  // (pivot column, full row)
    std::vector<long> free_cols;                  // complement basis, ascending
    std::vector<long> col_to_coord;               // ambient col -> coord or -1

    // ambient vector -> canonical coordinates over the complement basis
    Vec reduce(Vec v) const {
        if (static_cast<long>(v.size()) != ambient_dim)
            throw input_error("reduce: ambient dimension mismatch");
        for (const auto& [p, row] : rref_rows) {
            if (v[p].is_zero()) continue;
            Rational c = v[p];
            for (long j = 0; j < ambient_dim; ++j)
                if (!row[j].is_zero()) v[j] -= c * row[j];
        }
        Vec coords(qdim);
        for (long k = 0; k < qdim; ++k) coords[k] = v[free_cols[k]];
        return coords;
    }

    // canonical ambient representative of a coordinate vector
    Vec lift(const Vec& coords) const {
        if (static_cast<long>(coords.size()) != qdim)
            throw input_error("lift: coordinate dimension mismatch");
        Vec v(ambient_dim);
        for (long k = 0; k < qdim; ++k) v[free_cols[k]] = coords[k];
        return v;
    }

    Vec zero() const { return Vec(qdim); }
};

inline std::shared_ptr<const QuotientTensorSpace> build_quotient(
    std::shared_ptr<const HModule> module, long arity) {
    if (arity < 0) throw input_error("build_quotient: negative arity");
    const HopfAlgebra& H = *module->hopf;
    long d = H.dim, mdim = module->dim;

    auto sp = std::make_shared<QuotientTensorSpace>();
    sp->module = module;
    sp->arity = arity;
    sp->ix = TensorIndex{d, arity, mdim};
    sp->ambient_dim = sp->ix.ambient_dim();

    long tuples = sp->ix.htuple_count();
    Matrix rel(tuples * d * mdim, sp->ambient_dim);
    long row = 0;
    std::vector<long> F(arity);
    for (long f = 0; f < tuples; ++f) {
        // decode the H-basis tuple F
        long tmp = f;
        for (long i = arity; i-- > 0;) {
            F[i] = tmp % d;
            tmp /= d;
        }
        for (long h = 0; h < d; ++h) {
            // F . Delta^{(n-1)}(e_h), sparse over H-tuples (counit at arity 0)
            Vec lhs(tuples);
            if (arity == 0) {
                lhs[0] = H.counit[h];
            } else {
                Vec delta = H.iterated_comult(arity, H.basis_vec(h));
                std::vector<long> J(arity);
                for (long jidx = 0; jidx < tuples; ++jidx) {
                    if (delta[jidx].is_zero()) continue;
                    long t = jidx;
                    for (long i = arity; i-- > 0;) {
                        J[i] = t % d;
                        t /= d;
                    }
                    // componentwise product of basis tuple F with basis tuple J
                    Vec acc(1, delta[jidx]);
                    long width = 1;
                    for (long i = 0; i < arity; ++i) {
                        const Vec& p = H.mult[F[i]][J[i]];
                        Vec nxt(width * d);
                        for (long u = 0; u < width; ++u) {
                            if (acc[u].is_zero()) continue;
                            for (long v = 0; v < d; ++v)
                                if (!p[v].is_zero()) nxt[u * d + v] += acc[u] * p[v];
                        }
                        acc = std::move(nxt);
                        width *= d;
                    }
                    for (long u = 0; u < tuples; ++u)
                        if (!acc[u].is_zero()) lhs[u] += acc[u];
                }
            }
            for (long m = 0; m < mdim; ++m) {
                for (long u = 0; u < tuples; ++u)
                    if (!lhs[u].is_zero()) rel.at(row, u * mdim + m) = lhs[u];
                const Matrix& act = module->action[h];
                for (long r = 0; r < mdim; ++r)
                    if (!act.at(r, m).is_zero()) rel.at(row, f * mdim + r) -= act.at(r, m);
                ++row;
            }
        }
    }

    RrefResult rr = rref(rel);
    sp->relation_rank = static_cast<long>(rr.pivots.size());
    std::vector<bool> is_pivot(sp->ambient_dim, false);
    for (size_t i = 0; i < rr.pivots.size(); ++i) {
        is_pivot[rr.pivots[i]] = true;
        sp->rref_rows.emplace_back(rr.pivots[i], rr.r.row(static_cast<long>(i)));
    }
    sp->col_to_coord.assign(sp->ambient_dim, -1);
    for (long j = 0; j < sp->ambient_dim; ++j)
        if (!is_pivot[j]) {
            sp->col_to_coord[j] = static_cast<long>(sp->free_cols.size());
            sp->free_cols.push_back(j);
        }
    sp->qdim = static_cast<long>(sp->free_cols.size());
    return sp;
}

inline std::shared_ptr<const QuotientTensorSpace> HModule::space(long arity) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = cache_.find(arity);
    if (it != cache_.end()) return it->second;
    auto sp = build_quotient(shared_from_this(), arity);
    cache_[arity] = sp;
    return sp;
}

// Element of a quotient tensor space, stored in canonical coordinates.
struct QElement {
    std::shared_ptr<const QuotientTensorSpace> space;
    Vec coords;

    bool is_zero() const { return vec_is_zero(coords); }
    friend bool operator==(const QElement& a, const QElement& b) {
        return a.coords == b.coords;
    }
    friend QElement operator+(const QElement& a, const QElement& b) {
        return {a.space, vec_add(a.coords, b.coords)};
    }
    friend QElement operator-(const QElement& a, const QElement& b) {
        return {a.space, vec_sub(a.coords, b.coords)};
    }
    friend QElement operator-(const QElement& a) {
        return {a.space, vec_scale(Rational(-1), a.coords)};
    }
    QElement scaled(const Rational& c) const { return {space, vec_scale(c, coords)}; }
};

inline QElement qzero(std::shared_ptr<const QuotientTensorSpace> sp) {
    Vec z(sp->qdim);
    return {std::move(sp), std::move(z)};
}

inline QElement qreduce(std::shared_ptr<const QuotientTensorSpace> sp, Vec ambient) {
    Vec c = sp->reduce(std::move(ambient));
    return {std::move(sp), std::move(c)};
}

namespace detail {

// accumulate (tensor product of H-coordinate factors) x (coeff) into an
// ambient vector at module index m; factors[i] is a dense H-vector
inline void add_htensor(const QuotientTensorSpace& sp, const std::vector<Vec>& factors,
                        const Rational& coeff, long m, Vec& ambient) {
    long d = sp.ix.hdim;
    Vec acc(1, coeff);
    long width = 1;
    for (long i = 0; i < sp.arity; ++i) {
        const Vec& p = factors[i];
        Vec nxt(width * d);
        for (long u = 0; u < width; ++u) {
            if (acc[u].is_zero()) continue;
            for (long v = 0; v < d; ++v)
                if (!p[v].is_zero()) nxt[u * d + v] += acc[u] * p[v];
        }
        acc = std::move(nxt);
        width *= d;
    }
    for (long u = 0; u < width; ++u)
        if (!acc[u].is_zero()) ambient[u * sp.ix.mdim + m] += acc[u];
}

}  // namespace detail

// Left action of f in H^{(x)n} on the quotient: componentwise multiplication
// on the H-factors of any representative.
inline QElement act(const QElement& x, const Vec& f_tensor) {
    const QuotientTensorSpace& sp = *x.space;
    const HopfAlgebra& H = *sp.module->hopf;
    long d = H.dim, n = sp.arity;
    long tuples = sp.ix.htuple_count();
    if (static_cast<long>(f_tensor.size()) != tuples)
        throw input_error("act: tensor has wrong arity");
    Vec amb = sp.lift(x.coords);
    Vec out(sp.ambient_dim);
    std::vector<long> I(n), J(n);
    for (long fi = 0; fi < tuples; ++fi) {
        if (f_tensor[fi].is_zero()) continue;
        long t = fi;
        for (long i = n; i-- > 0;) {
            I[i] = t % d;
            t /= d;
        }
        for (long ai = 0; ai < sp.ambient_dim; ++ai) {
            if (amb[ai].is_zero()) continue;
            long m = ai % sp.ix.mdim;
            t = ai / sp.ix.mdim;
            for (long i = n; i-- > 0;) {
                J[i] = t % d;
                t /= d;
            }
            std::vector<Vec> factors(n);
            for (long i = 0; i < n; ++i) factors[i] = H.mult[I[i]][J[i]];
            detail::add_htensor(sp, factors, f_tensor[fi] * amb[ai], m, out);
        }
    }
    return qreduce(x.space, std::move(out));
}

// perm[i] = destination position of factor i (0-based); well-defined on the
// quotient because H is cocommutative
inline QElement permute(const QElement& x, const std::vector<long>& perm) {
    const QuotientTensorSpace& sp = *x.space;
    long n = sp.arity, d = sp.ix.hdim;
    if (static_cast<long>(perm.size()) != n) throw input_error("permute: wrong degree");
    Vec amb = sp.lift(x.coords);
    Vec out(sp.ambient_dim);
    std::vector<long> J(n), K(n);
    for (long ai = 0; ai < sp.ambient_dim; ++ai) {
        if (amb[ai].is_zero()) continue;
        long m = ai % sp.ix.mdim;
        long t = ai / sp.ix.mdim;
        for (long i = n; i-- > 0;) {
            J[i] = t % d;
            t /= d;
        }
        for (long i = 0; i < n; ++i) K[perm[i]] = J[i];
        out[sp.ix.pack(K, m)] += amb[ai];
    }
    return qreduce(x.space, std::move(out));
}

// named permutations on tensor factors, in cycle notation on positions 1..n
inline std::vector<long> perm_id(long n) {
    std::vector<long> p(n);
    for (long i = 0; i < n; ++i) p[i] = i;
    return p;
}
inline std::vector<long> perm_swap12(long n) {
    auto p = perm_id(n);
    std::swap(p[0], p[1]);
    return p;
}
inline std::vector<long> perm_cycle(long n, const std::vector<long>& cycle) {
    auto p = perm_id(n);
    for (size_t i = 0; i < cycle.size(); ++i)
        p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    return p;
}

// The g Delta insertion convention: for w = f(a_1,..,a_n) in H^{(x)n} (x)_H M
// and g in H^{(x)2},
//   f(a_1,..,(g (x)_H a_slot),..,a_n) = ((id^(slot-1) (x) gDelta (x) id^(n-slot)) (x)_H id) w
// lands in H^{(x)(n+1)} (x)_H M. slot is 1-based.
inline QElement slot_compose(const QElement& w, long slot, const Vec& g2) {
    const QuotientTensorSpace& sp = *w.space;
    const HopfAlgebra& H = *sp.module->hopf;
    long d = H.dim, n = sp.arity;
    if (slot < 1 || slot > n) throw input_error("slot_compose: slot index out of range");
    if (static_cast<long>(g2.size()) != d * d)
        throw input_error("slot_compose: g must live in H (x) H");
    auto target = sp.module->space(n + 1);
    Vec amb = sp.lift(w.coords);
    Vec out(target->ambient_dim);
    std::vector<long> J(n), K(n + 1);
    for (long ai = 0; ai < sp.ambient_dim; ++ai) {
        if (amb[ai].is_zero()) continue;
        long m = ai % sp.ix.mdim;
        long t = ai / sp.ix.mdim;
        for (long i = n; i-- > 0;) {
            J[i] = t % d;
            t /= d;
        }
        Vec expanded = H.mult2(g2, H.comult[J[slot - 1]]);  // g.Delta(e_h)
        for (long pq = 0; pq < d * d; ++pq) {
            if (expanded[pq].is_zero()) continue;
            for (long i = 0; i < slot - 1; ++i) K[i] = J[i];
            K[slot - 1] = pq / d;
            K[slot] = pq % d;
            for (long i = slot; i < n; ++i) K[i + 1] = J[i];
            out[target->ix.pack(K, m)] += amb[ai] * expanded[pq];
        }
    }
    return qreduce(target, std::move(out));
}

// (id (x) eps) or (eps (x) id) contraction H^{(x)2} (x)_H M -> H (x)_H M
inline QElement contract_counit(const QElement& w, bool drop_second) {
    const QuotientTensorSpace& sp = *w.space;
    if (sp.arity != 2) throw input_error("contract_counit: arity-2 element required");
    const HopfAlgebra& H = *sp.module->hopf;
    long d = H.dim;
    auto target = sp.module->space(1);
    Vec amb = sp.lift(w.coords);
    Vec out(target->ambient_dim);
    for (long ai = 0; ai < sp.ambient_dim; ++ai) {
        if (amb[ai].is_zero()) continue;
        long m = ai % sp.ix.mdim;
        long t = ai / sp.ix.mdim;
        long q = t % d, p = t / d;
        if (drop_second)
            out[p * sp.ix.mdim + m] += amb[ai] * H.counit[q];
        else
            out[q * sp.ix.mdim + m] += amb[ai] * H.counit[p];
    }
    return qreduce(target, std::move(out));
}

// (id (x)_H f): push an H-linear map M -> N through the H-tensor factors
inline QElement map_coefficients(const QElement& x, const Matrix& f,
                                 const std::shared_ptr<const QuotientTensorSpace>& target) {
    const QuotientTensorSpace& sp = *x.space;
    if (f.cols != sp.ix.mdim || f.rows != target->ix.mdim || target->arity != sp.arity)
        throw input_error("map_coefficients: shape mismatch");
    Vec amb = sp.lift(x.coords);
    Vec out(target->ambient_dim);
    for (long ai = 0; ai < sp.ambient_dim; ++ai) {
        if (amb[ai].is_zero()) continue;
        long m = ai % sp.ix.mdim;
        long block = ai / sp.ix.mdim;
        for (long r = 0; r < f.rows; ++r)
            if (!f.at(r, m).is_zero())
                out[block * target->ix.mdim + r] += amb[ai] * f.at(r, m);
    }
    return qreduce(target, std::move(out));
}

}  // namespace opal
