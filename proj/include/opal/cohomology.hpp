#pragma once

#include "opal/construct.hpp"
#include "opal/pseudo.hpp"

namespace opal {

// Cochain spaces of an omega-associative pseudoalgebra with bimodule
// coefficients. Degree n >= 1 cochains are semigroup-tuple-indexed families
// of H^{(x)n}-linear maps A^{(x)n} -> H^{(x)n} (x)_H M, stored in a hom-space
// basis computed once per degree (the linearity constraint is independent of
// the index tuple). Degree 0 is k (x)_H M = M / H_+ M.
struct CochainSpace {
    long degree = 0;
    std::shared_ptr<const QuotientTensorSpace> values;  // arity-n space over M (n >= 1)
    std::shared_ptr<const QuotientTensorSpace> c0;      // arity-0 space (degree 0)
    std::vector<Matrix> hom_basis;                      // q x a^n value matrices
    LinearSolver hom_solver;                            // columns = vec(hom_basis[b])
    long hom_dim = 0;
    long arg_tuples = 0;  // a^n
    long idx_tuples = 0;  // w^n
    long total_dim = 0;   // w^n * hom_dim, or dim M/H_+M at degree 0

    // vec layout of a value matrix: entry[t * q + r] = V(r, t)
    Vec vec_of(const Matrix& v) const {
        Vec out(static_cast<size_t>(v.cols) * v.rows);
        for (long t = 0; t < v.cols; ++t)
            for (long r = 0; r < v.rows; ++r) out[t * v.rows + r] = v.at(r, t);
        return out;
    }
};

struct RankTriple {
    long cocycles = 0, coboundaries = 0, cohomology = 0;
};

class CochainComplex {
public:
    CochainComplex(std::shared_ptr<const PseudoStructure> algebra,
                   std::shared_ptr<const BimoduleStructure> coeffs)
        : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
        if (coeffs_->algebra.get() != algebra_.get())
            throw input_error("cochain complex: coefficients are not over this algebra");
    }

    const PseudoStructure& algebra() const { return *algebra_; }
    const BimoduleStructure& coeffs() const { return *coeffs_; }

    const CochainSpace& space(long n) {
        if (n < 0) throw input_error("cochain space: negative degree");
        auto it = spaces_.find(n);
        if (it != spaces_.end()) return it->second;
        return spaces_.emplace(n, build_space(n)).first->second;
    }

    // matrix of d^n : C^n -> C^{n+1} in the (index tuple, hom basis) coordinates
    const Matrix& d(long n) {
        auto it = dmats_.find(n);
        if (it != dmats_.end()) return it->second;
        Matrix m = build_d(n);
        return dmats_.emplace(n, std::move(m)).first->second;
    }

    Vec apply_d(long n, const Vec& coords) { return d(n).apply(coords); }

    RankTriple ranks(long n) {
        RankTriple r;
        long rank_dn = rank(d(n));
        r.cocycles = space(n).total_dim - rank_dn;
        r.coboundaries = n == 0 ? 0 : rank(d(n - 1));
        r.cohomology = r.cocycles - r.coboundaries;
        return r;
    }

    CheckReport verify_complex(long nmax) {
        CheckReport rep;
        rep.subject = "cochain complex";
        for (long n = 1; n <= nmax; ++n) {
            Matrix comp = d(n).mul(d(n - 1));
            CheckLine line{"d" + std::to_string(n) + "-after-d" + std::to_string(n - 1),
                           "Sec 4.1 d o d = 0", space(n - 1).total_dim, 0, {}};
            for (long c = 0; c < comp.cols; ++c) {
                bool zero = true;
                for (long r = 0; r < comp.rows && zero; ++r)
                    if (!comp.at(r, c).is_zero()) zero = false;
                if (!zero) line.failures.push_back({{}, {c}, "basis cochain column"});
            }
            rep.lines.push_back(std::move(line));
        }
        return rep;
    }

    // Column of the degree-0 differential at basis element a of A, computed
    // on an arbitrary representative of M / H_+ M so that representative
    // independence can be verified as a property.
    QElement d0_column(const Vec& m_rep, long alpha, long a_basis) {
        if (!algebra_->omega->unit)
            throw input_error("cohomology degree 0 requires a semigroup unit");
        long e = *algebra_->omega->unit;
        long adim = algebra_->dim();
        QElement v1 = coeffs_->left.value_vec(alpha, e, unit_vec(adim, a_basis), m_rep);
        QElement v2 = coeffs_->right.value_vec(e, alpha, m_rep, unit_vec(adim, a_basis));
        return contract_counit(v1, /*drop_second=*/true) -
               contract_counit(v2, /*drop_second=*/false);
    }

private:
    std::shared_ptr<const PseudoStructure> algebra_;
    std::shared_ptr<const BimoduleStructure> coeffs_;
    std::map<long, CochainSpace> spaces_;
    std::map<long, Matrix> dmats_;

    CochainSpace build_space(long n) {
        CochainSpace cs;
        cs.degree = n;
        const HModule& M = *coeffs_->carrier;
        const HModule& A = *algebra_->carrier;
        long w = algebra_->w();
        if (n == 0) {
            cs.c0 = M.space(0);
            cs.total_dim = cs.c0->qdim;
            cs.hom_dim = cs.c0->qdim;
            cs.arg_tuples = 1;
            cs.idx_tuples = 1;
            return cs;
        }
        cs.values = M.space(n);
        long q = cs.values->qdim;
        long a = A.dim, d = A.hopf->dim;
        long tuples = 1;
        for (long i = 0; i < n; ++i) tuples *= a;
        cs.arg_tuples = tuples;
        cs.idx_tuples = 1;
        for (long i = 0; i < n; ++i) cs.idx_tuples *= w;

        // H^{(x)n}-linearity constraints, slot by slot
        std::vector<Matrix> act_q(static_cast<size_t>(n) * d);
        for (long s = 0; s < n; ++s)
            for (long h = 0; h < d; ++h) {
                Matrix m(q, q);
                Vec tensor = slot_tensor(*A.hopf, n, s, h);
                for (long c = 0; c < q; ++c) {
                    QElement col = act(QElement{cs.values, unit_vec(q, c)}, tensor);
                    m.set_col(c, col.coords);
                }
                act_q[s * d + h] = std::move(m);
            }

        Matrix constraints(n * d * tuples * q, tuples * q);
        long row0 = 0;
        std::vector<long> t(n);
        for (long s = 0; s < n; ++s)
            for (long h = 0; h < d; ++h) {
                const Matrix& aq = act_q[s * d + h];
                for (long tup = 0; tup < tuples; ++tup) {
                    long tmp = tup;
                    for (long i = n; i-- > 0;) {
                        t[i] = tmp % a;
                        tmp /= a;
                    }
                    // sum_k action[h](k, t_s) V[t with k at s] - aq . V[t] = 0
                    long stride = 1;
                    for (long i = s + 1; i < n; ++i) stride *= a;
                    const Matrix& actA = A.action[h];
                    for (long k = 0; k < a; ++k) {
                        if (actA.at(k, t[s]).is_zero()) continue;
                        long tup_k = tup + (k - t[s]) * stride;
                        for (long r = 0; r < q; ++r)
                            constraints.at(row0 + r, tup_k * q + r) += actA.at(k, t[s]);
                    }
                    for (long r = 0; r < q; ++r)
                        for (long c = 0; c < q; ++c)
                            if (!aq.at(r, c).is_zero())
                                constraints.at(row0 + r, tup * q + c) -= aq.at(r, c);
                    row0 += q;
                }
            }

        Matrix basis = nullspace(constraints);
        cs.hom_dim = basis.cols;
        for (long b = 0; b < basis.cols; ++b) {
            Matrix v(q, tuples);
            for (long tup = 0; tup < tuples; ++tup)
                for (long r = 0; r < q; ++r) v.at(r, tup) = basis.at(tup * q + r, b);
            cs.hom_basis.push_back(std::move(v));
        }
        cs.hom_solver = LinearSolver(basis);
        cs.total_dim = cs.idx_tuples * cs.hom_dim;
        return cs;
    }

    static Vec slot_tensor(const HopfAlgebra& H, long n, long slot, long h) {
        // 1 (x) ... (x) e_h (x) ... (x) 1 as a dense H^{(x)n} vector
        long d = H.dim;
        Vec cur(1, Rational(1));
        for (long i = 0; i < n; ++i) {
            const Vec& f = i == slot ? unit_vec(d, h) : H.unit;
            Vec nxt(cur.size() * d);
            for (size_t u = 0; u < cur.size(); ++u) {
                if (cur[u].is_zero()) continue;
                for (long v = 0; v < d; ++v)
                    if (!f[v].is_zero()) nxt[u * d + v] += cur[u] * f[v];
            }
            cur = std::move(nxt);
        }
        return cur;
    }

    Matrix build_d(long n) {
        const CochainSpace& cn = space(n);
        const CochainSpace& cnp = space(n + 1);
        Matrix out(cnp.total_dim, cn.total_dim);
        if (n == 0) {
            if (!algebra_->omega->unit)
                throw input_error("cohomology degree 0 requires a semigroup unit");
            long w = algebra_->w(), adim = algebra_->dim();
            const CochainSpace& c1 = cnp;
            for (long col = 0; col < cn.total_dim; ++col) {
                Vec m_rep = cn.c0->lift(unit_vec(cn.total_dim, col));
                for (long al = 0; al < w; ++al) {
                    Matrix v(c1.values->qdim, adim);
                    for (long a = 0; a < adim; ++a)
                        v.set_col(a, d0_column(m_rep, al, a).coords);
                    place_block(out, c1, al, v, col);
                }
            }
            return out;
        }

        long w = algebra_->w(), adim = algebra_->dim();
        const OpFamily& star = algebra_->op("star");
        const OpFamily& rl = coeffs_->left;
        const OpFamily& rr = coeffs_->right;
        const FiniteSemigroup& om = *algebra_->omega;

        long out_idx_tuples = cnp.idx_tuples;
        long out_args = cnp.arg_tuples;

        parallel_for(cn.total_dim, [&](long col) {
            std::vector<long> beta(n + 1), args(n + 1), sub(n);
            long support = col / cn.hom_dim;  // index tuple of the basis cochain
            long hb = col % cn.hom_dim;
            const Matrix& val = cn.hom_basis[hb];
            auto value_at = [&](long idx_tuple, const std::vector<long>& a_tuple) {
                // basis cochain concentrated at `support`
                if (idx_tuple != support) return QElement{cn.values, Vec(cn.values->qdim)};
                long t = 0;
                for (long i = 0; i < n; ++i) t = t * adim + a_tuple[i];
                return QElement{cn.values, val.col(t)};
            };

            for (long bt = 0; bt < out_idx_tuples; ++bt) {
                long tmp = bt;
                for (long i = n + 1; i-- > 0;) {
                    beta[i] = tmp % w;
                    tmp /= w;
                }
                Matrix v(cnp.values->qdim, out_args);
                bool any = false;
                for (long at = 0; at < out_args; ++at) {
                    long tmp2 = at;
                    for (long i = n + 1; i-- > 0;) {
                        args[i] = tmp2 % adim;
                        tmp2 /= adim;
                    }
                    QElement acc = qzero(cnp.values);

                    // a_1 . f_{b2..b_{n+1}}(a_2,...)
                    {
                        long idx = 0, prod = beta[1];
                        for (long i = 2; i <= n; ++i) prod = om.op(prod, beta[i]);
                        for (long i = 1; i <= n; ++i) idx = idx * w + beta[i];
                        for (long i = 1; i <= n; ++i) sub[i - 1] = args[i];
                        QElement fv = value_at(idx, sub);
                        if (!fv.is_zero()) {
                            acc = acc + fuse_right(rl, beta[0], prod, args[0], fv);
                            any = true;
                        }
                    }
                    // inner insertions
                    for (long i = 1; i <= n; ++i) {
                        // merged index tuple (b_1,..,b_i b_{i+1},..,b_{n+1})
                        long idx = 0;
                        for (long p = 0; p < i - 1; ++p) idx = idx * w + beta[p];
                        idx = idx * w + om.op(beta[i - 1], beta[i]);
                        for (long p = i + 1; p <= n; ++p) idx = idx * w + beta[p];

                        const QuotientTensorSpace& spA2 = *star.target;
                        Vec sv = spA2.lift(star.at(beta[i - 1], beta[i], args[i - 1], args[i]));
                        Rational sign((i % 2) ? -1 : 1);
                        long d = algebra_->carrier->hopf->dim;
                        for (long vi = 0; vi < spA2.ambient_dim; ++vi) {
                            if (sv[vi].is_zero()) continue;
                            long c = vi % adim;
                            long pq = vi / adim;
                            for (long p = 0; p < i - 1; ++p) sub[p] = args[p];
                            sub[i - 1] = c;
                            for (long p = i + 1; p <= n; ++p) sub[p - 1] = args[p];
                            QElement fv = value_at(idx, sub);
                            if (fv.is_zero()) continue;
                            Vec g(d * d);
                            g[pq] = Rational(1);
                            acc = acc + slot_compose(fv, i, g).scaled(sign * sv[vi]);
                            any = true;
                        }
                    }
                    // f(a_1..a_n) . a_{n+1}
                    {
                        long idx = 0, prod = beta[0];
                        for (long i = 1; i < n; ++i) prod = om.op(prod, beta[i]);
                        for (long i = 0; i < n; ++i) idx = idx * w + beta[i];
                        for (long i = 0; i < n; ++i) sub[i] = args[i];
                        QElement fv = value_at(idx, sub);
                        if (!fv.is_zero()) {
                            Rational sign(((n + 1) % 2) ? -1 : 1);
                            acc = acc +
                                  fuse_left(rr, prod, beta[n], fv, args[n]).scaled(sign);
                            any = true;
                        }
                    }
                    v.set_col(at, acc.coords);
                }
                if (any) place_block(out, cnp, bt, v, col);
            }
        });
        return out;
    }

    // express a value matrix in the hom basis and write it into the column of
    // the big differential matrix at the given index-tuple block
    void place_block(Matrix& out, const CochainSpace& target, long idx_tuple, const Matrix& v,
                     long col) {
        auto coords = target.hom_solver.solve(target.vec_of(v));
        if (!coords)
            throw std::logic_error(
                "coordinate solve failed: differential left the hom space");
        for (long b = 0; b < target.hom_dim; ++b)
            if (!(*coords)[b].is_zero())
                out.at(idx_tuple * target.hom_dim + b, col) = (*coords)[b];
    }
};

// Builds the adjoint-coefficient complex of an omega-associative structure.
inline CochainComplex adjoint_complex(const std::shared_ptr<const PseudoStructure>& s) {
    return CochainComplex(s, adjoint_bimodule(s));
}

// The operator-family complex of Sec 4.2: C^n(M, A) with the differential
// delta assembled directly from its displayed formula (T-twisted outer terms,
// T-mixed inner insertions). The same spaces also carry the d-complex of the
// induced pair (Prop 4.2 structure on M, Thm 4.3 bimodule on A); delta(n)
// asserts the two matrices are equal entry for entry before returning.
class OOPComplex {
public:
    explicit OOPComplex(std::shared_ptr<const OperatorFamily> fam)
        : fam_(std::move(fam)),
          induced_alg_(oop_induced_structure(*fam_)),
          induced_bim_(oop_induced_bimodule(*fam_, induced_alg_)),
          induced_(induced_alg_, induced_bim_) {}

    CochainComplex& induced() { return induced_; }
    const PseudoStructure& induced_algebra() const { return *induced_alg_; }

    const Matrix& delta(long n) {
        auto it = dmats_.find(n);
        if (it != dmats_.end()) return it->second;
        Matrix m = build_delta(n);
        if (!(m == induced_.d(n)))
            throw check_error("delta complex disagrees with the induced d complex at degree " +
                              std::to_string(n));
        return dmats_.emplace(n, std::move(m)).first->second;
    }

    RankTriple ranks(long n) {
        RankTriple r;
        r.cocycles = induced_.space(n).total_dim - rank(delta(n));
        r.coboundaries = n == 0 ? 0 : rank(delta(n - 1));
        r.cohomology = r.cocycles - r.coboundaries;
        return r;
    }

    CheckReport verify_complex(long nmax) {
        CheckReport rep;
        rep.subject = "operator family complex";
        for (long n = 1; n <= nmax; ++n) {
            Matrix comp = delta(n).mul(delta(n - 1));
            CheckLine line{"delta" + std::to_string(n) + "-after-delta" + std::to_string(n - 1),
                           "Sec 4.2 delta o delta = 0", induced_.space(n - 1).total_dim, 0, {}};
            for (long c = 0; c < comp.cols; ++c) {
                bool zero = true;
                for (long r = 0; r < comp.rows && zero; ++r)
                    if (!comp.at(r, c).is_zero()) zero = false;
                if (!zero) line.failures.push_back({{}, {c}, "basis cochain column"});
            }
            rep.lines.push_back(std::move(line));
        }
        return rep;
    }

private:
    std::shared_ptr<const OperatorFamily> fam_;
    std::shared_ptr<const PseudoStructure> induced_alg_;
    std::shared_ptr<const BimoduleStructure> induced_bim_;
    CochainComplex induced_;
    std::map<long, Matrix> dmats_;

    Matrix build_delta(long n) {
        const CochainSpace& cn = induced_.space(n);
        const CochainSpace& cnp = induced_.space(n + 1);
        const BimoduleStructure& b = *fam_->bimodule;
        const OpFamily& star = b.algebra->op("star");
        const OpFamily& rl = b.left;
        const OpFamily& rr = b.right;
        const FiniteSemigroup& om = *fam_->omega;
        long w = om.size, mdim = fam_->mdim();
        auto spA_np = b.algebra->carrier->space(n + 1);

        Matrix out(cnp.total_dim, cn.total_dim);
        if (n == 0) {
            if (!om.unit) throw input_error("operator cohomology degree 0 needs a unit");
            auto spA2 = b.algebra->carrier->space(2);
            for (long col = 0;col < cn.total_dim; ++col) {
                Vec a_rep = cn.c0->lift(unit_vec(cn.total_dim, col));
                for (long al = 0; al < w; ++al) {
                    Matrix v(cnp.values->qdim, mdim);
                    for (long u = 0; u < mdim; ++u) {
                        Vec tu = fam_->maps[al].col(u);
                        QElement x1 = star.value_vec(0, 0, tu, a_rep);
                        QElement x2 = map_coefficients(
                            rr.value_vec(0, 0, unit_vec(mdim, u), a_rep), fam_->maps[al],
                            spA2);
                        QElement y1 = star.value_vec(0, 0, a_rep, tu);
                        QElement y2 = map_coefficients(
                            rl.value_vec(0, 0, a_rep, unit_vec(mdim, u)), fam_->maps[al],
                            spA2);
                        QElement val = contract_counit(x1 - x2, /*drop_second=*/true) -
                                       contract_counit(y1 - y2, /*drop_second=*/false);
                        v.set_col(u, val.coords);
                    }
                    place(out, cnp, al, v, col);
                }
            }
            return out;
        }

        parallel_for(cn.total_dim, [&](long col) {
            std::vector<long> beta(n + 1), args(n + 1), sub(n);
            long support = col / cn.hom_dim;
            long hb = col % cn.hom_dim;
            const Matrix& val = cn.hom_basis[hb];
            auto value_at = [&](long idx_tuple, const std::vector<long>& u_tuple) {
                if (idx_tuple != support) return QElement{cn.values, Vec(cn.values->qdim)};
                long t = 0;
                for (long i = 0; i < n; ++i) t = t * mdim + u_tuple[i];
                return QElement{cn.values, val.col(t)};
            };

            for (long bt = 0; bt < cnp.idx_tuples; ++bt) {
                long tmp = bt;
                for (long i = n + 1; i-- > 0;) {
                    beta[i] = tmp % w;
                    tmp /= w;
                }
                long all_prod = beta[0];
                for (long i = 1; i <= n; ++i) all_prod = om.op(all_prod, beta[i]);
                Matrix v(cnp.values->qdim, cnp.arg_tuples);
                bool any = false;
                for (long at = 0; at < cnp.arg_tuples; ++at) {
                    long tmp2 = at;
                    for (long i = n + 1; i-- > 0;) {
                        args[i] = tmp2 % mdim;
                        tmp2 /= mdim;
                    }
                    QElement acc = qzero(cnp.values);

                    // T_{b1}(u_1) * f(...) - T_{b1..b_{n+1}}(u_1 * f(...))
                    {
                        long idx = 0;
                        for (long i = 1; i <= n; ++i) idx = idx * w + beta[i];
                        for (long i = 1; i <= n; ++i) sub[i - 1] = args[i];
                        QElement fv = value_at(idx, sub);
                        if (!fv.is_zero()) {
                            acc = acc + fuse_right(star, 0, 0, fam_->maps[beta[0]].col(args[0]),
                                                   fv);
                            QElement inner =
                                fuse_right(rr, 0, 0, unit_vec(mdim, args[0]), fv);
                            acc = acc - map_coefficients(inner, fam_->maps[all_prod], spA_np);
                            any = true;
                        }
                    }
                    // inner insertions with the induced product values
                    for (long i = 1; i <= n; ++i) {
                        long idx = 0;
                        for (long p = 0; p < i - 1; ++p) idx = idx * w + beta[p];
                        idx = idx * w + om.op(beta[i - 1], beta[i]);
                        for (long p = i + 1; p <= n; ++p) idx = idx * w + beta[p];

                        QElement iv =
                            rl.value_vec(0, 0, fam_->maps[beta[i - 1]].col(args[i - 1]),
                                         unit_vec(mdim, args[i])) +
                            rr.value_vec(0, 0, unit_vec(mdim, args[i - 1]),
                                         fam_->maps[beta[i]].col(args[i]));
                        const QuotientTensorSpace& spM2 = *rl.target;
                        Vec sv = spM2.lift(iv.coords);
                        Rational sign((i % 2) ? -1 : 1);
                        long d = b.carrier->hopf->dim;
                        for (long vi = 0; vi < spM2.ambient_dim; ++vi) {
                            if (sv[vi].is_zero()) continue;
                            long c = vi % mdim;
                            long pq = vi / mdim;
                            for (long p = 0; p < i - 1; ++p) sub[p] = args[p];
                            sub[i - 1] = c;
                            for (long p = i + 1; p <= n; ++p) sub[p - 1] = args[p];
                            QElement fv = value_at(idx, sub);
                            if (fv.is_zero()) continue;
                            Vec g(d * d);
                            g[pq] = Rational(1);
                            acc = acc + slot_compose(fv, i, g).scaled(sign * sv[vi]);
                            any = true;
                        }
                    }
                    // (-1)^{n+1} ( f(u_1..u_n) * T(u_{n+1}) - T_{b1..}(f(..) * u_{n+1}) )
                    {
                        long idx = 0;
                        for (long i = 0; i < n; ++i) idx = idx * w + beta[i];
                        for (long i = 0; i < n; ++i) sub[i] = args[i];
                        QElement fv = value_at(idx, sub);
                        if (!fv.is_zero()) {
                            Rational sign(((n + 1) % 2) ? -1 : 1);
                            acc = acc + fuse_left(star, 0, 0, fv,
                                                  fam_->maps[beta[n]].col(args[n]))
                                            .scaled(sign);
                            QElement inner = fuse_left(rl, 0, 0, fv, args[n]);
                            acc = acc - map_coefficients(inner, fam_->maps[all_prod], spA_np)
                                            .scaled(sign);
                            any = true;
                        }
                    }
                    v.set_col(at, acc.coords);
                }
                if (any) place(out, cnp, bt, v, col);
            }
        });
        return out;
    }

    void place(Matrix& out, const CochainSpace& target, long idx_tuple, const Matrix& v,
               long col) {
        auto coords = target.hom_solver.solve(target.vec_of(v));
        if (!coords)
            throw std::logic_error("coordinate solve failed in the delta complex");
        for (long b = 0; b < target.hom_dim; ++b)
            if (!(*coords)[b].is_zero())
                out.at(idx_tuple * target.hom_dim + b, col) = (*coords)[b];
    }
};

}  // namespace opal
