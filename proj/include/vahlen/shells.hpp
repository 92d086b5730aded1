#pragma once

#include "vahlen/group_spec.hpp"

#include <set>

namespace vahlen {

// Enumeration of the shell { M in G : |M|^2 = n }, modulo +-I.
//
// Entries are represented by their chi1/chi2 component pairs in the
// weighted integer lattice of the order. The pseudo-determinant relation
// and the four vector conditions leave alpha's pair and the chi1 sides of
// beta and gamma free; everything else is solved for and checked:
//   r_b = r_a q_b* (q_a*)^{-1}        (alpha beta* a vector)
//   r_c = (q_a*)^{-1} q_c* r_a        (gamma* alpha a vector)
//   q_d* = r_a^{-1}(1 + r_b q_c*),  r_d* = q_a^{-1}(1 + q_b r_c*)
// For alpha = 0 the relation beta gamma* = -1 pins gamma instead.
class ShellEnumerator {
public:
    explicit ShellEnumerator(GroupSpec spec)
        : spec_(std::move(spec)), ctx_(spec_.ctx()), order_(spec_.order()) {}

    const GroupSpec& spec() const { return spec_; }
    FieldDesc field() const { return order_.field; }

    // All shell members as pair matrices, canonically signed, sorted.
    std::vector<PairMatrix> shell_pairs(std::int64_t n) const {
        std::set<PairMatrix> out;
        for (std::int64_t ka = 0; ka <= n; ++ka)
            for (std::int64_t kb = 0; kb + ka <= n; ++kb)
                for (std::int64_t kc = 0; kc + kb + ka <= n; ++kc)
                    enumerate_partition(ka, kb, kc, n - ka - kb - kc, out);
        return {out.begin(), out.end()};
    }

    // Shells are indexed by |M|^2 in half-integer steps; balanced entries
    // force integer values, so fractional shells are empty outright.
    std::vector<PairMatrix> shell_pairs_fractional(const Rat& norm) const {
        if (denominator(norm) != 1) return {};
        return shell_pairs(numerator(norm).convert_to<std::int64_t>());
    }

    // Same restricted to the hyperplane-type column condition
    // |alpha|^2 + |gamma|^2 = 1 (and not fixing the base point).
    std::vector<PairMatrix> hyperplane_pairs(std::int64_t n) const {
        std::vector<PairMatrix> out;
        for (const auto& m : shell_pairs(n)) {
            std::int64_t g = ctx_.norm(m.qa) + ctx_.norm(m.qc);
            if (g == 1 && !is_su_pair(m)) out.push_back(m);
        }
        return out;
    }

    std::vector<PairMatrix> sphere_pairs(std::int64_t n) const {
        std::vector<PairMatrix> out;
        for (const auto& m : shell_pairs(n)) {
            std::int64_t g = ctx_.norm(m.qa) + ctx_.norm(m.qc);
            if (g != 1 && !is_su_pair(m)) out.push_back(m);
        }
        return out;
    }

    // Translations (1, lift(b); 0, 1) with |b|^2 = n - 2: the hyperplane
    // shell of a full group after normalizing by the stabilizer.
    std::vector<PairMatrix> translation_pairs(std::int64_t n) const {
        std::vector<PairMatrix> out;
        if (n < 3) return out;
        IQuat one = IQuatCtx::one();
        for (const IQuat& b : ctx_.sphere(n - 2)) {
            PairMatrix m;
            m.qa = m.ra = m.qd = m.rd = one;
            m.qb = b;
            m.rb = b.star();
            m.qc = m.rc = IQuat{};
            PairMatrix cm = m.canonical_sign();
            if (spec_.member_pairwise(cm)) out.push_back(cm);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_su_pair(const PairMatrix& m) const {
        // delta = alpha', beta = -gamma'
        return m.qd == m.ra.prime() && m.rd == m.qa.prime() &&
               m.qb == -(m.rc.prime()) && m.rb == -(m.qc.prime());
    }

    std::int64_t norm_sq(const PairMatrix& m) const {
        return ctx_.norm(m.qa) + ctx_.norm(m.qb) + ctx_.norm(m.qc) + ctx_.norm(m.qd);
    }

    // |alpha|^2 + |gamma|^2, deciding hyperplane against hemisphere walls
    std::int64_t column_norm(const PairMatrix& m) const {
        return ctx_.norm(m.qa) + ctx_.norm(m.qc);
    }

    Quaternion to_quaternion(const IQuat& q) const {
        return order_.embed(Rat(q.c[0]), Rat(q.c[1]), Rat(q.c[2]), Rat(q.c[3]));
    }

    CliffordElement to_entry(const IQuat& q, const IQuat& r) const {
        return join_idempotent(to_quaternion(q), to_quaternion(r), order_.field);
    }

    // Exact matrix, with the full validity certificate re-checked.
    VahlenMatrix to_matrix(const PairMatrix& m) const {
        VahlenMatrix v(to_entry(m.qa, m.ra), to_entry(m.qb, m.rb),
                       to_entry(m.qc, m.rc), to_entry(m.qd, m.rd));
        if (auto why = v.validity_failure())
            throw std::logic_error("enumerated candidate fails validity: " + *why);
        if (!spec_.member(v))
            throw std::logic_error("enumerated candidate fails exact membership");
        return v;
    }

private:
    void enumerate_partition(std::int64_t ka, std::int64_t kb, std::int64_t kc, std::int64_t kd,
                             std::set<PairMatrix>& out) const {
        if (ka == 0) {
            enumerate_alpha_zero(kb, kc, kd, out);
            return;
        }
        const auto& pa = ctx_.sphere(ka);
        const auto& pb = ctx_.sphere(kb);
        const auto& pc = ctx_.sphere(kc);
        IQuat id = IQuatCtx::one();
        for (const IQuat& qa : pa)
            for (const IQuat& ra : pa) {
                if (!spec_.parity_ok(qa, ra)) continue;
                IQuat qa_star_conj = qa.star().conj();
                IQuat ra_conj = ra.conj();
                IQuat qa_conj = qa.conj();
                for (const IQuat& qb : kb == 0 ? zero_list() : pb) {
                    IQuat rb;
                    if (kb != 0) {
                        auto t = IQuatCtx::divide(ctx_.mul(ctx_.mul(ra, qb.star()), qa_star_conj), ka);
                        if (!t || ctx_.norm(*t) != kb) continue;
                        rb = *t;
                        if (!spec_.parity_ok(qb, rb)) continue;
                    }
                    for (const IQuat& qc : kc == 0 ? zero_list() : pc) {
                        IQuat rc;
                        if (kc != 0) {
                            auto t = IQuatCtx::divide(ctx_.mul(qa_star_conj, ctx_.mul(qc.star(), ra)), ka);
                            if (!t || ctx_.norm(*t) != kc) continue;
                            rc = *t;
                            if (!spec_.parity_ok(qc, rc)) continue;
                        }
                        // q_d = star(conj(r_a)(1 + r_b q_c*) / ka)
                        auto qd = IQuatCtx::divide(
                            ctx_.mul(ra_conj, id + ctx_.mul(rb, qc.star())), ka);
                        if (!qd) continue;
                        IQuat qdv = qd->star();
                        if (ctx_.norm(qdv) != kd) continue;
                        auto rd = IQuatCtx::divide(
                            ctx_.mul(qa_conj, id + ctx_.mul(qb, rc.star())), ka);
                        if (!rd) continue;
                        IQuat rdv = rd->star();
                        if (ctx_.norm(rdv) != kd) continue;
                        if (!spec_.parity_ok(qdv, rdv)) continue;
                        PairMatrix m{qa, ra, qb, rb, qc, rc, qdv, rdv};
                        if (!check_remaining(m)) continue;
                        if (!spec_.congruence_ok(m)) continue;
                        out.insert(m.canonical_sign());
                    }
                }
            }
    }

    void enumerate_alpha_zero(std::int64_t kb, std::int64_t kc, std::int64_t kd,
                              std::set<PairMatrix>& out) const {
        if (kb != 1 || kc != 1) return; // beta gamma* = -1 forces unit norms
        const auto& units = ctx_.sphere(1);
        for (const IQuat& qb : units)
            for (const IQuat& rb : units) {
                if (!spec_.parity_ok(qb, rb)) continue;
                IQuat rc = -(qb.conj().star());
                IQuat qc = -(rb.conj().star());
                if (!spec_.parity_ok(qc, rc)) continue;
                for (const IQuat& qd : kd == 0 ? zero_list() : ctx_.sphere(kd)) {
                    IQuat rd;
                    if (kd != 0) {
                        // r_d = r_c q_d* (q_c*)^{-1}, |q_c| = 1
                        rd = ctx_.mul(ctx_.mul(rc, qd.star()), qc.star().conj());
                        if (ctx_.norm(rd) != kd) continue;
                        if (!spec_.parity_ok(qd, rd)) continue;
                    }
                    PairMatrix m{IQuat{}, IQuat{}, qb, rb, qc, rc, qd, rd};
                    if (!check_remaining(m)) continue;
                    if (!spec_.congruence_ok(m)) continue;
                    out.insert(m.canonical_sign());
                }
            }
    }

    static const std::vector<IQuat>& zero_list() {
        static const std::vector<IQuat> z{IQuat{}};
        return z;
    }

    // conditions not enforced by construction
    bool check_remaining(const PairMatrix& m) const {
        IQuat id = IQuatCtx::one();
        // determinant, both components
        if (!(ctx_.mul(m.qa, m.rd.star()) - ctx_.mul(m.qb, m.rc.star()) == id)) return false;
        if (!(ctx_.mul(m.ra, m.qd.star()) - ctx_.mul(m.rb, m.qc.star()) == id)) return false;
        // the four vector conditions
        if (!(ctx_.mul(m.ra, m.qb.star()) == ctx_.mul(m.rb, m.qa.star()))) return false;
        if (!(ctx_.mul(m.rc, m.qd.star()) == ctx_.mul(m.rd, m.qc.star()))) return false;
        if (!(ctx_.mul(m.qc.star(), m.ra) == ctx_.mul(m.qa.star(), m.rc))) return false;
        if (!(ctx_.mul(m.qd.star(), m.rb) == ctx_.mul(m.qb.star(), m.rd))) return false;
        // zero-or-invertible entries with balanced components
        auto entry_ok = [&](const IQuat& q, const IQuat& r) {
            if (q.is_zero() != r.is_zero()) return false;
            return ctx_.norm(q) == ctx_.norm(r);
        };
        return entry_ok(m.qa, m.ra) && entry_ok(m.qb, m.rb) && entry_ok(m.qc, m.rc) &&
               entry_ok(m.qd, m.rd);
    }

    GroupSpec spec_;
    IQuatCtx ctx_;
    QuatOrder order_;
};

} // namespace vahlen
