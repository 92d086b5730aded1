#pragma once

#include "vahlen/clifford.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vahlen {

// Point y + r i_n of the upper half-space model H^{n+1}; y has n coordinates.
struct UpperPoint {
    std::vector<ExactScalar> y;
    ExactScalar r;

    int dim() const { return int(y.size()); }

    static UpperPoint base(int n, FieldDesc f = {}) {
        UpperPoint p;
        p.y.assign(n, ExactScalar(Rat(0), f));
        p.r = ExactScalar::integer(1, f);
        return p;
    }

    ExactScalar norm_sq() const {
        ExactScalar s = r * r;
        for (const auto& v : y) s += v * v;
        return s;
    }

    friend bool operator==(const UpperPoint&, const UpperPoint&) = default;
};

// 2x2 Clifford matrix. Validity follows the algebraic description of the
// special Vahlen group: pseudo-determinant 1, the four mixed products are
// vectors, and every entry is zero or has scalar quasi-norm (is in the
// Clifford group).
class VahlenMatrix {
public:
    VahlenMatrix() : a_(4), b_(4), c_(4), d_(4) {}

    VahlenMatrix(CliffordElement a, CliffordElement b, CliffordElement c, CliffordElement d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    static VahlenMatrix identity(int degree = 4, FieldDesc f = {}) {
        CliffordElement one = CliffordElement::scalar(degree, 1, f);
        CliffordElement zero(degree, f);
        return {one, zero, zero, one};
    }

    const CliffordElement& alpha() const { return a_; }
    const CliffordElement& beta() const { return b_; }
    const CliffordElement& gamma() const { return c_; }
    const CliffordElement& delta() const { return d_; }
    int degree() const { return a_.degree(); }

    friend bool operator==(const VahlenMatrix&, const VahlenMatrix&) = default;

    VahlenMatrix operator-() const { return {-a_, -b_, -c_, -d_}; }

    friend VahlenMatrix operator*(const VahlenMatrix& m, const VahlenMatrix& n) {
        return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_};
    }

    ExactScalar norm_sq() const {
        return a_.norm_sq() + b_.norm_sq() + c_.norm_sq() + d_.norm_sq();
    }

    // Nonempty = reason the matrix is not a valid group element.
    std::optional<std::string> validity_failure() const {
        auto entry_ok = [](const CliffordElement& e) {
            return e.is_zero() || e.has_scalar_quasinorm();
        };
        if (!entry_ok(a_)) return "alpha is neither zero nor in the Clifford group";
        if (!entry_ok(b_)) return "beta is neither zero nor in the Clifford group";
        if (!entry_ok(c_)) return "gamma is neither zero nor in the Clifford group";
        if (!entry_ok(d_)) return "delta is neither zero nor in the Clifford group";
        CliffordElement det = a_ * d_.conj_star() - b_ * c_.conj_star();
        if (!(det == CliffordElement::scalar(a_.degree(), 1, a_.field())))
            return "alpha delta* - beta gamma* != 1";
        if (!(a_ * b_.conj_star()).is_vector()) return "alpha beta* not a vector";
        if (!(c_ * d_.conj_star()).is_vector()) return "gamma delta* not a vector";
        if (!(c_.conj_star() * a_).is_vector()) return "gamma* alpha not a vector";
        if (!(d_.conj_star() * b_).is_vector()) return "delta* beta not a vector";
        return std::nullopt;
    }

    bool is_valid() const { return !validity_failure().has_value(); }

    // M^{-1} = (delta*, -beta*; -gamma*, alpha*)
    VahlenMatrix inverse() const {
        return {d_.conj_star(), -b_.conj_star(), -c_.conj_star(), a_.conj_star()};
    }

    // Fixes i_n iff delta = alpha', beta = -gamma' iff norm 2.
    bool is_su() const {
        return d_ == a_.conj_prime() && b_ == -c_.conj_prime();
    }

    // Hyperplane-type elements have |alpha|^2 + |gamma|^2 = 1.
    ExactScalar first_column_norm_sq() const { return a_.norm_sq() + c_.norm_sq(); }

    // Moebius action on the upper half-space, evaluated exactly:
    // image vector part (alpha bar(gamma) |z|^2 + beta bar(delta)
    //   + alpha y bar(delta) + beta bar(y) bar(gamma)) / |gamma z + delta|^2,
    // height r / |gamma z + delta|^2.
    UpperPoint act(const UpperPoint& z) const {
        const int n = degree();
        if (z.dim() != n) throw std::invalid_argument("point dimension mismatch");
        if (z.r.sign() <= 0) throw std::domain_error("point not in the upper half-space");
        FieldDesc f = z.r.field();
        CliffordElement y(n, f);
        for (int i = 0; i < n; ++i)
            y.set_coeff(i == 0 ? 0u : (1u << (i - 1)), z.y[i]);

        ExactScalar denom = (c_ * y + d_).norm_sq() + z.r * z.r * c_.norm_sq();
        if (denom.sign() <= 0) throw std::logic_error("degenerate denominator in the action");

        ExactScalar zn2 = z.norm_sq();
        CliffordElement num = a_ * c_.conj_bar() * CliffordElement::scalar(n, zn2)
                            + b_ * d_.conj_bar()
                            + a_ * y * d_.conj_bar()
                            + b_ * y.conj_bar() * c_.conj_bar();
        if (!num.is_vector()) throw std::logic_error("action image is not a vector");

        UpperPoint out;
        ExactScalar inv = denom.inverse();
        out.y.reserve(n);
        for (int i = 0; i < n; ++i)
            out.y.push_back(num.coeff(i == 0 ? 0u : (1u << (i - 1))) * inv);
        out.r = z.r * inv;
        return out;
    }

private:
    CliffordElement a_, b_, c_, d_;
};

} // namespace vahlen
