#pragma once

#include "vahlen/exact_scalar.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace vahlen {

// Cl_n over ExactScalar coefficients, generated by i_1 .. i_{n-1} with
// i_h^2 = -1 and i_h i_k = -i_k i_h. Blades are indexed by bitmasks
// (bit h-1 <-> generator i_h), 2^(n-1) dense coefficients.
class CliffordElement {
public:
    CliffordElement() : degree_(4), c_(8) {}

    explicit CliffordElement(int degree, FieldDesc f = {})
        : degree_(degree), field_(f), c_(std::size_t(1) << (degree - 1), ExactScalar(Rat(0), f)) {
        if (degree < 3 || degree > 5) throw std::invalid_argument("degree out of range");
    }

    static CliffordElement scalar(int degree, const ExactScalar& v) {
        CliffordElement e(degree, v.field());
        e.c_[0] = v;
        return e;
    }

    static CliffordElement scalar(int degree, long v, FieldDesc f = {}) {
        return scalar(degree, ExactScalar::integer(v, f));
    }

    // i_h, 1-based
    static CliffordElement generator(int degree, int h, FieldDesc f = {}) {
        CliffordElement e(degree, f);
        e.c_[1u << (h - 1)] = ExactScalar::integer(1, f);
        return e;
    }

    static CliffordElement blade(int degree, unsigned mask, const ExactScalar& v) {
        CliffordElement e(degree, v.field());
        e.c_.at(mask) = v;
        return e;
    }

    int degree() const { return degree_; }
    const FieldDesc& field() const { return field_; }
    std::size_t blade_count() const { return c_.size(); }
    const ExactScalar& coeff(unsigned mask) const { return c_.at(mask); }
    void set_coeff(unsigned mask, const ExactScalar& v) { c_.at(mask) = v; }

    bool is_zero() const {
        for (const auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return a.degree_ == b.degree_ && a.c_ == b.c_;
    }

    CliffordElement operator-() const {
        CliffordElement r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
        check_same(a, b);
        CliffordElement r(a);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
        check_same(a, b);
        CliffordElement r(a);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
        check_same(a, b);
        CliffordElement r(a.degree_, a.field_.rational() ? b.field_ : a.field_);
        for (unsigned i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (unsigned j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                int s = mult_sign(i, j);
                ExactScalar term = a.c_[i] * b.c_[j];
                r.c_[i ^ j] += (s < 0) ? -term : term;
            }
        }
        return r;
    }

    friend CliffordElement operator*(const CliffordElement& a, const ExactScalar& s) {
        CliffordElement r(a);
        for (auto& x : r.c_) x *= s;
        return r;
    }

    // main conjugation: i_h -> -i_h, sign (-1)^g
    CliffordElement conj_prime() const { return graded_signs(1, 0); }
    // reversion: reverse factor order in each blade, sign (-1)^(g(g-1)/2)
    CliffordElement conj_star() const { return graded_signs(0, 1); }
    // composition of both, sign (-1)^(g(g+1)/2)
    CliffordElement conj_bar() const { return graded_signs(1, 1); }

    ExactScalar norm_sq() const {
        ExactScalar s(Rat(0), field_);
        for (const auto& x : c_) s += x * x;
        return s;
    }

    bool is_vector() const {
        for (unsigned m = 0; m < c_.size(); ++m)
            if (std::popcount(m) > 1 && !c_[m].is_zero()) return false;
        return true;
    }

    bool is_invertible_vector() const { return is_vector() && !is_zero(); }

    CliffordElement vector_inverse() const {
        if (!is_invertible_vector()) throw std::domain_error("not an invertible vector");
        return conj_bar() * norm_sq().inverse();
    }

    // x * bar(x) == |x|^2 as elements; holds on the Clifford group, where
    // it also gives the inverse x^{-1} = bar(x)/|x|^2.
    bool has_scalar_quasinorm() const {
        CliffordElement p = (*this) * conj_bar();
        for (unsigned m = 1; m < p.c_.size(); ++m)
            if (!p.c_[m].is_zero()) return false;
        return p.c_[0] == norm_sq();
    }

    CliffordElement group_inverse() const {
        ExactScalar n = norm_sq();
        if (n.is_zero()) throw std::domain_error("inverse of zero");
        CliffordElement inv = conj_bar() * n.inverse();
        return inv;
    }

    // View inside Cl_{n+1} (same generator bits).
    CliffordElement embed(int new_degree) const {
        if (new_degree < degree_) throw std::invalid_argument("cannot shrink degree");
        CliffordElement r(new_degree, field_);
        for (unsigned m = 0; m < c_.size(); ++m) r.c_[m] = c_[m];
        return r;
    }

    // x + y * i_n inside Cl_{n+1}, for x, y of degree n.
    static CliffordElement join_with_top(const CliffordElement& x, const CliffordElement& y) {
        CliffordElement r(x.degree_ + 1, x.field_);
        unsigned top = 1u << (x.degree_ - 1);
        for (unsigned m = 0; m < x.c_.size(); ++m) {
            r.c_[m] = x.c_[m];
            // blades of y pick up the sign from commuting i_n into place:
            // (i_{j1}..i_{jr}) i_n is already in ascending order.
            r.c_[m | top] = y.c_[m];
        }
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const CliffordElement& e) {
        bool first = true;
        for (unsigned m = 0; m < e.c_.size(); ++m) {
            if (e.c_[m].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << e.c_[m] << ")";
            for (int h = 0; h < e.degree_ - 1; ++h)
                if (m & (1u << h)) os << "i" << (h + 1);
        }
        if (first) os << "0";
        return os;
    }

    static int mult_sign(unsigned a, unsigned b) {
        int s = 1;
        unsigned acc = a;
        while (b) {
            unsigned j = std::countr_zero(b);
            b &= b - 1;
            unsigned higher = acc >> (j + 1);
            if (std::popcount(higher) & 1) s = -s;
            unsigned bit = 1u << j;
            if (acc & bit) { s = -s; acc &= ~bit; }
            else acc |= bit;
        }
        return s;
    }

private:
    static void check_same(const CliffordElement& a, const CliffordElement& b) {
        if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch");
    }

    // sign (-1)^(g*prime + g(g-1)/2*rev) per grade g
    CliffordElement graded_signs(int use_prime, int use_rev) const {
        CliffordElement r(*this);
        for (unsigned m = 0; m < c_.size(); ++m) {
            int g = std::popcount(m);
            long e = long(use_prime) * g + long(use_rev) * g * (g - 1) / 2;
            if (e & 1) r.c_[m] = -r.c_[m];
        }
        return r;
    }

    int degree_;
    FieldDesc field_;
    std::vector<ExactScalar> c_;
};

} // namespace vahlen
