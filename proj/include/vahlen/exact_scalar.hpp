#pragma once

#include "vahlen/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>

namespace vahlen {

// The real field Q(sqrt(p), sqrt(q)) with p, q squarefree and >= 1.
// Degenerate descriptors: p = q = 1 is Q itself, q = 1 with p > 1 is
// the quadratic field Q(sqrt(p)). A value is stored on the fixed basis
// {1, sqrt(p), sqrt(q), sqrt(p)*sqrt(q)}; with distinct squarefree
// p, q > 1 that basis is linearly independent over Q, so equality and
// the zero test are coefficient-wise.
struct FieldDesc {
    long p = 1;
    long q = 1;

    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;

    bool rational() const { return p == 1 && q == 1; }

    // Descriptor for Q(sqrt(a), sqrt(b)) given arbitrary positive integers:
    // square parts are stripped, duplicates and 1s collapse.
    static FieldDesc of_radicands(long a, long b) {
        long sa, fa, sb, fb;
        squarefree_decompose(a, sa, fa);
        squarefree_decompose(b, sb, fb);
        if (fa == fb) fb = 1;      // same surd twice
        if (fa == 1) std::swap(fa, fb);
        if (fa != 1 && fb != 1 && fa > fb) std::swap(fa, fb);
        return FieldDesc{fa, fb};
    }
};

class ExactScalar {
public:
    ExactScalar() : field_{}, c_{Rat(0), Rat(0), Rat(0), Rat(0)} {}

    explicit ExactScalar(Rat r, FieldDesc f = {})
        : field_(f), c_{std::move(r), Rat(0), Rat(0), Rat(0)} {}

    ExactScalar(FieldDesc f, Rat c0, Rat c1, Rat c2, Rat c3)
        : field_(f), c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {
        if (field_.p == 1) { c_[0] += c_[1]; c_[1] = 0; c_[2] += c_[3]; c_[3] = 0; }
        if (field_.q == 1) { c_[0] += c_[2]; c_[2] = 0; c_[1] += c_[3]; c_[3] = 0; }
    }

    static ExactScalar integer(long n, FieldDesc f = {}) { return ExactScalar(Rat(n), f); }

    const FieldDesc& field() const { return field_; }
    const Rat& coeff(int i) const { return c_[i]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    const Rat& rational_part() const { return c_[0]; }

    Rat as_rational() const {
        if (!is_rational()) throw std::domain_error("ExactScalar is irrational");
        return c_[0];
    }

    bool is_integer() const {
        return is_rational() && denominator(c_[0]) == 1;
    }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    ExactScalar operator-() const {
        ExactScalar r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        const FieldDesc f = merged(a, b);
        ExactScalar r(Rat(0), f);
        for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
        const FieldDesc f = merged(a, b);
        ExactScalar r(Rat(0), f);
        for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        const FieldDesc f = merged(a, b);
        if (a.is_rational() || b.is_rational()) {          // frequent fast path
            const ExactScalar& s = a.is_rational() ? b : a;
            const Rat& r = a.is_rational() ? a.c_[0] : b.c_[0];
            ExactScalar out(Rat(0), f);
            for (int i = 0; i < 4; ++i) out.c_[i] = s.c_[i] * r;
            return out;
        }
        const Rat P(f.p), Q(f.q), PQ(Rat(f.p) * f.q);
        ExactScalar r(Rat(0), f);
        // basis: 0 ~ 1, 1 ~ sqrt p, 2 ~ sqrt q, 3 ~ sqrt p * sqrt q
        r.c_[0] = a.c_[0] * b.c_[0] + P * a.c_[1] * b.c_[1] + Q * a.c_[2] * b.c_[2] + PQ * a.c_[3] * b.c_[3];
        r.c_[1] = a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0] + Q * (a.c_[2] * b.c_[3] + a.c_[3] * b.c_[2]);
        r.c_[2] = a.c_[0] * b.c_[2] + a.c_[2] * b.c_[0] + P * (a.c_[1] * b.c_[3] + a.c_[3] * b.c_[1]);
        r.c_[3] = a.c_[0] * b.c_[3] + a.c_[3] * b.c_[0] + a.c_[1] * b.c_[2] + a.c_[2] * b.c_[1];
        return r;
    }

    // sigma1: sqrt p -> -sqrt p; sigma2: sqrt q -> -sqrt q.
    ExactScalar conj1() const { ExactScalar r(*this); r.c_[1] = -r.c_[1]; r.c_[3] = -r.c_[3]; return r; }
    ExactScalar conj2() const { ExactScalar r(*this); r.c_[2] = -r.c_[2]; r.c_[3] = -r.c_[3]; return r; }

    ExactScalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (is_rational()) { ExactScalar r(Rat(1) / c_[0], field_); return r; }
        // Rationalize with the three Galois conjugates; the norm is a
        // nonzero rational because the basis is independent.
        ExactScalar n1 = conj1(), n2 = conj2(), n3 = conj1().conj2();
        ExactScalar prod = n1 * n2 * n3;
        ExactScalar norm = *this * prod;
        if (!norm.is_rational() || norm.c_[0] == 0)
            throw std::logic_error("field norm failed to rationalize");
        Rat inv = Rat(1) / norm.c_[0];
        ExactScalar r(Rat(0), field_);
        for (int i = 0; i < 4; ++i) r.c_[i] = prod.c_[i] * inv;
        return r;
    }

    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_rational()) {
            if (b.c_[0] == 0) throw std::domain_error("division by zero");
            ExactScalar r(Rat(0), merged(a, b));
            Rat inv = Rat(1) / b.c_[0];
            for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] * inv;
            return r;
        }
        return a * b.inverse();
    }

    ExactScalar& operator+=(const ExactScalar& o) { *this = *this + o; return *this; }
    ExactScalar& operator-=(const ExactScalar& o) { *this = *this - o; return *this; }
    ExactScalar& operator*=(const ExactScalar& o) { *this = *this * o; return *this; }

    // Exact sign. Zero is decided coefficient-wise (independent basis);
    // otherwise dyadic enclosures of the surds are refined until the
    // evaluation interval excludes zero.
    int sign() const {
        if (is_zero()) return 0;
        if (is_rational()) return c_[0].sign();
        for (unsigned bits = 16;; bits *= 2) {
            auto [lo, hi] = enclose(bits);
            if (lo > 0) return 1;
            if (hi < 0) return -1;
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& s) {
        os << rat_to_string(s.c_[0]);
        static const char* tag[3] = {"*rp", "*rq", "*rpq"};
        for (int i = 1; i < 4; ++i)
            if (s.c_[i] != 0) os << " + " << rat_to_string(s.c_[i]) << tag[i - 1];
        return os;
    }

private:
    static FieldDesc merged(const ExactScalar& a, const ExactScalar& b) {
        if (a.field_ == b.field_) return a.field_;
        if (a.is_rational()) return b.field_;
        if (b.is_rational()) return a.field_;
        throw std::invalid_argument("field descriptor mismatch");
    }

    // [lo,hi] enclosure of sqrt(n) with denominator 2^bits.
    static std::pair<Rat, Rat> sqrt_enclosure(long n, unsigned bits) {
        Int scaled = Int(n);
        scaled <<= 2 * bits;
        Int lo = isqrt_floor(scaled);
        Int den = Int(1) << bits;
        return {Rat(lo, den), Rat(lo + 1, den)};
    }

    std::pair<Rat, Rat> enclose(unsigned bits) const {
        auto [pl, ph] = sqrt_enclosure(field_.p, bits);
        auto [ql, qh] = sqrt_enclosure(field_.q, bits);
        auto add_term = [](Rat& lo, Rat& hi, const Rat& c, const Rat& tl, const Rat& th) {
            if (c >= 0) { lo += c * tl; hi += c * th; }
            else        { lo += c * th; hi += c * tl; }
        };
        Rat lo = c_[0], hi = c_[0];
        add_term(lo, hi, c_[1], pl, ph);
        add_term(lo, hi, c_[2], ql, qh);
        add_term(lo, hi, c_[3], pl * ql, ph * qh);
        return {lo, hi};
    }

    FieldDesc field_;
    std::array<Rat, 4> c_;
};

inline int sign_of(const ExactScalar& s) { return s.sign(); }

inline ExactScalar abs(const ExactScalar& s) { return s.sign() < 0 ? -s : s; }

// sign of e + f*sqrt(w), all operands in the field, w >= 0.
inline int sign_a_plus_b_sqrt(const ExactScalar& e, const ExactScalar& f, const ExactScalar& w) {
    int sw = w.sign();
    if (sw < 0) throw std::domain_error("negative radicand");
    int se = e.sign(), sf = f.sign();
    if (sw == 0 || sf == 0) return se;
    if (se == 0) return sf;
    if (se == sf) return se;
    // |e| vs |f| sqrt(w): compare squares, the larger magnitude wins.
    int cmp = (e * e - f * f * w).sign();
    if (cmp == 0) return 0;
    return cmp > 0 ? se : sf;
}

// sign of sqrt(a) - sqrt(b), a, b >= 0.
inline int sign_sqrt_diff(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign(); }

} // namespace vahlen
