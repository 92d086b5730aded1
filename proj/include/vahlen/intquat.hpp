#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace vahlen {

// Integer quaternion in the coordinates of the order basis
// {1, sqrt(P) i, sqrt(Q) j, sqrt(PQ) k} with P = |x|, Q = |y|;
// multiplication is that of the quaternion algebra (x,y) over Q.
struct IQuat {
    std::array<std::int64_t, 4> c{0, 0, 0, 0};

    friend bool operator==(const IQuat&, const IQuat&) = default;
    friend auto operator<=>(const IQuat&, const IQuat&) = default;

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    IQuat operator-() const { return {{-c[0], -c[1], -c[2], -c[3]}}; }

    friend IQuat operator+(const IQuat& a, const IQuat& b) {
        return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
    }
    friend IQuat operator-(const IQuat& a, const IQuat& b) {
        return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
    }

    IQuat conj() const { return {{c[0], -c[1], -c[2], -c[3]}}; }
    IQuat star() const { return {{c[0], c[1], c[2], -c[3]}}; }
    IQuat prime() const { return {{c[0], -c[1], -c[2], c[3]}}; }
};

struct IQuatCtx {
    std::int64_t P = 1, Q = 1;

    IQuatCtx() = default;
    IQuatCtx(std::int64_t p, std::int64_t q) : P(p), Q(q) {}

    IQuat mul(const IQuat& a, const IQuat& b) const {
        const auto &x = a.c, &y = b.c;
        return {{x[0]*y[0] - P*x[1]*y[1] - Q*x[2]*y[2] - P*Q*x[3]*y[3],
                 x[0]*y[1] + x[1]*y[0] + Q*(x[2]*y[3] - x[3]*y[2]),
                 x[0]*y[2] + x[2]*y[0] + P*(x[3]*y[1] - x[1]*y[3]),
                 x[0]*y[3] + x[3]*y[0] + x[1]*y[2] - x[2]*y[1]}};
    }

    std::int64_t norm(const IQuat& a) const {
        const auto& x = a.c;
        return x[0]*x[0] + P*x[1]*x[1] + Q*x[2]*x[2] + P*Q*x[3]*x[3];
    }

    // a / k with exact integer division, nullopt on remainder
    static std::optional<IQuat> divide(const IQuat& a, std::int64_t k) {
        IQuat r;
        for (int i = 0; i < 4; ++i) {
            if (a.c[i] % k != 0) return std::nullopt;
            r.c[i] = a.c[i] / k;
        }
        return r;
    }

    static IQuat one() { return {{1, 0, 0, 0}}; }

    // Lattice points of given norm, lexicographically sorted.
    const std::vector<IQuat>& sphere(std::int64_t n) const {
        auto it = sphere_cache_.find(n);
        if (it != sphere_cache_.end()) return it->second;
        std::vector<IQuat> pts;
        if (n >= 0) {
            auto bound = [](std::int64_t m, std::int64_t w) {
                std::int64_t r = 0;
                while ((r + 1) * (r + 1) * w <= m) ++r;
                return r;
            };
            std::int64_t b0 = bound(n, 1), b1 = bound(n, P), b2 = bound(n, Q), b3 = bound(n, P * Q);
            for (std::int64_t c0 = -b0; c0 <= b0; ++c0)
                for (std::int64_t c1 = -b1; c1 <= b1; ++c1)
                    for (std::int64_t c2 = -b2; c2 <= b2; ++c2)
                        for (std::int64_t c3 = -b3; c3 <= b3; ++c3)
                            if (c0*c0 + P*c1*c1 + Q*c2*c2 + P*Q*c3*c3 == n)
                                pts.push_back({{c0, c1, c2, c3}});
        }
        std::sort(pts.begin(), pts.end());
        return sphere_cache_.emplace(n, std::move(pts)).first->second;
    }

private:
    mutable std::map<std::int64_t, std::vector<IQuat>> sphere_cache_;
};

// Candidate group element as the chi1/chi2 component pair of each entry.
struct PairMatrix {
    IQuat qa, ra, qb, rb, qc, rc, qd, rd;

    friend bool operator==(const PairMatrix&, const PairMatrix&) = default;
    friend auto operator<=>(const PairMatrix&, const PairMatrix&) = default;

    PairMatrix operator-() const {
        return {-qa, -ra, -qb, -rb, -qc, -rc, -qd, -rd};
    }

    // representative of {M, -M} with positive leading coordinate
    PairMatrix canonical_sign() const {
        for (const IQuat* q : {&qa, &ra, &qb, &rb, &qc, &rc, &qd, &rd})
            for (int i = 0; i < 4; ++i) {
                if (q->c[i] > 0) return *this;
                if (q->c[i] < 0) return -*this;
            }
        return *this;
    }
};

} // namespace vahlen
