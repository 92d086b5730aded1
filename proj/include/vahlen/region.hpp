#pragma once

#include "vahlen/bisector.hpp"
#include "vahlen/lp.hpp"

#include <deque>
#include <map>

namespace vahlen {

struct Box {
    std::vector<ExactScalar> lo, hi;

    int dim() const { return int(lo.size()); }

    friend bool operator==(const Box&, const Box&) = default;

    // squared distance from the farthest box point to c
    ExactScalar farthest_sq(const std::vector<ExactScalar>& c) const {
        ExactScalar s(Rat(0), c.empty() ? FieldDesc{} : c[0].field());
        for (int i = 0; i < dim(); ++i) {
            ExactScalar a = lo[i] - c[i], b = hi[i] - c[i];
            ExactScalar a2 = a * a, b2 = b * b;
            s += ((a2 - b2).sign() >= 0) ? a2 : b2;
        }
        return s;
    }

    // squared distance from the nearest box point to c
    ExactScalar nearest_sq(const std::vector<ExactScalar>& c) const {
        ExactScalar s(Rat(0), c.empty() ? FieldDesc{} : c[0].field());
        for (int i = 0; i < dim(); ++i) {
            if ((c[i] - hi[i]).sign() > 0) { ExactScalar d = c[i] - hi[i]; s += d * d; }
            else if ((lo[i] - c[i]).sign() > 0) { ExactScalar d = lo[i] - c[i]; s += d * d; }
        }
        return s;
    }

    std::vector<ExactScalar> center() const {
        std::vector<ExactScalar> c(dim());
        ExactScalar half(Rat(1, 2));
        for (int i = 0; i < dim(); ++i) c[i] = (lo[i] + hi[i]) * half;
        return c;
    }

    // deterministic split: widest axis (lowest index on ties) at the midpoint
    std::pair<Box, Box> split() const {
        int axis = 0;
        ExactScalar w = hi[0] - lo[0];
        for (int i = 1; i < dim(); ++i) {
            ExactScalar wi = hi[i] - lo[i];
            if ((wi - w).sign() > 0) { axis = i; w = wi; }
        }
        ExactScalar mid = (lo[axis] + hi[axis]) * ExactScalar(Rat(1, 2));
        Box a(*this), b(*this);
        a.hi[axis] = mid;
        b.lo[axis] = mid;
        return {a, b};
    }
};

// a . z <= b
struct LinearConstraint {
    std::vector<ExactScalar> a;
    ExactScalar b;
    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct Ball {
    std::vector<ExactScalar> center;
    ExactScalar radius_sq;
    friend bool operator==(const Ball&, const Ball&) = default;
};

// Trace of the current partial domain on the boundary of the upper
// half-space: a polytope minus a union of open balls.
struct BoundaryRegion {
    int dim = 4;
    std::vector<LinearConstraint> polytope;
    std::vector<Ball> excluded;

    void add_halfspace_trace(const HalfSpace& h) {
        if (h.kind == HalfSpace::Kind::Plane) {
            // keep <n,z> + off >= 0  <=>  (-n) . z <= off
            LinearConstraint lc;
            lc.a.resize(h.center.size());
            for (std::size_t i = 0; i < h.center.size(); ++i)
                lc.a[i] = h.keep_positive ? -h.center[i] : h.center[i];
            lc.b = h.keep_positive ? h.scalar : -h.scalar;
            for (const auto& row : polytope)
                if (row == lc) return;
            polytope.push_back(std::move(lc));
        } else {
            if (!h.keep_positive)
                throw std::invalid_argument("keep-inside hemisphere traces are not supported");
            Ball b{h.center, h.scalar};
            for (const auto& eb : excluded)
                if (eb == b) return;
            excluded.push_back(std::move(b));
        }
    }

    bool point_in_polytope(const std::vector<ExactScalar>& z) const {
        for (const auto& row : polytope) {
            ExactScalar v(Rat(0), row.b.field());
            for (std::size_t i = 0; i < row.a.size(); ++i) v += row.a[i] * z[i];
            if ((v - row.b).sign() > 0) return false;
        }
        return true;
    }

    bool point_in_polytope_interior(const std::vector<ExactScalar>& z) const {
        for (const auto& row : polytope) {
            ExactScalar v(Rat(0), row.b.field());
            for (std::size_t i = 0; i < row.a.size(); ++i) v += row.a[i] * z[i];
            if ((v - row.b).sign() >= 0) return false;
        }
        return true;
    }

    bool point_strictly_outside_balls(const std::vector<ExactScalar>& z) const {
        for (const auto& b : excluded) {
            ExactScalar d(Rat(0), b.radius_sq.field());
            for (std::size_t i = 0; i < b.center.size(); ++i) {
                ExactScalar t = z[i] - b.center[i];
                d += t * t;
            }
            if ((d - b.radius_sq).sign() <= 0) return false;
        }
        return true;
    }
};

// --- linear programming helpers over the polytope -------------------------

inline LpResult polytope_lp(const std::vector<LinearConstraint>& rows,
                            const std::vector<ExactScalar>& objective, int dim, FieldDesc f,
                            const Box* box = nullptr) {
    std::vector<std::vector<ExactScalar>> A;
    std::vector<ExactScalar> b;
    for (const auto& r : rows) {
        A.push_back(r.a);
        b.push_back(r.b);
    }
    if (box) {
        for (int i = 0; i < dim; ++i) {
            std::vector<ExactScalar> row(dim, ExactScalar(Rat(0), f));
            row[i] = ExactScalar::integer(1, f);
            A.push_back(row);
            b.push_back(box->hi[i]);
            row[i] = ExactScalar::integer(-1, f);
            A.push_back(row);
            b.push_back(-box->lo[i]);
        }
    }
    return lp_solve_exact(std::move(A), std::move(b), objective, f);
}

// Recession-cone certificate of compactness: for every coordinate
// direction +-e_j, e_j lies in the cone spanned by the outer normals.
struct BoundednessCert {
    bool bounded = false;
    // 2*dim rows of multipliers (directions +e_0, -e_0, +e_1, ...), each of
    // size polytope.size(), when bounded; otherwise one recession ray.
    std::vector<std::vector<ExactScalar>> multipliers;
    std::vector<ExactScalar> ray;
};

inline BoundednessCert polytope_is_bounded(const std::vector<LinearConstraint>& rows, int dim,
                                           FieldDesc f) {
    BoundednessCert cert;
    if (rows.empty()) return cert; // whole space
    std::vector<std::vector<ExactScalar>> A;
    std::vector<ExactScalar> zero_b;
    for (const auto& r : rows) {
        A.push_back(r.a);
        zero_b.push_back(ExactScalar(Rat(0), f));
    }
    for (int j = 0; j < dim; ++j) {
        for (int sgn : {+1, -1}) {
            std::vector<ExactScalar> c(dim, ExactScalar(Rat(0), f));
            c[j] = ExactScalar::integer(sgn, f);
            LpResult res = lp_solve_exact(A, zero_b, c, f);
            if (res.status == LpResult::Status::Unbounded) {
                cert.ray = res.ray;
                return cert;
            }
            if (res.status != LpResult::Status::Optimal || res.value.sign() != 0)
                throw std::logic_error("recession cone LP must be optimal at zero");
            cert.multipliers.push_back(res.dual);
        }
    }
    cert.bounded = true;
    return cert;
}

inline Box certified_bounding_box(const std::vector<LinearConstraint>& rows, int dim, FieldDesc f) {
    Box box;
    box.lo.resize(dim);
    box.hi.resize(dim);
    for (int j = 0; j < dim; ++j) {
        for (int sgn : {+1, -1}) {
            std::vector<ExactScalar> c(dim, ExactScalar(Rat(0), f));
            c[j] = ExactScalar::integer(sgn, f);
            LpResult res = polytope_lp(rows, c, dim, f);
            if (res.status != LpResult::Status::Optimal)
                throw std::logic_error("bounding box needs a bounded nonempty polytope");
            (sgn > 0 ? box.hi[j] : box.lo[j]) = (sgn > 0 ? res.value : -res.value);
        }
    }
    return box;
}

// --- certified emptiness ---------------------------------------------------

struct RegionLeaf {
    Box box;
    // LpEmpty: the box misses the polytope; NoInterior: it meets at most
    // the polytope's boundary faces; InsideBall/UnionBalls/CuspCorner:
    // covered by closed excluded balls.
    enum class Reason { LpEmpty, NoInterior, InsideBall, UnionBalls, CuspCorner } reason;
    int ball = -1;
    std::vector<int> balls; // UnionBalls / CuspCorner participants
    int corner_mask = -1;   // CuspCorner: bit i set = corner at hi[i]
};

// maximize the polytope margin over the box: value > 0 iff the box meets
// the polytope's interior; the maximizer is a strictly interior point.
struct MarginResult {
    enum class Kind { Infeasible, NoInterior, Interior } kind;
    std::vector<ExactScalar> point;
};

inline MarginResult polytope_margin_in_box(const std::vector<LinearConstraint>& rows, int dim,
                                           FieldDesc f, const Box& box) {
    std::vector<std::vector<ExactScalar>> A;
    std::vector<ExactScalar> b;
    const ExactScalar zero(Rat(0), f), one = ExactScalar::integer(1, f);
    for (const auto& r : rows) {
        std::vector<ExactScalar> row = r.a;
        row.push_back(one); // a.x + t <= b
        A.push_back(std::move(row));
        b.push_back(r.b);
    }
    for (int i = 0; i < dim; ++i) {
        std::vector<ExactScalar> row(dim + 1, zero);
        row[i] = one;
        A.push_back(row);
        b.push_back(box.hi[i]);
        row[i] = -one;
        A.push_back(row);
        b.push_back(-box.lo[i]);
    }
    // keep t bounded when no polytope row restrains it
    {
        std::vector<ExactScalar> row(dim + 1, zero);
        row[dim] = one;
        A.push_back(row);
        b.push_back(one);
    }
    std::vector<ExactScalar> c(dim + 1, zero);
    c[dim] = one;
    LpResult res = lp_solve_exact(std::move(A), std::move(b), c, f);
    MarginResult mr;
    if (res.status == LpResult::Status::Infeasible) {
        mr.kind = MarginResult::Kind::Infeasible;
        return mr;
    }
    if (res.status != LpResult::Status::Optimal)
        throw std::logic_error("margin LP must be bounded");
    if (res.value.sign() <= 0) {
        mr.kind = MarginResult::Kind::NoInterior;
        return mr;
    }
    mr.kind = MarginResult::Kind::Interior;
    mr.point.assign(res.point.begin(), res.point.begin() + dim);
    return mr;
}

// max of a.x over the box, by the signs of a
inline ExactScalar box_row_max(const Box& box, const std::vector<ExactScalar>& a) {
    ExactScalar s(Rat(0), a.empty() ? FieldDesc{} : a[0].field());
    for (int t = 0; t < box.dim(); ++t)
        s += a[t] * ((a[t].sign() >= 0) ? box.hi[t] : box.lo[t]);
    return s;
}

// Certified (box intersect polytope) subset of the union of the closed
// balls indexed by `sel`: the power cell of each ball, clipped to the box
// and to the polytope rows active on the box, is a polytope on which the
// ball's power function is convex, so checking its vertices suffices.
inline bool box_covered_by_union(const Box& box, const std::vector<Ball>& balls,
                                 const std::vector<int>& sel,
                                 const std::vector<LinearConstraint>& polytope, FieldDesc f) {
    const int dim = box.dim();
    if (sel.empty()) return false;
    // constraints rows: a.x <= b; first 2*dim are the box walls
    auto power_linear = [&](int i, int j, std::vector<ExactScalar>& a, ExactScalar& b) {
        // pow_i(x) <= pow_j(x)  <=>  2 (c_j - c_i) . x <= |c_j|^2 - |c_i|^2 - r_j^2 + r_i^2
        const Ball &bi = balls[sel[i]], &bj = balls[sel[j]];
        ExactScalar two = ExactScalar::integer(2, f);
        b = ExactScalar(Rat(0), f);
        a.assign(dim, ExactScalar(Rat(0), f));
        for (int t = 0; t < dim; ++t) {
            a[t] = two * (bj.center[t] - bi.center[t]);
            b += bj.center[t] * bj.center[t] - bi.center[t] * bi.center[t];
        }
        b += bi.radius_sq - bj.radius_sq;
    };
    // polytope rows that can actually cut the box
    std::vector<const LinearConstraint*> active;
    for (const auto& row : polytope)
        if ((box_row_max(box, row.a) - row.b).sign() > 0) active.push_back(&row);
    for (std::size_t i = 0; i < sel.size(); ++i) {
        std::vector<std::vector<ExactScalar>> A;
        std::vector<ExactScalar> rhs;
        for (int t = 0; t < dim; ++t) {
            std::vector<ExactScalar> row(dim, ExactScalar(Rat(0), f));
            row[t] = ExactScalar::integer(1, f);
            A.push_back(row);
            rhs.push_back(box.hi[t]);
            row[t] = ExactScalar::integer(-1, f);
            A.push_back(row);
            rhs.push_back(-box.lo[t]);
        }
        for (const auto* row : active) {
            A.push_back(row->a);
            rhs.push_back(row->b);
        }
        for (std::size_t j = 0; j < sel.size(); ++j) {
            if (j == i) continue;
            std::vector<ExactScalar> a;
            ExactScalar b(Rat(0), f);
            power_linear(int(i), int(j), a, b);
            A.push_back(a);
            rhs.push_back(b);
        }
        const Ball& ball = balls[sel[i]];
        auto pow_i = [&](const std::vector<ExactScalar>& x) {
            ExactScalar s = -ball.radius_sq;
            for (int t = 0; t < dim; ++t) {
                ExactScalar d = x[t] - ball.center[t];
                s += d * d;
            }
            return s;
        };
        // enumerate candidate vertices: all dim-subsets of tight constraints
        const int m = int(A.size());
        std::vector<int> idx(dim);
        auto feasible = [&](const std::vector<ExactScalar>& x) {
            for (int r = 0; r < m; ++r) {
                ExactScalar lhs(Rat(0), f);
                for (int t = 0; t < dim; ++t) lhs += A[r][t] * x[t];
                if ((lhs - rhs[r]).sign() > 0) return false;
            }
            return true;
        };
        std::vector<int> comb(dim);
        for (int t = 0; t < dim; ++t) comb[t] = t;
        bool any_vertex = false;
        bool bad = false;
        auto check_comb = [&]() {
            // solve the dim x dim system A[comb] x = rhs[comb]
            std::vector<std::vector<ExactScalar>> M(dim, std::vector<ExactScalar>(dim + 1, ExactScalar(Rat(0), f)));
            for (int r = 0; r < dim; ++r) {
                for (int t = 0; t < dim; ++t) M[r][t] = A[comb[r]][t];
                M[r][dim] = rhs[comb[r]];
            }
            for (int col = 0; col < dim; ++col) {
                int piv = -1;
                for (int r = col; r < dim; ++r)
                    if (M[r][col].sign() != 0) { piv = r; break; }
                if (piv < 0) return; // singular
                std::swap(M[piv], M[col]);
                ExactScalar inv = M[col][col].inverse();
                for (int t = col; t <= dim; ++t) M[col][t] *= inv;
                for (int r = 0; r < dim; ++r) {
                    if (r == col || M[r][col].sign() == 0) continue;
                    ExactScalar fct = M[r][col];
                    for (int t = col; t <= dim; ++t) M[r][t] -= fct * M[col][t];
                }
            }
            std::vector<ExactScalar> x(dim);
            for (int t = 0; t < dim; ++t) x[t] = M[t][dim];
            if (!feasible(x)) return;
            any_vertex = true;
            if (pow_i(x).sign() > 0) bad = true;
        };
        // iterate combinations
        for (;;) {
            check_comb();
            if (bad) return false;
            int t = dim - 1;
            while (t >= 0 && comb[t] == m - dim + t) --t;
            if (t < 0) break;
            ++comb[t];
            for (int u = t + 1; u < dim; ++u) comb[u] = comb[u - 1] + 1;
        }
        // no vertex: the clipped cell is empty (it is bounded), vacuously fine
        (void)any_vertex;
    }
    return true;
}

// Cusp-corner certificate. At a corner xi of the box lying exactly on the
// spheres of the balls in `sel` and inside the polytope, every other box
// point has the form xi + v with v in the outgoing sign cone cut by the
// polytope rows active at xi. The point xi + v lies in the closed ball k
// iff <v, c_k - xi> >= |v|^2 / 2. If
//   s* = min { max_k <w, c_k - xi> : w in the cone, l1(w) = 1 } > 0
// (an exact LP) and the box has l1-diameter at most 2 s*, then
// max_k <v, c_k - xi> >= l1(v) s* >= l1(v)^2 / 2 >= |v|^2 / 2 for every v,
// so the whole box-polytope piece is covered by the closed balls.
inline std::optional<std::pair<int, std::vector<int>>> cusp_corner_discharge(
    const Box& box, const std::vector<Ball>& balls,
    const std::vector<LinearConstraint>& polytope, FieldDesc f) {
    const int dim = box.dim();
    ExactScalar l1(Rat(0), f);
    for (int i = 0; i < dim; ++i) l1 += box.hi[i] - box.lo[i];

    for (int mask = 0; mask < (1 << dim); ++mask) {
        std::vector<ExactScalar> xi(dim);
        for (int i = 0; i < dim; ++i) xi[i] = (mask & (1 << i)) ? box.hi[i] : box.lo[i];
        // balls whose sphere passes exactly through xi; a strict cover of xi
        // belongs to the plain single-ball test instead
        std::vector<int> on;
        bool strict_inside = false;
        for (std::size_t k = 0; k < balls.size(); ++k) {
            ExactScalar d(Rat(0), f);
            for (int i = 0; i < dim; ++i) {
                ExactScalar t = xi[i] - balls[k].center[i];
                d += t * t;
            }
            int s = (d - balls[k].radius_sq).sign();
            if (s == 0) on.push_back(int(k));
            else if (s < 0) { strict_inside = true; break; }
        }
        if (strict_inside || on.empty()) continue;
        bool in_poly = true;
        std::vector<const LinearConstraint*> active;
        for (const auto& row : polytope) {
            ExactScalar v(Rat(0), f);
            for (int i = 0; i < dim; ++i) v += row.a[i] * xi[i];
            int s = (v - row.b).sign();
            if (s > 0) { in_poly = false; break; }
            if (s == 0) active.push_back(&row);
        }
        if (!in_poly) continue;

        // LP over (w, s): maximize -s subject to
        //   <w, u_k> - s <= 0, sign constraints on w, active rows <= 0,
        //   phi . w = 1 (two inequalities)
        std::vector<std::vector<ExactScalar>> A;
        std::vector<ExactScalar> b;
        const ExactScalar zero(Rat(0), f), one = ExactScalar::integer(1, f);
        auto row_of = [&](const std::vector<ExactScalar>& w_part, const ExactScalar& s_part) {
            std::vector<ExactScalar> r = w_part;
            r.push_back(s_part);
            return r;
        };
        for (int k : on) {
            std::vector<ExactScalar> u(dim);
            for (int i = 0; i < dim; ++i) u[i] = balls[k].center[i] - xi[i];
            A.push_back(row_of(u, -one));
            b.push_back(zero);
        }
        for (int i = 0; i < dim; ++i) {
            std::vector<ExactScalar> r(dim, zero);
            r[i] = (mask & (1 << i)) ? one : -one; // xi at hi: w_i <= 0
            A.push_back(row_of(r, zero));
            b.push_back(zero);
        }
        for (const auto* rowp : active) {
            A.push_back(row_of(rowp->a, zero));
            b.push_back(zero);
        }
        std::vector<ExactScalar> phi(dim);
        for (int i = 0; i < dim; ++i) phi[i] = (mask & (1 << i)) ? -one : one;
        A.push_back(row_of(phi, zero));
        b.push_back(one);
        std::vector<ExactScalar> mphi(dim);
        for (int i = 0; i < dim; ++i) mphi[i] = -phi[i];
        A.push_back(row_of(mphi, zero));
        b.push_back(-one);

        std::vector<ExactScalar> obj(dim + 1, zero);
        obj[dim] = -one;
        LpResult res = lp_solve_exact(A, b, obj, f);
        if (res.status == LpResult::Status::Infeasible) {
            // the outgoing cone is empty: the piece is the single point xi
            return std::make_pair(mask, on);
        }
        if (res.status != LpResult::Status::Optimal) continue;
        ExactScalar sstar = -res.value; // min over the section of max_k
        if (sstar.sign() <= 0) continue;
        if ((l1 - ExactScalar::integer(2, f) * sstar).sign() <= 0)
            return std::make_pair(mask, on);
    }
    return std::nullopt;
}

struct EmptinessCert {
    Box root;
    bool polytope_infeasible = false;
    std::vector<RegionLeaf> leaves;
    int max_depth = 0;
};

struct RegionStatus {
    enum class Kind { Empty, Witness, Inconclusive } kind;
    EmptinessCert cert;           // Empty
    std::vector<ExactScalar> witness; // Witness
    int depth_reached = 0;        // Inconclusive
};

// Is the region essentially empty, i.e. is the interior of the polytope
// covered by the closures of the excluded balls? Boxes are discharged
// when they miss the polytope interior (exact margin LP) or when closed
// balls contain them (single ball, a union of power cells, or a cusp
// corner). A witness is an interior polytope point strictly outside every
// closed ball; higher-order tangencies may exhaust the depth cap and come
// back inconclusive.
inline RegionStatus region_is_empty(const BoundaryRegion& rg, int depth_cap, FieldDesc f) {
    RegionStatus st;
    st.cert.max_depth = 0;

    LpResult feas = polytope_lp(rg.polytope, std::vector<ExactScalar>(rg.dim, ExactScalar(Rat(0), f)),
                                rg.dim, f);
    if (feas.status == LpResult::Status::Infeasible) {
        st.kind = RegionStatus::Kind::Empty;
        st.cert.polytope_infeasible = true;
        ExactScalar z(Rat(0), f);
        st.cert.root = Box{std::vector<ExactScalar>(rg.dim, z), std::vector<ExactScalar>(rg.dim, z)};
        return st;
    }

    st.cert.root = certified_bounding_box(rg.polytope, rg.dim, f);

    auto try_witness = [&](const std::vector<ExactScalar>& z) {
        return rg.point_in_polytope_interior(z) && rg.point_strictly_outside_balls(z);
    };

    std::vector<std::pair<Box, int>> stack{{st.cert.root, 0}};
    while (!stack.empty()) {
        auto [box, depth] = stack.back();
        stack.pop_back();
        st.cert.max_depth = std::max(st.cert.max_depth, depth);

        auto c = box.center();
        if (try_witness(c)) {
            st.kind = RegionStatus::Kind::Witness;
            st.witness = c;
            return st;
        }

        int covering = -1;
        for (std::size_t k = 0; k < rg.excluded.size(); ++k)
            if ((box.farthest_sq(rg.excluded[k].center) - rg.excluded[k].radius_sq).sign() <= 0) {
                covering = int(k);
                break;
            }
        if (covering >= 0) {
            st.cert.leaves.push_back({box, RegionLeaf::Reason::InsideBall, covering});
            continue;
        }

        MarginResult margin = polytope_margin_in_box(rg.polytope, rg.dim, f, box);
        if (margin.kind == MarginResult::Kind::Infeasible) {
            st.cert.leaves.push_back({box, RegionLeaf::Reason::LpEmpty, -1});
            continue;
        }
        if (margin.kind == MarginResult::Kind::NoInterior) {
            st.cert.leaves.push_back({box, RegionLeaf::Reason::NoInterior, -1});
            continue;
        }
        if (try_witness(margin.point)) {
            st.kind = RegionStatus::Kind::Witness;
            st.witness = margin.point;
            return st;
        }

        // tangency configurations need several balls at once
        if (depth >= 4) {
            if (auto cusp = cusp_corner_discharge(box, rg.excluded, rg.polytope, f)) {
                RegionLeaf leaf{box, RegionLeaf::Reason::CuspCorner, -1, cusp->second,
                                cusp->first};
                st.cert.leaves.push_back(std::move(leaf));
                continue;
            }
            std::vector<int> touching;
            for (std::size_t k = 0; k < rg.excluded.size(); ++k)
                if ((box.nearest_sq(rg.excluded[k].center) - rg.excluded[k].radius_sq).sign() < 0)
                    touching.push_back(int(k));
            if (touching.size() >= 2 && touching.size() <= 8 &&
                box_covered_by_union(box, rg.excluded, touching, rg.polytope, f)) {
                RegionLeaf leaf{box, RegionLeaf::Reason::UnionBalls, -1, touching};
                st.cert.leaves.push_back(std::move(leaf));
                continue;
            }
        }

        if (depth >= depth_cap) {
            st.kind = RegionStatus::Kind::Inconclusive;
            st.depth_reached = depth;
            return st;
        }
        auto [b1, b2] = box.split();
        // explore the child farther from the ball centers first
        bool swap_children = false;
        if (!rg.excluded.empty()) {
            ExactScalar d1(Rat(0), f), d2(Rat(0), f);
            for (const auto& eb : rg.excluded) {
                d1 += b1.nearest_sq(eb.center);
                d2 += b2.nearest_sq(eb.center);
            }
            swap_children = (d1 - d2).sign() > 0;
        }
        if (swap_children) {
            stack.push_back({b2, depth + 1});
            stack.push_back({b1, depth + 1});
        } else {
            stack.push_back({b1, depth + 1});
            stack.push_back({b2, depth + 1});
        }
    }
    st.kind = RegionStatus::Kind::Empty;
    return st;
}

// Would excluding `nb` change the essential region? True when a polytope
// point strictly inside nb lies strictly outside all current closed balls;
// certified false when the polytope part strictly inside nb is covered by
// the current closed balls.
struct ShrinkStatus {
    enum class Kind { Shrinks, NoChange, Inconclusive } kind;
    std::vector<ExactScalar> witness;
    int depth_reached = 0;
};

// closed containment B(c1, r1) subset of B(c2, r2): |c1 - c2| + r1 <= r2,
// squared via sign(e + f sqrt(w)) bookkeeping
inline bool ball_inside_ball(const Ball& inner, const Ball& outer) {
    ExactScalar d2(Rat(0), inner.radius_sq.field());
    for (std::size_t i = 0; i < inner.center.size(); ++i) {
        ExactScalar t = inner.center[i] - outer.center[i];
        d2 += t * t;
    }
    ExactScalar e = outer.radius_sq - d2 - inner.radius_sq;
    ExactScalar mtwo = ExactScalar::integer(-2, e.field());
    return sign_a_plus_b_sqrt(e, mtwo, d2 * inner.radius_sq) >= 0;
}

inline ShrinkStatus region_shrinks(const BoundaryRegion& rg, const Ball& nb, int depth_cap,
                                   FieldDesc f, const Box& root) {
    ShrinkStatus st;
    // the new open ball misses the bounding box entirely
    if ((root.nearest_sq(nb.center) - nb.radius_sq).sign() >= 0) {
        st.kind = ShrinkStatus::Kind::NoChange;
        return st;
    }
    // the new ball is swallowed by an existing exclusion
    for (const auto& eb : rg.excluded)
        if (ball_inside_ball(nb, eb)) {
            st.kind = ShrinkStatus::Kind::NoChange;
            return st;
        }
    auto is_witness = [&](const std::vector<ExactScalar>& z) {
        if (!rg.point_in_polytope_interior(z)) return false;
        ExactScalar d(Rat(0), f);
        for (std::size_t i = 0; i < nb.center.size(); ++i) {
            ExactScalar t = z[i] - nb.center[i];
            d += t * t;
        }
        if ((d - nb.radius_sq).sign() >= 0) return false;
        return rg.point_strictly_outside_balls(z);
    };

    if (is_witness(nb.center)) {
        st.kind = ShrinkStatus::Kind::Shrinks;
        st.witness = nb.center;
        return st;
    }

    std::vector<std::pair<Box, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [box, depth] = stack.back();
        stack.pop_back();

        // no part of the open ball nb in this box
        if ((box.nearest_sq(nb.center) - nb.radius_sq).sign() >= 0) continue;

        auto c = box.center();
        if (is_witness(c)) {
            st.kind = ShrinkStatus::Kind::Shrinks;
            st.witness = c;
            return st;
        }

        bool covered = false;
        for (const auto& eb : rg.excluded)
            if ((box.farthest_sq(eb.center) - eb.radius_sq).sign() <= 0) { covered = true; break; }
        if (covered) continue;

        MarginResult margin = polytope_margin_in_box(rg.polytope, rg.dim, f, box);
        if (margin.kind != MarginResult::Kind::Interior) continue;
        if (is_witness(margin.point)) {
            st.kind = ShrinkStatus::Kind::Shrinks;
            st.witness = margin.point;
            return st;
        }

        if (depth >= 4) {
            if (cusp_corner_discharge(box, rg.excluded, rg.polytope, f)) continue;
            std::vector<int> touching;
            for (std::size_t k = 0; k < rg.excluded.size(); ++k)
                if ((box.nearest_sq(rg.excluded[k].center) - rg.excluded[k].radius_sq).sign() < 0)
                    touching.push_back(int(k));
            if (touching.size() >= 2 && touching.size() <= 8 &&
                box_covered_by_union(box, rg.excluded, touching, rg.polytope, f))
                continue;
        }

        if (depth >= depth_cap) {
            st.kind = ShrinkStatus::Kind::Inconclusive;
            st.depth_reached = depth;
            return st;
        }
        auto [b1, b2] = box.split();
        stack.push_back({b1, depth + 1});
        stack.push_back({b2, depth + 1});
    }
    st.kind = ShrinkStatus::Kind::NoChange;
    return st;
}

} // namespace vahlen
