#pragma once

#include "vahlen/json_io.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace vahlen {

// Independent replay of a result document: every generator is re-validated
// (Vahlen certificate, pseudo-determinant, order membership, wall data) and
// the geometric certificates are re-checked step by step. Throws
// VerifyError with the first failing item.
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string box_key(const Box& b) {
    std::ostringstream os;
    for (int i = 0; i < b.dim(); ++i) os << b.lo[i] << "|" << b.hi[i] << ";";
    return os.str();
}

} // namespace detail

// Replay the recession-cone certificate: every +-e_j must be an exact
// nonnegative combination of the outer normals.
inline void verify_boundedness(const std::vector<LinearConstraint>& rows, int dim,
                               const BoundednessCert& cert, FieldDesc f) {
    if (!cert.bounded) throw VerifyError("boundedness certificate claims unbounded");
    if (cert.multipliers.size() != std::size_t(2 * dim))
        throw VerifyError("boundedness certificate has wrong shape");
    int at = 0;
    for (int j = 0; j < dim; ++j)
        for (int sgn : {+1, -1}) {
            const auto& lambda = cert.multipliers[at++];
            if (lambda.size() != rows.size())
                throw VerifyError("boundedness multipliers have wrong length");
            for (const auto& l : lambda)
                if (l.sign() < 0) throw VerifyError("negative boundedness multiplier");
            for (int t = 0; t < dim; ++t) {
                ExactScalar s(Rat(0), f);
                for (std::size_t r = 0; r < rows.size(); ++r) s += lambda[r] * rows[r].a[t];
                ExactScalar target =
                    (t == j) ? ExactScalar::integer(sgn, f) : ExactScalar(Rat(0), f);
                if (!(s == target)) throw VerifyError("boundedness combination mismatch");
            }
        }
}

// Replay the subdivision certificate: the recorded leaves must tile the
// root box under the deterministic split rule and every discharge reason
// must re-check.
inline void verify_emptiness(const BoundaryRegion& rg, const EmptinessCert& cert, FieldDesc f) {
    if (cert.polytope_infeasible) {
        LpResult feas = polytope_lp(rg.polytope,
                                    std::vector<ExactScalar>(rg.dim, ExactScalar(Rat(0), f)),
                                    rg.dim, f);
        if (feas.status != LpResult::Status::Infeasible)
            throw VerifyError("claimed infeasible polytope is feasible");
        return;
    }
    // root must contain the polytope
    for (int j = 0; j < rg.dim; ++j)
        for (int sgn : {+1, -1}) {
            std::vector<ExactScalar> c(rg.dim, ExactScalar(Rat(0), f));
            c[j] = ExactScalar::integer(sgn, f);
            LpResult res = polytope_lp(rg.polytope, c, rg.dim, f);
            if (res.status != LpResult::Status::Optimal)
                throw VerifyError("polytope unbounded while replaying the root box");
            ExactScalar extreme = sgn > 0 ? res.value : -res.value;
            bool ok = sgn > 0 ? (extreme - cert.root.hi[j]).sign() <= 0
                              : (extreme - cert.root.lo[j]).sign() >= 0;
            if (!ok) throw VerifyError("root box does not contain the polytope");
        }

    std::map<std::string, const RegionLeaf*> leaves;
    for (const auto& l : cert.leaves) leaves[detail::box_key(l.box)] = &l;

    std::size_t used = 0;
    std::function<void(const Box&, int)> walk = [&](const Box& box, int depth) {
        auto it = leaves.find(detail::box_key(box));
        if (it != leaves.end()) {
            ++used;
            const RegionLeaf& leaf = *it->second;
            switch (leaf.reason) {
                case RegionLeaf::Reason::LpEmpty: {
                    MarginResult m = polytope_margin_in_box(rg.polytope, rg.dim, f, box);
                    if (m.kind != MarginResult::Kind::Infeasible)
                        throw VerifyError("lp_empty leaf has polytope points");
                    break;
                }
                case RegionLeaf::Reason::NoInterior: {
                    MarginResult m = polytope_margin_in_box(rg.polytope, rg.dim, f, box);
                    if (m.kind == MarginResult::Kind::Interior)
                        throw VerifyError("no_interior leaf meets the polytope interior");
                    break;
                }
                case RegionLeaf::Reason::InsideBall: {
                    if (leaf.ball < 0 || leaf.ball >= int(rg.excluded.size()))
                        throw VerifyError("leaf references a missing ball");
                    const Ball& b = rg.excluded[leaf.ball];
                    if ((box.farthest_sq(b.center) - b.radius_sq).sign() > 0)
                        throw VerifyError("inside_ball leaf not inside the ball");
                    break;
                }
                case RegionLeaf::Reason::UnionBalls: {
                    for (int k : leaf.balls)
                        if (k < 0 || k >= int(rg.excluded.size()))
                            throw VerifyError("leaf references a missing ball");
                    if (!box_covered_by_union(box, rg.excluded, leaf.balls, rg.polytope, f))
                        throw VerifyError("union_balls leaf fails the power-cell check");
                    break;
                }
                case RegionLeaf::Reason::CuspCorner: {
                    auto res = cusp_corner_discharge(box, rg.excluded, rg.polytope, f);
                    if (!res) throw VerifyError("cusp_corner leaf fails the cone check");
                    break;
                }
            }
            return;
        }
        if (depth > cert.max_depth + 1)
            throw VerifyError("certificate misses a subdivision branch");
        auto [b1, b2] = box.split();
        walk(b1, depth + 1);
        walk(b2, depth + 1);
    };
    walk(cert.root, 0);
    if (used != cert.leaves.size()) throw VerifyError("certificate contains unused leaves");
}

// Full document verification. Returns the number of checked generators.
inline std::size_t verify_result(const Json& j) {
    GroupSpec spec = spec_from_json(j.at("spec"));
    ShellEnumerator en(spec);
    FieldDesc f = spec.field();
    const QuatOrder order = spec.order();
    ExactScalar one = ExactScalar::integer(1, f);

    std::string status = j.at("status").get<std::string>();
    if (status != "complete" && status != "inconclusive")
        throw VerifyError("unknown status");
    if (status == "complete" && j.at("generators").empty())
        throw VerifyError("complete result without generators");

    std::size_t checked = 0;
    BoundaryRegion region;
    region.dim = 4;
    std::vector<LinearConstraint> hyperplane_rows;

    auto check_matrix = [&](const Json& item, bool is_stab) {
        VahlenMatrix m = vahlen_from_json(item.at("clifford"), f);
        if (auto why = m.validity_failure()) throw VerifyError("invalid matrix: " + *why);
        if (!spec.member(m)) throw VerifyError("matrix fails group membership");
        QuatMatrix q = quat_matrix_from_json(item.at("quat"), f);
        if (!(chi(m) == q)) throw VerifyError("stored quaternion image mismatches chi");
        if (!(dieudonne_det_sq(q) == one))
            throw VerifyError("pseudo-determinant is not 1");
        if (!is_unit_matrix(q, order)) throw VerifyError("not a unit of the matrix order");
        if (is_stab != m.is_su()) throw VerifyError("stabilizer flag mismatches the norm");
        if (item.contains("halfspace")) {
            HalfSpace h = halfspace_from_json(item.at("halfspace"), f);
            HalfSpace recomputed = bisector_at_basepoint(m);
            if (!recomputed.same_wall(h)) throw VerifyError("stored wall mismatches the bisector");
            // the wall must agree with the defining equidistance equation
            UpperPoint base = UpperPoint::base(4, f);
            if (!equidistance_polynomial_identity(h, base, m.inverse().act(base)))
                throw VerifyError("wall fails the equidistance identity");
            region.add_halfspace_trace(h);
            if (h.kind == HalfSpace::Kind::Plane) {
                BoundaryRegion tmp;
                tmp.add_halfspace_trace(h);
                const auto& row = tmp.polytope.at(0);
                if (std::find(hyperplane_rows.begin(), hyperplane_rows.end(), row) ==
                    hyperplane_rows.end())
                    hyperplane_rows.push_back(row);
            }
        }
        ++checked;
    };

    for (const auto& item : j.at("stabilizer")) check_matrix(item, true);
    for (const auto& item : j.at("generators")) check_matrix(item, false);

    // stabilizer Dirichlet walls about the recorded base point
    if (j.contains("stabilizer_domain")) {
        const Json& sd = j.at("stabilizer_domain");
        UpperPoint p0 = upper_point_from_json(sd.at("base_point"), f);
        for (const auto& w : sd.at("walls")) {
            VahlenMatrix g = vahlen_from_json(w.at("element"), f);
            if (auto why = g.validity_failure())
                throw VerifyError("invalid stabilizer element: " + *why);
            if (!g.is_su()) throw VerifyError("stabilizer wall element does not fix i_4");
            HalfSpace h = halfspace_from_json(w.at("halfspace"), f);
            if (!bisector_generic(p0, g.act(p0)).same_wall(h))
                throw VerifyError("stabilizer wall mismatches its bisector");
            region.add_halfspace_trace(h);
        }
    }

    const Json& certs = j.at("certificates");
    verify_boundedness(hyperplane_rows, 4,
                       boundedness_from_json(certs.at("boundedness"), f), f);
    if (status == "complete")
        verify_emptiness(region, emptiness_from_json(certs.at("emptiness"), f), f);
    return checked;
}

// 2D/3D slice of the domain walls: substitute the fixed coordinates into
// every half-space and emit primitives in the remaining variables.
inline Json slice_result(const Json& j, const std::map<int, Rat>& fixed) {
    GroupSpec spec = spec_from_json(j.at("spec"));
    FieldDesc f = spec.field();
    std::vector<int> keep;
    for (int i = 0; i < 4; ++i)
        if (!fixed.count(i)) keep.push_back(i);

    Json out;
    out["spec"] = j.at("spec");
    out["fixed"] = Json::object();
    for (const auto& [i, v] : fixed) out["fixed"]["z" + std::to_string(i)] = rat_to_string(v);
    Json prims = Json::array();

    auto emit = [&](const HalfSpace& h, const std::string& role) {
        Json p;
        p["role"] = role;
        if (h.kind == HalfSpace::Kind::Sphere) {
            ExactScalar r2 = h.scalar;
            Json center = Json::array();
            for (int i = 0; i < 4; ++i) {
                ExactScalar d = (fixed.count(i) ? ExactScalar(fixed.at(i), f) : h.center[i]) -
                                h.center[i];
                r2 -= d * d;
                if (!fixed.count(i)) center.push_back(to_json(h.center[i]));
            }
            int s = r2.sign();
            if (s < 0) {
                p["kind"] = "empty";
            } else {
                p["kind"] = s == 0 ? "point" : "sphere";
                p["center"] = std::move(center);
                p["radius_sq"] = to_json(r2);
                p["keep"] = h.keep_positive ? "outside" : "inside";
            }
        } else {
            Json normal = Json::array();
            ExactScalar off = h.scalar;
            bool degenerate = true;
            for (int i = 0; i < 4; ++i) {
                if (fixed.count(i)) {
                    off += h.center[i] * ExactScalar(fixed.at(i), f);
                } else {
                    if (h.center[i].sign() != 0) degenerate = false;
                    normal.push_back(to_json(h.center[i]));
                }
            }
            if (degenerate) {
                bool holds = h.keep_positive ? off.sign() >= 0 : off.sign() <= 0;
                p["kind"] = holds ? "all" : "empty";
            } else {
                p["kind"] = "plane";
                p["normal"] = std::move(normal);
                p["offset"] = to_json(off);
                p["keep"] = h.keep_positive ? "nonneg" : "nonpos";
            }
        }
        prims.push_back(std::move(p));
    };

    for (const auto& item : j.at("generators"))
        if (item.contains("halfspace"))
            emit(halfspace_from_json(item.at("halfspace"), f),
                 item.at("provenance").get<std::string>());
    if (j.contains("stabilizer_domain"))
        for (const auto& w : j.at("stabilizer_domain").at("walls"))
            emit(halfspace_from_json(w.at("halfspace"), f), "stabilizer");
    out["primitives"] = std::move(prims);
    return out;
}

} // namespace vahlen
