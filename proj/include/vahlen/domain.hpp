#pragma once

#include "vahlen/region.hpp"
#include "vahlen/shells.hpp"
#include "vahlen/wall_points.hpp"

#include <set>
#include <string>

namespace vahlen {

inline PairMatrix pm_mul(const IQuatCtx& ctx, const PairMatrix& m, const PairMatrix& n) {
    PairMatrix r;
    r.qa = ctx.mul(m.qa, n.qa) + ctx.mul(m.qb, n.qc);
    r.qb = ctx.mul(m.qa, n.qb) + ctx.mul(m.qb, n.qd);
    r.qc = ctx.mul(m.qc, n.qa) + ctx.mul(m.qd, n.qc);
    r.qd = ctx.mul(m.qc, n.qb) + ctx.mul(m.qd, n.qd);
    r.ra = ctx.mul(m.ra, n.ra) + ctx.mul(m.rb, n.rc);
    r.rb = ctx.mul(m.ra, n.rb) + ctx.mul(m.rb, n.rd);
    r.rc = ctx.mul(m.rc, n.ra) + ctx.mul(m.rd, n.rc);
    r.rd = ctx.mul(m.rc, n.rb) + ctx.mul(m.rd, n.rd);
    return r;
}

inline PairMatrix pm_identity() {
    PairMatrix m;
    m.qa = m.ra = m.qd = m.rd = IQuatCtx::one();
    return m;
}

// Simplicity key used to pick a small canonical generating set of the
// finite stabilizer: total blade grade over the entries, then the number
// of off-diagonal entries, then the lexicographic pair data.
inline std::tuple<int, int, PairMatrix> stabilizer_key(const PairMatrix& m) {
    auto entry_weight = [&](const IQuat& q, const IQuat& r) {
        // doubled blade coefficients (x +- y patterns): nonzero iff present;
        // slots 1, i1, i2, i1i2, i3, i1i3, i2i3, i1i2i3
        std::int64_t two_coeff[8] = {
            q.c[0] + r.c[0], q.c[1] + r.c[1], q.c[2] + r.c[2], q.c[3] + r.c[3],
            r.c[3] - q.c[3], q.c[2] - r.c[2], r.c[1] - q.c[1], q.c[0] - r.c[0]};
        static const int grade_of_slot[8] = {0, 1, 1, 2, 1, 2, 2, 3};
        int w = 0;
        for (int s = 0; s < 8; ++s)
            if (two_coeff[s] != 0) w += grade_of_slot[s];
        return w;
    };
    int grade = entry_weight(m.qa, m.ra) + entry_weight(m.qb, m.rb) + entry_weight(m.qc, m.rc) +
                entry_weight(m.qd, m.rd);
    int offdiag = int(!(m.qb.is_zero() && m.rb.is_zero())) + int(!(m.qc.is_zero() && m.rc.is_zero()));
    return {grade, offdiag, m};
}

struct StabilizerData {
    std::vector<PairMatrix> group;      // projective classes, identity included
    std::vector<PairMatrix> generators; // reduced generating set
    UpperPoint base_point;
    std::vector<PairMatrix> wall_elements; // nontrivial elements, group order
    std::vector<HalfSpace> walls;          // Dirichlet wall about the base point per element
};

// Closure of a set of projective classes under multiplication.
inline std::set<PairMatrix> projective_closure(const IQuatCtx& ctx,
                                               const std::vector<PairMatrix>& gens) {
    std::set<PairMatrix> group{pm_identity().canonical_sign()};
    std::vector<PairMatrix> frontier{group.begin(), group.end()};
    while (!frontier.empty()) {
        std::vector<PairMatrix> next;
        for (const auto& g : frontier)
            for (const auto& h : gens) {
                PairMatrix p = pm_mul(ctx, g, h).canonical_sign();
                if (group.insert(p).second) next.push_back(p);
            }
        frontier = std::move(next);
    }
    return group;
}

// The stabilizer of i_4: the norm-2 shell, closed under multiplication,
// a reduced generating set, and the Dirichlet walls of the finite group
// about a generic base point off the fixed loci.
inline StabilizerData compute_stabilizer(const ShellEnumerator& en) {
    const IQuatCtx ctx = en.spec().ctx();
    const FieldDesc f = en.field();
    StabilizerData st;

    std::vector<PairMatrix> shell2 = en.shell_pairs(2);
    for (const auto& m : shell2)
        if (!en.is_su_pair(m) && !en.is_su_pair(-m))
            throw std::logic_error("norm-2 element outside the stabilizer");

    std::set<PairMatrix> group = projective_closure(ctx, shell2);
    for (const auto& g : group)
        if (en.norm_sq(g) != 2) throw std::logic_error("stabilizer closure left norm 2");
    st.group.assign(group.begin(), group.end());

    // greedy reduction in simplicity order
    std::vector<PairMatrix> ordered = st.group;
    std::sort(ordered.begin(), ordered.end(), [](const PairMatrix& a, const PairMatrix& b) {
        return stabilizer_key(a) < stabilizer_key(b);
    });
    const PairMatrix id = pm_identity().canonical_sign();
    std::set<PairMatrix> have{id};
    for (const auto& m : ordered) {
        if (have.count(m)) continue;
        st.generators.push_back(m);
        have = projective_closure(ctx, st.generators);
        if (have.size() == group.size()) break;
    }
    if (have != group) throw std::logic_error("stabilizer generator reduction failed");

    // base point (0, 1/11, 1/13, 1/17) + i_4, halving schedule on collision
    std::vector<VahlenMatrix> nontrivial;
    for (const auto& g : st.group) {
        if (g == id) continue;
        st.wall_elements.push_back(g);
        nontrivial.push_back(en.to_matrix(g));
    }
    UpperPoint p0;
    p0.y = {ExactScalar(Rat(0), f), ExactScalar(Rat(1, 11), f), ExactScalar(Rat(1, 13), f),
            ExactScalar(Rat(1, 17), f)};
    p0.r = ExactScalar::integer(1, f);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 64) throw std::logic_error("no usable stabilizer base point found");
        bool fixed = false;
        for (const auto& g : nontrivial)
            if (g.act(p0) == p0 || (-g).act(p0) == p0) { fixed = true; break; }
        if (!fixed) break;
        ExactScalar half(Rat(1, 2), f);
        for (auto& v : p0.y) v *= half;
    }
    st.base_point = p0;
    for (const auto& g : nontrivial)
        st.walls.push_back(bisector_generic(p0, g.act(p0)));
    return st;
}

struct Algorithm1Result {
    std::vector<HalfSpace> walls;    // the hyperplane boundary B, duplicates merged
    std::vector<PairMatrix> members; // hyperplane-type elements of norm <= N
    std::int64_t stop_norm = 0;
    BoundednessCert boundedness;
};

// Hyperplane sweep: per norm shell, intersect the vertical walls
// D_{M^{-1}}(i_4); stop when the boundary trace is compact. For the full
// groups the shell reduces, after stabilizer normalization, to the
// translations (1, b; 0, 1).
inline Algorithm1Result algorithm1(const ShellEnumerator& en, std::int64_t norm_cap) {
    const FieldDesc f = en.field();
    const bool full = en.spec().kind != GroupSpec::Kind::Congruence;
    Algorithm1Result res;
    std::vector<LinearConstraint> rows;
    for (std::int64_t n = 3; n <= norm_cap; ++n) {
        std::vector<PairMatrix> members =
            full ? en.translation_pairs(n) : en.hyperplane_pairs(n);
        for (const auto& pm : members) {
            VahlenMatrix m = en.to_matrix(pm);
            HalfSpace wall = bisector_at_basepoint(m);
            if (wall.kind != HalfSpace::Kind::Plane)
                throw std::logic_error("hyperplane-type element produced a sphere wall");
            res.members.push_back(pm);
            bool fresh = true;
            for (const auto& w : res.walls)
                if (w.same_wall(wall)) { fresh = false; break; }
            if (fresh) {
                res.walls.push_back(wall);
                BoundaryRegion tmp;
                tmp.add_halfspace_trace(wall);
                rows.push_back(tmp.polytope.at(0));
            }
        }
        if (!rows.empty()) {
            BoundednessCert cert = polytope_is_bounded(rows, 4, f);
            if (cert.bounded) {
                res.stop_norm = n;
                res.boundedness = std::move(cert);
                return res;
            }
        }
    }
    throw std::runtime_error("no compact boundary trace below the norm cap");
}

struct SphereGenerator {
    PairMatrix element;
    HalfSpace wall;
};

struct DomainRun {
    GroupSpec spec;
    StabilizerData stabilizer;
    Algorithm1Result algo1;
    std::vector<SphereGenerator> sphere_generators;
    EmptinessCert emptiness;
    enum class Status { Complete, Inconclusive } status = Status::Complete;
    int inconclusive_depth = 0;
    std::string note;
    std::int64_t last_shell = 0;
};

// Hemisphere sweep over increasing norm: a shell element joins S exactly
// when its wall removes essential content from the boundary region; stop
// once the region is certifiably covered.
inline DomainRun algorithm2(const ShellEnumerator& en, const StabilizerData& st,
                            const Algorithm1Result& a1, std::int64_t norm_cap, int depth_cap) {
    const FieldDesc f = en.field();
    DomainRun run;
    run.spec = en.spec();
    run.stabilizer = st;
    run.algo1 = a1;

    BoundaryRegion region;
    region.dim = 4;
    for (const auto& w : a1.walls) region.add_halfspace_trace(w);
    for (const auto& w : st.walls) region.add_halfspace_trace(w);

    auto empty_now = [&]() { return region_is_empty(region, depth_cap, f); };

    RegionStatus rs = empty_now();
    if (rs.kind == RegionStatus::Kind::Empty) {
        run.emptiness = rs.cert;
        run.status = DomainRun::Status::Complete;
        return run;
    }
    if (rs.kind == RegionStatus::Kind::Inconclusive) {
        run.status = DomainRun::Status::Inconclusive;
        run.inconclusive_depth = rs.depth_reached;
        run.note = "initial region emptiness undecided at the depth cap";
        return run;
    }

    Box root = certified_bounding_box(region.polytope, region.dim, f);
    const int shrink_depth = std::min(depth_cap, 12);
    const IQuatCtx ctx = en.spec().ctx();
    // (column norm, wall datum) identifies the wall; stabilizer multiples
    // share it and only the first representative can shrink the region
    std::set<std::pair<std::int64_t, IQuat>> seen_walls;
    for (std::int64_t n = 3; n <= norm_cap; ++n) {
        run.last_shell = n;
        for (const auto& pm : en.shell_pairs(n)) {
            std::int64_t g = en.column_norm(pm);
            if (g == 1) continue; // hyperplane type (includes the stabilizer shell)
            IQuat v = ctx.mul(pm.rb.star(), pm.ra.prime()) + ctx.mul(pm.rd.star(), pm.rc.prime());
            if (!seen_walls.insert({g, v}).second) continue;

            VahlenMatrix m = en.to_matrix(pm);
            HalfSpace wall = bisector_at_basepoint(m);
            if (wall.kind != HalfSpace::Kind::Sphere)
                throw std::logic_error("hemisphere-type element produced a plane wall");
            if (!wall.keep_positive)
                throw std::logic_error("wall keeps the inside of a hemisphere; unsupported region");
            Ball ball{wall.center, wall.scalar};
            ShrinkStatus sh = region_shrinks(region, ball, shrink_depth, f, root);
            if (sh.kind == ShrinkStatus::Kind::NoChange) continue;
            if (sh.kind == ShrinkStatus::Kind::Inconclusive)
                run.note = "a shrink test hit the depth cap; element added conservatively";
            run.sphere_generators.push_back({pm, wall});
            region.excluded.push_back(ball);
        }
        rs = empty_now();
        if (rs.kind == RegionStatus::Kind::Empty) {
            run.emptiness = rs.cert;
            run.status = DomainRun::Status::Complete;
            return run;
        }
        // an inconclusive check is not a witness; later shells may still
        // produce a clean cover, so keep sweeping until the norm cap
        if (rs.kind == RegionStatus::Kind::Inconclusive) {
            run.inconclusive_depth = rs.depth_reached;
            run.note = "region emptiness undecided at the depth cap after shell " +
                       std::to_string(n);
        }
    }
    run.status = DomainRun::Status::Inconclusive;
    if (run.note.empty()) run.note = "norm cap reached with a nonempty region";
    return run;
}

struct OutputGenerator {
    enum class Kind { Stabilizer, Hyperplane, Sphere } kind;
    PairMatrix element;
    VahlenMatrix clifford;
    QuatMatrix quat;                  // chi image, entries in H_{x,y}(R)
    std::optional<HalfSpace> wall;    // for S members
};

// Pull every generator back to the quaternion side and re-validate.
inline std::vector<OutputGenerator> assemble_output(const ShellEnumerator& en,
                                                    const DomainRun& run) {
    const QuatOrder order = en.spec().order();
    std::vector<OutputGenerator> out;
    auto add = [&](OutputGenerator::Kind kind, const PairMatrix& pm,
                   std::optional<HalfSpace> wall) {
        OutputGenerator g;
        g.kind = kind;
        g.element = pm;
        g.clifford = en.to_matrix(pm);
        g.quat = chi(g.clifford);
        if (!is_unit_matrix(g.quat, order))
            throw std::logic_error("output generator fails the unit-matrix check");
        if (auto why = g.clifford.validity_failure())
            throw std::logic_error("output generator invalid: " + *why);
        g.wall = std::move(wall);
        out.push_back(std::move(g));
    };
    for (const auto& pm : run.stabilizer.generators)
        add(OutputGenerator::Kind::Stabilizer, pm, std::nullopt);
    {
        // hyperplane members paired with their walls
        for (const auto& pm : run.algo1.members) {
            VahlenMatrix m = en.to_matrix(pm);
            add(OutputGenerator::Kind::Hyperplane, pm, bisector_at_basepoint(m));
        }
    }
    for (const auto& sg : run.sphere_generators)
        add(OutputGenerator::Kind::Sphere, sg.element, sg.wall);
    return out;
}

} // namespace vahlen
