#pragma once

#include "vahlen/domain.hpp"

#include <nlohmann/json.hpp>

namespace vahlen {

using Json = nlohmann::ordered_json;

// All numbers are exact strings; rationals are "numerator/denominator".
// Scalars of the rational field are plain strings, scalars of a surd field
// are {"p":..,"q":..,"c":[four strings]} objects.

inline Json to_json(const ExactScalar& s) {
    if (s.field().rational()) return rat_to_string(s.rational_part());
    Json j;
    j["p"] = s.field().p;
    j["q"] = s.field().q;
    j["c"] = {rat_to_string(s.coeff(0)), rat_to_string(s.coeff(1)), rat_to_string(s.coeff(2)),
              rat_to_string(s.coeff(3))};
    return j;
}

inline ExactScalar scalar_from_json(const Json& j, FieldDesc f = {}) {
    if (j.is_string()) return ExactScalar(rat_from_string(j.get<std::string>()), f);
    FieldDesc fd{j.at("p").get<long>(), j.at("q").get<long>()};
    const auto& c = j.at("c");
    return ExactScalar(fd, rat_from_string(c.at(0).get<std::string>()),
                       rat_from_string(c.at(1).get<std::string>()),
                       rat_from_string(c.at(2).get<std::string>()),
                       rat_from_string(c.at(3).get<std::string>()));
}

inline Json to_json(const std::vector<ExactScalar>& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

inline std::vector<ExactScalar> scalars_from_json(const Json& j, FieldDesc f = {}) {
    std::vector<ExactScalar> v;
    for (const auto& x : j) v.push_back(scalar_from_json(x, f));
    return v;
}

// Clifford element: {"n":4, "coeffs": {"": .., "12": .., ...}} with blade
// keys as concatenated generator indices.
inline Json to_json(const CliffordElement& e) {
    Json j;
    j["n"] = e.degree();
    Json coeffs = Json::object();
    for (unsigned m = 0; m < e.blade_count(); ++m) {
        if (e.coeff(m).is_zero()) continue;
        std::string key;
        for (int h = 0; h < e.degree() - 1; ++h)
            if (m & (1u << h)) key += std::to_string(h + 1);
        coeffs[key] = to_json(e.coeff(m));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline CliffordElement clifford_from_json(const Json& j, FieldDesc f = {}) {
    CliffordElement e(j.at("n").get<int>(), f);
    for (const auto& [key, val] : j.at("coeffs").items()) {
        unsigned mask = 0;
        for (char ch : key) {
            int h = ch - '0';
            if (h < 1 || h >= e.degree()) throw std::invalid_argument("bad blade key");
            mask |= 1u << (h - 1);
        }
        e.set_coeff(mask, scalar_from_json(val, f));
    }
    return e;
}

inline Json to_json(const VahlenMatrix& m) {
    return Json{{"alpha", to_json(m.alpha())},
                {"beta", to_json(m.beta())},
                {"gamma", to_json(m.gamma())},
                {"delta", to_json(m.delta())}};
}

inline VahlenMatrix vahlen_from_json(const Json& j, FieldDesc f = {}) {
    return VahlenMatrix(clifford_from_json(j.at("alpha"), f), clifford_from_json(j.at("beta"), f),
                        clifford_from_json(j.at("gamma"), f), clifford_from_json(j.at("delta"), f));
}

inline Json to_json(const Quaternion& q) {
    return Json{to_json(q.c[0]), to_json(q.c[1]), to_json(q.c[2]), to_json(q.c[3])};
}

inline Quaternion quaternion_from_json(const Json& j, FieldDesc f = {}) {
    return Quaternion{scalar_from_json(j.at(0), f), scalar_from_json(j.at(1), f),
                      scalar_from_json(j.at(2), f), scalar_from_json(j.at(3), f)};
}

inline Json to_json(const QuatMatrix& m) {
    return Json{{"a", to_json(m.a)}, {"b", to_json(m.b)}, {"c", to_json(m.c)}, {"d", to_json(m.d)}};
}

inline QuatMatrix quat_matrix_from_json(const Json& j, FieldDesc f = {}) {
    return QuatMatrix{quaternion_from_json(j.at("a"), f), quaternion_from_json(j.at("b"), f),
                      quaternion_from_json(j.at("c"), f), quaternion_from_json(j.at("d"), f)};
}

inline Json to_json(const HalfSpace& h) {
    Json j;
    if (h.kind == HalfSpace::Kind::Sphere) {
        j["kind"] = "sphere";
        j["center"] = to_json(h.center);
        j["radius_sq"] = to_json(h.scalar);
        j["keep"] = h.keep_positive ? "outside" : "inside";
    } else {
        j["kind"] = "plane";
        j["normal"] = to_json(h.center);
        j["offset"] = to_json(h.scalar);
        j["keep"] = h.keep_positive ? "nonneg" : "nonpos";
    }
    return j;
}

inline HalfSpace halfspace_from_json(const Json& j, FieldDesc f = {}) {
    HalfSpace h;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sphere") {
        h.kind = HalfSpace::Kind::Sphere;
        h.center = scalars_from_json(j.at("center"), f);
        h.scalar = scalar_from_json(j.at("radius_sq"), f);
        h.keep_positive = j.at("keep").get<std::string>() == "outside";
    } else if (kind == "plane") {
        h.kind = HalfSpace::Kind::Plane;
        h.center = scalars_from_json(j.at("normal"), f);
        h.scalar = scalar_from_json(j.at("offset"), f);
        h.keep_positive = j.at("keep").get<std::string>() == "nonneg";
    } else {
        throw std::invalid_argument("unknown half-space kind");
    }
    return h;
}

inline Json to_json(const GroupSpec& s) {
    switch (s.kind) {
        case GroupSpec::Kind::Gamma4Z: return Json{{"kind", "full"}};
        case GroupSpec::Kind::Congruence: return Json{{"kind", "congruence"}, {"level", s.level}};
        case GroupSpec::Kind::QuatOrder:
            return Json{{"kind", "quat_order"}, {"x", s.x}, {"y", s.y}};
    }
    throw std::logic_error("bad spec");
}

inline GroupSpec spec_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "full") return GroupSpec::gamma4z();
    if (kind == "congruence") return GroupSpec::congruence(j.at("level").get<long>());
    if (kind == "quat_order")
        return GroupSpec::quat_order(j.at("x").get<long>(), j.at("y").get<long>());
    throw std::invalid_argument("unknown group spec kind");
}

inline Json to_json(const Box& b) {
    Json j = Json::array();
    for (int i = 0; i < b.dim(); ++i) j.push_back(Json{to_json(b.lo[i]), to_json(b.hi[i])});
    return j;
}

inline Box box_from_json(const Json& j, FieldDesc f = {}) {
    Box b;
    for (const auto& side : j) {
        b.lo.push_back(scalar_from_json(side.at(0), f));
        b.hi.push_back(scalar_from_json(side.at(1), f));
    }
    return b;
}

inline Json to_json(const BoundednessCert& c) {
    Json j;
    j["bounded"] = c.bounded;
    if (c.bounded) {
        Json mult = Json::array();
        for (const auto& row : c.multipliers) mult.push_back(to_json(row));
        j["multipliers"] = std::move(mult);
    } else if (!c.ray.empty()) {
        j["ray"] = to_json(c.ray);
    }
    return j;
}

inline BoundednessCert boundedness_from_json(const Json& j, FieldDesc f = {}) {
    BoundednessCert c;
    c.bounded = j.at("bounded").get<bool>();
    if (c.bounded)
        for (const auto& row : j.at("multipliers")) c.multipliers.push_back(scalars_from_json(row, f));
    else if (j.contains("ray"))
        c.ray = scalars_from_json(j.at("ray"), f);
    return c;
}

inline Json to_json(const EmptinessCert& c) {
    Json j;
    j["polytope_infeasible"] = c.polytope_infeasible;
    j["root"] = to_json(c.root);
    j["max_depth"] = c.max_depth;
    Json leaves = Json::array();
    for (const auto& leaf : c.leaves) {
        Json l;
        l["box"] = to_json(leaf.box);
        switch (leaf.reason) {
            case RegionLeaf::Reason::LpEmpty: l["reason"] = "lp_empty"; break;
            case RegionLeaf::Reason::NoInterior: l["reason"] = "no_interior"; break;
            case RegionLeaf::Reason::InsideBall:
                l["reason"] = "inside_ball " + std::to_string(leaf.ball);
                break;
            case RegionLeaf::Reason::UnionBalls: {
                l["reason"] = "union_balls";
                l["balls"] = leaf.balls;
                break;
            }
            case RegionLeaf::Reason::CuspCorner: {
                l["reason"] = "cusp_corner";
                l["balls"] = leaf.balls;
                l["corner"] = leaf.corner_mask;
                break;
            }
        }
        leaves.push_back(std::move(l));
    }
    j["leaves"] = std::move(leaves);
    return j;
}

inline EmptinessCert emptiness_from_json(const Json& j, FieldDesc f = {}) {
    EmptinessCert c;
    c.polytope_infeasible = j.at("polytope_infeasible").get<bool>();
    c.root = box_from_json(j.at("root"), f);
    c.max_depth = j.at("max_depth").get<int>();
    for (const auto& l : j.at("leaves")) {
        RegionLeaf leaf;
        leaf.box = box_from_json(l.at("box"), f);
        std::string reason = l.at("reason").get<std::string>();
        if (reason == "lp_empty") leaf.reason = RegionLeaf::Reason::LpEmpty;
        else if (reason == "no_interior") leaf.reason = RegionLeaf::Reason::NoInterior;
        else if (reason.rfind("inside_ball ", 0) == 0) {
            leaf.reason = RegionLeaf::Reason::InsideBall;
            leaf.ball = std::stoi(reason.substr(12));
        } else if (reason == "union_balls") {
            leaf.reason = RegionLeaf::Reason::UnionBalls;
            leaf.balls = l.at("balls").get<std::vector<int>>();
        } else if (reason == "cusp_corner") {
            leaf.reason = RegionLeaf::Reason::CuspCorner;
            leaf.balls = l.at("balls").get<std::vector<int>>();
            leaf.corner_mask = l.at("corner").get<int>();
        } else {
            throw std::invalid_argument("unknown leaf reason: " + reason);
        }
        c.leaves.push_back(std::move(leaf));
    }
    return c;
}

inline Json to_json(const UpperPoint& p) {
    return Json{{"y", to_json(p.y)}, {"r", to_json(p.r)}};
}

inline UpperPoint upper_point_from_json(const Json& j, FieldDesc f = {}) {
    UpperPoint p;
    p.y = scalars_from_json(j.at("y"), f);
    p.r = scalar_from_json(j.at("r"), f);
    return p;
}

// The full result document.
inline Json result_to_json(const ShellEnumerator& en, const DomainRun& run,
                           const std::vector<OutputGenerator>& output) {
    const QuatOrder order = en.spec().order();
    Json j;
    j["spec"] = to_json(en.spec());
    {
        Rat n(run.algo1.stop_norm);
        j["N"] = rat_to_string(n);
    }
    Json stab = Json::array();
    Json gens = Json::array();
    for (const auto& g : output) {
        Json item;
        item["clifford"] = to_json(g.clifford);
        item["quat"] = to_json(g.quat);
        // coordinates in the (x,y) order basis, the Lambda image
        {
            Json coords = Json::array();
            for (const Quaternion* q : {&g.quat.a, &g.quat.b, &g.quat.c, &g.quat.d}) {
                auto c = order.coords(*q);
                if (!c) throw std::logic_error("output entry not in the order");
                coords.push_back(Json{rat_to_string((*c)[0]), rat_to_string((*c)[1]),
                                      rat_to_string((*c)[2]), rat_to_string((*c)[3])});
            }
            item["order_coords"] = std::move(coords);
        }
        if (g.kind == OutputGenerator::Kind::Stabilizer) {
            stab.push_back(std::move(item));
        } else {
            item["provenance"] =
                g.kind == OutputGenerator::Kind::Hyperplane ? "hyperplane" : "sphere";
            if (g.wall) item["halfspace"] = to_json(*g.wall);
            gens.push_back(std::move(item));
        }
    }
    j["stabilizer"] = std::move(stab);
    j["generators"] = std::move(gens);
    {
        Json sw;
        sw["base_point"] = to_json(run.stabilizer.base_point);
        Json walls = Json::array();
        for (std::size_t i = 0; i < run.stabilizer.walls.size(); ++i) {
            Json w;
            w["element"] = to_json(en.to_matrix(run.stabilizer.wall_elements[i]));
            w["halfspace"] = to_json(run.stabilizer.walls[i]);
            walls.push_back(std::move(w));
        }
        sw["walls"] = std::move(walls);
        j["stabilizer_domain"] = std::move(sw);
    }
    Json certs;
    certs["boundedness"] = to_json(run.algo1.boundedness);
    if (run.status == DomainRun::Status::Complete) certs["emptiness"] = to_json(run.emptiness);
    j["certificates"] = std::move(certs);
    j["status"] = run.status == DomainRun::Status::Complete ? "complete" : "inconclusive";
    if (!run.note.empty()) j["note"] = run.note;
    return j;
}

} // namespace vahlen
