#include "gonlab/harmonic.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gonlab/error.hpp"

namespace gonlab {

namespace {

[[noreturn]] void fail(const std::string& message) { throw InvalidMorphism(message); }

template <class Map>
void require_keys(const Map& map, const std::vector<std::string>& ids, const std::string& what)
{
    if (map.size() != ids.size())
        fail(what + " must have exactly one entry per source " +
             (what == "vertex_map" ? std::string("vertex") : std::string("edge")));
    for (const auto& id : ids)
        if (!map.count(id))
            fail(what + " has no entry for '" + id + "'");
}

std::vector<std::string> edge_ids(const MetricGraph& g)
{
    std::vector<std::string> out;
    for (const auto& e : g.edges())
        out.push_back(e.id);
    return out;
}

/// Copy of g without the named edge.
MetricGraph without_edge(const MetricGraph& g, const std::string& id)
{
    MetricGraph out;
    for (const auto& v : g.vertex_ids())
        out.add_vertex(v);
    for (const auto& e : g.edges())
        if (e.id != id)
            out.add_edge(e.id, g.vertex_id(e.first), g.vertex_id(e.second), e.length);
    return out;
}

std::string fresh_edge_id(const MetricGraph& g, const std::string& stem)
{
    for (int k = 1;; ++k) {
        auto id = stem + std::to_string(k);
        if (!g.find_edge(id) && !g.find_vertex(id + ":end"))
            return id;
    }
}

void attach_infinite(MetricGraph& g, const std::string& at, const std::string& edge_id)
{
    g.add_vertex(edge_id + ":end");
    g.add_edge(edge_id, at, edge_id + ":end", Length::infinity());
}

void require_harmonic(const HarmonicReport& report)
{
    if (!report.harmonic) {
        const auto& f = report.failures.front();
        fail("morphism is not harmonic at '" + f.point + "': " + f.first_direction + " has " +
             std::to_string(f.first_sum) + ", " + f.second_direction + " has " + std::to_string(f.second_sum));
    }
}

} // namespace

bool GraphMorphism::is_finite() const
{
    return std::none_of(edge_map.begin(), edge_map.end(), [](const auto& kv) { return kv.second.contracted(); });
}

void check_structure(const GraphMorphism& phi)
{
    auto source_ok = validate(phi.source);
    if (!source_ok.ok())
        fail("source graph: " + source_ok.summary());
    auto target_ok = validate(phi.target);
    if (!target_ok.ok())
        fail("target graph: " + target_ok.summary());

    require_keys(phi.vertex_map, phi.source.vertex_ids(), "vertex_map");
    require_keys(phi.edge_map, edge_ids(phi.source), "edge_map");
    require_keys(phi.dilation, edge_ids(phi.source), "dilation");
    for (const auto& [v, image] : phi.vertex_map)
        if (!phi.target.find_vertex(image))
            fail("vertex '" + v + "' maps to unknown target vertex '" + image + "'");

    for (const auto& e : phi.source.edges()) {
        const auto& image = phi.edge_map.at(e.id);
        int dil = phi.dilation.at(e.id);
        const auto& a = phi.vertex_map.at(phi.source.vertex_id(e.first));
        const auto& b = phi.vertex_map.at(phi.source.vertex_id(e.second));
        if (dil < 0)
            fail("edge '" + e.id + "' has negative dilation");
        if (image.contracted() != (dil == 0))
            fail("edge '" + e.id + "' must be contracted exactly when its dilation is 0");
        if (image.contracted()) {
            if (!phi.target.find_vertex(image.id))
                fail("edge '" + e.id + "' contracts to unknown target vertex '" + image.id + "'");
            if (a != image.id || b != image.id)
                fail("contracted edge '" + e.id + "' has an endpoint not mapped to '" + image.id + "'");
            if (e.length.is_infinite())
                fail("infinite edge '" + e.id + "' cannot be contracted");
            continue;
        }
        if (!phi.target.find_edge(image.id))
            fail("edge '" + e.id + "' maps to unknown target edge '" + image.id + "'");
        const auto& f = phi.target.edge(image.id);
        const auto& fa = phi.target.vertex_id(f.first);
        const auto& fb = phi.target.vertex_id(f.second);
        if (!((a == fa && b == fb) || (a == fb && b == fa)))
            fail("endpoints of '" + e.id + "' do not map to the endpoints of '" + f.id + "'");
        if (e.length.is_infinite() != f.length.is_infinite())
            fail("edge '" + e.id + "' and its image '" + f.id + "' differ in finiteness");
        if (!e.length.is_infinite() && f.length.value() != Rational(dil) * e.length.value())
            fail("length of '" + f.id + "' is not dilation times length of '" + e.id + "'");
    }
}

HarmonicReport check_harmonic(const GraphMorphism& phi)
{
    check_structure(phi);
    HarmonicReport report;
    const auto& src = phi.source;
    const auto& tgt = phi.target;

    for (auto v : src.sorted_vertices()) {
        const auto& p = src.vertex_id(v);
        auto u = tgt.vertex(phi.vertex_map.at(p));
        std::map<std::string, int> sums;
        for (auto f : tgt.incident(u))
            sums[tgt.edge(f).id] = 0;
        for (auto e : src.incident(v)) {
            const auto& id = src.edge(e).id;
            const auto& image = phi.edge_map.at(id);
            if (!image.contracted())
                sums[image.id] += phi.dilation.at(id);
        }
        if (sums.empty()) {
            report.local_degree[p] = 0;
            continue;
        }
        auto first = sums.begin();
        report.local_degree[p] = first->second;
        for (auto it = std::next(first); it != sums.end(); ++it)
            if (it->second != first->second) {
                report.failures.push_back({p, first->first, it->first, first->second, it->second});
                break;
            }
    }
    if (!report.failures.empty())
        return report;

    std::vector<std::pair<std::string, int>> fibers;
    std::map<std::string, int> over_vertex, over_edge;
    for (const auto& [p, u] : phi.vertex_map)
        over_vertex[u] += report.local_degree.at(p);
    for (const auto& [e, image] : phi.edge_map)
        if (!image.contracted())
            over_edge[image.id] += phi.dilation.at(e);
    for (auto u : tgt.sorted_vertices())
        fibers.emplace_back(tgt.vertex_id(u), over_vertex[tgt.vertex_id(u)]);
    for (auto f : tgt.sorted_edges())
        fibers.emplace_back(tgt.edge(f).id, over_edge[tgt.edge(f).id]);
    for (const auto& [where, sum] : fibers)
        if (sum != fibers.front().second) {
            report.failures.push_back({"fiber", fibers.front().first, where, fibers.front().second, sum});
            return report;
        }
    report.harmonic = true;
    report.global_degree = fibers.empty() ? 0 : fibers.front().second;
    return report;
}

GraphMorphism identity_morphism(const MetricGraph& g)
{
    GraphMorphism phi{g, g, {}, {}, {}};
    for (const auto& v : g.vertex_ids())
        phi.vertex_map[v] = v;
    for (const auto& e : g.edges()) {
        phi.edge_map[e.id] = EdgeImage::edge(e.id);
        phi.dilation[e.id] = 1;
    }
    return phi;
}

GraphMorphism compose(const GraphMorphism& phi, const GraphMorphism& psi)
{
    if (!(phi.target == psi.source))
        fail("cannot compose: target of the first morphism is not the source of the second");
    GraphMorphism out{phi.source, psi.target, {}, {}, {}};
    for (const auto& [v, u] : phi.vertex_map)
        out.vertex_map[v] = psi.vertex_map.at(u);
    for (const auto& [e, image] : phi.edge_map) {
        if (image.contracted()) {
            out.edge_map[e] = EdgeImage::vertex(psi.vertex_map.at(image.id));
            out.dilation[e] = 0;
            continue;
        }
        const auto& second = psi.edge_map.at(image.id);
        out.edge_map[e] = second;
        out.dilation[e] = second.contracted() ? 0 : phi.dilation.at(e) * psi.dilation.at(image.id);
    }
    return out;
}

GraphMorphism build_sharp_morphism(const families::FamilySpec& spec)
{
    const auto* sharp = std::get_if<families::Sharp>(&spec.variant);
    if (!sharp)
        throw InvalidSpec("sharp morphism needs a sharp family spec");
    auto source = families::build(spec);
    auto layout = families::sharp_layout(*sharp);
    auto name = families::vertex_name;
    auto length = [&](int i, int j) { return source.edge(families::edge_name(i, j)).length.value(); };

    const auto middle = layout.middle();
    Rational leaf_length = length(layout.shared_leaf, middle.front());
    std::optional<Rational> outer_length;
    for (const auto& [root, side] : {std::pair{1, layout.v1_side}, std::pair{2, layout.v2_side}}) {
        if (side.empty())
            continue;
        Rational l = length(root, side.front());
        if (outer_length && *outer_length != l)
            throw InvalidSpec("edges from v1 and from v2 to the middle vertices must have the same length");
        outer_length = l;
    }

    MetricGraph target;
    for (const auto& u : {"u1", "u2", "u3"})
        target.add_vertex(u);
    target.add_edge("u1-u2", "u1", "u2", Length(leaf_length));
    target.add_edge("u2-u3", "u2", "u3", Length(*outer_length));

    GraphMorphism phi{source, target, {}, {}, {}};
    std::map<int, std::string> role;
    role[layout.shared_leaf] = "u1";
    for (int m : middle)
        role[m] = "u2";
    role[1] = role[2] = "u3";
    for (const auto& [i, u] : role)
        phi.vertex_map[name(i)] = u;
    for (const auto& e : source.edges()) {
        const auto& a = phi.vertex_map.at(source.vertex_id(e.first));
        const auto& b = phi.vertex_map.at(source.vertex_id(e.second));
        if (a == b) {
            phi.edge_map[e.id] = EdgeImage::vertex(a);
            phi.dilation[e.id] = 0;
        } else {
            phi.edge_map[e.id] = EdgeImage::edge(std::min(a, b) + "-" + std::max(a, b));
            phi.dilation[e.id] = 1;
        }
    }
    return phi;
}

GraphMorphism build_sharp_morphism(int d, int k1)
{
    families::FamilySpec spec;
    spec.variant = families::Sharp{d, k1};
    return build_sharp_morphism(spec);
}

MetricGraph elementary_modification(const MetricGraph& g, const PointRef& p)
{
    check_point(g, p);
    if (p.is_vertex()) {
        MetricGraph out = g;
        attach_infinite(out, p.id, fresh_edge_id(out, p.id + ":inf"));
        return out;
    }
    const auto& e = g.edge(p.id);
    auto out = without_edge(g, e.id);
    auto mid = to_string(p);
    out.add_vertex(mid);
    out.add_edge(e.id + "#1", g.vertex_id(e.first), mid, Length(p.offset));
    out.add_edge(e.id + "#2", mid, g.vertex_id(e.second), Length(e.length.value() - p.offset));
    attach_infinite(out, mid, fresh_edge_id(out, mid + ":inf"));
    return out;
}

GraphMorphism make_finite(const GraphMorphism& phi)
{
    auto report = check_harmonic(phi);
    require_harmonic(report);
    if (phi.is_finite())
        return phi;

    auto degree = report.local_degree;
    GraphMorphism out = phi;
    std::vector<std::string> contracted;
    for (auto e : phi.source.sorted_edges())
        if (phi.edge_map.at(phi.source.edge(e).id).contracted())
            contracted.push_back(phi.source.edge(e).id);

    for (const auto& id : contracted) {
        const auto edge = out.source.edge(id);
        const auto a = out.source.vertex_id(edge.first);
        const auto b = out.source.vertex_id(edge.second);
        const auto u = out.edge_map.at(id).id;
        const Rational len = edge.length.value();

        std::optional<std::string> leaf;
        if (degree.at(a) == 0 || degree.at(b) == 0) {
            if (degree.at(a) == 0 && degree.at(b) == 0)
                fail("contracted edge '" + id + "' joins two vertices of local degree 0");
            leaf = degree.at(a) == 0 ? a : b;
            if (out.source.valence(out.source.vertex(*leaf)) != 1)
                fail("vertex '" + *leaf + "' has local degree 0 but is not a leaf");
        }

        // target: u - u' of the half (or full) length, then the infinite edge f
        const auto u_new = id + ":u'";
        const auto uu = id + ":uu'";
        const auto f = id + ":f";
        const Rational step = leaf ? len : len / Rational(2);
        out.target.add_vertex(u_new);
        out.target.add_edge(uu, u, u_new, Length(step));
        attach_infinite(out.target, u_new, f);

        auto map_edge = [&](const std::string& e, const std::string& image) {
            out.edge_map[e] = EdgeImage::edge(image);
            out.dilation[e] = 1;
        };
        out.source = without_edge(out.source, id);
        out.edge_map.erase(id);
        out.dilation.erase(id);
        std::set<std::string> touched;
        if (leaf) {
            const auto root = *leaf == a ? b : a;
            out.source.add_edge(id, root, *leaf, Length(len));
            map_edge(id, uu);
            out.vertex_map[*leaf] = u_new;
            attach_infinite(out.source, *leaf, id + ":e3");
            map_edge(id + ":e3", f);
            out.vertex_map[id + ":e3:end"] = f + ":end";
            degree[*leaf] = 1;
            degree[id + ":e3:end"] = 1;
            touched.insert(root);
        } else {
            const auto m = id + ":m";
            out.source.add_vertex(m);
            out.vertex_map[m] = u_new;
            degree[m] = 2;
            out.source.add_edge(id + ":e1", a, m, Length(step));
            out.source.add_edge(id + ":e2", m, b, Length(step));
            map_edge(id + ":e1", uu);
            map_edge(id + ":e2", uu);
            for (const auto* k : {":e3", ":e4"}) {
                attach_infinite(out.source, m, id + k);
                map_edge(id + k, f);
                out.vertex_map[id + k + ":end"] = f + ":end";
                degree[id + k + ":end"] = 1;
            }
            touched = {a, b};
        }

        // every preimage of u needs d_p directions toward u'
        std::vector<std::string> preimages;
        for (const auto& [p, image] : out.vertex_map)
            if (image == u)
                preimages.push_back(p);
        for (const auto& p : preimages) {
            int need = degree.at(p) - int(touched.count(p));
            if (need < 0)
                fail("vertex '" + p + "' has local degree 0 next to contracted edge '" + id + "'");
            for (int k = 1; k <= need; ++k) {
                const auto x = id + ":leg:" + p + ":" + std::to_string(k);
                out.source.add_vertex(x);
                out.vertex_map[x] = u_new;
                out.source.add_edge(x + ":a", p, x, Length(step));
                map_edge(x + ":a", uu);
                attach_infinite(out.source, x, x + ":f");
                map_edge(x + ":f", f);
                out.vertex_map[x + ":f:end"] = f + ":end";
                degree[x] = 1;
                degree[x + ":f:end"] = 1;
            }
        }

        auto step_report = check_harmonic(out);
        if (!step_report.harmonic)
            fail("repair after contracted edge '" + id + "' did not restore harmonicity");
    }
    return out;
}

std::map<std::string, int> ramification_degrees(const GraphMorphism& phi)
{
    auto report = check_harmonic(phi);
    require_harmonic(report);
    std::map<std::string, int> out;
    for (auto v : phi.source.sorted_vertices()) {
        const auto& p = phi.source.vertex_id(v);
        int r = 2 * (report.local_degree.at(p) - 1);
        for (auto e : phi.source.incident(v)) {
            int dil = phi.dilation.at(phi.source.edge(e).id);
            // a contracted direction adds 1 to R and removes 1 from r
            if (dil != 0)
                r -= dil - 1;
        }
        out[p] = r;
    }
    return out;
}

Divisor ramification_divisor(const GraphMorphism& phi)
{
    auto report = check_harmonic(phi);
    require_harmonic(report);
    Divisor out;
    for (auto v : phi.source.sorted_vertices()) {
        const auto& p = phi.source.vertex_id(v);
        int r = 2 * (report.local_degree.at(p) - 1);
        for (auto e : phi.source.incident(v))
            r -= phi.dilation.at(phi.source.edge(e).id) - 1;
        out.add(PointRef::vertex(p), r);
    }
    return out;
}

bool is_effective_morphism(const GraphMorphism& phi)
{
    auto report = check_harmonic(phi);
    auto r = ramification_degrees(phi);
    return std::all_of(r.begin(), r.end(),
                       [&](const auto& kv) { return kv.second >= 0 || report.local_degree.at(kv.first) == 0; });
}

namespace {

HarmonicReport require_finite_harmonic(const GraphMorphism& phi)
{
    auto report = check_harmonic(phi);
    require_harmonic(report);
    if (!phi.is_finite())
        fail("morphism has contracted edges; apply make_finite first");
    return report;
}

} // namespace

LiftabilityCertificate liftability_certificate(const GraphMorphism& phi)
{
    require_finite_harmonic(phi);
    LiftabilityCertificate cert;
    cert.verdict = true;
    for (auto v : phi.source.sorted_vertices()) {
        const auto& p = phi.source.vertex_id(v);
        std::map<std::string, std::vector<int>> by_direction;
        auto u = phi.target.vertex(phi.vertex_map.at(p));
        for (auto f : phi.target.incident(u))
            by_direction[phi.target.edge(f).id];
        for (auto e : phi.source.incident(v)) {
            const auto& id = phi.source.edge(e).id;
            by_direction[phi.edge_map.at(id).id].push_back(phi.dilation.at(id));
        }
        auto& list = cert.partitions[p];
        for (auto& [f, parts] : by_direction) {
            std::sort(parts.begin(), parts.end(), std::greater<>());
            for (int part : parts)
                if (part != 1 && cert.verdict) {
                    cert.verdict = false;
                    cert.reason = "nontrivial partition at '" + p + "' over '" + f +
                                  "'; existence of a lift is not decided";
                }
            list.push_back({f, parts});
        }
    }
    if (cert.verdict)
        cert.reason = "every directional derivative equals 1";
    return cert;
}

Divisor fiber_divisor(const GraphMorphism& phi, const PointRef& p)
{
    auto report = require_finite_harmonic(phi);
    check_point(phi.target, p);
    Divisor out;
    if (p.is_vertex()) {
        for (const auto& [q, u] : phi.vertex_map)
            if (u == p.id)
                out.add(PointRef::vertex(q), report.local_degree.at(q));
        return out;
    }
    const auto& f = phi.target.edge(p.id);
    const auto& f_first = phi.target.vertex_id(f.first);
    for (const auto& e : phi.source.edges()) {
        const auto& image = phi.edge_map.at(e.id);
        if (image.id != f.id)
            continue;
        int k = phi.dilation.at(e.id);
        Rational along = p.offset / Rational(k);
        bool same_orientation = phi.vertex_map.at(phi.source.vertex_id(e.first)) == f_first;
        out.add(PointRef::interior(e.id, same_orientation ? along : e.length.value() - along), k);
    }
    return out;
}

} // namespace gonlab
