#include "gonlab/io.hpp"

#include <fstream>
#include <sstream>

#include "gonlab/error.hpp"

namespace gonlab::io {

namespace {

const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

std::string string_of(const Json& j, const std::string& where)
{
    if (!j.is_string())
        throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

int int_of(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        throw ParseError(where + ": expected an integer");
    return j.get<int>();
}

/// Rationals may be given as "p/q" strings or as JSON integers.
Rational rational_of(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    return parse_rational(string_of(j, where));
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

Json to_json(const MetricGraph& g)
{
    Json edges = Json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"id", e.id},
                         {"ends", {g.vertex_id(e.first), g.vertex_id(e.second)}},
                         {"length", to_string(e.length)}});
    return {{"vertices", g.vertex_ids()}, {"edges", edges}};
}

MetricGraph graph_from_json(const Json& j)
{
    MetricGraph g;
    const auto& vertices = member(j, "vertices", "graph");
    const auto& edges = member(j, "edges", "graph");
    if (!vertices.is_array() || !edges.is_array())
        throw ParseError("graph: \"vertices\" and \"edges\" must be arrays");
    for (const auto& v : vertices)
        g.add_vertex(string_of(v, "graph vertex"));
    for (const auto& e : edges) {
        auto id = string_of(member(e, "id", "edge"), "edge id");
        const auto& ends = member(e, "ends", "edge '" + id + "'");
        if (!ends.is_array() || ends.size() != 2)
            throw ParseError("edge '" + id + "': \"ends\" must hold two vertex ids");
        Length length(1);
        if (e.contains("length")) {
            const auto& l = e.at("length");
            length = l.is_number_integer() ? Length(l.get<std::int64_t>())
                                           : parse_length(string_of(l, "edge '" + id + "' length"));
        }
        g.add_edge(id, string_of(ends[0], "edge end"), string_of(ends[1], "edge end"), length);
    }
    return g;
}

Json to_json(const PointRef& p)
{
    if (p.is_vertex())
        return {{"vertex", p.id}};
    return {{"edge", p.id}, {"offset", to_string(p.offset)}};
}

PointRef point_from_json(const Json& j)
{
    if (j.is_object() && j.contains("vertex"))
        return PointRef::vertex(string_of(j.at("vertex"), "point vertex"));
    if (j.is_object() && j.contains("edge"))
        return PointRef::interior(string_of(j.at("edge"), "point edge"),
                                  rational_of(member(j, "offset", "point"), "point offset"));
    throw ParseError("point: expected {\"vertex\":...} or {\"edge\":...,\"offset\":...}");
}

Json to_json(const Divisor& d)
{
    Json out = Json::array();
    for (const auto& [p, c] : d.terms())
        out.push_back({{"at", to_json(p)}, {"coeff", c}});
    return out;
}

Divisor divisor_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("divisor: expected an array of {\"at\":..., \"coeff\":...}");
    Divisor d;
    for (const auto& term : j)
        d.add(point_from_json(member(term, "at", "divisor term")), int_of(member(term, "coeff", "divisor term"), "coeff"));
    return d;
}

Json to_json(const GraphMorphism& phi)
{
    Json edge_map = Json::object();
    for (const auto& [e, image] : phi.edge_map)
        edge_map[e] = image.contracted() ? Json{{"vertex", image.id}} : Json(image.id);
    return {{"source", to_json(phi.source)},
            {"target", to_json(phi.target)},
            {"vertex_map", phi.vertex_map},
            {"edge_map", edge_map},
            {"dilation", phi.dilation}};
}

GraphMorphism morphism_from_json(const Json& j)
{
    GraphMorphism phi;
    phi.source = graph_from_json(member(j, "source", "morphism"));
    phi.target = graph_from_json(member(j, "target", "morphism"));
    const auto& vmap = member(j, "vertex_map", "morphism");
    const auto& emap = member(j, "edge_map", "morphism");
    const auto& dil = member(j, "dilation", "morphism");
    if (!vmap.is_object() || !emap.is_object() || !dil.is_object())
        throw ParseError("morphism: vertex_map, edge_map and dilation must be objects");
    for (const auto& [k, v] : vmap.items())
        phi.vertex_map[k] = string_of(v, "vertex_map");
    for (const auto& [k, v] : emap.items()) {
        if (v.is_string())
            phi.edge_map[k] = EdgeImage::edge(v.get<std::string>());
        else
            phi.edge_map[k] = EdgeImage::vertex(string_of(member(v, "vertex", "edge_map"), "edge_map"));
    }
    for (const auto& [k, v] : dil.items())
        phi.dilation[k] = int_of(v, "dilation");
    return phi;
}

Json to_json(const ExhaustionRecord& r)
{
    return {{"subdivision", r.subdivision},
            {"degree", r.degree},
            {"exhausted", r.exhausted},
            {"candidates", r.candidates},
            {"classes", r.classes}};
}

Json to_json(const GonalityCertificate& c)
{
    return {{"value", c.value},
            {"witness", to_json(c.witness)},
            {"exhaustion", to_json(c.exhaustion)},
            {"lower_bound", c.lower_bound}};
}

Json to_json(const BurnReport& r)
{
    Json burnt = Json::array(), unburnt = Json::array(), boundary = Json::array();
    for (const auto& p : r.burnt)
        burnt.push_back(to_json(p));
    for (const auto& p : r.unburnt)
        unburnt.push_back(to_json(p));
    for (const auto& p : r.saturated_boundary)
        boundary.push_back(to_json(p));
    Json out{{"subdivision", r.subdivision},
             {"fully_burnt", r.fully_burnt()},
             {"burnt", burnt},
             {"unburnt", unburnt},
             {"saturated_boundary", boundary}};
    out["nonsaturated_witness"] = r.nonsaturated_witness ? to_json(*r.nonsaturated_witness) : Json(nullptr);
    return out;
}

Json to_json(const HarmonicReport& r)
{
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"point", f.point},
                            {"first_direction", f.first_direction},
                            {"first_sum", f.first_sum},
                            {"second_direction", f.second_direction},
                            {"second_sum", f.second_sum}});
    Json out{{"harmonic", r.harmonic}};
    out["global_degree"] = r.global_degree ? Json(*r.global_degree) : Json(nullptr);
    out["local_degree"] = r.local_degree;
    out["failures"] = failures;
    return out;
}

Json to_json(const LiftabilityCertificate& c)
{
    Json partitions = Json::object();
    for (const auto& [p, list] : c.partitions) {
        Json entry = Json::object();
        for (const auto& part : list)
            entry[part.target_edge] = part.parts;
        partitions[p] = entry;
    }
    return {{"verdict", c.verdict}, {"reason", c.reason}, {"partitions", partitions}};
}

std::string to_dot(const MetricGraph& g, const Divisor& d)
{
    std::ostringstream out;
    out << "graph G {\n";
    for (const auto& v : g.vertex_ids()) {
        out << "  " << quoted(v);
        int c = d[PointRef::vertex(v)];
        bool infinite_end = g.valence(g.vertex(v)) == 1 &&
                            g.edge(g.incident(g.vertex(v)).front()).length.is_infinite() &&
                            v.size() > 4 && v.compare(v.size() - 4, 4, ":end") == 0;
        if (c != 0)
            out << " [label=" << quoted(v + " (" + std::to_string(c) + ")") << "]";
        else if (infinite_end)
            out << " [shape=point]";
        out << ";\n";
    }
    for (const auto& e : g.edges()) {
        out << "  " << quoted(g.vertex_id(e.first)) << " -- " << quoted(g.vertex_id(e.second))
            << " [id=" << quoted(e.id) << ", label=" << quoted(to_string(e.length));
        if (e.length.is_infinite())
            out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace gonlab::io
