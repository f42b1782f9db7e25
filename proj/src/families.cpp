#include "gonlab/families.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "gonlab/error.hpp"

namespace gonlab::families {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::vector<std::pair<int, int>> clique_edges(const std::vector<int>& vertices)
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            out.push_back(ordered(vertices[i], vertices[j]));
    return out;
}

std::vector<int> range(int from, int to)
{
    std::vector<int> out;
    for (int i = from; i <= to; ++i)
        out.push_back(i);
    return out;
}

bool connected_complement(int d, const std::vector<std::pair<int, int>>& removed)
{
    std::set<std::pair<int, int>> gone(removed.begin(), removed.end());
    std::vector<bool> seen(d + 1, false);
    std::vector<int> stack{1};
    seen[1] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 1; w <= d; ++w)
            if (w != v && !seen[w] && !gone.count(ordered(v, w))) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
}

MetricGraph complete_minus(int d, const std::vector<std::pair<int, int>>& removed, const FamilySpec& spec)
{
    std::set<std::pair<int, int>> gone(removed.begin(), removed.end());
    MetricGraph g;
    for (int i = 1; i <= d; ++i)
        g.add_vertex(vertex_name(i));
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            if (gone.count({i, j}))
                continue;
            auto it = spec.overrides.find({i, j});
            Rational length = it == spec.overrides.end() ? spec.uniform_length : it->second;
            g.add_edge(edge_name(i, j), vertex_name(i), vertex_name(j), Length(length));
        }
    return g;
}

} // namespace

std::string vertex_name(int i) { return "v" + std::to_string(i); }

std::string edge_name(int i, int j)
{
    auto [a, b] = ordered(i, j);
    return vertex_name(a) + "-" + vertex_name(b);
}

int vertex_count(const FamilySpec& spec)
{
    return std::visit(overloaded{
                          [](const CompleteK& s) { return s.d; },
                          [](const KdMinusKh& s) { return s.d; },
                          [](const KdMinusEdges& s) { return s.d; },
                          [](const TwoCliquesRemoved& s) { return s.d; },
                          [](const Bipartite& s) { return s.m + s.n; },
                          [](const Sharp& s) { return s.d; },
                      },
                      spec.variant);
}

std::vector<int> SharpLayout::middle() const
{
    auto out = v1_side;
    out.insert(out.end(), v2_side.begin(), v2_side.end());
    return out;
}

SharpLayout sharp_layout(const Sharp& s)
{
    const int k2 = s.d - 1 - s.k1;
    SharpLayout layout;
    layout.shared_leaf = k2 + 2;
    layout.v1_side = range(3, s.d - s.k1);
    layout.v2_side = range(k2 + 3, s.d);
    return layout;
}

std::vector<std::pair<int, int>> removed_edges(const FamilySpec& spec)
{
    auto edges = std::visit(
        overloaded{
            [](const CompleteK&) { return std::vector<std::pair<int, int>>{}; },
            [](const KdMinusKh& s) { return clique_edges(range(1, s.h)); },
            [](const KdMinusEdges& s) {
                std::vector<std::pair<int, int>> out;
                for (auto [a, b] : s.removed)
                    out.push_back(ordered(a, b));
                return out;
            },
            [](const TwoCliquesRemoved& s) {
                auto out = clique_edges(s.first);
                auto more = clique_edges(s.second);
                out.insert(out.end(), more.begin(), more.end());
                return out;
            },
            [](const Bipartite& s) {
                auto out = clique_edges(range(1, s.m));
                auto more = clique_edges(range(s.m + 1, s.m + s.n));
                out.insert(out.end(), more.begin(), more.end());
                return out;
            },
            [](const Sharp& s) {
                auto layout = sharp_layout(s);
                std::vector<std::pair<int, int>> out{{1, layout.shared_leaf}, {2, layout.shared_leaf}};
                for (int v : layout.v2_side)
                    out.push_back({1, v});
                for (int v : layout.v1_side)
                    out.push_back({2, v});
                return out;
            },
        },
        spec.variant);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void check_spec(const FamilySpec& spec)
{
    auto fail = [](const std::string& why) { throw InvalidSpec(why); };
    const int d = vertex_count(spec);

    std::visit(overloaded{
                   [&](const CompleteK& s) {
                       if (s.d < 2)
                           fail("complete graph needs d >= 2");
                   },
                   [&](const KdMinusKh& s) {
                       if (s.h < 2 || s.h >= s.d)
                           fail("K_d minus K_h needs 2 <= h < d");
                   },
                   [&](const KdMinusEdges& s) {
                       std::set<std::pair<int, int>> distinct;
                       for (auto [a, b] : s.removed) {
                           if (a == b || a < 1 || b < 1 || a > s.d || b > s.d)
                               fail("removed edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") is not an edge of K_d");
                           if (!distinct.insert(ordered(a, b)).second)
                               fail("removed edge listed twice");
                       }
                       if (s.removed.empty() || int(s.removed.size()) > s.d - 2)
                           fail("need between 1 and d-2 removed edges");
                   },
                   [&](const TwoCliquesRemoved& s) {
                       for (const auto* part : {&s.first, &s.second}) {
                           if (part->size() < 2)
                               fail("each removed clique needs at least 2 vertices");
                           std::set<int> distinct(part->begin(), part->end());
                           if (distinct.size() != part->size() || *distinct.begin() < 1 ||
                               *distinct.rbegin() > s.d)
                               fail("clique vertices must be distinct indices in 1..d");
                       }
                   },
                   [&](const Bipartite& s) {
                       if (s.m < 2 || s.n < 2)
                           fail("bipartite family needs m, n >= 2");
                   },
                   [&](const Sharp& s) {
                       const int k2 = s.d - 1 - s.k1;
                       if (s.d < 4)
                           fail("sharp family needs d >= 4");
                       if (s.k1 < 1 || k2 < 1)
                           fail("sharp family needs k1, k2 >= 1 with k1 + k2 = d - 1");
                   },
               },
               spec.variant);

    if (spec.uniform_length <= Rational(0))
        fail("lengths must be positive");
    auto removed = removed_edges(spec);
    std::set<std::pair<int, int>> gone(removed.begin(), removed.end());
    for (const auto& [edge, length] : spec.overrides) {
        auto [a, b] = edge;
        if (a >= b || a < 1 || b > d || gone.count(edge))
            fail("length override on a missing edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        if (length <= Rational(0))
            fail("lengths must be positive");
    }
    if (!connected_complement(d, removed))
        fail("removing these edges disconnects the graph");

    if (const auto* s = std::get_if<Sharp>(&spec.variant)) {
        if (max_clique_in_removed(removed) >= 3)
            fail("removed edges contain a triangle");
        auto layout = sharp_layout(*s);
        auto length_of = [&](int a, int b) {
            auto it = spec.overrides.find(ordered(a, b));
            return it == spec.overrides.end() ? spec.uniform_length : it->second;
        };
        auto uniform = [&](int root, const std::vector<int>& others, const std::string& what) {
            for (int v : others)
                if (length_of(root, v) != length_of(root, others.front()))
                    fail("edges " + what + " must all have the same length");
        };
        auto middle = layout.middle();
        if (!middle.empty())
            uniform(layout.shared_leaf, middle, "at the shared leaf");
        if (!layout.v1_side.empty())
            uniform(1, layout.v1_side, "from v1 to the middle vertices");
        if (!layout.v2_side.empty())
            uniform(2, layout.v2_side, "from v2 to the middle vertices");
    }
}

MetricGraph build(const FamilySpec& spec)
{
    check_spec(spec);
    return complete_minus(vertex_count(spec), removed_edges(spec), spec);
}

std::vector<int> maximum_removed_clique(const std::vector<std::pair<int, int>>& edges)
{
    std::set<std::pair<int, int>> adjacent;
    std::set<int> vertex_set;
    for (auto [a, b] : edges) {
        adjacent.insert(ordered(a, b));
        vertex_set.insert(a);
        vertex_set.insert(b);
    }
    std::vector<int> vertices(vertex_set.begin(), vertex_set.end());
    std::vector<int> best;
    std::vector<int> current;
    // cliques are generated as increasing sequences in lexicographic order,
    // so the first maximum found is the lexicographically least
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
        if (current.size() > best.size())
            best = current;
        for (std::size_t i = from; i < vertices.size(); ++i) {
            int v = vertices[i];
            bool ok = std::all_of(current.begin(), current.end(),
                                  [&](int u) { return adjacent.count(ordered(u, v)) > 0; });
            if (!ok)
                continue;
            current.push_back(v);
            extend(i + 1);
            current.pop_back();
        }
    };
    extend(0);
    return best;
}

int max_clique_in_removed(const std::vector<std::pair<int, int>>& edges)
{
    return int(maximum_removed_clique(edges).size());
}

int max_clique_in_removed(const std::vector<std::pair<std::string, std::string>>& edges)
{
    std::map<std::string, int> index;
    auto id = [&](const std::string& name) {
        auto [it, inserted] = index.emplace(name, int(index.size()) + 1);
        return it->second;
    };
    std::vector<std::pair<int, int>> numbered;
    for (const auto& [a, b] : edges)
        if (a != b)
            numbered.emplace_back(id(a), id(b));
    return max_clique_in_removed(numbered);
}

int predicted_gonality(const FamilySpec& spec)
{
    check_spec(spec);
    return std::visit(overloaded{
                          [](const CompleteK& s) { return s.d - 1; },
                          [](const KdMinusKh& s) {
                              if (s.d < 3)
                                  throw InvalidSpec("K_d minus K_h closed form needs d >= 3");
                              return s.d - s.h;
                          },
                          [](const KdMinusEdges& s) {
                              if (s.d < 3)
                                  throw InvalidSpec("general removal closed form needs d >= 3");
                              return s.d - max_clique_in_removed(s.removed);
                          },
                          [](const TwoCliquesRemoved& s) {
                              return s.d - int(std::max(s.first.size(), s.second.size()));
                          },
                          [](const Bipartite& s) { return std::min(s.m, s.n); },
                          [](const Sharp& s) { return s.d - 3; },
                      },
                      spec.variant);
}

Divisor witness_divisor(const FamilySpec& spec)
{
    check_spec(spec);
    const int d = vertex_count(spec);
    auto complement_of = [d](const std::vector<int>& clique) {
        Divisor out;
        for (int v = 1; v <= d; ++v)
            if (std::find(clique.begin(), clique.end(), v) == clique.end())
                out.add(PointRef::vertex(vertex_name(v)), 1);
        return out;
    };
    return std::visit(overloaded{
                          [&](const CompleteK& s) { return complement_of({s.d}); },
                          [&](const KdMinusKh& s) { return complement_of(range(1, s.h)); },
                          [&](const KdMinusEdges&) {
                              return complement_of(maximum_removed_clique(removed_edges(spec)));
                          },
                          [&](const TwoCliquesRemoved& s) {
                              return complement_of(s.first.size() >= s.second.size() ? s.first : s.second);
                          },
                          [&](const Bipartite& s) {
                              return s.n >= s.m ? complement_of(range(s.m + 1, s.m + s.n))
                                                : complement_of(range(1, s.m));
                          },
                          [&](const Sharp& s) {
                              Divisor out;
                              for (int v : sharp_layout(s).middle())
                                  out.add(PointRef::vertex(vertex_name(v)), 1);
                              return out;
                          },
                      },
                      spec.variant);
}

std::string describe(const FamilySpec& spec)
{
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const CompleteK& s) { out << "K_" << s.d; },
                   [&](const KdMinusKh& s) { out << "K_" << s.d << " minus K_" << s.h; },
                   [&](const KdMinusEdges& s) {
                       out << "K_" << s.d << " minus {";
                       for (std::size_t i = 0; i < s.removed.size(); ++i)
                           out << (i ? "," : "") << "v" << s.removed[i].first << "v" << s.removed[i].second;
                       out << "}";
                   },
                   [&](const TwoCliquesRemoved& s) {
                       out << "K_" << s.d << " minus K_" << s.first.size() << ", K_" << s.second.size();
                   },
                   [&](const Bipartite& s) { out << "K_{" << s.m << "," << s.n << "}"; },
                   [&](const Sharp& s) { out << "sharp(d=" << s.d << ", k1=" << s.k1 << ")"; },
               },
               spec.variant);
    return out.str();
}

namespace {

// K on `names` minus `removed` (pairs of names), unit lengths unless listed.
MetricGraph complete_on(const std::vector<std::string>& names,
                        const std::set<std::pair<std::string, std::string>>& removed,
                        const std::map<std::pair<std::string, std::string>, Rational>& lengths = {})
{
    MetricGraph g;
    for (const auto& n : names)
        g.add_vertex(n);
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            auto key = std::minmax(names[i], names[j]);
            std::pair<std::string, std::string> pair{key.first, key.second};
            if (removed.count(pair))
                continue;
            auto it = lengths.find(pair);
            Rational length = it == lengths.end() ? Rational(1) : it->second;
            g.add_edge(pair.first + "-" + pair.second, pair.first, pair.second, Length(length));
        }
    return g;
}

std::pair<std::string, std::string> pair_of(const std::string& a, const std::string& b)
{
    auto key = std::minmax(a, b);
    return {key.first, key.second};
}

PointRef midpoint(const MetricGraph& g, const std::string& a, const std::string& b)
{
    auto key = pair_of(a, b);
    const auto& e = g.edge(key.first + "-" + key.second);
    return PointRef::interior(e.id, e.length.value() / Rational(2));
}

std::vector<std::string> numbered(const std::string& stem, int count)
{
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i)
        out.push_back(stem + std::to_string(i));
    return out;
}

// Every way to place the E_k (two chips) and f_k (one chip) groups.
std::vector<Divisor> chip_group_placements(const std::vector<std::vector<PointRef>>& double_groups,
                                           const std::vector<std::vector<PointRef>>& single_groups)
{
    std::vector<Divisor> out{Divisor{}};
    for (const auto& positions : double_groups) {
        std::vector<Divisor> next;
        for (const auto& base : out)
            for (std::size_t i = 0; i < positions.size(); ++i)
                for (std::size_t j = i; j < positions.size(); ++j) {
                    auto d = base;
                    d.add(positions[i], 1);
                    d.add(positions[j], 1);
                    next.push_back(d);
                }
        out = std::move(next);
    }
    for (const auto& positions : single_groups) {
        std::vector<Divisor> next;
        for (const auto& base : out)
            for (const auto& p : positions) {
                auto d = base;
                d.add(p, 1);
                next.push_back(d);
            }
        out = std::move(next);
    }
    return out;
}

bool all_on_vertices(const Divisor& d)
{
    return std::all_of(d.terms().begin(), d.terms().end(), [](const auto& t) { return t.first.is_vertex(); });
}

} // namespace

MetricGraph sharp_example_a()
{
    std::vector<std::string> names{"v1", "v2", "v3", "v4", "v5", "v6", "v7", "vbar"};
    std::set<std::pair<std::string, std::string>> removed{
        pair_of("v1", "v3"), pair_of("v2", "v3"), pair_of("v2", "vbar"), pair_of("v2", "v4"),
        pair_of("v2", "v5"), pair_of("v1", "v6"), pair_of("v1", "v7")};
    return complete_on(names, removed);
}

MetricGraph sharp_example_b()
{
    std::vector<std::string> names{"v1", "v2", "v3", "v4", "v5", "v7", "vbar", "v"};
    std::set<std::pair<std::string, std::string>> removed{pair_of("v3", "vbar")};
    for (const auto& other : {"v1", "v2", "v3", "v4", "v5", "v7"})
        removed.insert(pair_of("v", other));
    return complete_on(names, removed);
}

std::vector<CaseFixture> sharp_case_catalog(int d)
{
    if (d < 6)
        throw InvalidSpec("case catalog needs d >= 6");
    std::vector<CaseFixture> out;

    // vbar adjacent to everything, D(vbar) = 2; zero vertices x miss v1 and
    // v2, E-vertices y see both, f-vertices z miss one of them.
    for (int s = 4; d + 3 - 2 * s >= 0; ++s) {
        auto xs = numbered("x", s - 2);
        auto ys = numbered("y", s - 4);
        auto zs = numbered("z", d + 3 - 2 * s);
        std::vector<std::string> names{"v1", "v2", "vbar"};
        names.insert(names.end(), xs.begin(), xs.end());
        names.insert(names.end(), ys.begin(), ys.end());
        names.insert(names.end(), zs.begin(), zs.end());
        std::set<std::pair<std::string, std::string>> removed;
        for (const auto& x : xs) {
            removed.insert(pair_of(x, "v1"));
            removed.insert(pair_of(x, "v2"));
        }
        std::vector<std::string> z_root;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            bool misses_v1 = i % 2 == 0;
            removed.insert(pair_of(zs[i], misses_v1 ? "v1" : "v2"));
            z_root.push_back(misses_v1 ? "v2" : "v1");
        }
        auto g = complete_on(names, removed);

        std::vector<std::vector<PointRef>> doubles, singles;
        for (const auto& y : ys)
            doubles.push_back({PointRef::vertex(y), midpoint(g, y, "v1"), midpoint(g, y, "v2")});
        for (std::size_t i = 0; i < zs.size(); ++i)
            singles.push_back({PointRef::vertex(zs[i]), midpoint(g, zs[i], z_root[i])});
        int index = 0;
        for (auto& chips : chip_group_placements(doubles, singles)) {
            Divisor div{{PointRef::vertex("vbar"), 2}};
            div += chips;
            out.push_back({"first-box s=" + std::to_string(s) + " #" + std::to_string(index++),
                           "val(vbar)=d-1, j=d-2, D(vbar)=2", g, div, all_on_vertices(div) ? 1 : 2, false});
        }
    }

    // vbar misses w = v2, D(vbar) = 1; only the all-vertex placement with no
    // E-groups has rank 1.
    for (int s = 3; d + 2 - 2 * s >= 0; ++s) {
        auto xs = numbered("x", s - 2);
        auto ys = numbered("y", s - 3);
        auto zs = numbered("z", d + 2 - 2 * s);
        std::vector<std::string> names{"v1", "v2", "vbar"};
        names.insert(names.end(), xs.begin(), xs.end());
        names.insert(names.end(), ys.begin(), ys.end());
        names.insert(names.end(), zs.begin(), zs.end());
        std::set<std::pair<std::string, std::string>> removed{pair_of("vbar", "v2")};
        for (const auto& x : xs) {
            removed.insert(pair_of(x, "v1"));
            removed.insert(pair_of(x, "v2"));
        }
        std::vector<std::string> z_root;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            bool misses_v1 = i % 2 == 0;
            removed.insert(pair_of(zs[i], misses_v1 ? "v1" : "v2"));
            z_root.push_back(misses_v1 ? "v2" : "v1");
        }
        auto g = complete_on(names, removed);

        std::vector<std::vector<PointRef>> doubles, singles;
        for (const auto& y : ys)
            doubles.push_back({PointRef::vertex(y), midpoint(g, y, "v1"), midpoint(g, y, "v2")});
        for (std::size_t i = 0; i < zs.size(); ++i)
            singles.push_back({PointRef::vertex(zs[i]), midpoint(g, zs[i], z_root[i])});
        int index = 0;
        for (auto& chips : chip_group_placements(doubles, singles)) {
            Divisor div{{PointRef::vertex("vbar"), 1}};
            div += chips;
            bool claimed = ys.empty() && all_on_vertices(div);
            out.push_back({"second-box s=" + std::to_string(s) + " #" + std::to_string(index++),
                           "val(vbar)=d-2, j=d-2, w in {v1,v2}, D(vbar)=1", g, div,
                           all_on_vertices(div) ? 1 : 2, claimed});
        }
    }

    auto third = sharp_third_case(d, Rational(1));
    third.rank_at_least_one = true;
    out.push_back(std::move(third));
    return out;
}

CaseFixture sharp_third_case(int d, const Rational& vbar_length)
{
    if (d < 5)
        throw InvalidSpec("third configuration needs d >= 5");
    // K_{d-1} on vbar, w and the others, minus the edge vbar-w, plus a leaf v at vbar
    std::vector<std::string> names{"vbar", "w", "v"};
    auto others = numbered("u", d - 3);
    names.insert(names.end(), others.begin(), others.end());
    std::set<std::pair<std::string, std::string>> removed{pair_of("vbar", "w")};
    for (const auto& n : names)
        if (n != "v" && n != "vbar")
            removed.insert(pair_of("v", n));
    std::map<std::pair<std::string, std::string>, Rational> lengths;
    for (const auto& o : others)
        lengths[pair_of("vbar", o)] = vbar_length;
    auto g = complete_on(names, removed, lengths);
    Divisor div{{PointRef::vertex("vbar"), d - 3}};
    return {"third-box length=" + to_string(vbar_length), "val(vbar)=d-2, j=2, A={vbar,v}", std::move(g),
            std::move(div), 1, std::nullopt};
}

} // namespace gonlab::families
