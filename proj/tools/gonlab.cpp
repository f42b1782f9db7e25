#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gonlab/error.hpp"
#include "gonlab/families.hpp"
#include "gonlab/harmonic.hpp"
#include "gonlab/io.hpp"
#include "gonlab/rank.hpp"
#include "gonlab/reduction.hpp"
#include "gonlab/verify.hpp"

using namespace gonlab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const io::Json& j, const std::string& out = "")
{
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_text_file(out, j.dump(2) + "\n");
}

/// "v1" names a vertex; "e3@1/2" a point of edge e3 (vertex ids win).
PointRef parse_point(const MetricGraph& g, const std::string& text)
{
    if (g.find_vertex(text))
        return PointRef::vertex(text);
    auto at = text.rfind('@');
    if (at == std::string::npos)
        throw UsageError("unknown vertex '" + text + "'");
    auto p = PointRef::interior(text.substr(0, at), parse_rational(text.substr(at + 1)));
    check_point(g, p);
    return p;
}

std::vector<int> parse_index_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(std::stoi(item));
    return out;
}

/// "1-2,3-4" -> {(1,2),(3,4)}
std::vector<std::pair<int, int>> parse_edge_list(const std::string& text)
{
    std::vector<std::pair<int, int>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw UsageError("edge '" + item + "' must look like i-j");
        out.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    }
    return out;
}

/// Explicit flag, else GONLAB_SUBDIVISION, else the least level that fits.
std::optional<int> subdivision_of(const std::optional<int>& flag)
{
    if (flag) {
        if (*flag < 1)
            throw UsageError("--subdivision must be positive");
        return flag;
    }
    if (const char* env = std::getenv("GONLAB_SUBDIVISION"); env && *env) {
        try {
            std::size_t used = 0;
            int s = std::stoi(env, &used);
            if (s >= 1 && used == std::string(env).size())
                return s;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("GONLAB_SUBDIVISION must be a positive integer, got '") + env + "'");
    }
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Divisors, gonality and harmonic morphisms on metric graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a family graph as JSON");
    std::string family, lengths = "uniform:1", edges_text, first_text, second_text, gen_out;
    int d = 0, h = 0, m = 0, n = 0, k1 = 0;
    gen->set_help_flag("--help", "Print this help message and exit");  // frees --h for the clique size
    gen->add_option("--family", family, "complete | kd-minus-kh | kd-minus-edges | two-cliques | bipartite | sharp | "
                                        "sharp-example-a | sharp-example-b")
        ->required();
    gen->add_option("--d", d, "Number of vertices");
    gen->add_option("--h", h, "Size of the removed clique");
    gen->add_option("--m", m, "First part size (bipartite)");
    gen->add_option("--n", n, "Second part size (bipartite)");
    gen->add_option("--k1", k1, "Leaves of the star at v1 (sharp)");
    gen->add_option("--edges", edges_text, "Removed edges as i-j,k-l (kd-minus-edges)");
    gen->add_option("--first", first_text, "First removed clique as i,j,... (two-cliques)");
    gen->add_option("--second", second_text, "Second removed clique (two-cliques)");
    gen->add_option("--lengths", lengths, "uniform:<rational>")->capture_default_str();
    gen->add_option("--out", gen_out, "Write to this file instead of stdout");

    // reduce
    auto* red = app.add_subcommand("reduce", "Print the q-reduced divisor equivalent to D");
    std::string graph_path, divisor_path, base;
    std::optional<int> subdivision;
    bool with_burn = false;
    red->add_option("--graph", graph_path)->required();
    red->add_option("--divisor", divisor_path)->required();
    red->add_option("--base", base, "Base point: vertex id or edge@offset")->required();
    red->add_option("--subdivision", subdivision);
    red->add_flag("--burn", with_burn, "Also report the burning run on the reduced divisor");

    // rank
    auto* rk = app.add_subcommand("rank", "Baker-Norine rank of D");
    std::string support = "lattice";
    rk->add_option("--graph", graph_path)->required();
    rk->add_option("--divisor", divisor_path)->required();
    rk->add_option("--subdivision", subdivision);
    rk->add_option("--support", support, "lattice | vertices")->capture_default_str();

    // gonality
    auto* gon = app.add_subcommand("gonality", "Exhaustive lattice gonality search");
    std::optional<int> max_degree;
    int jobs = 0;
    bool serial = false;
    gon->add_option("--graph", graph_path)->required();
    gon->add_option("--subdivision", subdivision);
    gon->add_option("--max-degree", max_degree);
    gon->add_option("--jobs", jobs, "Worker threads (0: OpenMP default)");
    gon->add_flag("--serial", serial, "Use the single-threaded reference search");

    // morphism
    auto* mor = app.add_subcommand("morphism", "Harmonic morphisms");
    mor->require_subcommand(1);
    auto* build_sharp = mor->add_subcommand("build-sharp", "Degree d-3 morphism from the sharp family to a path");
    bool finite = false;
    std::string morphism_out;
    build_sharp->add_option("--d", d)->required();
    build_sharp->add_option("--k1", k1)->required();
    build_sharp->add_flag("--finite", finite, "Apply the finite modification");
    build_sharp->add_option("--out", morphism_out);
    auto* check = mor->add_subcommand("check", "Harmonicity, ramification and liftability report");
    std::string morphism_path;
    check->add_option("morphism", morphism_path)->required();
    auto* fiber = mor->add_subcommand("fiber", "Fiber divisor over a target point");
    std::string at;
    fiber->add_option("morphism", morphism_path)->required();
    fiber->add_option("--at", at, "Target vertex id or edge@offset")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "Run the theorem verification suite");
    std::string suite = "paper";
    VerifyOptions vopts;
    bool timings = false;
    ver->add_option("--suite", suite, "paper | quick")->capture_default_str();
    ver->add_option("--max-d", vopts.max_d)->capture_default_str();
    ver->add_option("--seed", vopts.seed)->capture_default_str();
    ver->add_option("--jobs", vopts.jobs);
    ver->add_flag("--timings", timings, "Include per-check runtimes (not reproducible)");

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Write the graph in DOT format");
    std::string dot_out;
    dot->add_option("--graph", graph_path)->required();
    dot->add_option("--divisor", divisor_path, "Annotate vertices with coefficients");
    dot->add_option("--out", dot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            families::FamilySpec spec;
            if (lengths.rfind("uniform:", 0) != 0)
                throw UsageError("--lengths must look like uniform:<rational>");
            spec.uniform_length = parse_rational(lengths.substr(8));
            MetricGraph g;
            if (family == "sharp-example-a") {
                g = families::sharp_example_a();
            } else if (family == "sharp-example-b") {
                g = families::sharp_example_b();
            } else {
                if (family == "complete")
                    spec.variant = families::CompleteK{d};
                else if (family == "kd-minus-kh")
                    spec.variant = families::KdMinusKh{d, h};
                else if (family == "kd-minus-edges")
                    spec.variant = families::KdMinusEdges{d, parse_edge_list(edges_text)};
                else if (family == "two-cliques")
                    spec.variant = families::TwoCliquesRemoved{d, parse_index_list(first_text), parse_index_list(second_text)};
                else if (family == "bipartite")
                    spec.variant = families::Bipartite{m, n};
                else if (family == "sharp")
                    spec.variant = families::Sharp{d, k1};
                else
                    throw UsageError("unknown family '" + family + "'");
                g = families::build(spec);
            }
            emit(io::to_json(g), gen_out);
            return kOk;
        }
        if (*red) {
            auto g = io::graph_from_json(io::read_json_file(graph_path));
            auto D = io::divisor_from_json(io::read_json_file(divisor_path));
            auto q = parse_point(g, base);
            auto s = subdivision_of(subdivision);
            auto reduced = reduce(g, D, q, s);
            if (!with_burn) {
                emit(io::to_json(reduced));
            } else {
                emit({{"reduced", io::to_json(reduced)}, {"burn", io::to_json(burn(g, reduced, q, s))}});
            }
            return kOk;
        }
        if (*rk) {
            auto g = io::graph_from_json(io::read_json_file(graph_path));
            auto D = io::divisor_from_json(io::read_json_file(divisor_path));
            RankOptions opts;
            opts.subdivision = subdivision_of(subdivision);
            if (support == "vertices")
                opts.support = SupportKind::OriginalVertices;
            else if (support != "lattice")
                throw UsageError("--support must be lattice or vertices");
            emit({{"rank", rank(g, D, opts)}, {"degree", D.degree()}});
            return kOk;
        }
        if (*gon) {
            auto g = io::graph_from_json(io::read_json_file(graph_path));
            RankOptions opts;
            opts.subdivision = subdivision_of(subdivision);
            opts.max_degree = max_degree;
            opts.jobs = jobs;
            emit(io::to_json(serial ? gonality_search_serial(g, opts) : gonality_search(g, opts)));
            return kOk;
        }
        if (*build_sharp) {
            auto phi = build_sharp_morphism(d, k1);
            if (finite)
                phi = make_finite(phi);
            emit(io::to_json(phi), morphism_out);
            return kOk;
        }
        if (*check) {
            auto phi = io::morphism_from_json(io::read_json_file(morphism_path));
            auto report = check_harmonic(phi);
            io::Json out{{"report", io::to_json(report)}, {"finite", phi.is_finite()}};
            if (report.harmonic) {
                out["ramification"] = io::to_json(ramification_divisor(phi));
                out["effective"] = is_effective_morphism(phi);
                if (phi.is_finite())
                    out["liftability"] = io::to_json(liftability_certificate(phi));
            }
            emit(out);
            return report.harmonic ? kOk : kCheckFailed;
        }
        if (*fiber) {
            auto phi = io::morphism_from_json(io::read_json_file(morphism_path));
            emit(io::to_json(fiber_divisor(phi, parse_point(phi.target, at))));
            return kOk;
        }
        if (*ver) {
            auto result = run_suite(suite, vopts);
            emit(to_json(result, timings));
            return result.passed() ? kOk : kCheckFailed;
        }
        if (*dot) {
            auto g = io::graph_from_json(io::read_json_file(graph_path));
            Divisor D;
            if (!divisor_path.empty())
                D = io::divisor_from_json(io::read_json_file(divisor_path));
            check_divisor(g, D);
            auto text = io::to_dot(g, D);
            if (dot_out.empty())
                std::cout << text;
            else
                io::write_text_file(dot_out, text);
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "gonlab: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "gonlab: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
