#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "cubaug/error.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/generate.hpp"
#include "cubaug/hardness.hpp"
#include "cubaug/io.hpp"
#include "cubaug/oracle.hpp"
#include "cubaug/spqr.hpp"
#include "cubaug/var_aug.hpp"
#include "cubaug/verify.hpp"

using namespace cubaug;

namespace {

constexpr int kDecided = 0;
constexpr int kRejected = 1;  // verify found a failing check
constexpr int kInputError = 2;

GraphFile load_graph(const std::string& path) { return parse_graph(read_file(path)); }

UvGraph load_uv(const std::string& path, bool need_embedding) {
    GraphFile f = load_graph(path);
    if (f.u == kNone || f.v == kNone) throw PreconditionViolated(path + ": tag one vertex u and one vertex v");
    if (need_embedding && !f.embedding) throw NoEmbedding(path + " has no rotation block");
    return UvGraph{f.graph, f.u, f.v, f.embedding};
}

int run_augment(int k, bool fixed, const std::string& path) {
    GraphFile f = load_graph(path);
    std::optional<AugmentationResult> r;
    if (fixed) {
        if (!f.embedding) throw NoEmbedding(path + " has no rotation block");
        r = k == 1 ? augment_1con_fixed(f.graph, *f.embedding) : augment_2con_fixed_multi(f.graph, *f.embedding);
    } else {
        r = k == 1 ? augment_1con_variable(f.graph) : augment_2con_variable(f.graph);
    }
    std::cout << (r ? emit_certificate(*r) : "NONE\n");
    return kDecided;
}

int run_verify(int k, const std::string& against, const std::string& path) {
    AugmentationResult r = to_result(parse_certificate(read_file(path)));
    MultiGraph g;
    std::optional<Embedding> e;
    if (!against.empty()) {
        GraphFile f = load_graph(against);
        g = f.graph;
        e = f.embedding;
    } else {
        r.vertex_map.clear();
        r.edge_map.clear();
    }
    VerifyReport report = verify_augmentation(g, e, r, k);
    std::cout << report.to_string() << (report.ok ? "OK\n" : "FAILED\n");
    return report.ok ? kDecided : kRejected;
}

int run_oracle(const std::string& which, const std::string& path, int cap) {
    if (which == "embeddings") {
        GraphFile f = load_graph(path);
        EnumerateOptions opt;
        opt.cap = cap;
        long count = 0;
        enumerate_embeddings(f.graph, opt, [&](const Embedding&) { ++count; });
        std::cout << "embeddings " << count << '\n';
    } else if (which == "factor") {
        auto sol = brute_force(parse_factor(read_file(path)));
        if (!sol) {
            std::cout << "NONE\n";
        } else {
            std::cout << "factor";
            for (Edge x : sol->chosen_edges) std::cout << ' ' << x;
            std::cout << '\n';
        }
    } else if (which == "inner-aug") {
        ClosedUv c = close_uv(load_uv(path, true));
        std::cout << "labels " << oracle::inner_label_set(c).to_string() << '\n';
        for (auto [a, b] : oracle::inner_augmentations(c)) std::cout << "pendants " << a << ' ' << b << '\n';
    } else if (which == "toy3con") {
        PlanarMonotone3SatInstance psi = parse_sat(read_file(path));
        HardnessInstance inst = generate_instance(psi);
        std::cout << "toy3con " << (toy_decide_3con(inst) ? "yes" : "no") << '\n';
        std::cout << "truth-table " << (truth_table_satisfiable(psi) ? "yes" : "no") << '\n';
    } else {
        throw PreconditionViolated("unknown oracle " + which);
    }
    return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar cubic augmentation: decide, construct and check 3-regular planar supergraphs."};
    app.require_subcommand(1);

    int k = 2;
    bool fixed = false, embedded = false, biconnected = false;
    std::string path, against, which;
    int n = 0, root_edge = 0, cap = 12;
    std::uint64_t seed = 1;

    auto* augment = app.add_subcommand("augment", "Find a k-edge-connected 3-augmentation, or print NONE");
    augment->add_option("--k", k, "Target connectivity")->check(CLI::IsMember({1, 2}));
    augment->add_flag("--fixed-embedding", fixed, "Keep the rotation block of the input");
    augment->add_option("graph", path, "Graph file")->required();

    auto* verify = app.add_subcommand("verify", "Check a certificate");
    verify->add_option("--k", k, "Required connectivity")->check(CLI::IsMember({1, 2, 3}));
    verify->add_option("--against", against, "Input graph; its embedding, if any, must be extended");
    verify->add_option("certificate", path, "Certificate file")->required();

    auto* labelset = app.add_subcommand("labelset", "Label set of a uv-graph (u, v given by tags)");
    labelset->add_flag("--embedded", embedded, "Use the file's embedding only");
    labelset->add_option("graph", path, "uv-graph file")->required();

    auto* spqr = app.add_subcommand("spqr", "Dump the SPQR-tree of a 2-connected subcubic graph");
    spqr->add_option("--root", root_edge, "Edge whose Q-node is the root");
    spqr->add_option("graph", path, "Graph file")->required();

    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    auto* gen_random = gen->add_subcommand("random", "Random simple subcubic plane graph");
    gen_random->add_option("--n", n, "Vertex count")->required()->check(CLI::PositiveNumber);
    gen_random->add_flag("--biconnected", biconnected, "2-connected instance");
    gen_random->add_option("--seed", seed, "Random seed");
    auto* gen_hardness = gen->add_subcommand("hardness", "Hardness instance of a SAT file");
    gen_hardness->add_option("sat", path, "SAT file")->required();

    auto* oracle = app.add_subcommand("oracle", "Exhaustive references for small inputs");
    oracle->add_option("kind", which, "embeddings, factor, inner-aug or toy3con")
        ->required()
        ->check(CLI::IsMember({"embeddings", "factor", "inner-aug", "toy3con"}));
    oracle->add_option("file", path, "Input file")->required();
    oracle->add_option("--cap", cap, "Largest graph size enumerated by 'embeddings'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : kInputError;
    }

    try {
        if (*augment) return run_augment(k, fixed, path);
        if (*verify) return run_verify(k, against, path);
        if (*labelset) {
            UvGraph g = load_uv(path, embedded);
            LabelSet s = embedded ? embedded_label_set(close_uv(g)) : variable_label_set(g);
            std::cout << s.to_string() << '\n';
            return kDecided;
        }
        if (*spqr) {
            GraphFile f = load_graph(path);
            std::cout << dump(build_spqr(f.graph, root_edge));
            return kDecided;
        }
        if (*gen_random) {
            EmbeddedGraph r = random_planar_subcubic(n, biconnected, seed);
            std::cout << emit_graph(r.graph, r.embedding);
            return kDecided;
        }
        if (*gen_hardness) {
            HardnessInstance inst = generate_instance(parse_sat(read_file(path)));
            std::cout << emit_graph(inst.g_psi, inst.embedding);
            return kDecided;
        }
        if (*oracle) return run_oracle(which, path, cap);
    } catch (const Error& err) {
        std::cerr << err.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
