// Command-line front door: analyze / classify / construct / verify over the
// JSON graph and code documents. Every command supports --json for
// machine-readable output (schemas ship under schemas/).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsc/classify.hpp"
#include "gsc/codegen.hpp"
#include "gsc/fixtures.hpp"
#include "gsc/graph.hpp"
#include "gsc/io.hpp"
#include "gsc/verify.hpp"

namespace {

using nlohmann::ordered_json;

// Exit codes are a stable contract.
constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNotInClass = 3;
constexpr int kExitRefused = 4;
constexpr int kExitConstructionFailed = 5;
constexpr int kExitEnumerationCap = 6;

struct LoadedGraph {
    gsc::io::GraphDocument doc;
    gsc::graph::StorageGraph graph;
};

LoadedGraph load_graph(const std::string& path) {
    const std::string text = gsc::io::read_file(path);
    gsc::io::GraphDocument doc;
    try {
        doc = gsc::io::parse_graph_document(text);
    } catch (const gsc::io::ParseError& e) {
        throw gsc::io::ParseError(path + ": " + e.what());
    }
    try {
        return LoadedGraph{doc, doc.to_graph()};
    } catch (const gsc::graph::GraphError& e) {
        throw gsc::io::ParseError(path + ": " + e.what());
    }
}

gsc::codegen::LinearCode load_code(const std::string& path) {
    const std::string text = gsc::io::read_file(path);
    try {
        return gsc::io::parse_code_document(text).code;
    } catch (const gsc::io::ParseError& e) {
        throw gsc::io::ParseError(path + ": " + e.what());
    }
}

std::uint64_t world_cap_from_env() {
    const char* raw = std::getenv("GSC_ENUM_CAP");
    if (raw == nullptr || *raw == '\0') return gsc::verify::kDefaultWorldCap;
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || cap == 0) {
        throw gsc::io::ParseError("GSC_ENUM_CAP must be a positive integer, got \"" +
                                  std::string(raw) + "\"");
    }
    return cap;
}

std::string edge_name(const gsc::io::GraphDocument& doc, gsc::graph::NodeId u,
                      gsc::graph::NodeId v) {
    return "{" + doc.name_of(u) + "," + doc.name_of(v) + "}";
}

ordered_json witness_json(const gsc::classify::Witness& w) {
    ordered_json j;
    switch (w.kind) {
        case gsc::classify::WitnessKind::Node:
            j["kind"] = "node";
            j["node"] = w.node;
            break;
        case gsc::classify::WitnessKind::Edge:
            j["kind"] = "edge";
            j["u"] = w.u;
            j["v"] = w.v;
            break;
        case gsc::classify::WitnessKind::InternalEdge:
            j["kind"] = "internal-edge";
            j["u"] = w.u;
            j["v"] = w.v;
            j["source"] = w.source;
            j["component"] = w.component;
            break;
    }
    return j;
}

std::string witness_text(const gsc::io::GraphDocument& doc, const gsc::classify::Witness& w) {
    switch (w.kind) {
        case gsc::classify::WitnessKind::Node:
            return "node " + doc.name_of(w.node);
        case gsc::classify::WitnessKind::Edge:
            return "edge " + edge_name(doc, w.u, w.v);
        case gsc::classify::WitnessKind::InternalEdge:
            return "internal qualified edge " + edge_name(doc, w.u, w.v) +
                   " in the characteristic graph of source " + std::to_string(w.source) +
                   " (component " + std::to_string(w.component) + ")";
    }
    return "";
}

ordered_json rational_json(const gsc::classify::Rational& r) {
    ordered_json j;
    j["num"] = r.num;
    j["den"] = r.den;
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& path, bool as_json) {
    const LoadedGraph loaded = load_graph(path);
    const auto& g = loaded.graph;
    const auto structure = gsc::classify::analyze_alignment(g);

    std::vector<gsc::classify::Witness> internal;
    for (std::size_t m = 0; m < structure.views.size(); ++m) {
        for (int k = 1; k <= g.source_count(); ++k) {
            const auto ch = structure.views[m].component.characteristic_graph(k);
            for (const auto& e : ch.internal_qualified_edges()) {
                gsc::classify::Witness w;
                w.kind = gsc::classify::WitnessKind::InternalEdge;
                w.u = e.u;
                w.v = e.v;
                w.source = k;
                w.component = static_cast<int>(m) + 1;
                internal.push_back(w);
            }
        }
    }

    const auto degenerate = g.degenerate_nodes();
    const auto unqualified = structure.nondegenerate.unqualified_components();

    if (as_json) {
        ordered_json j;
        j["format_version"] = gsc::io::kFormatVersion;
        j["K"] = g.source_count();
        j["D"] = g.label_size();
        j["node_count"] = g.node_count();
        j["edge_count"] = g.edges().size();
        j["qualified_edge_count"] = g.qualified_edge_count();
        j["common_sources"] = ordered_json::array();
        for (auto n : g.nodes()) {
            ordered_json row;
            row["node"] = n;
            row["sources"] = g.common_sources(n).members();
            j["common_sources"].push_back(std::move(row));
        }
        j["degenerate_nodes"] = degenerate;
        j["nondegenerate_node_count"] = structure.nondegenerate.node_count();
        j["qualified_components"] = structure.components.blocks;
        j["unqualified_components"] = unqualified.blocks;
        j["internal_qualified_edges"] = ordered_json::array();
        for (const auto& w : internal) j["internal_qualified_edges"].push_back(witness_json(w));
        emit(j);
        return kExitPass;
    }

    std::cout << "graph: K=" << g.source_count() << " D=" << g.label_size() << ", "
              << g.node_count() << " nodes, " << g.edges().size() << " edges ("
              << g.qualified_edge_count() << " qualified)\n";
    std::cout << "common sources:\n";
    for (auto n : g.nodes()) {
        std::cout << "  " << loaded.doc.name_of(n) << ": " << g.common_sources(n).to_string()
                  << "\n";
    }
    std::cout << "degenerate nodes:";
    if (degenerate.empty()) std::cout << " (none)";
    for (auto n : degenerate) std::cout << " " << loaded.doc.name_of(n);
    std::cout << "\n";
    std::cout << "nondegenerate subgraph: " << structure.nondegenerate.node_count()
              << " nodes, " << structure.nondegenerate.edges().size() << " edges\n";
    std::cout << "qualified components:\n";
    for (std::size_t i = 0; i < structure.components.blocks.size(); ++i) {
        std::cout << "  [" << (i + 1) << "]";
        for (auto n : structure.components.blocks[i]) std::cout << " " << loaded.doc.name_of(n);
        std::cout << "\n";
    }
    std::cout << "unqualified components:\n";
    for (std::size_t i = 0; i < unqualified.blocks.size(); ++i) {
        std::cout << "  [" << (i + 1) << "]";
        for (auto n : unqualified.blocks[i]) std::cout << " " << loaded.doc.name_of(n);
        std::cout << "\n";
    }
    std::cout << "internal qualified edges:";
    if (internal.empty()) std::cout << " (none)\n";
    else {
        std::cout << "\n";
        for (const auto& w : internal) {
            std::cout << "  source " << w.source << ", component " << w.component << ": "
                      << edge_name(loaded.doc, w.u, w.v) << "\n";
        }
    }
    return kExitPass;
}

int cmd_classify(const std::string& path, bool as_json) {
    const LoadedGraph loaded = load_graph(path);
    const auto verdict = gsc::classify::classify(loaded.graph);
    using gsc::classify::VerdictKind;

    if (as_json) {
        ordered_json j;
        j["format_version"] = gsc::io::kFormatVersion;
        j["verdict"] = gsc::classify::to_string(verdict.kind);
        j["capacity"] = verdict.capacity ? rational_json(*verdict.capacity) : ordered_json();
        j["reason"] = verdict.reason.empty() ? ordered_json() : ordered_json(verdict.reason);
        j["witness"] = verdict.witness ? witness_json(*verdict.witness) : ordered_json();
        emit(j);
    } else {
        switch (verdict.kind) {
            case VerdictKind::ExactlyOne:
            case VerdictKind::ExactlyOneOverD:
                std::cout << "capacity = " << verdict.capacity->to_string() << "\n"
                          << "basis: no characteristic graph of the non-degenerate subgraph "
                             "contains an internal qualified edge\n";
                break;
            case VerdictKind::ExactlyTwoOverD:
                std::cout << "capacity = " << verdict.capacity->to_string() << "\n"
                          << "basis: every node has at least D/2 common sources and every edge "
                             "label is the union of its endpoints' common sources\n";
                break;
            case VerdictKind::StrictlyLessThan:
                std::cout << "capacity < " << verdict.capacity->to_string() << "\n"
                          << "witness: " << witness_text(loaded.doc, *verdict.witness) << "\n";
                break;
            case VerdictKind::NotInCharacterizedClass:
                std::cout << "capacity not characterized (reason: " << verdict.reason << ")\n";
                if (verdict.witness) {
                    std::cout << "witness: " << witness_text(loaded.doc, *verdict.witness)
                              << "\n";
                }
                break;
            case VerdictKind::Unconstrained:
                std::cout << "capacity unconstrained (the graph has no qualified edge)\n";
                break;
        }
    }
    return verdict.kind == VerdictKind::NotInCharacterizedClass ? kExitNotInClass : kExitPass;
}

int cmd_construct(const std::string& path, const std::string& scheme, std::uint64_t seed,
                  std::optional<std::uint32_t> q_override, const std::string& output,
                  bool as_json) {
    const LoadedGraph loaded = load_graph(path);
    gsc::codegen::ConstructionResult result = [&] {
        if (scheme == "d1") {
            return gsc::codegen::ConstructionResult{gsc::codegen::construct_d1(loaded.graph), 0};
        }
        if (scheme == "general") {
            return gsc::codegen::construct_general(loaded.graph, seed, q_override);
        }
        return gsc::codegen::construct_two_over_d(loaded.graph, seed, q_override);
    }();

    gsc::io::write_file(output,
                        gsc::io::serialize(gsc::io::CodeDocument::from_code(result.code)));

    const auto rate = result.code.rate();
    if (as_json) {
        ordered_json j;
        j["format_version"] = gsc::io::kFormatVersion;
        j["scheme"] = scheme;
        j["q"] = result.code.q();
        j["s"] = result.code.symbols_per_source();
        j["l"] = result.code.symbols_per_node();
        j["t"] = result.code.noise_dim();
        j["rate"] = rational_json(rate);
        j["retries"] = result.retries;
        j["output"] = output;
        emit(j);
    } else {
        std::cout << "scheme: " << scheme << "\n"
                  << "q: " << result.code.q() << "\n"
                  << "rate: " << rate.to_string() << " (s=" << result.code.symbols_per_source()
                  << ", l=" << result.code.symbols_per_node() << ", t=" << result.code.noise_dim()
                  << ")\n"
                  << "retries: " << result.retries << "\n"
                  << "wrote: " << output << "\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string& graph_path, const std::string& code_path,
               const std::string& mode_name, bool as_json) {
    const LoadedGraph loaded = load_graph(graph_path);
    const auto code = load_code(code_path);
    const gsc::verify::Mode mode = mode_name == "rank"
                                       ? gsc::verify::Mode::Rank
                                       : (mode_name == "exhaustive" ? gsc::verify::Mode::Exhaustive
                                                                    : gsc::verify::Mode::Both);
    const auto report = gsc::verify::verify_code(code, loaded.graph, mode, world_cap_from_env());

    if (as_json) {
        ordered_json j;
        j["format_version"] = gsc::io::kFormatVersion;
        j["mode"] = mode_name;
        j["overall"] = report.overall ? "pass" : "fail";
        j["edge_count"] = report.edges.size();
        j["passed"] = report.passed_edges;
        j["failed"] = report.failed_edges;
        j["total_worlds"] = report.total_worlds;
        j["edges"] = ordered_json::array();
        for (const auto& e : report.edges) {
            ordered_json row;
            row["u"] = e.edge.u;
            row["v"] = e.edge.v;
            row["label"] = e.edge.label.members();
            row["correctness"] = gsc::verify::to_string(e.correctness);
            row["security"] = gsc::verify::to_string(e.security);
            row["worlds"] = e.worlds;
            row["undecodable_source"] =
                e.undecodable_source ? ordered_json(*e.undecodable_source) : ordered_json();
            row["leaking_source"] =
                e.leaking_source ? ordered_json(*e.leaking_source) : ordered_json();
            j["edges"].push_back(std::move(row));
        }
        emit(j);
    } else {
        const auto pad = [](std::string s, std::size_t width) {
            while (s.size() < width) s += ' ';
            return s + ' ';
        };
        std::cout << "edge         label      correctness   security   worlds\n";
        for (const auto& e : report.edges) {
            std::cout << pad(edge_name(loaded.doc, e.edge.u, e.edge.v), 12)
                      << pad(e.edge.label.to_string(), 10)
                      << pad(gsc::verify::to_string(e.correctness), 13)
                      << pad(gsc::verify::to_string(e.security), 10) << e.worlds << "\n";
            if (e.undecodable_source) {
                std::cout << "  undecodable source: " << *e.undecodable_source << "\n";
            }
            if (e.leaking_source) {
                std::cout << "  leaking source: " << *e.leaking_source << "\n";
            }
        }
        std::cout << "overall: " << (report.overall ? "PASS" : "FAIL") << " ("
                  << report.edges.size() << " edges: " << report.passed_edges << " passed, "
                  << report.failed_edges << " failed; " << report.total_worlds << " worlds)\n";
    }
    return report.overall ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure-storage code toolkit: analyze constraint graphs, classify extremal "
                 "capacity, construct linear codes, verify correctness and security exactly"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");

    std::string graph_path;
    std::string code_path;
    std::string scheme;
    std::string mode = "both";
    std::string output;
    std::uint64_t seed = 1;
    std::uint32_t q_value = 0;
    bool q_given = false;

    auto* analyze = app.add_subcommand("analyze", "structural report of a graph file");
    analyze->add_option("graph", graph_path, "graph JSON file")->required();

    auto* classify = app.add_subcommand("classify", "extremal-capacity verdict for a graph");
    classify->add_option("graph", graph_path, "graph JSON file")->required();

    auto* construct = app.add_subcommand("construct", "build a capacity-achieving code");
    construct->add_option("graph", graph_path, "graph JSON file")->required();
    construct->add_option("--scheme", scheme, "d1 | general | 2overD")
        ->required()
        ->check(CLI::IsMember({"d1", "general", "2overD"}));
    construct->add_option("--seed", seed, "seed for the randomized schemes (default 1)");
    construct->add_option("--q", q_value, "prime field size override")
        ->each([&](const std::string&) { q_given = true; });
    construct->add_option("-o,--output", output, "where to write the code JSON")->required();

    auto* verify = app.add_subcommand("verify", "check a code against a graph");
    verify->add_option("graph", graph_path, "graph JSON file")->required();
    verify->add_option("code", code_path, "code JSON file")->required();
    verify->add_option("--mode", mode, "rank | exhaustive | both (default both)")
        ->check(CLI::IsMember({"rank", "exhaustive", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(graph_path, as_json);
        if (classify->parsed()) return cmd_classify(graph_path, as_json);
        if (construct->parsed()) {
            return cmd_construct(graph_path, scheme, seed,
                                 q_given ? std::optional<std::uint32_t>(q_value) : std::nullopt,
                                 output, as_json);
        }
        return cmd_verify(graph_path, code_path, mode, as_json);
    } catch (const gsc::codegen::ConstructionRefused& e) {
        std::cerr << "construction refused: " << e.what() << "\n";
        return kExitRefused;
    } catch (const gsc::codegen::ConstructionFailed& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return kExitConstructionFailed;
    } catch (const gsc::verify::EnumerationCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnumerationCap;
    } catch (const gsc::verify::ModeDisagreement& e) {
        std::cerr << "verifier disagreement: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
