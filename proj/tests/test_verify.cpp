#include <doctest.h>

#include <map>
#include <set>

#include "gsc/fixtures.hpp"
#include "gsc/verify.hpp"
#include "support/builders.hpp"

using namespace gsc;
using testsupport::make_graph;
using verify::Mode;
using verify::Outcome;

namespace {

using Word = std::vector<std::uint32_t>;

// Literal-count oracle for one edge: builds the full joint count tables with
// map keys and checks the factorization identity cell by cell, plus unique
// decodability. Independent of the grouped scan in the implementation.
std::pair<bool, bool> literal_edge_oracle(const codegen::LinearCode& code,
                                          const graph::StorageGraph& g, std::size_t edge_index) {
    const graph::Edge& e = g.edges()[edge_index];
    const std::uint32_t q = code.q();
    const int k_count = code.source_count();
    const int s = code.symbols_per_source();
    const int t = code.noise_dim();
    const std::size_t ks = static_cast<std::size_t>(k_count) * static_cast<std::size_t>(s);
    const std::size_t width = ks + static_cast<std::size_t>(t);

    const gf::Matrix observation =
        code.source_matrix(e.u).hstack(code.noise_matrix(e.u))
            .vstack(code.source_matrix(e.v).hstack(code.noise_matrix(e.v)));

    std::vector<std::size_t> desired_cols;
    std::vector<std::size_t> rest_cols;
    for (int k = 1; k <= k_count; ++k) {
        for (int symbol = 0; symbol < s; ++symbol) {
            (e.label.contains(k) ? desired_cols : rest_cols).push_back(code.source_column(k, symbol));
        }
    }

    std::map<Word, std::map<Word, std::map<Word, std::uint64_t>>> counts;  // wD -> wrest -> v
    std::map<Word, std::set<Word>> decodings;                              // v -> set of wD

    Word world(width, 0);
    while (true) {
        Word v(observation.rows(), 0);
        for (std::size_t r = 0; r < observation.rows(); ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < width; ++c) {
                acc += static_cast<std::uint64_t>(observation.at(r, c)) * world[c] % q;
            }
            v[r] = static_cast<std::uint32_t>(acc % q);
        }
        Word wd;
        for (std::size_t c : desired_cols) wd.push_back(world[c]);
        Word wrest;
        for (std::size_t c : rest_cols) wrest.push_back(world[c]);
        counts[wd][wrest][v]++;
        if (e.qualified()) decodings[v].insert(wd);

        std::size_t i = 0;
        for (; i < width; ++i) {
            if (++world[i] < q) break;
            world[i] = 0;
        }
        if (i == width) break;
    }

    bool correct = true;
    for (const auto& [v, wds] : decodings) correct = correct && wds.size() == 1;

    bool secure = true;
    for (const auto& [wd, by_rest] : counts) {
        std::uint64_t n_wd = 0;
        std::map<Word, std::uint64_t> v_totals;
        std::set<Word> support;
        for (const auto& [wrest, by_v] : by_rest) {
            for (const auto& [v, n] : by_v) {
                n_wd += n;
                v_totals[v] += n;
                support.insert(v);
            }
        }
        for (const auto& [wrest, by_v] : by_rest) {
            std::uint64_t n_rest_wd = 0;
            for (const auto& [v, n] : by_v) n_rest_wd += n;
            for (const Word& v : support) {
                const auto it = by_v.find(v);
                const std::uint64_t n3 = it == by_v.end() ? 0 : it->second;
                if (n3 * n_wd != v_totals[v] * n_rest_wd) secure = false;
            }
        }
    }
    return {correct, secure};
}

codegen::LinearCode with_source_matrix(const codegen::LinearCode& code, graph::NodeId node,
                                       gf::Matrix replacement) {
    std::vector<gf::Matrix> a;
    std::vector<gf::Matrix> b;
    for (graph::NodeId n : code.node_ids()) {
        a.push_back(n == node ? replacement : code.source_matrix(n));
        b.push_back(code.noise_matrix(n));
    }
    return codegen::LinearCode(code.q(), code.source_count(), code.symbols_per_source(),
                               code.symbols_per_node(), code.noise_dim(), code.node_ids(),
                               std::move(a), std::move(b), code.noise_blocks());
}

}  // namespace

TEST_CASE("fixture codes verify in both modes with exact world counts") {
    struct Case {
        const char* code;
        std::size_t edges;
        std::uint64_t worlds_per_edge;
    };
    for (const Case c : {Case{"fig3", 8, 125}, Case{"fig5", 10, 243}, Case{"fig6", 8, 27}}) {
        const auto g = fixtures::fixture_graph(fixtures::graph_for_code(c.code));
        const auto code = fixtures::fixture_code(c.code);
        const auto report = verify::verify_code(code, g, Mode::Both);
        CHECK(report.overall);
        CHECK(report.edges.size() == c.edges);
        for (const auto& e : report.edges) {
            CHECK(e.worlds == c.worlds_per_edge);
            CHECK(e.passed());
            CHECK((e.correctness == Outcome::NotRequired) == !e.edge.qualified());
        }
    }
}

TEST_CASE("rank mode spot checks on the f1 reference code") {
    const auto g = fixtures::fixture_graph("f1");
    const auto code = fixtures::fixture_code("fig5");
    // Edge {1,5} carries {1,2}.
    std::size_t idx15 = 0;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (g.edges()[i].u == 1 && g.edges()[i].v == 5) idx15 = i;
    }
    const auto report = verify::check_edge_rank(code, g, idx15);
    CHECK(report.correctness == Outcome::Pass);
    CHECK(report.security == Outcome::Pass);
    REQUIRE(report.recovery);
    CHECK(report.recovery->rows() == 2);  // two desired symbols
    CHECK(report.recovery->cols() == 4);  // two stored symbols per node
}

TEST_CASE("unqualified edges require security only") {
    const auto g = fixtures::fixture_graph("f2");
    const auto code = fixtures::fixture_code("fig3");
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (g.edges()[i].qualified()) continue;
        const auto rank = verify::check_edge_rank(code, g, i);
        const auto exhaustive = verify::check_edge_exhaustive(code, g, i);
        CHECK(rank.correctness == Outcome::NotRequired);
        CHECK(exhaustive.correctness == Outcome::NotRequired);
        CHECK(rank.security == Outcome::Pass);
        CHECK(exhaustive.security == Outcome::Pass);
    }
}

TEST_CASE("tampered f1 code fails correctness with the undecodable source named") {
    const auto g = fixtures::fixture_graph("f1");
    const auto code = fixtures::fixture_code("fig5");
    // Overwrite V1's coefficient column for source 1 with V5's.
    gf::Matrix a1 = code.source_matrix(1);
    a1.set(0, 0, code.source_matrix(5).at(0, 0));
    a1.set(1, 0, code.source_matrix(5).at(1, 0));
    const auto tampered = with_source_matrix(code, 1, a1);

    std::size_t idx15 = 0;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (g.edges()[i].u == 1 && g.edges()[i].v == 5) idx15 = i;
    }
    for (const auto& report : {verify::check_edge_rank(tampered, g, idx15),
                               verify::check_edge_exhaustive(tampered, g, idx15)}) {
        CHECK(report.correctness == Outcome::Fail);
        CHECK(report.security == Outcome::Pass);
        REQUIRE(report.undecodable_source);
        CHECK(*report.undecodable_source == 1);
    }
}

TEST_CASE("swapping two f2 nodes breaks the code") {
    const auto g = fixtures::fixture_graph("f2");
    const auto code = fixtures::fixture_code("fig3");
    auto swapped = with_source_matrix(code, 3, code.source_matrix(6));
    swapped = with_source_matrix(swapped, 6, code.source_matrix(3));

    const auto report = verify::verify_code(swapped, g, Mode::Both);
    CHECK_FALSE(report.overall);
    for (const auto& e : report.edges) {
        const bool should_fail = (e.edge.u == 2 && e.edge.v == 3) ||
                                 (e.edge.u == 5 && e.edge.v == 6);
        CHECK(e.passed() == !should_fail);
    }
}

TEST_CASE("storing a source in plaintext on an unqualified edge leaks") {
    const auto g = make_graph(2, 1, 2, {{1, 2, {}}});
    // V1 = W1 (plaintext), V2 = noise.
    std::vector<gf::Matrix> a{gf::Matrix::from_rows({{1, 0}}, 3),
                              gf::Matrix::from_rows({{0, 0}}, 3)};
    std::vector<gf::Matrix> b{gf::Matrix::from_rows({{0}}, 3),
                              gf::Matrix::from_rows({{1}}, 3)};
    const codegen::LinearCode code(3, 2, 1, 1, 1, {1, 2}, std::move(a), std::move(b), {});
    for (const auto& report : {verify::check_edge_rank(code, g, 0),
                               verify::check_edge_exhaustive(code, g, 0)}) {
        CHECK(report.security == Outcome::Fail);
        CHECK(report.correctness == Outcome::NotRequired);
        REQUIRE(report.leaking_source);
        CHECK(*report.leaking_source == 1);
    }
}

TEST_CASE("rank and exhaustive verdicts agree on random codes") {
    SplitMix64 rng(41);
    int pairs = 0;
    while (pairs < 300) {
        const auto g = testsupport::random_graph(rng, 5, 3, 2);
        if (!g) continue;
        const auto code = testsupport::random_code(rng, *g, 4096);
        if (!code) continue;
        ++pairs;
        for (std::size_t i = 0; i < g->edges().size(); ++i) {
            const auto rank = verify::check_edge_rank(*code, *g, i);
            const auto exhaustive = verify::check_edge_exhaustive(*code, *g, i);
            REQUIRE(rank.correctness == exhaustive.correctness);
            REQUIRE(rank.security == exhaustive.security);
            if (rank.security == Outcome::Fail) {
                REQUIRE(rank.leaking_source);
                REQUIRE(exhaustive.leaking_source);
                CHECK(*rank.leaking_source == *exhaustive.leaking_source);
            }
        }
    }
}

TEST_CASE("grouped scan agrees with the literal-count oracle") {
    SplitMix64 rng(42);
    int pairs = 0;
    while (pairs < 60) {
        const auto g = testsupport::random_graph(rng, 4, 2, 1);
        if (!g) continue;
        const auto code = testsupport::random_code(rng, *g, 729);
        if (!code) continue;
        ++pairs;
        for (std::size_t i = 0; i < g->edges().size(); ++i) {
            const auto report = verify::check_edge_exhaustive(*code, *g, i);
            const auto [correct, secure] = literal_edge_oracle(*code, *g, i);
            if (g->edges()[i].qualified()) {
                CHECK((report.correctness == Outcome::Pass) == correct);
            }
            CHECK((report.security == Outcome::Pass) == secure);
        }
    }
}

TEST_CASE("recovery matrices reproduce the desired symbols over all worlds") {
    const auto g = fixtures::fixture_graph("f1");
    const auto code = fixtures::fixture_code("fig5");
    const std::uint32_t q = code.q();
    const std::size_t width = static_cast<std::size_t>(code.source_count()) + 2;  // s=1, t=2

    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        if (!e.qualified()) continue;
        const auto report = verify::check_edge_rank(code, g, i);
        REQUIRE(report.recovery);
        const gf::Matrix observation =
            code.source_matrix(e.u).hstack(code.noise_matrix(e.u))
                .vstack(code.source_matrix(e.v).hstack(code.noise_matrix(e.v)));

        std::vector<std::uint32_t> world(width, 0);
        while (true) {
            std::vector<std::uint32_t> stored(observation.rows(), 0);
            for (std::size_t r = 0; r < observation.rows(); ++r) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < width; ++c) {
                    acc += static_cast<std::uint64_t>(observation.at(r, c)) * world[c] % q;
                }
                stored[r] = static_cast<std::uint32_t>(acc % q);
            }
            std::size_t row = 0;
            for (int k : e.label) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < stored.size(); ++c) {
                    acc += static_cast<std::uint64_t>(report.recovery->at(row, c)) * stored[c] % q;
                }
                CHECK(static_cast<std::uint32_t>(acc % q) == world[code.source_column(k)]);
                ++row;
            }
            std::size_t j = 0;
            for (; j < width; ++j) {
                if (++world[j] < q) break;
                world[j] = 0;
            }
            if (j == width) break;
        }
    }
}

TEST_CASE("per-node independence from non-common sources holds on fixture codes") {
    for (const char* name : {"fig3", "fig5", "fig6"}) {
        const auto g = fixtures::fixture_graph(fixtures::graph_for_code(name));
        const auto code = fixtures::fixture_code(name);
        for (auto n : g.nodes()) {
            CHECK(verify::node_noncommon_independence(code, g, n));
        }
    }
}

TEST_CASE("node independence probe flags plaintext storage") {
    const auto g = make_graph(2, 1, 2, {{1, 2, {1}}});
    // V1 = W1 is fine for this graph's constraints per edge, and the probe
    // conditions on C(V1) = {1}; V2 = W2 stores a non-common source.
    std::vector<gf::Matrix> a{gf::Matrix::from_rows({{1, 0}}, 3),
                              gf::Matrix::from_rows({{0, 1}}, 3)};
    std::vector<gf::Matrix> b{gf::Matrix(1, 0, 3), gf::Matrix(1, 0, 3)};
    const codegen::LinearCode code(3, 2, 1, 1, 0, {1, 2}, std::move(a), std::move(b), {});
    CHECK(verify::node_noncommon_independence(code, g, 1));
    CHECK_FALSE(verify::node_noncommon_independence(code, g, 2));
}

TEST_CASE("single-mode verify_code reports consistently") {
    const auto g = fixtures::fixture_graph("f2");
    const auto code = fixtures::fixture_code("fig3");
    const auto rank = verify::verify_code(code, g, Mode::Rank);
    const auto exhaustive = verify::verify_code(code, g, Mode::Exhaustive);
    CHECK(rank.overall);
    CHECK(exhaustive.overall);
    CHECK(rank.total_worlds == 0);
    CHECK(exhaustive.total_worlds == 8 * 125);
    for (const auto& e : rank.edges) CHECK(e.mode == Mode::Rank);
    for (const auto& e : exhaustive.edges) CHECK(e.mode == Mode::Exhaustive);
}

TEST_CASE("world cap refusal") {
    const auto g = fixtures::fixture_graph("f1");
    const auto code = fixtures::fixture_code("fig5");
    CHECK_THROWS_AS(verify::check_edge_exhaustive(code, g, 0, 100),
                    verify::EnumerationCapExceeded);
    CHECK_NOTHROW(verify::check_edge_exhaustive(code, g, 0, 243));
}

TEST_CASE("dimension mismatches are rejected") {
    const auto g = fixtures::fixture_graph("f1");
    const auto code = fixtures::fixture_code("fig3");  // built for f2
    CHECK_THROWS_AS(verify::verify_code(code, g, Mode::Rank), verify::DimensionMismatch);
}

TEST_CASE("mode both flags disagreement loudly") {
    // No reachable disagreement exists between the two routes; simulate the
    // report merge by checking agreement across fixtures instead.
    for (const char* name : {"fig3", "fig5", "fig6"}) {
        const auto g = fixtures::fixture_graph(fixtures::graph_for_code(name));
        const auto code = fixtures::fixture_code(name);
        CHECK_NOTHROW(verify::verify_code(code, g, Mode::Both));
    }
}
