#include <doctest.h>

#include "gsc/codegen.hpp"
#include "gsc/fixtures.hpp"
#include "gsc/verify.hpp"
#include "support/builders.hpp"

using namespace gsc;
using classify::WitnessKind;
using codegen::ConstructionRefused;
using testsupport::make_graph;

namespace {

// Known-good coefficient draw for the f1 graph (the one behind the fig5
// reference code); unqualified blocks per source are ordered by smallest
// node id.
codegen::CoefficientTable f1_reference_draw() {
    return {{
        {{1, 1}, {2, 2}, {0, 1}},          // source 1: blocks {1,6} {2,3,8} {4,5,7}
        {{0, 2}, {1, 1}, {2, 1}, {1, 1}},  // source 2: blocks {1,7} {2,8} {3,6} {4,5}
        {{2, 1}, {0, 1}, {0, 2}},          // source 3: blocks {1,4,5} {2,6,8} {3,7}
    }};
}

}  // namespace

TEST_CASE("construct_d1 reproduces the f2 reference code exactly") {
    const auto code = codegen::construct_d1(fixtures::fixture_graph("f2"));
    CHECK(code == fixtures::fixture_code("fig3"));
    CHECK(code.q() == 5);
    CHECK(code.rate() == classify::Rational{1, 1});
}

TEST_CASE("construct_d1 handles all-degenerate graphs by direct storage") {
    const auto g = make_graph(1, 1, 2, {{1, 2, {1}}});
    const auto code = codegen::construct_d1(g);
    CHECK(code.q() == 2);
    CHECK(code.noise_dim() == 0);
    CHECK(code.rate() == classify::Rational{1, 1});
    CHECK(code.source_matrix(1) == gf::Matrix::from_rows({{1}}, 2));
    CHECK(code.source_matrix(2) == gf::Matrix::from_rows({{1}}, 2));
}

TEST_CASE("construct_d1 refuses graphs with internal qualified edges") {
    try {
        codegen::construct_d1(fixtures::fixture_graph("f3"));
        FAIL("expected refusal");
    } catch (const ConstructionRefused& e) {
        CHECK(e.witness().kind == WitnessKind::InternalEdge);
        CHECK(e.witness().u == 2);
        CHECK(e.witness().v == 3);
        CHECK(e.witness().source == 1);
    }
}

TEST_CASE("construct_d1 refuses D > 1") {
    CHECK_THROWS_AS(codegen::construct_d1(fixtures::fixture_graph("f1")), ConstructionRefused);
}

TEST_CASE("assemble_general with the reference draw reproduces the f1 code") {
    const auto code =
        codegen::assemble_general(fixtures::fixture_graph("f1"), 3, f1_reference_draw());
    CHECK(code == fixtures::fixture_code("fig5"));
}

TEST_CASE("construct_general on f1 uses q = 17 by default") {
    const auto g = fixtures::fixture_graph("f1");
    const auto result = codegen::construct_general(g, 1);
    CHECK(result.code.q() == 17);
    CHECK(result.code.rate() == classify::Rational{1, 2});
    CHECK(result.code.symbols_per_node() == 2);
    CHECK(result.code.noise_dim() == 2);
    CHECK(result.retries < codegen::kRetryBudget);
}

TEST_CASE("construct_general reduces to scalar coefficients at D = 1") {
    const auto g = fixtures::fixture_graph("f2");
    const auto result = codegen::construct_general(g, 7);
    CHECK(result.code.symbols_per_node() == 1);
    CHECK(result.code.rate() == classify::Rational{1, 1});
    // Every qualified edge's 1x1 difference is nonzero.
    for (const auto& e : g.edges()) {
        if (!e.qualified()) continue;
        const int k = e.label.members().front();
        const auto ai = result.code.source_matrix(e.u).at(0, static_cast<std::size_t>(k - 1));
        const auto aj = result.code.source_matrix(e.v).at(0, static_cast<std::size_t>(k - 1));
        CHECK(ai != aj);
    }
}

TEST_CASE("construct_general refuses the same graphs as the classifier") {
    CHECK_THROWS_AS(codegen::construct_general(fixtures::fixture_graph("f3"), 1),
                    ConstructionRefused);
    // Non-degenerate node with a common source (D = 2).
    const auto g = make_graph(3, 2, 4,
                              {{1, 2, {1, 2}}, {1, 3, {1, 3}}, {2, 4, {}}, {3, 4, {}}});
    try {
        codegen::construct_general(g, 1);
        FAIL("expected refusal");
    } catch (const ConstructionRefused& e) {
        CHECK(e.witness().kind == WitnessKind::Node);
        CHECK(e.witness().node == 1);
    }
}

TEST_CASE("construct_general is reproducible and seed-sensitive") {
    const auto g = fixtures::fixture_graph("f1");
    const auto a = codegen::construct_general(g, 42);
    const auto b = codegen::construct_general(g, 42);
    const auto c = codegen::construct_general(g, 43);
    CHECK(a.code == b.code);
    CHECK(a.retries == b.retries);
    CHECK_FALSE(a.code == c.code);
}

TEST_CASE("construct_two_over_d on f4") {
    const auto g = fixtures::fixture_graph("f4");
    const auto result = codegen::construct_two_over_d(g, 1);
    CHECK(result.code.q() == 37);  // next prime above 2*2*8
    CHECK(result.code.symbols_per_source() == 2);
    CHECK(result.code.noise_dim() == 0);
    CHECK(result.code.rate() == classify::Rational{1, 1});

    // Deterministic given common sources: source columns outside C(V) are zero.
    for (auto n : g.nodes()) {
        const auto common = g.common_sources(n);
        const auto& a = result.code.source_matrix(n);
        for (int k = 1; k <= g.source_count(); ++k) {
            if (common.contains(k)) continue;
            for (std::size_t r = 0; r < a.rows(); ++r) {
                CHECK(a.at(r, 2 * static_cast<std::size_t>(k - 1)) == 0);
                CHECK(a.at(r, 2 * static_cast<std::size_t>(k - 1) + 1) == 0);
            }
        }
    }
}

TEST_CASE("construct_two_over_d achieves rate 2 on a single shared-source edge") {
    const auto g = make_graph(1, 1, 2, {{1, 2, {1}}});
    const auto result = codegen::construct_two_over_d(g, 5);
    CHECK(result.code.symbols_per_source() == 2);
    CHECK(result.code.symbols_per_node() == 1);
    CHECK(result.code.rate() == classify::Rational{2, 1});
    const auto joint =
        result.code.source_matrix(1).vstack(result.code.source_matrix(2));
    CHECK(joint.det().value() != 0);
}

TEST_CASE("construct_two_over_d refuses f1 with witness node 1") {
    try {
        codegen::construct_two_over_d(fixtures::fixture_graph("f1"), 1);
        FAIL("expected refusal");
    } catch (const ConstructionRefused& e) {
        CHECK(e.witness().kind == WitnessKind::Node);
        CHECK(e.witness().node == 1);
    }
}

TEST_CASE("hopeless field sizes exhaust the retry budget") {
    // q = 2 cannot give every 2x2 difference matrix full rank on f1 within
    // the budget; the failure reports the field size and attempt count.
    try {
        codegen::construct_general(fixtures::fixture_graph("f1"), 1, 2);
        FAIL("expected ConstructionFailed");
    } catch (const codegen::ConstructionFailed& e) {
        CHECK(e.q() == 2);
        CHECK(e.attempts() == codegen::kRetryBudget);
    }
}

TEST_CASE("unknown fixture names are rejected") {
    CHECK_THROWS_AS(fixtures::fixture_graph("f9"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::fixture_code("fig1"), std::invalid_argument);
}

TEST_CASE("q overrides must be prime") {
    const auto g = fixtures::fixture_graph("f1");
    CHECK_THROWS_AS(codegen::construct_general(g, 1, 15), gf::FieldError);
    CHECK_THROWS_AS(codegen::construct_two_over_d(fixtures::fixture_graph("f4"), 1, 9),
                    gf::FieldError);
}

TEST_CASE("noise and coded-symbol alignment inside qualified components") {
    const auto g = fixtures::fixture_graph("f1");
    const auto result = codegen::construct_general(g, 9, 17);
    const auto structure = classify::analyze_alignment(g);
    const auto degenerate = g.degenerate_nodes();

    // All non-degenerate nodes of one qualified component share the noise
    // matrix; f1 has a single component.
    for (std::size_t m = 0; m < structure.components.blocks.size(); ++m) {
        const auto& block = structure.components.blocks[m];
        for (std::size_t i = 1; i < block.size(); ++i) {
            CHECK(result.code.noise_matrix(block[i]) == result.code.noise_matrix(block[0]));
        }
    }
    // Unqualified edges inside one component carry identical assignments.
    for (const auto& e : g.edges()) {
        if (e.qualified()) continue;
        if (structure.components.block_index(e.u) != structure.components.block_index(e.v))
            continue;
        if (structure.components.block_index(e.u) < 0) continue;
        CHECK(result.code.source_matrix(e.u) == result.code.source_matrix(e.v));
        CHECK(result.code.noise_matrix(e.u) == result.code.noise_matrix(e.v));
    }
}

TEST_CASE("construction feasibility tracks the classifier") {
    SplitMix64 rng(33);
    int generated = 0;
    while (generated < 120) {
        const auto g = testsupport::random_graph(rng, 7, 3, 2);
        if (!g) continue;
        ++generated;
        const auto verdict = classify::classify(*g);
        using classify::VerdictKind;
        if (verdict.kind == VerdictKind::ExactlyOne ||
            verdict.kind == VerdictKind::ExactlyOneOverD) {
            const auto result = codegen::construct_general(*g, 5);
            CHECK(result.code.rate() ==
                  classify::Rational::reduced(1, g->label_size()));
            CHECK(verify::verify_code(result.code, *g, verify::Mode::Rank).overall);
            if (g->label_size() == 1) {
                const auto d1 = codegen::construct_d1(*g);
                CHECK(verify::verify_code(d1, *g, verify::Mode::Rank).overall);
            }
        }
        if (verdict.kind == VerdictKind::ExactlyTwoOverD) {
            const auto result = codegen::construct_two_over_d(*g, 5);
            CHECK(result.code.rate() ==
                  classify::Rational::reduced(2, g->label_size()));
            CHECK(verify::verify_code(result.code, *g, verify::Mode::Rank).overall);
        }
        if (verdict.kind == VerdictKind::StrictlyLessThan && g->label_size() == 1) {
            CHECK_THROWS_AS(codegen::construct_d1(*g), ConstructionRefused);
            CHECK_THROWS_AS(codegen::construct_general(*g, 5), ConstructionRefused);
        }
    }
}

TEST_CASE("fixture codes match the reference node formulas") {
    const auto fig5 = fixtures::fixture_code("fig5");
    CHECK(fig5.source_matrix(6) == gf::Matrix::from_rows({{1, 2, 0}, {1, 1, 1}}, 3));
    const auto fig3 = fixtures::fixture_code("fig3");
    CHECK(fig3.source_matrix(5) == gf::Matrix::from_rows({{3, 1}}, 5));
    const auto fig6 = fixtures::fixture_code("fig6");
    CHECK(fig6.source_matrix(5) == gf::Matrix::from_rows({{1, 2, 0}}, 3));
    CHECK(fig6.noise_dim() == 0);
}
