#include "gsc/codegen.hpp"

#include <algorithm>
#include <string>

#include "gsc/rng.hpp"

namespace gsc::codegen {

namespace {

std::string node_name(graph::NodeId n) { return "V" + std::to_string(n); }

std::uint32_t choose_modulus(std::optional<std::uint32_t> q_override, std::uint64_t bound) {
    if (q_override) {
        if (!gf::is_prime(*q_override)) {
            throw gf::FieldError("field size override must be prime, got " +
                                 std::to_string(*q_override));
        }
        return *q_override;
    }
    return gf::next_prime_above(std::max<std::uint64_t>(1, bound));
}

// Shared layout of the aligned (rate s/l = 1/D) schemes: which nodes are
// degenerate, the qualified components of the non-degenerate subgraph, and
// the noise column ranges (one block of D columns per component, then one per
// pure-noise degenerate node).
struct AlignedLayout {
    classify::AlignmentStructure structure;
    std::vector<graph::NodeId> degenerate;
    std::vector<graph::NodeId> pure_noise_degenerate;  // degenerate with empty common sources
    std::vector<NoiseBlock> noise_blocks;
    int noise_dim = 0;

    bool is_degenerate(graph::NodeId n) const {
        return std::binary_search(degenerate.begin(), degenerate.end(), n);
    }
};

AlignedLayout aligned_layout(const graph::StorageGraph& g) {
    AlignedLayout layout{classify::analyze_alignment(g), g.degenerate_nodes(), {}, {}, 0};
    const int d = g.label_size();
    for (graph::NodeId n : layout.degenerate) {
        if (g.common_sources(n).empty()) layout.pure_noise_degenerate.push_back(n);
    }
    const int component_count = static_cast<int>(layout.structure.components.size());
    int next_col = 0;
    for (int m = 0; m < component_count; ++m) {
        layout.noise_blocks.push_back(NoiseBlock{next_col, d, m + 1});
        next_col += d;
    }
    int next_ordinal = component_count + 1;
    for (std::size_t i = 0; i < layout.pure_noise_degenerate.size(); ++i) {
        layout.noise_blocks.push_back(NoiseBlock{next_col, d, next_ordinal++});
        next_col += d;
    }
    layout.noise_dim = next_col;
    return layout;
}

LinearCode assemble_aligned(const graph::StorageGraph& g, std::uint32_t q,
                            const AlignedLayout& layout, const CoefficientTable& coefficients) {
    const int d = g.label_size();
    const int k_count = g.source_count();
    std::vector<gf::Matrix> source_matrices;
    std::vector<gf::Matrix> noise_matrices;

    int pure_noise_seen = 0;
    const int component_count = static_cast<int>(layout.structure.components.size());
    for (graph::NodeId n : g.nodes()) {
        gf::Matrix a(static_cast<std::size_t>(d), static_cast<std::size_t>(k_count), q);
        gf::Matrix b(static_cast<std::size_t>(d), static_cast<std::size_t>(layout.noise_dim), q);
        if (layout.is_degenerate(n)) {
            const graph::SourceSet common = g.common_sources(n);
            if (common.empty()) {
                // Pure-noise node: fresh identity block.
                const NoiseBlock& block = layout.noise_blocks[static_cast<std::size_t>(
                    component_count + pure_noise_seen)];
                ++pure_noise_seen;
                for (int r = 0; r < d; ++r) b.set(r, static_cast<std::size_t>(block.start + r), 1);
            } else {
                // Store the common sources directly, one per row.
                int r = 0;
                for (int k : common) a.set(r++, static_cast<std::size_t>(k - 1), 1);
            }
        } else {
            const int m = layout.structure.components.block_index(n);
            const auto& view = layout.structure.views[static_cast<std::size_t>(m)];
            for (int k = 1; k <= k_count; ++k) {
                const int u = view.unqualified_by_source[static_cast<std::size_t>(k - 1)]
                                  .block_index(n);
                const auto& column =
                    coefficients.at(static_cast<std::size_t>(m))
                        .at(static_cast<std::size_t>(k - 1))
                        .at(static_cast<std::size_t>(u));
                for (int r = 0; r < d; ++r) a.set(r, static_cast<std::size_t>(k - 1), column.at(r));
            }
            const NoiseBlock& block = layout.noise_blocks[static_cast<std::size_t>(m)];
            for (int r = 0; r < d; ++r) b.set(r, static_cast<std::size_t>(block.start + r), 1);
        }
        source_matrices.push_back(std::move(a));
        noise_matrices.push_back(std::move(b));
    }
    return LinearCode(q, k_count, 1, d, layout.noise_dim, g.nodes(),
                      std::move(source_matrices), std::move(noise_matrices),
                      layout.noise_blocks);
}

// Difference matrix of a qualified edge between non-degenerate nodes: column
// c holds the coefficient difference for the c-th desired source. All its
// determinants nonzero <=> every such edge can recover its sources.
bool aligned_determinants_ok(const graph::StorageGraph& g, const AlignedLayout& layout,
                             const LinearCode& code) {
    const int d = g.label_size();
    const std::uint32_t q = code.q();
    for (const graph::Edge& e : layout.structure.nondegenerate.edges()) {
        if (!e.qualified()) continue;
        const gf::Matrix& ai = code.source_matrix(e.u);
        const gf::Matrix& aj = code.source_matrix(e.v);
        gf::Matrix h(static_cast<std::size_t>(d), static_cast<std::size_t>(d), q);
        int c = 0;
        for (int k : e.label) {
            for (int r = 0; r < d; ++r) {
                const std::uint64_t diff =
                    ai.at(r, static_cast<std::size_t>(k - 1)) + q -
                    aj.at(r, static_cast<std::size_t>(k - 1));
                h.set(r, static_cast<std::size_t>(c), diff);
            }
            ++c;
        }
        if (h.det().value() == 0) return false;
    }
    return true;
}

void require_alignment_condition(const AlignedLayout& layout, const char* scheme) {
    if (layout.structure.common_source_violator) {
        classify::Witness w;
        w.kind = classify::WitnessKind::Node;
        w.node = *layout.structure.common_source_violator;
        throw ConstructionRefused(std::string(scheme) + ": non-degenerate node " +
                                      node_name(w.node) + " has nonempty common sources",
                                  w);
    }
    if (layout.structure.internal_edge) {
        const classify::Witness& w = *layout.structure.internal_edge;
        throw ConstructionRefused(std::string(scheme) + ": internal qualified edge {" +
                                      node_name(w.u) + "," + node_name(w.v) +
                                      "} in the characteristic graph of source " +
                                      std::to_string(w.source),
                                  w);
    }
}

}  // namespace

LinearCode::LinearCode(std::uint32_t q, int source_count, int symbols_per_source,
                       int symbols_per_node, int noise_dim, std::vector<graph::NodeId> node_ids,
                       std::vector<gf::Matrix> source_matrices,
                       std::vector<gf::Matrix> noise_matrices, std::vector<NoiseBlock> noise_blocks)
    : q_(q),
      k_(source_count),
      s_(symbols_per_source),
      l_(symbols_per_node),
      t_(noise_dim),
      node_ids_(std::move(node_ids)),
      source_matrices_(std::move(source_matrices)),
      noise_matrices_(std::move(noise_matrices)),
      noise_blocks_(std::move(noise_blocks)) {
    if (k_ < 1 || s_ < 1 || l_ < 1 || t_ < 0) {
        throw std::invalid_argument("bad code dimensions");
    }
    if (node_ids_.size() != source_matrices_.size() ||
        node_ids_.size() != noise_matrices_.size()) {
        throw std::invalid_argument("per-node matrix lists out of step");
    }
    for (std::size_t i = 0; i < node_ids_.size(); ++i) {
        const auto& a = source_matrices_[i];
        const auto& b = noise_matrices_[i];
        if (a.modulus() != q_ || b.modulus() != q_ ||
            a.rows() != static_cast<std::size_t>(l_) ||
            b.rows() != static_cast<std::size_t>(l_) ||
            a.cols() != static_cast<std::size_t>(k_) * static_cast<std::size_t>(s_) ||
            b.cols() != static_cast<std::size_t>(t_)) {
            throw std::invalid_argument("matrix dimensions do not match the code header");
        }
    }
}

bool LinearCode::has_node(graph::NodeId node) const {
    return std::binary_search(node_ids_.begin(), node_ids_.end(), node);
}

std::size_t LinearCode::index_of(graph::NodeId node) const {
    const auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), node);
    if (it == node_ids_.end() || *it != node) {
        throw std::out_of_range("code has no node " + std::to_string(node));
    }
    return static_cast<std::size_t>(it - node_ids_.begin());
}

const gf::Matrix& LinearCode::source_matrix(graph::NodeId node) const {
    return source_matrices_[index_of(node)];
}

const gf::Matrix& LinearCode::noise_matrix(graph::NodeId node) const {
    return noise_matrices_[index_of(node)];
}

std::size_t LinearCode::source_column(int k, int symbol) const {
    return static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(s_) +
           static_cast<std::size_t>(symbol);
}

bool LinearCode::operator==(const LinearCode& rhs) const {
    return q_ == rhs.q_ && k_ == rhs.k_ && s_ == rhs.s_ && l_ == rhs.l_ && t_ == rhs.t_ &&
           node_ids_ == rhs.node_ids_ && source_matrices_ == rhs.source_matrices_ &&
           noise_matrices_ == rhs.noise_matrices_ && noise_blocks_ == rhs.noise_blocks_;
}

LinearCode construct_d1(const graph::StorageGraph& g) {
    if (g.label_size() != 1) {
        classify::Witness w;
        throw ConstructionRefused("d1 scheme requires label size D = 1, got D = " +
                                      std::to_string(g.label_size()),
                                  w);
    }
    const AlignedLayout layout = aligned_layout(g);
    require_alignment_condition(layout, "d1");

    std::uint64_t max_blocks = 1;
    for (const auto& view : layout.structure.views) {
        for (const auto& partition : view.unqualified_by_source) {
            max_blocks = std::max<std::uint64_t>(max_blocks, partition.size());
        }
    }
    const std::uint32_t q = gf::next_prime_above(max_blocks);

    CoefficientTable coefficients;
    for (const auto& view : layout.structure.views) {
        std::vector<std::vector<std::vector<std::uint32_t>>> per_source;
        for (const auto& partition : view.unqualified_by_source) {
            std::vector<std::vector<std::uint32_t>> per_block;
            for (std::size_t u = 0; u < partition.size(); ++u) {
                // Coefficient is the 1-based block ordinal; q > U keeps them distinct.
                per_block.push_back({static_cast<std::uint32_t>(u + 1)});
            }
            per_source.push_back(std::move(per_block));
        }
        coefficients.push_back(std::move(per_source));
    }
    return assemble_aligned(g, q, layout, coefficients);
}

LinearCode assemble_general(const graph::StorageGraph& g, std::uint32_t q,
                            const CoefficientTable& coefficients) {
    if (!gf::is_prime(q)) {
        throw gf::FieldError("field size must be prime, got " + std::to_string(q));
    }
    return assemble_aligned(g, q, aligned_layout(g), coefficients);
}

ConstructionResult construct_general(const graph::StorageGraph& g, std::uint64_t seed,
                                     std::optional<std::uint32_t> q_override) {
    const AlignedLayout layout = aligned_layout(g);
    require_alignment_condition(layout, "general");

    const int d = g.label_size();
    const std::uint32_t q = choose_modulus(
        q_override, static_cast<std::uint64_t>(d) * g.qualified_edge_count());

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        CoefficientTable coefficients;
        for (const auto& view : layout.structure.views) {
            std::vector<std::vector<std::vector<std::uint32_t>>> per_source;
            for (const auto& partition : view.unqualified_by_source) {
                std::vector<std::vector<std::uint32_t>> per_block;
                for (std::size_t u = 0; u < partition.size(); ++u) {
                    std::vector<std::uint32_t> column;
                    for (int r = 0; r < d; ++r) column.push_back(rng.below(q));
                    per_block.push_back(std::move(column));
                }
                per_source.push_back(std::move(per_block));
            }
            coefficients.push_back(std::move(per_source));
        }
        LinearCode code = assemble_aligned(g, q, layout, coefficients);
        if (aligned_determinants_ok(g, layout, code)) {
            return ConstructionResult{std::move(code), attempt};
        }
    }
    throw ConstructionFailed("general: no invertible draw within " +
                                 std::to_string(kRetryBudget) + " attempts at q = " +
                                 std::to_string(q),
                             q, kRetryBudget);
}

ConstructionResult construct_two_over_d(const graph::StorageGraph& g, std::uint64_t seed,
                                        std::optional<std::uint32_t> q_override) {
    const classify::CoverageCheck coverage = classify::check_common_source_coverage(g);
    if (!coverage.holds) {
        const classify::Witness& w = *coverage.witness;
        const std::string detail =
            w.kind == classify::WitnessKind::Node
                ? "node " + node_name(w.node) + " has fewer than D/2 common sources"
                : "edge {" + node_name(w.u) + "," + node_name(w.v) +
                      "} is not covered by its endpoints' common sources";
        throw ConstructionRefused("2overD: " + detail, w);
    }

    const int d = g.label_size();
    const int k_count = g.source_count();
    const std::uint32_t q = choose_modulus(
        q_override, 2ull * static_cast<std::uint64_t>(d) * g.edges().size());

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        std::vector<gf::Matrix> source_matrices;
        std::vector<gf::Matrix> noise_matrices;
        for (graph::NodeId n : g.nodes()) {
            gf::Matrix a(static_cast<std::size_t>(d), 2 * static_cast<std::size_t>(k_count), q);
            for (int k : g.common_sources(n)) {
                for (int r = 0; r < d; ++r) {
                    a.set(r, 2 * static_cast<std::size_t>(k - 1), rng.below(q));
                    a.set(r, 2 * static_cast<std::size_t>(k - 1) + 1, rng.below(q));
                }
            }
            source_matrices.push_back(std::move(a));
            noise_matrices.push_back(gf::Matrix(static_cast<std::size_t>(d), 0, q));
        }
        LinearCode code(q, k_count, 2, d, 0, g.nodes(), std::move(source_matrices),
                        std::move(noise_matrices), {});

        bool ok = true;
        for (const graph::Edge& e : g.edges()) {
            if (!e.qualified()) continue;
            std::vector<std::size_t> cols;
            for (int k : e.label) {
                cols.push_back(2 * static_cast<std::size_t>(k - 1));
                cols.push_back(2 * static_cast<std::size_t>(k - 1) + 1);
            }
            const gf::Matrix stacked = code.source_matrix(e.u)
                                           .vstack(code.source_matrix(e.v))
                                           .select_columns(cols);
            if (stacked.det().value() == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return ConstructionResult{std::move(code), attempt};
    }
    throw ConstructionFailed("2overD: no invertible draw within " +
                                 std::to_string(kRetryBudget) + " attempts at q = " +
                                 std::to_string(q),
                             q, kRetryBudget);
}

}  // namespace gsc::codegen
