#pragma once

// Construction of capacity-achieving linear secure-storage codes:
//
//   construct_d1         explicit rate-1 scheme for D = 1 (coefficient of
//                        source k at a node is the ordinal of its unqualified
//                        block in the component's characteristic graph)
//   construct_general    randomized rate-1/D scheme for any D; coefficient
//                        vectors are drawn uniformly and redrawn until every
//                        qualified edge's difference matrix is invertible
//   construct_two_over_d randomized rate-2/D scheme; nodes store generic
//                        combinations of their common sources only, no noise
//
// A LinearCode stores, per node, a source matrix A (l x K*s) and a noise
// matrix B (l x t); the node's symbols are V = A*w + B*z for uniform
// independent w and z. One noise block is shared per qualified component (a
// sum of independent uniform noises is uniform, so the per-source noises of
// the alignment argument collapse into one block per component without
// changing the joint distribution).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gsc/classify.hpp"
#include "gsc/gf.hpp"
#include "gsc/graph.hpp"

namespace gsc::codegen {

/// Maps a contiguous range of noise columns to the 1-based ordinal of the
/// qualified component whose nodes share it. Degenerate nodes that store pure
/// noise get fresh ordinals past the component count.
struct NoiseBlock {
    int start = 0;
    int len = 0;
    int component = 0;

    bool operator==(const NoiseBlock& rhs) const {
        return start == rhs.start && len == rhs.len && component == rhs.component;
    }
};

class LinearCode {
public:
    LinearCode(std::uint32_t q, int source_count, int symbols_per_source,
               int symbols_per_node, int noise_dim, std::vector<graph::NodeId> node_ids,
               std::vector<gf::Matrix> source_matrices, std::vector<gf::Matrix> noise_matrices,
               std::vector<NoiseBlock> noise_blocks);

    std::uint32_t q() const { return q_; }
    int source_count() const { return k_; }
    int symbols_per_source() const { return s_; }
    int symbols_per_node() const { return l_; }
    int noise_dim() const { return t_; }

    const std::vector<graph::NodeId>& node_ids() const { return node_ids_; }
    bool has_node(graph::NodeId node) const;
    const gf::Matrix& source_matrix(graph::NodeId node) const;
    const gf::Matrix& noise_matrix(graph::NodeId node) const;
    const std::vector<NoiseBlock>& noise_blocks() const { return noise_blocks_; }

    classify::Rational rate() const { return classify::Rational::reduced(s_, l_); }

    // Column range of source k's symbols inside A.
    std::size_t source_column(int k, int symbol = 0) const;

    bool operator==(const LinearCode& rhs) const;

private:
    std::size_t index_of(graph::NodeId node) const;

    std::uint32_t q_;
    int k_;
    int s_;
    int l_;
    int t_;
    std::vector<graph::NodeId> node_ids_;
    std::vector<gf::Matrix> source_matrices_;
    std::vector<gf::Matrix> noise_matrices_;
    std::vector<NoiseBlock> noise_blocks_;
};

/// The graph does not meet the scheme's precondition; carries the violation.
class ConstructionRefused : public std::runtime_error {
public:
    ConstructionRefused(const std::string& what, classify::Witness witness)
        : std::runtime_error(what), witness_(witness) {}
    const classify::Witness& witness() const { return witness_; }

private:
    classify::Witness witness_;
};

/// The retry budget ran out before all required determinants were nonzero
/// (only possible with a field size below the guaranteed bound).
class ConstructionFailed : public std::runtime_error {
public:
    ConstructionFailed(const std::string& what, std::uint32_t q, int attempts)
        : std::runtime_error(what), q_(q), attempts_(attempts) {}
    std::uint32_t q() const { return q_; }
    int attempts() const { return attempts_; }

private:
    std::uint32_t q_;
    int attempts_;
};

inline constexpr int kRetryBudget = 64;

struct ConstructionResult {
    LinearCode code;
    int retries = 0;  // redraws before the accepted one
};

LinearCode construct_d1(const graph::StorageGraph& g);

ConstructionResult construct_general(const graph::StorageGraph& g, std::uint64_t seed,
                                     std::optional<std::uint32_t> q_override = std::nullopt);

ConstructionResult construct_two_over_d(const graph::StorageGraph& g, std::uint64_t seed,
                                        std::optional<std::uint32_t> q_override = std::nullopt);

/// Coefficient vector (length D) per (qualified component m, source k,
/// unqualified block u), all indices 0-based: coefficients[m][k-1][u].
using CoefficientTable = std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>>;

// Deterministic assembly of the rate-1/D scheme from explicit coefficients.
// Used to replay a known-good draw; no invertibility check is performed.
LinearCode assemble_general(const graph::StorageGraph& g, std::uint32_t q,
                            const CoefficientTable& coefficients);

}  // namespace gsc::codegen
