#pragma once

// Exact verification of a linear code against a graph's constraints, by two
// independent routes:
//
//   rank mode        algebraic criteria on the stacked per-edge matrices.
//                    Decodability: every desired-symbol selector row lies in
//                    the row space of [A | B]. Security: the column space of
//                    the non-desired source columns is contained in the noise
//                    column space.
//   exhaustive mode  literal enumeration of all (source, noise) worlds with
//                    integer counting. Decodability: every realized pair of
//                    stored symbols is compatible with exactly one value of
//                    the desired sources. Security: the joint counts
//                    factorize exactly (zero conditional mutual information).
//
// There are no tolerances anywhere; both modes return exact pass/fail
// verdicts, and mode `Both` insists they agree.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsc/codegen.hpp"
#include "gsc/gf.hpp"
#include "gsc/graph.hpp"

namespace gsc::verify {

enum class Outcome { Pass, Fail, NotRequired };
enum class Mode { Rank, Exhaustive, Both };

std::string to_string(Outcome outcome);
std::string to_string(Mode mode);

inline constexpr std::uint64_t kDefaultWorldCap = 1ull << 24;

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EnumerationCapExceeded : public std::runtime_error {
public:
    EnumerationCapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
        : std::runtime_error(what), required_(required), cap_(cap) {}
    std::uint64_t required() const { return required_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t required_;
    std::uint64_t cap_;
};

/// Raised in mode Both when the two routes disagree on any edge outcome.
class ModeDisagreement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EdgeReport {
    std::size_t edge_index = 0;
    graph::Edge edge;
    Outcome correctness = Outcome::NotRequired;  // NotRequired exactly when the label is empty
    Outcome security = Outcome::Pass;
    Mode mode = Mode::Rank;
    std::optional<int> undecodable_source;
    std::optional<int> leaking_source;
    std::uint64_t worlds = 0;  // exhaustive enumeration size, 0 in rank mode
    // Recovery matrix R with R * [V_i; V_j] = desired symbols; present when
    // rank-mode correctness passes.
    std::optional<gf::Matrix> recovery;

    bool passed() const { return security == Outcome::Pass && correctness != Outcome::Fail; }
};

struct VerificationReport {
    std::vector<EdgeReport> edges;
    bool overall = true;
    std::size_t passed_edges = 0;
    std::size_t failed_edges = 0;
    std::uint64_t total_worlds = 0;
};

EdgeReport check_edge_rank(const codegen::LinearCode& code, const graph::StorageGraph& g,
                           std::size_t edge_index);

EdgeReport check_edge_exhaustive(const codegen::LinearCode& code, const graph::StorageGraph& g,
                                 std::size_t edge_index,
                                 std::uint64_t world_cap = kDefaultWorldCap);

VerificationReport verify_code(const codegen::LinearCode& code, const graph::StorageGraph& g,
                               Mode mode, std::uint64_t world_cap = kDefaultWorldCap);

// Joint-distribution probe for one node: the stored symbols must be
// independent of the node's non-common sources, both conditioned on the
// common sources and unconditionally.
bool node_noncommon_independence(const codegen::LinearCode& code, const graph::StorageGraph& g,
                                 graph::NodeId node,
                                 std::uint64_t world_cap = kDefaultWorldCap);

}  // namespace gsc::verify
