#pragma once

// Extremal-capacity classification. A graph's secure-storage capacity is
// certified to be exactly 2/D when the common-source coverage conditions
// hold, exactly 1/D (1 when D = 1) when the alignment condition holds, and
// strictly below 1/D when an internal qualified edge witnesses the failure of
// that condition. Graphs outside every characterized class are reported as
// such rather than guessed at.

#include <optional>
#include <string>
#include <vector>

#include "gsc/graph.hpp"

namespace gsc::classify {

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational reduced(long long num, long long den);
    bool operator==(const Rational& rhs) const { return num == rhs.num && den == rhs.den; }
    bool operator!=(const Rational& rhs) const { return !(*this == rhs); }
    std::string to_string() const;  // "1/2", "2"
};

enum class VerdictKind {
    ExactlyOne,               // capacity exactly 1 (D = 1 only)
    ExactlyOneOverD,          // capacity exactly 1/D
    ExactlyTwoOverD,          // capacity exactly 2/D
    StrictlyLessThan,         // capacity strictly below the carried bound
    NotInCharacterizedClass,  // no characterization applies
    Unconstrained,            // no qualified edge forces any rate bound
};

std::string to_string(VerdictKind kind);

enum class WitnessKind { Node, Edge, InternalEdge };

/// Pinpoints the first violation in deterministic order: a node, an edge, or
/// an internal qualified edge of one characteristic graph (source + ordinal
/// of the qualified component it was found in).
struct Witness {
    WitnessKind kind = WitnessKind::Node;
    graph::NodeId node = 0;           // WitnessKind::Node
    graph::NodeId u = 0;              // edge endpoints otherwise
    graph::NodeId v = 0;
    int source = 0;                   // InternalEdge: the characteristic source k
    int component = 0;                // InternalEdge: 1-based qualified-component ordinal

    bool operator==(const Witness& rhs) const;
};

struct CapacityVerdict {
    VerdictKind kind = VerdictKind::Unconstrained;
    std::optional<Rational> capacity;  // exact value, or the strict upper bound
    std::optional<Witness> witness;
    std::string reason;                // machine-readable slug for NotInCharacterizedClass
};

/// Per-component view of the non-degenerate subgraph: the induced component
/// and, per source k, the unqualified-component partition of its
/// characteristic graph (blocks ordered by smallest node id).
struct ComponentStructure {
    graph::StorageGraph component;
    std::vector<graph::NodePartition> unqualified_by_source;  // index k-1
};

/// Everything the alignment condition and the aligned code constructions
/// need: the non-degenerate subgraph, its qualified components, per-component
/// characteristic structure, and the first violation of either clause of the
/// condition (scan order: component ordinal, then source, then edge).
struct AlignmentStructure {
    graph::StorageGraph nondegenerate;
    graph::NodePartition components;
    std::vector<ComponentStructure> views;
    std::optional<Witness> internal_edge;
    std::optional<graph::NodeId> common_source_violator;  // non-degenerate node with
                                                          // nonempty common sources
};

AlignmentStructure analyze_alignment(const graph::StorageGraph& g);

/// Conditions certifying capacity exactly 2/D: every node has at least D/2
/// common sources, and every edge label is the union of its endpoints'
/// common sources. The witness is the first violating node, then edge.
struct CoverageCheck {
    bool holds = false;
    std::optional<Witness> witness;
};

CoverageCheck check_common_source_coverage(const graph::StorageGraph& g);

/// Condition certifying capacity exactly 1/D: applicable iff the
/// non-degenerate subgraph is non-empty and every non-degenerate node has no
/// common source (automatic when D = 1); holds iff no characteristic graph of
/// any qualified component contains an internal qualified edge.
struct AlignmentCheck {
    bool applicable = false;
    bool holds = false;
    std::optional<Witness> witness;
};

AlignmentCheck check_alignment_condition(const graph::StorageGraph& g);

// Reason slugs carried by NotInCharacterizedClass verdicts.
inline constexpr const char* kReasonEmptyNondegenerate = "empty-nondegenerate-subgraph";
inline constexpr const char* kReasonCommonSources = "nondegenerate-common-sources";

CapacityVerdict classify(const graph::StorageGraph& g);

}  // namespace gsc::classify
