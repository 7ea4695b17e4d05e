#pragma once

// Constraint-graph model for the secure-storage problem: nodes store coded
// symbols, each edge carries either a size-D subset of the K sources (the
// pair must decode exactly those and leak nothing else) or the empty set (the
// pair must leak nothing). Includes the structural analyses the capacity
// results are stated in terms of: characteristic graphs, common sources,
// qualified/unqualified components, internal qualified edges and the
// non-degenerate subgraph.
//
// A StorageGraph is immutable after construction; all analyses are pure.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsc::graph {

using NodeId = int;

enum class GraphErrorKind {
    BadParameters,     // K or D out of range, bad node ids
    LabelSize,         // edge label size is neither D nor 0
    SelfLoop,
    DuplicateEdge,     // same unordered node pair twice
    IsolatedNode,
    SourceOutOfRange,  // label member outside [1, K]
    UnknownNode,
};

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    GraphErrorKind kind() const { return kind_; }

private:
    GraphErrorKind kind_;
};

/// Sorted duplicate-free set of source indices (1-based).
class SourceSet {
public:
    SourceSet() = default;
    explicit SourceSet(std::vector<int> members);
    SourceSet(std::initializer_list<int> members);

    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    bool contains(int k) const;

    SourceSet intersect(const SourceSet& rhs) const;
    SourceSet unite(const SourceSet& rhs) const;

    const std::vector<int>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    std::string to_string() const;  // "{1,3}" or "{}"

    bool operator==(const SourceSet& rhs) const { return members_ == rhs.members_; }
    bool operator!=(const SourceSet& rhs) const { return !(*this == rhs); }

private:
    std::vector<int> members_;
};

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    SourceSet label;

    bool qualified() const { return !label.empty(); }
    bool operator==(const Edge& rhs) const {
        return u == rhs.u && v == rhs.v && label == rhs.label;
    }
};

/// Disjoint blocks covering a node subset. Blocks are sorted internally and
/// ordered by their smallest node id; that ordering is load-bearing for the
/// deterministic coefficient assignment in the code constructions.
struct NodePartition {
    std::vector<std::vector<NodeId>> blocks;

    // 0-based block index, or -1 if the node is in no block.
    int block_index(NodeId node) const;
    std::size_t size() const { return blocks.size(); }
};

class StorageGraph {
public:
    // Normalizes on construction: edge endpoints ordered u < v, edges sorted
    // by (u, v), nodes sorted ascending. Invariant checking is in validate().
    StorageGraph(int source_count, int label_size, std::vector<NodeId> nodes,
                 std::vector<Edge> edges);

    // Throws GraphError unless every invariant holds: 1 <= D <= K, node ids
    // are contiguous 1..N, labels have size D or 0 with members in [1, K],
    // no self-loops, no duplicate pairs, no isolated nodes. Subgraphs
    // produced by the analyses below are exempt (they are never re-validated;
    // induced subgraphs legitimately isolate nodes and drop ids).
    void validate() const;

    int source_count() const { return k_; }
    int label_size() const { return d_; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_node(NodeId node) const;
    const std::vector<std::size_t>& incident_edges(NodeId node) const;
    std::size_t qualified_edge_count() const;
    bool has_qualified_edge() const { return qualified_edge_count() > 0; }

    // Intersection of the labels of all edges incident to the node.
    SourceSet common_sources(NodeId node) const;

    // Nodes whose incident labels are all equal (includes nodes with only
    // unlabeled edges, and nodes with no edges at all in subgraphs).
    std::vector<NodeId> degenerate_nodes() const;

    // Induced subgraph on the non-degenerate nodes. May be empty.
    StorageGraph nondegenerate_subgraph() const;

    // Induced subgraph on the given nodes: keeps exactly the edges with both
    // endpoints in the set. Node ids are preserved.
    StorageGraph induced_subgraph(const std::vector<NodeId>& keep) const;

    // Same nodes and edges; each label becomes {k} or {} depending on whether
    // it contains k. The result has label size 1.
    StorageGraph characteristic_graph(int k) const;

    // Connected components under qualified edges only; nodes touched by no
    // qualified edge form singleton blocks.
    NodePartition qualified_components() const;

    // Connected components under unqualified edges only.
    NodePartition unqualified_components() const;

    // Qualified edges whose endpoints are joined by an unqualified path,
    // i.e. lie in the same unqualified component. Intended for label-size-1
    // (characteristic) graphs but well defined for any graph.
    std::vector<Edge> internal_qualified_edges() const;

private:
    int k_;
    int d_;
    std::vector<NodeId> nodes_;
    std::vector<Edge> edges_;
    std::map<NodeId, std::vector<std::size_t>> incidence_;
};

}  // namespace gsc::graph
