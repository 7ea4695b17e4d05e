#include "gsc/graph.hpp"

#include <algorithm>
#include <set>

namespace gsc::graph {

namespace {

// Plain union-find with path compression over arbitrary node ids.
class DisjointSet {
public:
    explicit DisjointSet(const std::vector<NodeId>& nodes) {
        for (NodeId n : nodes) parent_[n] = n;
    }

    NodeId find(NodeId x) {
        NodeId root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            NodeId next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::map<NodeId, NodeId> parent_;
};

NodePartition components_under(const StorageGraph& g, bool qualified) {
    DisjointSet ds(g.nodes());
    for (const Edge& e : g.edges()) {
        if (e.qualified() == qualified) ds.unite(e.u, e.v);
    }
    std::map<NodeId, std::vector<NodeId>> by_root;
    for (NodeId n : g.nodes()) by_root[ds.find(n)].push_back(n);
    NodePartition partition;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        partition.blocks.push_back(std::move(members));
    }
    // std::map iteration already orders blocks by root = smallest member.
    return partition;
}

}  // namespace

SourceSet::SourceSet(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SourceSet::SourceSet(std::initializer_list<int> members)
    : SourceSet(std::vector<int>(members)) {}

bool SourceSet::contains(int k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
}

SourceSet SourceSet::intersect(const SourceSet& rhs) const {
    std::vector<int> out;
    std::set_intersection(members_.begin(), members_.end(), rhs.members_.begin(),
                          rhs.members_.end(), std::back_inserter(out));
    return SourceSet(std::move(out));
}

SourceSet SourceSet::unite(const SourceSet& rhs) const {
    std::vector<int> out;
    std::set_union(members_.begin(), members_.end(), rhs.members_.begin(),
                   rhs.members_.end(), std::back_inserter(out));
    return SourceSet(std::move(out));
}

std::string SourceSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(members_[i]);
    }
    return s + "}";
}

int NodePartition::block_index(NodeId node) const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (std::binary_search(blocks[i].begin(), blocks[i].end(), node)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

StorageGraph::StorageGraph(int source_count, int label_size, std::vector<NodeId> nodes,
                           std::vector<Edge> edges)
    : k_(source_count), d_(label_size), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    for (Edge& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incidence_[edges_[i].u].push_back(i);
        incidence_[edges_[i].v].push_back(i);
    }
}

void StorageGraph::validate() const {
    if (k_ < 1 || d_ < 1 || d_ > k_) {
        throw GraphError(GraphErrorKind::BadParameters,
                         "require 1 <= D <= K, got K=" + std::to_string(k_) +
                             " D=" + std::to_string(d_));
    }
    if (nodes_.empty()) {
        throw GraphError(GraphErrorKind::BadParameters, "graph has no nodes");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] != static_cast<NodeId>(i + 1)) {
            throw GraphError(GraphErrorKind::BadParameters,
                             "node ids must be contiguous 1..N");
        }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v) {
            throw GraphError(GraphErrorKind::SelfLoop,
                             "self-loop at node " + std::to_string(e.u));
        }
        if (!has_node(e.u) || !has_node(e.v)) {
            throw GraphError(GraphErrorKind::UnknownNode,
                             "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 "} references an unknown node");
        }
        if (i > 0 && edges_[i - 1].u == e.u && edges_[i - 1].v == e.v) {
            throw GraphError(GraphErrorKind::DuplicateEdge,
                             "duplicate edge {" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + "}");
        }
        if (!e.label.empty() && e.label.size() != static_cast<std::size_t>(d_)) {
            throw GraphError(GraphErrorKind::LabelSize,
                             "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 "} has label of size " + std::to_string(e.label.size()) +
                                 ", want " + std::to_string(d_) + " or 0");
        }
        for (int k : e.label) {
            if (k < 1 || k > k_) {
                throw GraphError(GraphErrorKind::SourceOutOfRange,
                                 "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     "} names source " + std::to_string(k) +
                                     " outside [1," + std::to_string(k_) + "]");
            }
        }
    }
    for (NodeId n : nodes_) {
        if (incidence_.find(n) == incidence_.end()) {
            throw GraphError(GraphErrorKind::IsolatedNode,
                             "node " + std::to_string(n) + " is isolated");
        }
    }
}

bool StorageGraph::has_node(NodeId node) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

const std::vector<std::size_t>& StorageGraph::incident_edges(NodeId node) const {
    static const std::vector<std::size_t> kNone;
    auto it = incidence_.find(node);
    return it == incidence_.end() ? kNone : it->second;
}

std::size_t StorageGraph::qualified_edge_count() const {
    std::size_t n = 0;
    for (const Edge& e : edges_) n += e.qualified() ? 1 : 0;
    return n;
}

SourceSet StorageGraph::common_sources(NodeId node) const {
    if (!has_node(node)) {
        throw GraphError(GraphErrorKind::UnknownNode,
                         "unknown node " + std::to_string(node));
    }
    const auto& incident = incident_edges(node);
    if (incident.empty()) return SourceSet{};
    SourceSet common = edges_[incident.front()].label;
    for (std::size_t i = 1; i < incident.size() && !common.empty(); ++i) {
        common = common.intersect(edges_[incident[i]].label);
    }
    return common;
}

std::vector<NodeId> StorageGraph::degenerate_nodes() const {
    std::vector<NodeId> out;
    for (NodeId n : nodes_) {
        const auto& incident = incident_edges(n);
        bool uniform = true;
        for (std::size_t i = 1; i < incident.size(); ++i) {
            if (edges_[incident[i]].label != edges_[incident.front()].label) {
                uniform = false;
                break;
            }
        }
        if (uniform) out.push_back(n);
    }
    return out;
}

StorageGraph StorageGraph::nondegenerate_subgraph() const {
    const std::vector<NodeId> degenerate = degenerate_nodes();
    std::vector<NodeId> keep;
    for (NodeId n : nodes_) {
        if (!std::binary_search(degenerate.begin(), degenerate.end(), n)) keep.push_back(n);
    }
    return induced_subgraph(keep);
}

StorageGraph StorageGraph::induced_subgraph(const std::vector<NodeId>& keep) const {
    std::set<NodeId> kept(keep.begin(), keep.end());
    std::vector<Edge> sub_edges;
    for (const Edge& e : edges_) {
        if (kept.count(e.u) && kept.count(e.v)) sub_edges.push_back(e);
    }
    return StorageGraph(k_, d_, std::vector<NodeId>(kept.begin(), kept.end()),
                        std::move(sub_edges));
}

StorageGraph StorageGraph::characteristic_graph(int k) const {
    if (k < 1 || k > k_) {
        throw GraphError(GraphErrorKind::SourceOutOfRange,
                         "source index " + std::to_string(k) + " outside [1," +
                             std::to_string(k_) + "]");
    }
    std::vector<Edge> out_edges = edges_;
    for (Edge& e : out_edges) {
        e.label = e.label.contains(k) ? SourceSet{k} : SourceSet{};
    }
    return StorageGraph(k_, 1, nodes_, std::move(out_edges));
}

NodePartition StorageGraph::qualified_components() const {
    return components_under(*this, true);
}

NodePartition StorageGraph::unqualified_components() const {
    return components_under(*this, false);
}

std::vector<Edge> StorageGraph::internal_qualified_edges() const {
    const NodePartition unqualified = unqualified_components();
    std::vector<Edge> out;
    for (const Edge& e : edges_) {
        if (!e.qualified()) continue;
        if (unqualified.block_index(e.u) == unqualified.block_index(e.v)) {
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace gsc::graph
