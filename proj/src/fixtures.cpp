#include "gsc/fixtures.hpp"

#include <stdexcept>

namespace gsc::fixtures {

namespace {

using graph::Edge;
using graph::NodeId;
using graph::SourceSet;
using graph::StorageGraph;

std::vector<NodeId> node_range(int n) {
    std::vector<NodeId> out;
    for (int i = 1; i <= n; ++i) out.push_back(i);
    return out;
}

StorageGraph make_f1() {
    std::vector<Edge> edges;
    for (auto [u, v] : {std::pair{1, 5}, {2, 6}, {3, 7}}) edges.push_back({u, v, SourceSet{1, 2}});
    for (auto [u, v] : {std::pair{1, 6}, {3, 8}, {4, 7}}) edges.push_back({u, v, SourceSet{2, 3}});
    for (auto [u, v] : {std::pair{1, 7}, {3, 6}}) edges.push_back({u, v, SourceSet{1, 3}});
    for (auto [u, v] : {std::pair{2, 8}, {4, 5}}) edges.push_back({u, v, SourceSet{}});
    return StorageGraph(3, 2, node_range(8), std::move(edges));
}

StorageGraph make_f2() {
    std::vector<Edge> edges;
    for (auto [u, v] : {std::pair{1, 2}, {4, 5}, {3, 6}, {2, 5}, {1, 5}})
        edges.push_back({u, v, SourceSet{1}});
    for (auto [u, v] : {std::pair{2, 3}, {5, 6}}) edges.push_back({u, v, SourceSet{2}});
    edges.push_back({1, 4, SourceSet{}});
    return StorageGraph(2, 1, node_range(6), std::move(edges));
}

StorageGraph make_f3() {
    std::vector<Edge> edges;
    edges.push_back({2, 3, SourceSet{1}});
    edges.push_back({1, 3, SourceSet{2}});
    edges.push_back({1, 2, SourceSet{}});
    return StorageGraph(2, 1, node_range(3), std::move(edges));
}

StorageGraph make_f4() {
    std::vector<Edge> edges;
    for (auto [u, v] : {std::pair{1, 4}, {4, 5}, {3, 5}, {1, 5}, {3, 4}})
        edges.push_back({u, v, SourceSet{1, 2}});
    for (auto [u, v] : {std::pair{1, 2}, {2, 6}}) edges.push_back({u, v, SourceSet{1, 3}});
    edges.push_back({3, 6, SourceSet{2, 3}});
    return StorageGraph(3, 2, node_range(6), std::move(edges));
}

codegen::LinearCode make_fig3() {
    const std::uint32_t q = 5;
    const std::vector<std::vector<std::uint32_t>> rows = {
        {1, 1}, {2, 1}, {2, 2}, {1, 1}, {3, 1}, {3, 2}};
    std::vector<gf::Matrix> a;
    std::vector<gf::Matrix> b;
    for (const auto& row : rows) {
        a.push_back(gf::Matrix::from_rows({row}, q));
        b.push_back(gf::Matrix::from_rows({{1}}, q));
    }
    return codegen::LinearCode(q, 2, 1, 1, 1, node_range(6), std::move(a), std::move(b),
                               {codegen::NoiseBlock{0, 1, 1}});
}

codegen::LinearCode make_fig5() {
    const std::uint32_t q = 3;
    const std::vector<std::vector<std::vector<std::uint32_t>>> node_rows = {
        {{1, 0, 2}, {1, 2, 1}},  // V1
        {{2, 1, 0}, {2, 1, 1}},  // V2
        {{2, 2, 0}, {2, 1, 2}},  // V3
        {{0, 1, 2}, {1, 1, 1}},  // V4
        {{0, 1, 2}, {1, 1, 1}},  // V5
        {{1, 2, 0}, {1, 1, 1}},  // V6
        {{0, 0, 0}, {1, 2, 2}},  // V7
        {{2, 1, 0}, {2, 1, 1}},  // V8
    };
    std::vector<gf::Matrix> a;
    std::vector<gf::Matrix> b;
    for (const auto& rows : node_rows) {
        a.push_back(gf::Matrix::from_rows(rows, q));
        b.push_back(gf::Matrix::identity(2, q));
    }
    return codegen::LinearCode(q, 3, 1, 2, 2, node_range(8), std::move(a), std::move(b),
                               {codegen::NoiseBlock{0, 2, 1}});
}

codegen::LinearCode make_fig6() {
    const std::uint32_t q = 3;
    const std::vector<std::vector<std::uint32_t>> rows = {
        {1, 0, 0}, {1, 0, 1}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 0, 1}};
    std::vector<gf::Matrix> a;
    std::vector<gf::Matrix> b;
    for (const auto& row : rows) {
        a.push_back(gf::Matrix::from_rows({row}, q));
        b.push_back(gf::Matrix(1, 0, q));
    }
    return codegen::LinearCode(q, 3, 1, 1, 0, node_range(6), std::move(a), std::move(b), {});
}

}  // namespace

graph::StorageGraph fixture_graph(const std::string& name) {
    if (name == "f1") return make_f1();
    if (name == "f2") return make_f2();
    if (name == "f3") return make_f3();
    if (name == "f4") return make_f4();
    throw std::invalid_argument("unknown fixture graph: " + name);
}

codegen::LinearCode fixture_code(const std::string& name) {
    if (name == "fig3") return make_fig3();
    if (name == "fig5") return make_fig5();
    if (name == "fig6") return make_fig6();
    throw std::invalid_argument("unknown fixture code: " + name);
}

std::string graph_for_code(const std::string& code_name) {
    if (code_name == "fig3") return "f2";
    if (code_name == "fig5") return "f1";
    if (code_name == "fig6") return "f4";
    throw std::invalid_argument("unknown fixture code: " + code_name);
}

}  // namespace gsc::fixtures
