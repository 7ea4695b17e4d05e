#include "gsc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gsc::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void require_version(const json& j) {
    if (!j.is_object()) throw ParseError("document root must be a JSON object");
    if (!j.contains("format_version") || !j["format_version"].is_string()) {
        throw ParseError("missing string field \"format_version\"");
    }
    const std::string version = j["format_version"].get<std::string>();
    if (version != kFormatVersion) {
        throw ParseError("unsupported format_version \"" + version + "\", expected \"" +
                         kFormatVersion + "\"");
    }
}

int require_int(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer()) {
        throw ParseError(std::string("missing integer field \"") + field + "\"");
    }
    return j[field].get<int>();
}

const json& require_array(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ParseError(std::string("missing array field \"") + field + "\"");
    }
    return j[field];
}

std::vector<std::vector<std::uint32_t>> parse_matrix_rows(const json& j, const char* field,
                                                          std::size_t rows, std::size_t cols,
                                                          std::uint32_t q, int node) {
    const json& arr = require_array(j, field);
    if (arr.size() != rows) {
        throw ParseError("node " + std::to_string(node) + ": \"" + field + "\" must have " +
                         std::to_string(rows) + " rows");
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (const json& row : arr) {
        if (!row.is_array() || row.size() != cols) {
            throw ParseError("node " + std::to_string(node) + ": \"" + field +
                             "\" rows must have " + std::to_string(cols) + " entries");
        }
        std::vector<std::uint32_t> r;
        for (const json& cell : row) {
            if (!cell.is_number_integer() || cell.get<long long>() < 0 ||
                cell.get<long long>() >= static_cast<long long>(q)) {
                throw ParseError("node " + std::to_string(node) + ": \"" + field +
                                 "\" entries must be integers in [0, " + std::to_string(q) + ")");
            }
            r.push_back(cell.get<std::uint32_t>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

graph::StorageGraph GraphDocument::to_graph() const {
    graph::StorageGraph g(source_count, label_size, node_ids, edges);
    g.validate();
    return g;
}

GraphDocument GraphDocument::from_graph(const graph::StorageGraph& g,
                                        const std::map<graph::NodeId, std::string>& names) {
    GraphDocument doc;
    doc.source_count = g.source_count();
    doc.label_size = g.label_size();
    doc.node_ids = g.nodes();
    doc.names = names;
    doc.edges = g.edges();
    return doc;
}

std::string GraphDocument::name_of(graph::NodeId node) const {
    const auto it = names.find(node);
    return it == names.end() ? "V" + std::to_string(node) : it->second;
}

GraphDocument parse_graph_document(const std::string& text) {
    const json j = parse_json(text);
    require_version(j);
    GraphDocument doc;
    doc.source_count = require_int(j, "K");
    doc.label_size = require_int(j, "D");
    for (const json& node : require_array(j, "nodes")) {
        if (!node.is_object() || !node.contains("id") || !node["id"].is_number_integer()) {
            throw ParseError("every node needs an integer \"id\"");
        }
        const graph::NodeId id = node["id"].get<int>();
        doc.node_ids.push_back(id);
        if (node.contains("name")) {
            if (!node["name"].is_string()) throw ParseError("node names must be strings");
            doc.names[id] = node["name"].get<std::string>();
        }
    }
    std::size_t index = 0;
    for (const json& edge : require_array(j, "edges")) {
        if (!edge.is_object()) throw ParseError("edges must be objects");
        graph::Edge e;
        e.u = require_int(edge, "u");
        e.v = require_int(edge, "v");
        std::vector<int> sources;
        for (const json& s : require_array(edge, "sources")) {
            if (!s.is_number_integer()) {
                throw ParseError("edge " + std::to_string(index) +
                                 ": \"sources\" must hold integers");
            }
            sources.push_back(s.get<int>());
        }
        e.label = graph::SourceSet(std::move(sources));
        doc.edges.push_back(std::move(e));
        ++index;
    }
    return doc;
}

std::string serialize(const GraphDocument& doc) {
    ordered_json j;
    j["format_version"] = doc.format_version;
    j["K"] = doc.source_count;
    j["D"] = doc.label_size;
    j["nodes"] = ordered_json::array();
    std::vector<graph::NodeId> ids = doc.node_ids;
    std::sort(ids.begin(), ids.end());
    for (graph::NodeId id : ids) {
        ordered_json node;
        node["id"] = id;
        const auto it = doc.names.find(id);
        if (it != doc.names.end()) node["name"] = it->second;
        j["nodes"].push_back(std::move(node));
    }
    // Canonical edge order: normalized endpoints, sorted by (u, v).
    std::vector<graph::Edge> edges = doc.edges;
    for (graph::Edge& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const graph::Edge& a, const graph::Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    j["edges"] = ordered_json::array();
    for (const graph::Edge& e : edges) {
        ordered_json edge;
        edge["u"] = e.u;
        edge["v"] = e.v;
        edge["sources"] = e.label.members();
        j["edges"].push_back(std::move(edge));
    }
    return j.dump(2) + "\n";
}

CodeDocument CodeDocument::from_code(const codegen::LinearCode& code) {
    return CodeDocument{kFormatVersion, code};
}

CodeDocument parse_code_document(const std::string& text) {
    const json j = parse_json(text);
    require_version(j);
    const int q_raw = require_int(j, "q");
    if (q_raw < 2 || !gf::is_prime(static_cast<std::uint64_t>(q_raw))) {
        throw ParseError("\"q\" must be a prime, got " + std::to_string(q_raw));
    }
    const std::uint32_t q = static_cast<std::uint32_t>(q_raw);
    const int k = require_int(j, "K");
    const int s = require_int(j, "s");
    const int l = require_int(j, "l");
    const int t = require_int(j, "t");
    if (k < 1 || s < 1 || l < 1 || t < 0) {
        throw ParseError("code header must satisfy K >= 1, s >= 1, l >= 1, t >= 0");
    }

    std::vector<graph::NodeId> node_ids;
    std::vector<gf::Matrix> a;
    std::vector<gf::Matrix> b;
    for (const json& node : require_array(j, "nodes")) {
        if (!node.is_object()) throw ParseError("code nodes must be objects");
        const int id = require_int(node, "id");
        node_ids.push_back(id);
        a.push_back(gf::Matrix::from_rows(
            parse_matrix_rows(node, "A", static_cast<std::size_t>(l),
                              static_cast<std::size_t>(k) * static_cast<std::size_t>(s), q, id),
            q));
        b.push_back(gf::Matrix::from_rows(
            parse_matrix_rows(node, "B", static_cast<std::size_t>(l),
                              static_cast<std::size_t>(t), q, id),
            q));
    }
    std::vector<codegen::NoiseBlock> blocks;
    if (j.contains("noise_blocks")) {
        for (const json& block : require_array(j, "noise_blocks")) {
            blocks.push_back(codegen::NoiseBlock{require_int(block, "start"),
                                                 require_int(block, "len"),
                                                 require_int(block, "component")});
        }
    }
    for (std::size_t i = 1; i < node_ids.size(); ++i) {
        if (node_ids[i] <= node_ids[i - 1]) {
            throw ParseError("code node ids must be strictly ascending");
        }
    }
    try {
        return CodeDocument{kFormatVersion,
                            codegen::LinearCode(q, k, s, l, t, std::move(node_ids), std::move(a),
                                                std::move(b), std::move(blocks))};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string serialize(const CodeDocument& doc) {
    const codegen::LinearCode& code = doc.code;
    ordered_json j;
    j["format_version"] = doc.format_version;
    j["q"] = code.q();
    j["K"] = code.source_count();
    j["s"] = code.symbols_per_source();
    j["l"] = code.symbols_per_node();
    j["t"] = code.noise_dim();
    j["nodes"] = ordered_json::array();
    for (graph::NodeId id : code.node_ids()) {
        ordered_json node;
        node["id"] = id;
        auto matrix_rows = [](const gf::Matrix& m) {
            ordered_json rows = ordered_json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                rows.push_back(m.row(r));
            }
            return rows;
        };
        node["A"] = matrix_rows(code.source_matrix(id));
        node["B"] = matrix_rows(code.noise_matrix(id));
        j["nodes"].push_back(std::move(node));
    }
    j["noise_blocks"] = ordered_json::array();
    for (const codegen::NoiseBlock& block : code.noise_blocks()) {
        ordered_json b;
        b["start"] = block.start;
        b["len"] = block.len;
        b["component"] = block.component;
        j["noise_blocks"].push_back(std::move(b));
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << contents;
}

}  // namespace gsc::io
