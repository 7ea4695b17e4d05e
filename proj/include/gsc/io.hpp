#pragma once

// JSON interchange formats: GraphDocument and CodeDocument. Both carry a
// format_version, deserialize into validated core objects and serialize back
// canonically (fixed key order, sorted edges, two-space indent) so that
// fixture files are byte-stable.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsc/codegen.hpp"
#include "gsc/graph.hpp"

namespace gsc::io {

inline constexpr const char* kFormatVersion = "1";

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphDocument {
    std::string format_version = kFormatVersion;
    int source_count = 0;  // K
    int label_size = 0;    // D
    std::vector<graph::NodeId> node_ids;
    std::map<graph::NodeId, std::string> names;  // optional display names
    std::vector<graph::Edge> edges;

    // Validates on the way out; throws graph::GraphError on bad documents.
    graph::StorageGraph to_graph() const;
    static GraphDocument from_graph(const graph::StorageGraph& g,
                                    const std::map<graph::NodeId, std::string>& names = {});

    // Display name of a node: the stored name, else "V<id>".
    std::string name_of(graph::NodeId node) const;
};

GraphDocument parse_graph_document(const std::string& text);
std::string serialize(const GraphDocument& doc);

struct CodeDocument {
    std::string format_version = kFormatVersion;
    codegen::LinearCode code;

    static CodeDocument from_code(const codegen::LinearCode& code);
};

CodeDocument parse_code_document(const std::string& text);
std::string serialize(const CodeDocument& doc);

// File helpers; throw ParseError with the path on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gsc::io
