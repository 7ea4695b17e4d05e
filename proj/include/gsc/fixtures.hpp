#pragma once

// Bundled worked examples: four reference graphs (f1..f4) and the three
// hand-built codes that go with them (fig3 on f2, fig5 on f1, fig6 on f4).
// These are the regression anchors for the classifier, the constructions and
// the verifier; the CLI ships them as data files.

#include <string>

#include "gsc/codegen.hpp"
#include "gsc/graph.hpp"

namespace gsc::fixtures {

// name in {"f1", "f2", "f3", "f4"}; throws std::invalid_argument otherwise.
graph::StorageGraph fixture_graph(const std::string& name);

// name in {"fig3", "fig5", "fig6"}; throws std::invalid_argument otherwise.
codegen::LinearCode fixture_code(const std::string& name);

// Graph the named code is built for: fig3 -> f2, fig5 -> f1, fig6 -> f4.
std::string graph_for_code(const std::string& code_name);

}  // namespace gsc::fixtures
