#include "gsc/classify.hpp"

#include <numeric>

namespace gsc::classify {

Rational Rational::reduced(long long num, long long den) {
    const long long g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::ExactlyOne: return "exactly-one";
        case VerdictKind::ExactlyOneOverD: return "exactly-one-over-d";
        case VerdictKind::ExactlyTwoOverD: return "exactly-two-over-d";
        case VerdictKind::StrictlyLessThan: return "strictly-less-than";
        case VerdictKind::NotInCharacterizedClass: return "not-in-characterized-class";
        case VerdictKind::Unconstrained: return "unconstrained";
    }
    return "unknown";
}

bool Witness::operator==(const Witness& rhs) const {
    return kind == rhs.kind && node == rhs.node && u == rhs.u && v == rhs.v &&
           source == rhs.source && component == rhs.component;
}

AlignmentStructure analyze_alignment(const graph::StorageGraph& g) {
    AlignmentStructure out{g.nondegenerate_subgraph(), {}, {}, {}, {}};
    out.components = out.nondegenerate.qualified_components();

    for (graph::NodeId n : out.nondegenerate.nodes()) {
        if (!g.common_sources(n).empty()) {
            out.common_source_violator = n;
            break;
        }
    }

    const int source_count = g.source_count();
    for (std::size_t m = 0; m < out.components.blocks.size(); ++m) {
        ComponentStructure view{
            out.nondegenerate.induced_subgraph(out.components.blocks[m]), {}};
        for (int k = 1; k <= source_count; ++k) {
            const graph::StorageGraph ch = view.component.characteristic_graph(k);
            view.unqualified_by_source.push_back(ch.unqualified_components());
            if (!out.internal_edge) {
                const auto internal = ch.internal_qualified_edges();
                if (!internal.empty()) {
                    Witness w;
                    w.kind = WitnessKind::InternalEdge;
                    w.u = internal.front().u;
                    w.v = internal.front().v;
                    w.source = k;
                    w.component = static_cast<int>(m) + 1;
                    out.internal_edge = w;
                }
            }
        }
        out.views.push_back(std::move(view));
    }
    return out;
}

CoverageCheck check_common_source_coverage(const graph::StorageGraph& g) {
    const int d = g.label_size();
    for (graph::NodeId n : g.nodes()) {
        // |C(V)| >= D/2, checked in integers.
        if (2 * static_cast<int>(g.common_sources(n).size()) < d) {
            Witness w;
            w.kind = WitnessKind::Node;
            w.node = n;
            return CoverageCheck{false, w};
        }
    }
    for (const graph::Edge& e : g.edges()) {
        if (g.common_sources(e.u).unite(g.common_sources(e.v)) != e.label) {
            Witness w;
            w.kind = WitnessKind::Edge;
            w.u = e.u;
            w.v = e.v;
            return CoverageCheck{false, w};
        }
    }
    return CoverageCheck{true, std::nullopt};
}

namespace {

AlignmentCheck alignment_check_from(const AlignmentStructure& structure) {
    AlignmentCheck out;
    out.applicable =
        structure.nondegenerate.node_count() > 0 && !structure.common_source_violator;
    out.holds = out.applicable && !structure.internal_edge;
    out.witness = structure.internal_edge;
    return out;
}

}  // namespace

AlignmentCheck check_alignment_condition(const graph::StorageGraph& g) {
    return alignment_check_from(analyze_alignment(g));
}

CapacityVerdict classify(const graph::StorageGraph& g) {
    const int d = g.label_size();
    CapacityVerdict verdict;

    if (!g.has_qualified_edge()) {
        verdict.kind = VerdictKind::Unconstrained;
        return verdict;
    }

    const CoverageCheck coverage = check_common_source_coverage(g);
    if (coverage.holds) {
        verdict.kind = VerdictKind::ExactlyTwoOverD;
        verdict.capacity = Rational::reduced(2, d);
        return verdict;
    }

    const AlignmentStructure structure = analyze_alignment(g);
    if (structure.nondegenerate.node_count() == 0) {
        verdict.kind = VerdictKind::NotInCharacterizedClass;
        verdict.reason = kReasonEmptyNondegenerate;
        verdict.witness = coverage.witness;
        return verdict;
    }

    const AlignmentCheck alignment = alignment_check_from(structure);
    if (alignment.applicable && alignment.holds) {
        verdict.kind = d == 1 ? VerdictKind::ExactlyOne : VerdictKind::ExactlyOneOverD;
        verdict.capacity = Rational::reduced(1, d);
        return verdict;
    }
    if (alignment.applicable) {
        verdict.kind = VerdictKind::StrictlyLessThan;
        verdict.capacity = Rational::reduced(1, d);
        verdict.witness = alignment.witness;
        return verdict;
    }

    verdict.kind = VerdictKind::NotInCharacterizedClass;
    verdict.reason = kReasonCommonSources;
    Witness w;
    w.kind = WitnessKind::Node;
    w.node = *structure.common_source_violator;
    verdict.witness = w;
    return verdict;
}

}  // namespace gsc::classify
