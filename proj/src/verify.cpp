#include "gsc/verify.hpp"

#include <algorithm>
#include <unordered_map>

namespace gsc::verify {

namespace {

using std::size_t;
using std::uint32_t;
using std::uint64_t;

std::string to_string_edge(const graph::Edge& e) {
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

// base^exp, or nullopt if the result would exceed limit.
std::optional<uint64_t> checked_pow(uint64_t base, size_t exp, uint64_t limit) {
    uint64_t out = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (out > limit / base) return std::nullopt;
        out *= base;
    }
    return out;
}

// Odometer over `width` base-q digits; digit 0 advances fastest.
class Odometer {
public:
    Odometer(size_t width, uint32_t q) : digits_(width, 0), q_(q) {}

    const std::vector<uint32_t>& digits() const { return digits_; }

    bool advance() {
        for (size_t i = 0; i < digits_.size(); ++i) {
            if (++digits_[i] < q_) return true;
            digits_[i] = 0;
        }
        return false;
    }

private:
    std::vector<uint32_t> digits_;
    uint32_t q_;
};

// v += O[:, cols] * digits  (mod q)
void accumulate(const gf::Matrix& o, const std::vector<size_t>& cols,
                const std::vector<uint32_t>& digits, std::vector<uint32_t>& v) {
    const uint32_t q = o.modulus();
    for (size_t r = 0; r < o.rows(); ++r) {
        uint64_t acc = v[r];
        for (size_t i = 0; i < cols.size(); ++i) {
            acc += static_cast<uint64_t>(o.at(r, cols[i])) * digits[i] % q;
        }
        v[r] = static_cast<uint32_t>(acc % q);
    }
}

struct ScanResult {
    bool unique_decoding = true;
    bool distributions_match = true;
    uint64_t worlds = 0;
    // First clashing pair of group assignments (encoded base-q, digit 0
    // least significant) when unique decoding fails.
    uint64_t clash_a = 0;
    uint64_t clash_b = 0;
};

// Core enumeration engine. Worlds are all assignments over the matrix's
// input columns, split into group / x / other. For every fixed group
// assignment, the count distribution of the output symbols must be identical
// across x assignments (integer-count equality; this is exactly the
// factorization N(v,x,g)*N(g) = N(v,g)*N(x,g) since N(g) and N(x,g) are the
// constants q^(|x|+|other|) and q^|other|). With track_decoding set, also
// requires every realized output to be compatible with a single group
// assignment.
ScanResult scan_groups(const gf::Matrix& o, const std::vector<size_t>& group_cols,
                       const std::vector<size_t>& x_cols, const std::vector<size_t>& other_cols,
                       bool track_decoding, uint64_t world_cap) {
    const uint32_t q = o.modulus();
    const size_t width = group_cols.size() + x_cols.size() + other_cols.size();
    if (width != o.cols()) throw gf::ShapeError("column split does not cover the matrix");

    const auto worlds = checked_pow(q, width, world_cap);
    if (!worlds) {
        const auto required = checked_pow(q, width, 1ull << 62);
        throw EnumerationCapExceeded(
            "enumeration needs " + std::to_string(q) + "^" + std::to_string(width) +
                (required ? " = " + std::to_string(*required) : "") +
                " worlds, above the cap of " + std::to_string(world_cap),
            required.value_or(0), world_cap);
    }
    const auto key_space = checked_pow(q, o.rows(), 1ull << 62);
    if (!key_space) {
        throw EnumerationCapExceeded("observed-symbol space q^" + std::to_string(o.rows()) +
                                         " does not fit in 64-bit keys",
                                     0, world_cap);
    }

    ScanResult result;
    result.worlds = *worlds;

    std::unordered_map<uint64_t, uint64_t> first_group;
    std::vector<uint64_t> dist;
    std::vector<uint64_t> ref_dist;
    std::vector<uint32_t> vg(o.rows());
    std::vector<uint32_t> vx(o.rows());
    std::vector<uint32_t> v(o.rows());

    Odometer group(group_cols.size(), q);
    uint64_t group_index = 0;
    do {
        std::fill(vg.begin(), vg.end(), 0);
        accumulate(o, group_cols, group.digits(), vg);

        bool have_ref = false;
        Odometer x(x_cols.size(), q);
        do {
            vx = vg;
            accumulate(o, x_cols, x.digits(), vx);

            dist.clear();
            Odometer other(other_cols.size(), q);
            do {
                v = vx;
                accumulate(o, other_cols, other.digits(), v);
                uint64_t key = 0;
                for (size_t r = o.rows(); r-- > 0;) key = key * q + v[r];
                dist.push_back(key);

                if (track_decoding && result.unique_decoding) {
                    auto [it, inserted] = first_group.try_emplace(key, group_index);
                    if (!inserted && it->second != group_index) {
                        result.unique_decoding = false;
                        result.clash_a = it->second;
                        result.clash_b = group_index;
                    }
                }
            } while (other.advance());

            std::sort(dist.begin(), dist.end());
            if (!have_ref) {
                ref_dist = dist;
                have_ref = true;
            } else if (dist != ref_dist) {
                result.distributions_match = false;
            }
            // Keep scanning until both verdicts are settled.
        } while (x.advance() &&
                 (result.distributions_match || (track_decoding && result.unique_decoding)));
        if (!result.distributions_match && !(track_decoding && result.unique_decoding)) break;
        ++group_index;
    } while (group.advance());

    return result;
}

struct EdgeColumns {
    std::vector<size_t> desired;      // source columns of the edge label
    std::vector<size_t> rest;         // remaining source columns
    std::vector<int> rest_sources;    // ascending source ids outside the label
    std::vector<size_t> noise;
};

EdgeColumns edge_columns(const codegen::LinearCode& code, const graph::Edge& e) {
    EdgeColumns cols;
    const int k_count = code.source_count();
    const int s = code.symbols_per_source();
    for (int k = 1; k <= k_count; ++k) {
        const bool desired = e.label.contains(k);
        if (!desired) cols.rest_sources.push_back(k);
        for (int symbol = 0; symbol < s; ++symbol) {
            (desired ? cols.desired : cols.rest).push_back(code.source_column(k, symbol));
        }
    }
    const size_t ks = static_cast<size_t>(k_count) * static_cast<size_t>(s);
    for (int j = 0; j < code.noise_dim(); ++j) cols.noise.push_back(ks + static_cast<size_t>(j));
    return cols;
}

void require_compatible(const codegen::LinearCode& code, const graph::StorageGraph& g) {
    if (code.source_count() != g.source_count()) {
        throw DimensionMismatch("code has K = " + std::to_string(code.source_count()) +
                                " sources but the graph has K = " +
                                std::to_string(g.source_count()));
    }
    if (code.node_ids() != g.nodes()) {
        throw DimensionMismatch("code and graph node sets differ");
    }
}

// Stacked observation matrix [A_i | B_i; A_j | B_j] of an edge.
gf::Matrix stacked_observation(const codegen::LinearCode& code, const graph::Edge& e) {
    const gf::Matrix top = code.source_matrix(e.u).hstack(code.noise_matrix(e.u));
    const gf::Matrix bottom = code.source_matrix(e.v).hstack(code.noise_matrix(e.v));
    return top.vstack(bottom);
}

// First non-desired source r_j (ascending) such that the columns of
// r_1..r_j are not covered by the span of the noise columns together with
// the remaining non-desired columns. This is the rank form of the first
// failing prefix in the chain rule I(V; r_1..r_j | desired), so the two
// verification modes name the same leaking source.
std::optional<int> rank_leak_witness(const gf::Matrix& m_noise, const gf::Matrix& m,
                                     const codegen::LinearCode& code,
                                     const std::vector<int>& rest_sources) {
    auto source_cols = [&](int k) {
        std::vector<size_t> cols;
        for (int symbol = 0; symbol < code.symbols_per_source(); ++symbol) {
            cols.push_back(code.source_column(k, symbol));
        }
        return cols;
    };
    std::vector<size_t> all_rest;
    for (int k : rest_sources) {
        const auto cols = source_cols(k);
        all_rest.insert(all_rest.end(), cols.begin(), cols.end());
    }
    const size_t full_rank = m.select_columns(all_rest).hstack(m_noise).rank();
    for (size_t j = 0; j < rest_sources.size(); ++j) {
        std::vector<size_t> beyond;
        for (size_t i = j + 1; i < rest_sources.size(); ++i) {
            const auto cols = source_cols(rest_sources[i]);
            beyond.insert(beyond.end(), cols.begin(), cols.end());
        }
        if (m.select_columns(beyond).hstack(m_noise).rank() < full_rank) {
            return rest_sources[j];
        }
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::NotRequired: return "not-required";
    }
    return "unknown";
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Rank: return "rank";
        case Mode::Exhaustive: return "exhaustive";
        case Mode::Both: return "both";
    }
    return "unknown";
}

EdgeReport check_edge_rank(const codegen::LinearCode& code, const graph::StorageGraph& g,
                           std::size_t edge_index) {
    require_compatible(code, g);
    const graph::Edge& e = g.edges().at(edge_index);
    EdgeReport report;
    report.edge_index = edge_index;
    report.edge = e;
    report.mode = Mode::Rank;

    const gf::Matrix observation = stacked_observation(code, e);
    const size_t ks = static_cast<size_t>(code.source_count()) *
                      static_cast<size_t>(code.symbols_per_source());
    std::vector<size_t> source_cols(ks);
    for (size_t c = 0; c < ks; ++c) source_cols[c] = c;
    std::vector<size_t> noise_cols;
    for (int j = 0; j < code.noise_dim(); ++j) noise_cols.push_back(ks + static_cast<size_t>(j));

    const gf::Matrix m = observation.select_columns(source_cols);
    const gf::Matrix m_noise = observation.select_columns(noise_cols);
    const EdgeColumns cols = edge_columns(code, e);

    // Security: non-desired source columns must be covered by noise columns.
    const gf::Matrix m_rest = m.select_columns(cols.rest);
    if (m_rest.hstack(m_noise).rank() == m_noise.rank()) {
        report.security = Outcome::Pass;
    } else {
        report.security = Outcome::Fail;
        report.leaking_source = rank_leak_witness(m_noise, m, code, cols.rest_sources);
    }

    // Decodability of the desired symbols.
    if (!e.qualified()) {
        report.correctness = Outcome::NotRequired;
        return report;
    }
    gf::RowSpace space(observation.cols(), observation.modulus());
    for (size_t r = 0; r < observation.rows(); ++r) space.add(observation.row(r));
    report.correctness = Outcome::Pass;
    for (int k : e.label) {
        for (int symbol = 0; symbol < code.symbols_per_source(); ++symbol) {
            std::vector<uint32_t> selector(observation.cols(), 0);
            selector[code.source_column(k, symbol)] = 1;
            if (!space.contains(selector)) {
                report.correctness = Outcome::Fail;
                report.undecodable_source = k;
                break;
            }
        }
        if (report.correctness == Outcome::Fail) break;
    }
    if (report.correctness == Outcome::Pass) {
        gf::Matrix recovery(cols.desired.size(), observation.rows(), observation.modulus());
        size_t row = 0;
        for (size_t c : cols.desired) {
            std::vector<uint32_t> selector(observation.cols(), 0);
            selector[c] = 1;
            const auto x = gf::left_solve(observation, selector);
            for (size_t j = 0; j < observation.rows(); ++j) recovery.set(row, j, (*x)[j]);
            ++row;
        }
        report.recovery = std::move(recovery);
    }
    return report;
}

EdgeReport check_edge_exhaustive(const codegen::LinearCode& code, const graph::StorageGraph& g,
                                 std::size_t edge_index, std::uint64_t world_cap) {
    require_compatible(code, g);
    const graph::Edge& e = g.edges().at(edge_index);
    EdgeReport report;
    report.edge_index = edge_index;
    report.edge = e;
    report.mode = Mode::Exhaustive;

    const gf::Matrix observation = stacked_observation(code, e);
    const EdgeColumns cols = edge_columns(code, e);

    const ScanResult scan = scan_groups(observation, cols.desired, cols.rest, cols.noise,
                                        e.qualified(), world_cap);
    report.worlds = scan.worlds;
    report.security = scan.distributions_match ? Outcome::Pass : Outcome::Fail;
    if (!e.qualified()) {
        report.correctness = Outcome::NotRequired;
    } else if (scan.unique_decoding) {
        report.correctness = Outcome::Pass;
    } else {
        report.correctness = Outcome::Fail;
        // The clash indexes encode digit vectors over cols.desired; the first
        // differing digit names the undecodable source.
        const int s = code.symbols_per_source();
        uint64_t a = scan.clash_a;
        uint64_t b = scan.clash_b;
        const uint32_t q = code.q();
        for (size_t i = 0; i < cols.desired.size(); ++i) {
            if (a % q != b % q) {
                report.undecodable_source = e.label.members()[i / static_cast<size_t>(s)];
                break;
            }
            a /= q;
            b /= q;
        }
    }
    if (report.security == Outcome::Fail) {
        // First prefix of the non-desired sources whose joint distribution
        // with the observation fails to factorize; its last element leaks.
        std::vector<size_t> prefix;
        for (int k : cols.rest_sources) {
            for (int symbol = 0; symbol < code.symbols_per_source(); ++symbol) {
                prefix.push_back(code.source_column(k, symbol));
            }
            std::vector<size_t> other;
            for (size_t c = 0; c < observation.cols(); ++c) {
                if (std::find(cols.desired.begin(), cols.desired.end(), c) != cols.desired.end())
                    continue;
                if (std::find(prefix.begin(), prefix.end(), c) != prefix.end()) continue;
                other.push_back(c);
            }
            if (!scan_groups(observation, cols.desired, prefix, other, false, world_cap)
                     .distributions_match) {
                report.leaking_source = k;
                break;
            }
        }
    }
    return report;
}

VerificationReport verify_code(const codegen::LinearCode& code, const graph::StorageGraph& g,
                               Mode mode, std::uint64_t world_cap) {
    require_compatible(code, g);
    VerificationReport report;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        EdgeReport merged;
        if (mode == Mode::Rank) {
            merged = check_edge_rank(code, g, i);
        } else if (mode == Mode::Exhaustive) {
            merged = check_edge_exhaustive(code, g, i, world_cap);
        } else {
            EdgeReport rank = check_edge_rank(code, g, i);
            EdgeReport exhaustive = check_edge_exhaustive(code, g, i, world_cap);
            if (rank.correctness != exhaustive.correctness ||
                rank.security != exhaustive.security) {
                throw ModeDisagreement(
                    "rank and exhaustive verdicts disagree on edge " +
                    to_string_edge(rank.edge) + ": rank " + to_string(rank.correctness) + "/" +
                    to_string(rank.security) + ", exhaustive " +
                    to_string(exhaustive.correctness) + "/" + to_string(exhaustive.security));
            }
            merged = rank;
            merged.mode = Mode::Both;
            merged.worlds = exhaustive.worlds;
            if (!merged.undecodable_source) merged.undecodable_source = exhaustive.undecodable_source;
            if (!merged.leaking_source) merged.leaking_source = exhaustive.leaking_source;
        }
        report.total_worlds += merged.worlds;
        if (merged.passed()) {
            ++report.passed_edges;
        } else {
            ++report.failed_edges;
            report.overall = false;
        }
        report.edges.push_back(std::move(merged));
    }
    return report;
}

bool node_noncommon_independence(const codegen::LinearCode& code, const graph::StorageGraph& g,
                                 graph::NodeId node, std::uint64_t world_cap) {
    require_compatible(code, g);
    const graph::SourceSet common = g.common_sources(node);
    const gf::Matrix observation = code.source_matrix(node).hstack(code.noise_matrix(node));

    std::vector<size_t> common_cols;
    std::vector<size_t> noncommon_cols;
    for (int k = 1; k <= code.source_count(); ++k) {
        for (int symbol = 0; symbol < code.symbols_per_source(); ++symbol) {
            (common.contains(k) ? common_cols : noncommon_cols)
                .push_back(code.source_column(k, symbol));
        }
    }
    std::vector<size_t> noise_cols;
    const size_t ks = static_cast<size_t>(code.source_count()) *
                      static_cast<size_t>(code.symbols_per_source());
    for (int j = 0; j < code.noise_dim(); ++j) noise_cols.push_back(ks + static_cast<size_t>(j));

    // Conditioned on the common sources.
    if (!scan_groups(observation, common_cols, noncommon_cols, noise_cols, false, world_cap)
             .distributions_match) {
        return false;
    }
    // Unconditionally: marginalize common sources together with the noise.
    std::vector<size_t> other = noise_cols;
    other.insert(other.end(), common_cols.begin(), common_cols.end());
    return scan_groups(observation, {}, noncommon_cols, other, false, world_cap)
        .distributions_match;
}

}  // namespace gsc::verify
