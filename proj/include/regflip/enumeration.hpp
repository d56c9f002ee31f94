#ifndef REGFLIP_ENUMERATION_HPP
#define REGFLIP_ENUMERATION_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "flip.hpp"
#include "point_config.hpp"
#include "regularity.hpp"
#include "search.hpp"
#include "triangulation.hpp"

namespace regflip {

struct TriangulationNode {
    Triangulation triangulation;
    GkzVector gkz;
};

/**
 * The flip graph of a point configuration.
 *
 * Edges carry targets with incrementally updated GKZ-vectors. With
 * `compute_verdicts` each flip list is screened for extremal flip GKZ-vectors,
 * which presumes the source triangulation is regular.
 */
class TriangulationGraph {
public:
    using node_type = TriangulationNode;
    using key_type = Triangulation;

    TriangulationGraph(const PointConfiguration& config, bool compute_verdicts)
        : config_(&config), memo_(config), verdicts_(compute_verdicts) {}

    const PointConfiguration& config() const { return *config_; }

    /// Recompute every target GKZ-vector and compare with the incremental one.
    void set_verify_gkz(bool on) { verify_gkz_ = on; }
    std::size_t gkz_checks() const { return gkz_checks_; }

    const Triangulation& key(const TriangulationNode& n) const { return n.triangulation; }

    std::strong_ordering compare(const TriangulationNode& a, const TriangulationNode& b) const {
        return lex_compare(a.gkz, b.gkz);
    }

    TriangulationNode node(Triangulation t) {
        GkzVector g = gkz(memo_, t);
        return {std::move(t), std::move(g)};
    }

    TriangulationNode seed() { return node(placing_triangulation(*config_)); }

    std::vector<FlipEdge<TriangulationNode>> edges(const TriangulationNode& n) {
        auto flips = find_flips(memo_, n.triangulation);
        std::vector<bool> verdict(flips.size(), false);
        if (verdicts_)
            verdict = regular_flips(flips, &screening_);
        std::vector<FlipEdge<TriangulationNode>> out;
        out.reserve(flips.size());
        for (std::size_t i = 0; i < flips.size(); ++i) {
            const auto& f = flips[i];
            TriangulationNode target{apply_flip(n.triangulation, f), n.gkz};
            bool nonzero = false;
            for (std::size_t k = 0; k < f.delta.size(); ++k) {
                if (f.delta[k] != 0) {
                    nonzero = true;
                    target.gkz[k] += f.delta[k];
                }
            }
            if (!nonzero)
                throw InvariantError("flip with zero GKZ-vector on circuit " + f.circuit_str());
            if (verify_gkz_) {
                ++gkz_checks_;
                if (gkz(memo_, target.triangulation) != target.gkz)
                    throw InvariantError("incremental GKZ-vector mismatch after flip " + f.circuit_str());
            }
            out.push_back({std::move(target), verdict[i]});
        }
        return out;
    }

    const ScreeningStats& screening_stats() const { return screening_; }

private:
    const PointConfiguration* config_;
    GeometryMemo memo_;
    bool verdicts_;
    bool verify_gkz_ = false;
    std::size_t gkz_checks_ = 0;
    ScreeningStats screening_;
};

using TriangulationVisitor = std::function<void(const Triangulation&, const GkzVector&, std::size_t depth)>;

struct EnumerationResult {
    SearchStats stats;
    TriangulationNode root;
};

/**
 * Reverse search from the root reached by walking predecessors from the
 * placing triangulation. In all_flips mode only the tree of that root is
 * enumerated.
 */
inline EnumerationResult reverse_search(const PointConfiguration& config, const SearchOptions& options,
                                        const TriangulationVisitor& visit, bool verify_gkz = false) {
    TriangulationGraph graph(config, options.mode == SearchMode::regular_only);
    graph.set_verify_gkz(verify_gkz);
    ReverseSearch<TriangulationGraph> search(graph, options);
    auto root = search.find_root(graph.seed());
    search.run(root, [&](const TriangulationNode& n, std::size_t depth) { visit(n.triangulation, n.gkz, depth); });
    return {search.stats(), std::move(root)};
}

/// Every triangulation reachable from the placing triangulation.
inline std::vector<TriangulationNode> baseline_dfs(const PointConfiguration& config, const SearchOptions& options,
                                                   SearchStats* stats = nullptr) {
    TriangulationGraph graph(config, options.mode == SearchMode::regular_only);
    ReverseSearch<TriangulationGraph> search(graph, options);
    auto nodes = search.baseline_dfs(graph.seed());
    if (stats)
        *stats = search.stats();
    return nodes;
}

} // namespace regflip

#endif // REGFLIP_ENUMERATION_HPP
