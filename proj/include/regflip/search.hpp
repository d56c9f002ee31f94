#ifndef REGFLIP_SEARCH_HPP
#define REGFLIP_SEARCH_HPP

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "regularity.hpp"

namespace regflip {

/** Exception thrown when an enumeration exceeds its node budget. */
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

enum class SearchMode { regular_only, all_flips };

/// A flip seen from its source: the target node and the flip's own verdict.
template <class Node>
struct FlipEdge {
    Node target;
    bool regular = false;
};

/**
 * Flip graph interface used by the search engine.
 *
 * `edges` lists every flip of a node with per-flip regularity verdicts (the
 * verdicts only need to be meaningful when the engine runs in regular_only
 * mode). `compare` orders nodes by lexicographic GKZ-vector; `key` identifies
 * a node.
 */
template <class G>
concept FlipGraph = requires(G& g, const typename G::node_type& a, const typename G::node_type& b) {
    typename G::node_type;
    typename G::key_type;
    { g.key(a) } -> std::convertible_to<typename G::key_type>;
    { g.compare(a, b) } -> std::same_as<std::strong_ordering>;
    { g.edges(a) } -> std::same_as<std::vector<FlipEdge<typename G::node_type>>>;
};

struct SearchOptions {
    SearchMode mode = SearchMode::regular_only;
    /// Entries kept in the flip cache; 0 disables caching.
    std::size_t flip_cache = 10000;
    /// Reproduces the unsound cache that trusts target regularity instead of
    /// flip verdicts. Never use outside of tests.
    bool buggy_target_cache = false;
    /// Upper bound on visited nodes for baseline_dfs (0 = unbounded).
    std::size_t node_budget = 0;
};

struct SearchStats {
    std::size_t nodes = 0;
    std::size_t flips_evaluated = 0;
    std::size_t flip_list_requests = 0;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
    ScreeningStats screening;
};

/**
 * Reverse search over the flip graph.
 *
 * The predecessor of a node is its valid neighbor with the lexicographically
 * largest GKZ-vector, provided that vector is larger than the node's own.
 * Valid neighbors are all flips (all_flips) or the flips whose own verdict is
 * regular (regular_only). Flip lists with verdicts are memoized in an LRU cache
 * keyed by node; verdicts are about flips, never about target regularity.
 */
template <FlipGraph G>
class ReverseSearch {
public:
    using Node = typename G::node_type;
    using Key = typename G::key_type;
    using Edges = std::vector<FlipEdge<Node>>;
    using Visitor = std::function<void(const Node&, std::size_t depth)>;

    ReverseSearch(G& graph, SearchOptions options) : graph_(&graph), options_(options) {}

    const SearchStats& stats() const { return stats_; }
    const SearchOptions& options() const { return options_; }

    /// Flips leaving `node` that are valid in the active mode.
    Edges valid_neighbors(const Node& node) {
        auto all = edges(node);
        Edges out;
        for (const auto& e : *all)
            if (valid(e))
                out.push_back(e);
        return out;
    }

    std::optional<Node> predecessor(const Node& node) {
        auto all = edges(node);
        const FlipEdge<Node>* best = nullptr;
        for (const auto& e : *all) {
            if (!valid(e))
                continue;
            if (best) {
                auto c = graph_->compare(e.target, best->target);
                if (c == std::strong_ordering::equal)
                    throw InvariantError("two neighbors with equal GKZ-vectors");
                if (c == std::strong_ordering::less)
                    continue;
            }
            best = &e;
        }
        if (best && graph_->compare(best->target, node) == std::strong_ordering::greater)
            return best->target;
        return std::nullopt;
    }

    /// Follows predecessors from `seed` to the sink.
    Node find_root(Node seed) {
        while (auto p = predecessor(seed))
            seed = std::move(*p);
        return seed;
    }

    /**
     * Depth-first traversal of the reverse search tree rooted at `root`.
     * The visitor sees every tree node exactly once. Memory is one neighbor
     * list per tree level plus the cache.
     */
    const SearchStats& run(const Node& root, const Visitor& visit) {
        struct Frame {
            Node node;
            std::shared_ptr<const Edges> edges;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;
        enter(root, 0, visit);
        stack.push_back({root, edges(root), 0});
        while (!stack.empty()) {
            auto& top = stack.back();
            if (top.next == top.edges->size()) {
                stack.pop_back();
                continue;
            }
            const auto& e = (*top.edges)[top.next++];
            if (!valid(e) || graph_->compare(e.target, top.node) != std::strong_ordering::less)
                continue;
            auto pred = predecessor(e.target);
            if (!pred || graph_->key(*pred) != graph_->key(top.node))
                continue;
            Node child = e.target;
            enter(child, stack.size(), visit);
            auto list = edges(child);
            stack.push_back({std::move(child), std::move(list), 0});
        }
        merge_graph_stats();
        return stats_;
    }

    /**
     * Plain DFS with a visited set from `seed`; the oracle for run(). Throws
     * ResourceError when the node budget is exceeded.
     */
    std::vector<Node> baseline_dfs(const Node& seed) {
        std::unordered_set<Key> seen{graph_->key(seed)};
        std::vector<Node> order{seed};
        std::vector<Node> stack{seed};
        while (!stack.empty()) {
            Node cur = std::move(stack.back());
            stack.pop_back();
            for (auto& e : valid_neighbors(cur)) {
                if (!seen.insert(graph_->key(e.target)).second)
                    continue;
                if (options_.node_budget && order.size() >= options_.node_budget)
                    throw ResourceError("baseline search exceeded " + std::to_string(options_.node_budget) +
                                        " nodes");
                order.push_back(e.target);
                stack.push_back(std::move(e.target));
            }
        }
        stats_.nodes += order.size();
        merge_graph_stats();
        return order;
    }

private:
    bool valid(const FlipEdge<Node>& e) const {
        return options_.mode == SearchMode::all_flips || e.regular ||
               (options_.buggy_target_cache && known_regular_.contains(graph_->key(e.target)));
    }

    void enter(const Node& node, std::size_t depth, const Visitor& visit) {
        ++stats_.nodes;
        if (options_.buggy_target_cache)
            known_regular_.insert(graph_->key(node));
        visit(node, depth);
    }

    std::shared_ptr<const Edges> edges(const Node& node) {
        ++stats_.flip_list_requests;
        Key k = graph_->key(node);
        if (options_.flip_cache > 0) {
            auto it = index_.find(k);
            if (it != index_.end()) {
                ++stats_.cache_hits;
                lru_.splice(lru_.begin(), lru_, it->second);
                return it->second->second;
            }
        }
        ++stats_.cache_misses;
        auto list = std::make_shared<const Edges>(graph_->edges(node));
        stats_.flips_evaluated += list->size();
        if (options_.flip_cache > 0) {
            lru_.emplace_front(k, list);
            index_[k] = lru_.begin();
            if (lru_.size() > options_.flip_cache) {
                index_.erase(lru_.back().first);
                lru_.pop_back();
            }
        }
        return list;
    }

    void merge_graph_stats() {
        if constexpr (requires { graph_->screening_stats(); })
            stats_.screening = graph_->screening_stats();
    }

    G* graph_;
    SearchOptions options_;
    SearchStats stats_;
    std::list<std::pair<Key, std::shared_ptr<const Edges>>> lru_;
    std::unordered_map<Key, typename decltype(lru_)::iterator> index_;
    std::unordered_set<Key> known_regular_;
};

} // namespace regflip

#endif // REGFLIP_SEARCH_HPP
