#ifndef REGFLIP_TESTS_FIXTURES_HPP
#define REGFLIP_TESTS_FIXTURES_HPP

#include <algorithm>
#include <compare>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "regflip/io.hpp"
#include "regflip/point_config.hpp"
#include "regflip/search.hpp"

#ifndef REGFLIP_DATA_DIR
#error "REGFLIP_DATA_DIR must point at the data/ directory"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(REGFLIP_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& name) {
    std::ifstream in(data_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline regflip::InputDocument load(const std::string& name) { return regflip::parse_input(slurp(name)); }

inline regflip::PointConfiguration config(const std::string& name) { return regflip::PointConfiguration(load(name).points); }

// Flip GKZ-vectors at a regular triangulation of the product of a triangle
// and a 5-simplex, one row per flip (rows are 0-based here: row 5 is the
// sixth vector).
inline std::vector<std::vector<regflip::Integer>> flip_matrix() {
    const int rows[12][18] = {
        {0, 0, 0, 0, 0, 0, 0, 0, -3, 3, 0, 0, 0, 0, 3, -3, 0, 0},
        {0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1},
        {-1, 0, 0, 0, 1, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, -1, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
        {-1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1},
        {0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1},
        {0, 0, -3, 3, 0, 0, 0, 0, 3, -3, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0},
        {0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 1},
        {0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0},
        {0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0},
        {1, -1, 0, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0},
    };
    std::vector<std::vector<regflip::Integer>> out;
    for (const auto& r : rows)
        out.emplace_back(std::begin(r), std::end(r));
    return out;
}

// Random configuration with n points in [0,4]^d spanning dimension d. On the
// line there are only five lattice points, so n is capped there.
inline regflip::PointConfiguration random_config(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::uniform_int_distribution<int> coord(0, 4);
    if (d == 1)
        n = std::min<std::size_t>(n, 5);
    for (;;) {
        std::set<regflip::Point> pts;
        while (pts.size() < n) {
            regflip::Point p(d);
            for (auto& x : p)
                x = coord(rng);
            pts.insert(p);
        }
        regflip::PointConfiguration c(std::vector<regflip::Point>(pts.begin(), pts.end()));
        if (c.dim() == d) {
            // shuffle labels so the placing order is not always lexicographic
            std::vector<regflip::Point> v(pts.begin(), pts.end());
            std::shuffle(v.begin(), v.end(), rng);
            return regflip::PointConfiguration(std::move(v));
        }
    }
}

/**
 * Three nodes with heights 2 > 1 > 0 and flips 0-1, 1-2 (regular) and 0-2
 * (not regular), as in the cache regression scenario. `all_regular` makes
 * the 0-2 flip regular too.
 */
class TriangleGraph {
public:
    struct Node {
        int id;
        int height;
    };
    using node_type = Node;
    using key_type = int;

    explicit TriangleGraph(bool all_regular = false) {
        link(0, 1, true);
        link(1, 2, true);
        link(0, 2, all_regular);
    }

    static Node node(int id) { return {id, 2 - id}; }

    int key(const Node& n) const { return n.id; }
    std::strong_ordering compare(const Node& a, const Node& b) const { return a.height <=> b.height; }

    std::vector<regflip::FlipEdge<Node>> edges(const Node& n) {
        ++edge_calls;
        std::vector<regflip::FlipEdge<Node>> out;
        for (auto [to, reg] : adj_[n.id])
            out.push_back({node(to), reg});
        return out;
    }

    int edge_calls = 0;

private:
    void link(int a, int b, bool regular) {
        adj_[a].emplace_back(b, regular);
        adj_[b].emplace_back(a, regular);
    }
    std::map<int, std::vector<std::pair<int, bool>>> adj_;
};

} // namespace fixtures

#endif // REGFLIP_TESTS_FIXTURES_HPP
