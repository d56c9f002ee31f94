#ifndef REGFLIP_TRIANGULATION_HPP
#define REGFLIP_TRIANGULATION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exact_arith.hpp"
#include "index_set.hpp"
#include "point_config.hpp"

namespace regflip {

using GkzVector = std::vector<Integer>;

/**
 * A set of maximal simplices, kept in lexicographic order.
 *
 * The canonical text form `{{i,j,...},{...}}` lists indices ascending inside
 * each simplex and simplices in lexicographic order.
 */
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
        std::sort(simplices_.begin(), simplices_.end());
    }
    Triangulation(std::initializer_list<std::initializer_list<int>> simplices) {
        for (const auto& s : simplices)
            simplices_.emplace_back(s);
        std::sort(simplices_.begin(), simplices_.end());
    }

    /// Takes cells already in lexicographic order without re-sorting.
    static Triangulation from_sorted(std::vector<Simplex> simplices) {
        Triangulation t;
        t.simplices_ = std::move(simplices);
        return t;
    }

    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    auto begin() const { return simplices_.begin(); }
    auto end() const { return simplices_.end(); }

    bool contains(Simplex s) const { return std::binary_search(simplices_.begin(), simplices_.end(), s); }

    IndexSet used_points() const {
        IndexSet u;
        for (auto s : simplices_)
            u = u | s;
        return u;
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < simplices_.size(); ++i) {
            if (i)
                out += ',';
            out += simplices_[i].str();
        }
        out += '}';
        return out;
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
    friend auto operator<=>(const Triangulation& a, const Triangulation& b) {
        return std::lexicographical_compare_three_way(a.simplices_.begin(), a.simplices_.end(),
                                                      b.simplices_.begin(), b.simplices_.end());
    }

private:
    std::vector<Simplex> simplices_;
};

/// gkz(T)_i = sum of normalized volumes of the simplices of T containing i.
inline GkzVector gkz(const PointConfiguration& config, const Triangulation& t) {
    GkzVector g(config.size(), Integer(0));
    for (auto s : t) {
        Integer v = config.normalized_volume(s);
        for (int i : s)
            g[static_cast<std::size_t>(i)] += v;
    }
    return g;
}

inline GkzVector gkz(GeometryMemo& memo, const Triangulation& t) {
    GkzVector g(memo.config().size(), Integer(0));
    for (auto s : t) {
        const Integer& v = memo.volume(s);
        for (int i : s)
            g[static_cast<std::size_t>(i)] += v;
    }
    return g;
}

template <class T>
std::strong_ordering lex_compare(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size())
        throw DimensionError("comparing vectors of length " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i])
            return std::strong_ordering::less;
        if (b[i] < a[i])
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

template <class T>
std::string format_vector(const std::vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += to_string(v[i]);
    }
    s += ')';
    return s;
}

/// Codimension-one faces of a simplex together with the opposite vertex.
inline std::vector<std::pair<IndexSet, int>> facets_of(Simplex s) {
    std::vector<std::pair<IndexSet, int>> out;
    for (int v : s)
        out.emplace_back(s.without(v), v);
    return out;
}

/// Sign of the oriented volume of the facet points followed by `apex`.
inline int side_of(const PointConfiguration& config, IndexSet facet, int apex) {
    auto order = facet.to_vector();
    order.push_back(apex);
    return config.orientation(order);
}

/// True if every point lies weakly on one side of the facet hyperplane.
inline bool is_hull_facet(const PointConfiguration& config, IndexSet facet) {
    bool pos = false, neg = false;
    for (int q = 0; q < static_cast<int>(config.size()); ++q) {
        if (facet.contains(q))
            continue;
        int s = side_of(config, facet, q);
        pos = pos || s > 0;
        neg = neg || s < 0;
        if (pos && neg)
            return false;
    }
    return true;
}

/**
 * Placing triangulation: points are inserted in input order, starting from the
 * first affinely independent points; each later point outside the current hull
 * is coned over the facets it strictly sees. Points in or on the hull are
 * skipped.
 */
inline Triangulation placing_triangulation(const PointConfiguration& config) {
    const auto& basis = config.affine_basis();
    std::vector<Simplex> simplices{IndexSet(basis.begin(), basis.end())};
    IndexSet placed = simplices.front();
    for (int p = 0; p < static_cast<int>(config.size()); ++p) {
        if (placed.contains(p))
            continue;
        std::map<IndexSet, std::pair<int, int>> facet_count; // facet -> (count, opposite vertex)
        for (auto s : simplices)
            for (auto [f, v] : facets_of(s)) {
                auto& e = facet_count[f];
                ++e.first;
                e.second = v;
            }
        std::vector<Simplex> added;
        for (const auto& [f, e] : facet_count) {
            if (e.first != 1)
                continue;
            if (side_of(config, f, p) * side_of(config, f, e.second) < 0)
                added.push_back(f.with(p));
        }
        if (added.empty())
            continue;
        simplices.insert(simplices.end(), added.begin(), added.end());
        placed.insert(p);
    }
    return Triangulation(std::move(simplices));
}

/// Normalized volume of conv(A), via the placing triangulation.
inline Integer hull_volume(const PointConfiguration& config) {
    Integer total = 0;
    for (auto s : placing_triangulation(config))
        total += config.normalized_volume(s);
    return total;
}

struct ValidationReport {
    enum class Kind { ok, bad_simplex, degenerate_simplex, duplicate_simplex, total_volume, facet_pairing };
    Kind kind = Kind::ok;
    std::string message;
    std::vector<Simplex> witnesses;

    bool ok() const { return kind == Kind::ok; }
    explicit operator bool() const { return ok(); }
};

/**
 * Checks positive simplex volumes, total volume equal to conv(A), and that
 * every codimension-one face is either shared by two simplices lying on
 * opposite sides of it, or is contained in a facet of conv(A).
 */
inline ValidationReport validate(const PointConfiguration& config, const Triangulation& t) {
    using Kind = ValidationReport::Kind;
    const std::size_t n = config.size();
    const int cells = static_cast<int>(config.dim()) + 1;
    if (t.empty())
        return {Kind::total_volume, "triangulation has no simplices", {}};
    for (auto s : t) {
        if (s.size() != cells || (s - config.all()).size() != 0)
            return {Kind::bad_simplex,
                    "simplex " + s.str() + " must have " + std::to_string(cells) + " indices below " +
                        std::to_string(n),
                    {s}};
        if (config.normalized_volume(s) == 0)
            return {Kind::degenerate_simplex, "simplex " + s.str() + " has zero volume", {s}};
    }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t.simplices()[i] == t.simplices()[i - 1])
            return {Kind::duplicate_simplex, "simplex " + t.simplices()[i].str() + " appears twice",
                    {t.simplices()[i]}};

    Integer total = 0;
    for (auto s : t)
        total += config.normalized_volume(s);
    Integer expected = hull_volume(config);
    if (total != expected)
        return {Kind::total_volume,
                "simplex volumes sum to " + to_string(total) + " but conv(A) has volume " + to_string(expected),
                {}};

    std::map<IndexSet, std::vector<std::pair<Simplex, int>>> faces;
    for (auto s : t)
        for (auto [f, v] : facets_of(s))
            faces[f].emplace_back(s, v);
    for (const auto& [f, owners] : faces) {
        if (owners.size() > 2)
            return {Kind::facet_pairing, "face " + f.str() + " is shared by more than two simplices",
                    {owners[0].first, owners[1].first, owners[2].first}};
        if (owners.size() == 2) {
            if (side_of(config, f, owners[0].second) * side_of(config, f, owners[1].second) >= 0)
                return {Kind::facet_pairing, "simplices on the same side of face " + f.str(),
                        {owners[0].first, owners[1].first}};
        } else if (!is_hull_facet(config, f)) {
            return {Kind::facet_pairing, "interior face " + f.str() + " belongs to a single simplex",
                    {owners[0].first}};
        }
    }
    return {};
}

} // namespace regflip

template <>
struct std::hash<regflip::Triangulation> {
    std::size_t operator()(const regflip::Triangulation& t) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto s : t)
            h ^= std::hash<std::uint64_t>{}(s.bits()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

#endif // REGFLIP_TRIANGULATION_HPP
