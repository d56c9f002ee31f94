#ifndef REGFLIP_FLIP_HPP
#define REGFLIP_FLIP_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <cstdint>
#include <utility>
#include <vector>

#include "exact_arith.hpp"
#include "index_set.hpp"
#include "point_config.hpp"
#include "triangulation.hpp"

namespace regflip {

/** Exception thrown when a flip is applied to a triangulation it does not belong to. */
class StaleFlipError : public std::runtime_error {
public:
    explicit StaleFlipError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A flip supported on the circuit (plus, minus).
 *
 * The current triangulation contains the cells (Z - z) + l for z in `plus` and
 * every link cell l; the flip replaces them by (Z - z) + l for z in `minus`.
 * With a single link cell, Z + l is a corank-one configuration with J0 = l.
 */
struct Flip {
    IndexSet plus;
    IndexSet minus;
    std::vector<IndexSet> link;
    std::vector<Simplex> removed;
    std::vector<Simplex> inserted;
    GkzVector delta;

    IndexSet circuit() const { return plus | minus; }

    /// Union of the link cells (J0 of the corank-one configurations).
    IndexSet zero() const {
        IndexSet z;
        for (auto l : link)
            z = z | l;
        return z;
    }

    Flip reversed() const {
        Flip r;
        r.plus = minus;
        r.minus = plus;
        r.link = link;
        r.removed = inserted;
        r.inserted = removed;
        r.delta.reserve(delta.size());
        for (const auto& x : delta)
            r.delta.push_back(-x);
        return r;
    }

    /// `J+|J0|J-` followed by the link cells when there is more than one.
    std::string circuit_str() const {
        std::string s = plus.str() + "|" + zero().str() + "|" + minus.str();
        if (link.size() > 1) {
            s += " link {";
            for (std::size_t i = 0; i < link.size(); ++i) {
                if (i)
                    s += ',';
                s += link[i].str();
            }
            s += '}';
        }
        return s;
    }
};

/**
 * gkz(f): +vol((Z - j) + l) summed over link cells for j in plus, the negated
 * sum for j in minus, zero elsewhere.
 */
inline GkzVector flip_gkz(GeometryMemo& memo, const Flip& f) {
    GkzVector delta(memo.config().size(), Integer(0));
    const IndexSet z = f.circuit();
    for (int j : z) {
        Integer sum = 0;
        for (auto l : f.link)
            sum += memo.volume((z.without(j)) | l);
        delta[static_cast<std::size_t>(j)] = f.plus.contains(j) ? sum : Integer(-sum);
    }
    return delta;
}

inline GkzVector flip_gkz(const PointConfiguration& config, const Flip& f) {
    GeometryMemo memo(config);
    return flip_gkz(memo, f);
}

namespace detail {

// Link of `face` in t, sorted, written to `out`; empty when face is not a face of t.
inline void link_of(const Triangulation& t, IndexSet face, std::vector<IndexSet>& out) {
    out.clear();
    for (auto s : t)
        if (s.contains(face))
            out.push_back(s - face);
    std::sort(out.begin(), out.end());
}

// Open-addressing set of nonzero 64-bit key pairs with a fixed capacity.
class SeenPairs {
public:
    explicit SeenPairs(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < 2 * expected)
            cap *= 2;
        slots_.assign(cap, {0, 0});
    }

    // false if (a, b) was already present; a must be nonzero
    bool insert(std::uint64_t a, std::uint64_t b) {
        const std::size_t mask = slots_.size() - 1;
        std::size_t h = static_cast<std::size_t>((a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
        for (std::size_t i = (h >> 17) & mask;; i = (i + 1) & mask) {
            auto& slot = slots_[i];
            if (slot.first == 0) {
                slot = {a, b};
                return true;
            }
            if (slot.first == a && slot.second == b)
                return false;
        }
    }

private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> slots_;
};

} // namespace detail

/**
 * All flips of a triangulation.
 *
 * Candidates are J = S + p for every simplex S and point p outside S. The
 * dependence of J is oriented so that p lies on the plus side (S contains
 * Z - p, which rules out the other orientation); a flip on the circuit exists when
 * every cell Z - z (z in plus) is a face of t and all of them have the same
 * link. Flips are listed in discovery order.
 */
inline std::vector<Flip> find_flips(GeometryMemo& memo, const Triangulation& t) {
    const auto& config = memo.config();
    const int n = static_cast<int>(config.size());
    detail::SeenPairs seen_circuits(t.size() * (config.size() - config.dim() - 1));
    std::vector<Flip> flips;
    std::vector<IndexSet> link, other;
    for (auto s : t) {
        const auto& through = memo.circuits_through(s);
        for (int p = 0; p < n; ++p) {
            if (s.contains(p))
                continue;
            auto [plus, minus] = through[static_cast<std::size_t>(p)];
            if (!seen_circuits.insert(plus.bits(), minus.bits()))
                continue;
            const IndexSet z = plus | minus;

            // s contains Z - p, so s - (Z - p) must be in every link
            const IndexSet l0 = s - z.without(p);
            bool ok = true, first = true;
            for (int zp : plus)
                if (zp != p && !t.contains(z.without(zp) | l0)) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            for (int zp : plus) {
                detail::link_of(t, z.without(zp), first ? link : other);
                if (first ? link.empty() : other != link) {
                    ok = false;
                    break;
                }
                first = false;
            }
            if (!ok)
                continue;

            Flip f;
            f.plus = plus;
            f.minus = minus;
            f.link = link;
            f.removed.reserve(static_cast<std::size_t>(plus.size()) * link.size());
            f.inserted.reserve(static_cast<std::size_t>(minus.size()) * link.size());
            for (int zp : plus)
                for (auto l : f.link)
                    f.removed.push_back(z.without(zp) | l);
            for (int zm : minus)
                for (auto l : f.link)
                    f.inserted.push_back(z.without(zm) | l);
            std::sort(f.removed.begin(), f.removed.end());
            std::sort(f.inserted.begin(), f.inserted.end());
            f.delta = flip_gkz(memo, f);
            flips.push_back(std::move(f));
        }
    }
    return flips;
}

inline std::vector<Flip> find_flips(const PointConfiguration& config, const Triangulation& t) {
    GeometryMemo memo(config);
    return find_flips(memo, t);
}

/// (t - removed) + inserted. Throws StaleFlipError if t lacks a removed cell.
inline Triangulation apply_flip(const Triangulation& t, const Flip& f) {
    // t and both cell lists are sorted, so one merge pass suffices
    std::vector<Simplex> cells;
    cells.reserve(t.size() - f.removed.size() + f.inserted.size());
    auto r = f.removed.begin();
    auto in = f.inserted.begin();
    for (auto s : t) {
        if (r != f.removed.end() && *r == s) {
            ++r;
            continue;
        }
        while (in != f.inserted.end() && *in < s)
            cells.push_back(*in++);
        cells.push_back(s);
    }
    if (r != f.removed.end())
        throw StaleFlipError("flip on circuit " + f.circuit_str() + " does not apply to " + t.str());
    cells.insert(cells.end(), in, f.inserted.end());
    return Triangulation::from_sorted(std::move(cells));
}

} // namespace regflip

#endif // REGFLIP_FLIP_HPP
