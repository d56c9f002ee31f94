// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's LP, screening or flip code.
#ifndef REGFLIP_TESTS_ORACLES_HPP
#define REGFLIP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regflip/point_config.hpp"
#include "regflip/triangulation.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;
using IVec = std::vector<Int>;

namespace detail {

using Small = boost::multiprecision::checked_int128_t;

// Fraction-free Gauss-Jordan on [cols | b]. Returns 1 when the columns are
// independent and b = sum x_k cols[k] with every x_k >= 0, 0 otherwise; -1
// when the columns are dependent. Throws std::overflow_error if 128 bits do
// not suffice.
template <class T>
int nonneg_solution(const std::vector<const IVec*>& cols, const IVec& b) {
    const std::size_t m = b.size(), k = cols.size();
    std::vector<std::vector<T>> a(m, std::vector<T>(k + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < k; ++c)
            a[r][c] = T((*cols[c])[r]);
        a[r][k] = T(b[r]);
    }
    T prev = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < m && a[p][c] == 0)
            ++p;
        if (p == m)
            return -1;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c)
                continue;
            for (std::size_t j = 0; j <= k; ++j)
                if (j != c)
                    a[r][j] = (a[c][c] * a[r][j] - a[r][c] * a[c][j]) / prev;
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    // a[i][i] = D for every pivot row and a[i][k] = D x_i
    for (std::size_t r = k; r < m; ++r)
        if (a[r][k] != 0)
            return 0;
    for (std::size_t i = 0; i < k; ++i)
        if (a[i][k] != 0 && (a[i][k] > 0) != (a[i][i] > 0))
            return 0;
    return 1;
}

} // namespace detail

// Caratheodory: t lies in cone(gens) iff it is a nonnegative combination of a
// linearly independent subset. Exponential, fine for a dozen generators.
inline bool in_cone(const std::vector<IVec>& gens, const IVec& t) {
    if (std::all_of(t.begin(), t.end(), [](const Int& x) { return x == 0; }))
        return true;
    const std::size_t k = gens.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<const IVec*> sub;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1)
                sub.push_back(&gens[i]);
        int r;
        try {
            r = detail::nonneg_solution<detail::Small>(sub, t);
        } catch (const std::overflow_error&) {
            r = detail::nonneg_solution<Int>(sub, t);
        }
        if (r == 1)
            return true;
    }
    return false;
}

inline std::vector<int> extremal(const std::vector<IVec>& vs) {
    std::vector<int> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<IVec> rest;
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != i)
                rest.push_back(vs[j]);
        if (!in_cone(rest, vs[i]))
            out.push_back(static_cast<int>(i));
    }
    return out;
}

// Random pointed cone: r sparse generators with f.v > 0 for a random positive
// functional f, plus positive combinations of them, shuffled and made
// primitive. Duplicates are dropped so no two vectors are parallel.
inline std::vector<IVec> random_sparse_system(std::mt19937_64& rng, std::size_t dim, std::size_t r, std::size_t extra) {
    std::uniform_int_distribution<int> coef(-3, 3), pick(0, 2), mult(1, 3);
    IVec f(dim);
    for (auto& x : f)
        x = mult(rng);
    std::vector<IVec> base;
    std::set<IVec> seen;
    while (base.size() < r) {
        IVec v(dim, 0);
        for (std::size_t c = 0; c < dim; ++c)
            if (pick(rng) == 0)
                v[c] = coef(rng);
        Int dot = 0;
        for (std::size_t c = 0; c < dim; ++c)
            dot += f[c] * v[c];
        if (dot <= 0)
            continue;
        Int g = 0;
        for (const auto& x : v)
            g = gcd(g, x);
        for (auto& x : v)
            x /= g;
        if (seen.insert(v).second)
            base.push_back(v);
    }
    std::vector<IVec> all = base;
    std::uniform_int_distribution<std::size_t> which(0, r - 1);
    for (std::size_t e = 0; e < extra; ++e) {
        IVec w(dim, 0);
        std::size_t terms = 2 + which(rng) % 2;
        for (std::size_t t = 0; t < terms; ++t) {
            const auto& b = base[which(rng)];
            int m = mult(rng);
            for (std::size_t c = 0; c < dim; ++c)
                w[c] += m * b[c];
        }
        Int g = 0;
        for (const auto& x : w)
            g = gcd(g, x);
        for (auto& x : w)
            x /= g;
        if (seen.insert(w).second)
            all.push_back(w);
    }
    std::shuffle(all.begin(), all.end(), rng);
    return all;
}

// Lower hull of the lifted points (i, h_i) with generic heights: every
// (d+1)-subset whose lifted hyperplane has all other points strictly above.
// Points never used as vertices are absent from the result.
inline regflip::Triangulation lower_hull(const regflip::PointConfiguration& config, const std::vector<Int>& h) {
    const int n = static_cast<int>(config.size());
    const int k = static_cast<int>(config.dim()) + 1;
    std::vector<regflip::Simplex> cells;
    std::vector<int> pick(static_cast<std::size_t>(k));
    // lifted orientation: sign of det[[coords_i; h_i]] relative to det[coords]
    auto lifted = [&](const std::vector<int>& idx, int q) {
        std::vector<std::vector<Q>> m;
        auto all = idx;
        all.push_back(q);
        for (int i : all) {
            std::vector<Q> row;
            for (const auto& x : config.coords(static_cast<std::size_t>(i)))
                row.emplace_back(x);
            row.emplace_back(h[static_cast<std::size_t>(i)]);
            m.push_back(std::move(row));
        }
        // determinant by elimination
        const std::size_t s = m.size();
        Q det = 1;
        for (std::size_t c = 0; c < s; ++c) {
            std::size_t p = c;
            while (p < s && m[p][c] == 0)
                ++p;
            if (p == s)
                return Q(0);
            if (p != c) {
                std::swap(m[p], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (std::size_t r = c + 1; r < s; ++r) {
                Q f = m[r][c] / m[c][c];
                for (std::size_t cc = c; cc < s; ++cc)
                    m[r][cc] -= f * m[c][cc];
            }
        }
        return det;
    };
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            regflip::IndexSet s(pick.begin(), pick.end());
            if (config.normalized_volume(s) == 0)
                return;
            auto ref = config.orientation(pick);
            for (int q = 0; q < n; ++q) {
                if (s.contains(q))
                    continue;
                // q above the lifted facet: the lifted (d+2)-determinant has the
                // sign of the unlifted orientation
                Q d = lifted(pick, q);
                if (d == 0 || (d > 0 ? 1 : -1) != ref)
                    return;
            }
            cells.push_back(s);
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return regflip::Triangulation(std::move(cells));
}

// True if the heights induce t: every cell's lifted hyperplane lies strictly
// below every other lifted point.
inline bool induces(const regflip::PointConfiguration& config, const std::vector<Q>& heights,
                    const regflip::Triangulation& t) {
    Int den = 1;
    for (const auto& q : heights)
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
    std::vector<Int> h;
    for (const auto& q : heights)
        h.push_back(boost::multiprecision::numerator(q) * (den / boost::multiprecision::denominator(q)));
    // a strictly lower cell set equal to t means t is the regular subdivision
    return lower_hull(config, h) == t;
}

} // namespace oracle

#endif // REGFLIP_TESTS_ORACLES_HPP
