#ifndef REGFLIP_LP_HPP
#define REGFLIP_LP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "exact_arith.hpp"

namespace regflip {

using RationalVector = std::vector<Rational>;

/**
 * Result of an exact feasibility problem.
 *
 * When feasible, `witness` satisfies the system; otherwise `certificate` is a
 * Farkas vector refuting it (its meaning depends on the producing function).
 */
struct Feasibility {
    bool feasible = false;
    RationalVector witness;
    RationalVector certificate;

    explicit operator bool() const { return feasible; }
};

namespace detail {

// Phase-one simplex on {A x = b, x >= 0} with Bland's rule. `columns[j]` is
// column j of A. Returns feasibility with a basic witness, or the Farkas
// vector y with y^T A >= 0 and y^T b < 0.
inline Feasibility phase_one(const std::vector<RationalVector>& columns, const RationalVector& b) {
    const std::size_t m = b.size();
    const std::size_t k = columns.size();
    const std::size_t width = k + m + 1; // structural, artificial, rhs
    const std::size_t rhs = k + m;

    std::vector<RationalVector> tab(m, RationalVector(width, Rational(0)));
    std::vector<int> flipped(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        flipped[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j)
            tab[i][j] = flipped[i] < 0 ? Rational(-columns[j][i]) : columns[j][i];
        tab[i][k + i] = 1;
        tab[i][rhs] = flipped[i] < 0 ? Rational(-b[i]) : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = k + i;

    // reduced costs for minimizing the sum of artificials
    RationalVector cost(width, Rational(0));
    for (std::size_t j = 0; j < k + m; ++j)
        cost[j] = j < k ? Rational(0) : Rational(1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < width; ++j)
            cost[j] -= tab[i][j];

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < k + m; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0)
                continue;
            Rational ratio = tab[i][rhs] / tab[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            throw InvariantError("phase-one objective is bounded below; unbounded ray impossible");
        Rational piv = tab[leave][enter];
        for (auto& x : tab[leave])
            x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0)
                continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j < width; ++j)
                tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter] != 0) {
            Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j)
                cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Feasibility out;
    // cost[rhs] holds minus the objective value
    if (cost[rhs] == 0) {
        out.feasible = true;
        out.witness.assign(k, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < k)
                out.witness[basis[i]] = tab[i][rhs];
        return out;
    }
    // duals of the sign-normalized system: y'_i = 1 - reduced cost of artificial i
    out.certificate.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational y = 1 - cost[k + i];
        out.certificate[i] = flipped[i] < 0 ? y : Rational(-y);
    }
    return out;
}

inline void check_lengths(const std::vector<RationalVector>& vs, std::size_t len, const char* what) {
    for (const auto& v : vs)
        if (v.size() != len)
            throw DimensionError(std::string(what) + ": expected length " + std::to_string(len) + ", got " +
                                 std::to_string(v.size()));
}

} // namespace detail

/// Checks a nonneg_combination answer in exact arithmetic.
inline bool verify_combination(const std::vector<RationalVector>& generators, const RationalVector& target,
                               const Feasibility& f) {
    const std::size_t m = target.size();
    if (f.feasible) {
        if (f.witness.size() != generators.size())
            return false;
        RationalVector sum(m, Rational(0));
        for (std::size_t j = 0; j < generators.size(); ++j) {
            if (f.witness[j] < 0)
                return false;
            for (std::size_t i = 0; i < m; ++i)
                sum[i] += f.witness[j] * generators[j][i];
        }
        return sum == target;
    }
    if (f.certificate.size() != m)
        return false;
    for (const auto& g : generators) {
        Rational dot = 0;
        for (std::size_t i = 0; i < m; ++i)
            dot += f.certificate[i] * g[i];
        if (dot < 0)
            return false;
    }
    Rational dot = 0;
    for (std::size_t i = 0; i < m; ++i)
        dot += f.certificate[i] * target[i];
    return dot < 0;
}

/**
 * Decides whether `target` lies in the cone spanned by `generators`.
 *
 * Feasible answers carry x >= 0 with sum x_j g_j = target; infeasible ones a
 * vector y with y.g_j >= 0 for all j and y.target < 0.
 */
inline Feasibility nonneg_combination(const std::vector<RationalVector>& generators, const RationalVector& target) {
    detail::check_lengths(generators, target.size(), "generator");
    auto f = detail::phase_one(generators, target);
    if (!verify_combination(generators, target, f))
        throw InvariantError("simplex result failed exact verification");
    return f;
}

/// Checks a strict_homogeneous answer in exact arithmetic.
inline bool verify_strict(const std::vector<RationalVector>& rows, std::size_t dim, const Feasibility& f) {
    if (f.feasible) {
        if (f.witness.size() != dim)
            return false;
        for (const auto& r : rows) {
            Rational dot = 0;
            for (std::size_t i = 0; i < dim; ++i)
                dot += r[i] * f.witness[i];
            if (dot <= 0)
                return false;
        }
        return true;
    }
    if (f.certificate.size() != rows.size())
        return false;
    bool nonzero = false;
    RationalVector sum(dim, Rational(0));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (f.certificate[k] < 0)
            return false;
        nonzero = nonzero || f.certificate[k] != 0;
        for (std::size_t i = 0; i < dim; ++i)
            sum[i] += f.certificate[k] * rows[k][i];
    }
    for (const auto& x : sum)
        if (x != 0)
            return false;
    return nonzero;
}

/**
 * Finds h with r.h > 0 for every row, or a certificate z >= 0, z != 0 with
 * sum z_k r_k = 0.
 *
 * Only valid for homogeneous systems: strict feasibility is decided as
 * feasibility of r.h >= 1, written as R h+ - R h- - s = 1 with h+, h-, s >= 0.
 */
inline Feasibility strict_homogeneous(const std::vector<RationalVector>& rows, std::size_t dim) {
    detail::check_lengths(rows, dim, "row");
    Feasibility out;
    if (rows.empty()) {
        out.feasible = true;
        out.witness.assign(dim, Rational(0));
        return out;
    }
    const std::size_t m = rows.size();
    std::vector<RationalVector> columns;
    columns.reserve(2 * dim + m);
    for (int s : {1, -1})
        for (std::size_t i = 0; i < dim; ++i) {
            RationalVector col(m);
            for (std::size_t k = 0; k < m; ++k)
                col[k] = s > 0 ? rows[k][i] : Rational(-rows[k][i]);
            columns.push_back(std::move(col));
        }
    for (std::size_t k = 0; k < m; ++k) {
        RationalVector col(m, Rational(0));
        col[k] = -1;
        columns.push_back(std::move(col));
    }
    auto f = detail::phase_one(columns, RationalVector(m, Rational(1)));
    if (f.feasible) {
        out.feasible = true;
        out.witness.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
            out.witness[i] = f.witness[i] - f.witness[dim + i];
    } else {
        out.certificate.resize(m);
        for (std::size_t k = 0; k < m; ++k)
            out.certificate[k] = -f.certificate[k];
    }
    if (!verify_strict(rows, dim, out))
        throw InvariantError("strict system result failed exact verification");
    return out;
}

} // namespace regflip

#endif // REGFLIP_LP_HPP
