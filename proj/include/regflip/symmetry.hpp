#ifndef REGFLIP_SYMMETRY_HPP
#define REGFLIP_SYMMETRY_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact_arith.hpp"
#include "point_config.hpp"
#include "search.hpp"
#include "triangulation.hpp"

namespace regflip {

using Permutation = std::vector<int>;

/** Exception thrown for invalid permutations or non-symmetries. */
class SymmetryError : public std::runtime_error {
public:
    explicit SymmetryError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_permutation_of(const Permutation& p, std::size_t n) {
    if (p.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= n || hit[static_cast<std::size_t>(x)])
            return false;
        hit[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

/**
 * True if i -> p[i] extends to an affine automorphism of the configuration:
 * every point has the same affine coordinates with respect to the image of the
 * affine basis as it has with respect to the basis itself.
 */
inline bool is_affine_symmetry(const PointConfiguration& config, const Permutation& p) {
    const auto& basis = config.affine_basis();
    std::vector<int> image;
    for (int b : basis)
        image.push_back(p[static_cast<std::size_t>(b)]);
    auto src = config.column_matrix(basis);
    auto dst = config.column_matrix(image);
    if (determinant(dst) == 0)
        return false;
    // coordinates of every point w.r.t. the basis (Cramer's rule), then compare images
    const std::size_t k = basis.size();
    Matrix<Rational> a(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
            a(r, c) = Rational(src(r, c));
    const Rational det = determinant(a);
    for (std::size_t i = 0; i < config.size(); ++i) {
        std::vector<Rational> coef(k);
        for (std::size_t c = 0; c < k; ++c) {
            auto ac = a;
            for (std::size_t r = 0; r < k; ++r)
                ac(r, c) = Rational(config.coords(i)[r]);
            coef[c] = determinant(ac) / det;
        }
        const auto& target = config.coords(static_cast<std::size_t>(p[i]));
        for (std::size_t r = 0; r < k; ++r) {
            Rational sum = 0;
            for (std::size_t c = 0; c < k; ++c)
                sum += coef[c] * Rational(dst(r, c));
            if (sum != Rational(target[r]))
                return false;
        }
    }
    return true;
}

/**
 * Finite permutation group acting on point labels, fully expanded.
 */
class SymmetryGroup {
public:
    /// The trivial group on n points.
    explicit SymmetryGroup(std::size_t n) {
        Permutation id(n);
        for (std::size_t i = 0; i < n; ++i)
            id[i] = static_cast<int>(i);
        elements_.push_back(std::move(id));
    }

    SymmetryGroup(std::vector<Permutation> generators, std::vector<Permutation> elements)
        : generators_(std::move(generators)), elements_(std::move(elements)) {}

    const std::vector<Permutation>& generators() const { return generators_; }
    const std::vector<Permutation>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }

private:
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
};

/// Closure of the generators under composition; validates each generator.
inline SymmetryGroup expand_group(const PointConfiguration& config, const std::vector<Permutation>& generators,
                                  std::size_t cap = 1000000) {
    const std::size_t n = config.size();
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (!is_permutation_of(generators[g], n))
            throw SymmetryError("generator " + std::to_string(g) + " is not a permutation of 0.." +
                                std::to_string(n - 1));
        if (!is_affine_symmetry(config, generators[g]))
            throw SymmetryError("generator " + std::to_string(g) + " is not a symmetry of the configuration");
    }
    SymmetryGroup trivial(n);
    std::set<Permutation> seen{trivial.elements().front()};
    std::vector<Permutation> elements{trivial.elements().front()};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& g : generators) {
            Permutation next(n);
            for (std::size_t i = 0; i < n; ++i)
                next[i] = g[static_cast<std::size_t>(elements[head][i])];
            if (seen.insert(next).second) {
                elements.push_back(std::move(next));
                if (elements.size() > cap)
                    throw ResourceError("symmetry group order exceeds " + std::to_string(cap));
            }
        }
    }
    return SymmetryGroup(generators, std::move(elements));
}

inline Triangulation relabel(const Triangulation& t, const Permutation& p) {
    std::vector<Simplex> cells;
    cells.reserve(t.size());
    for (auto s : t) {
        IndexSet image;
        for (int i : s)
            image.insert(p[static_cast<std::size_t>(i)]);
        cells.push_back(image);
    }
    return Triangulation(std::move(cells));
}

/// Smallest image of t under the group (lexicographic order on simplex lists).
inline Triangulation canonical_form(const Triangulation& t, const SymmetryGroup& group) {
    Triangulation best = t;
    for (const auto& g : group.elements()) {
        auto img = relabel(t, g);
        if (img < best)
            best = std::move(img);
    }
    return best;
}

/// True if no group image of t is smaller than t; stops at the first smaller image.
inline bool is_canonical(const Triangulation& t, const SymmetryGroup& group) {
    std::vector<Simplex> cells(t.size());
    for (const auto& g : group.elements()) {
        for (std::size_t k = 0; k < t.size(); ++k) {
            IndexSet image;
            for (int i : t.simplices()[k])
                image.insert(g[static_cast<std::size_t>(i)]);
            cells[k] = image;
        }
        std::sort(cells.begin(), cells.end());
        if (std::lexicographical_compare(cells.begin(), cells.end(), t.begin(), t.end()))
            return false;
    }
    return true;
}

/// Number of distinct canonical forms in a sequence of triangulations.
template <class Range>
std::size_t orbit_count(const Range& triangulations, const SymmetryGroup& group, std::size_t budget = 0) {
    std::set<Triangulation> forms;
    for (const Triangulation& t : triangulations) {
        forms.insert(canonical_form(t, group));
        if (budget && forms.size() > budget)
            throw ResourceError("orbit set exceeds " + std::to_string(budget) + " entries");
    }
    return forms.size();
}

} // namespace regflip

#endif // REGFLIP_SYMMETRY_HPP
