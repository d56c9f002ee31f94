#ifndef REGFLIP_POINT_CONFIG_HPP
#define REGFLIP_POINT_CONFIG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "exact_arith.hpp"
#include "index_set.hpp"

namespace regflip {

/** Exception thrown for malformed point input (duplicates, too few points). */
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/** Exception thrown when a point subset does not span the affine hull. */
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

using Point = std::vector<long long>;

/**
 * Corank-one subset J of a configuration together with its affine dependence.
 *
 * `lambda[k]` is the coefficient of point `indices[k]`. The dependence is
 * primitive and its first nonzero entry is positive.
 */
struct CorankOneConfig {
    std::vector<int> indices;
    std::vector<Integer> lambda;
    IndexSet plus;
    IndexSet zero;
    IndexSet minus;

    IndexSet support() const { return plus | minus; }

    const Integer& coefficient(int point) const {
        auto it = std::find(indices.begin(), indices.end(), point);
        if (it == indices.end())
            throw std::out_of_range("point not in corank-one configuration");
        return lambda[static_cast<std::size_t>(it - indices.begin())];
    }

    /// Reverses the orientation of the dependence.
    void negate() {
        for (auto& x : lambda)
            x = -x;
        std::swap(plus, minus);
    }
};

/**
 * Labeled integer points and their affine geometry.
 *
 * Points are expressed in d affine coordinates by projecting onto the first
 * ambient axes (in index order) that keep the homogenized rank. A projection
 * is injective on the affine hull, so all dependences are preserved exactly
 * and volumes change by one global positive factor. For full-dimensional
 * input no axis is dropped and volumes are lattice-normalized (|det|).
 */
class PointConfiguration {
public:
    explicit PointConfiguration(std::vector<Point> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw InputError("a point configuration needs at least 2 points");
        if (points_.size() > max_points)
            throw InputError("at most " + std::to_string(max_points) + " points are supported");
        ambient_dim_ = points_.front().size();
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i].size() != ambient_dim_)
                throw InputError("point " + std::to_string(i) + " has dimension " +
                                 std::to_string(points_[i].size()) + ", expected " +
                                 std::to_string(ambient_dim_));
        std::set<Point> seen;
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (!seen.insert(points_[i]).second)
                throw InputError("duplicate point " + std::to_string(i));

        const std::size_t n = points_.size();
        // greedily keep ambient axes that increase the homogenized rank
        std::vector<std::size_t> axes;
        std::size_t current_rank = 1;
        for (std::size_t axis = 0; axis < ambient_dim_; ++axis) {
            Matrix<Integer> m(axes.size() + 2, n);
            for (std::size_t j = 0; j < n; ++j) {
                m(0, j) = 1;
                for (std::size_t k = 0; k < axes.size(); ++k)
                    m(k + 1, j) = points_[j][axes[k]];
                m(axes.size() + 1, j) = points_[j][axis];
            }
            std::size_t r = rank(m);
            if (r > current_rank) {
                axes.push_back(axis);
                current_rank = r;
            }
        }
        axes_ = axes;
        dim_ = axes_.size();

        coords_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            coords_[j].reserve(dim_ + 1);
            coords_[j].push_back(1);
            for (auto axis : axes_)
                coords_[j].push_back(points_[j][axis]);
        }

        // first d+1 affinely independent points in input order
        std::vector<int> basis;
        for (std::size_t j = 0; j < n && basis.size() < dim_ + 1; ++j) {
            basis.push_back(static_cast<int>(j));
            if (rank(column_matrix(basis)) < basis.size())
                basis.pop_back();
        }
        affine_basis_ = basis;
    }

    std::size_t size() const { return points_.size(); }
    /// Affine dimension d.
    std::size_t dim() const { return dim_; }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    /// Homogenized affine coordinates (1, x_1, ..., x_d) of point i.
    const std::vector<Integer>& coords(std::size_t i) const { return coords_[i]; }
    /// Ambient axes used as affine coordinates.
    const std::vector<std::size_t>& axes() const { return axes_; }
    /// First d+1 affinely independent points in input order.
    const std::vector<int>& affine_basis() const { return affine_basis_; }
    IndexSet all() const { return IndexSet::range(static_cast<int>(size())); }

    /// (d+1) x |cols| matrix whose columns are the homogenized points.
    Matrix<Integer> column_matrix(const std::vector<int>& cols) const {
        Matrix<Integer> m(dim_ + 1, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r <= dim_; ++r)
                m(r, c) = coords_[static_cast<std::size_t>(cols[c])][r];
        return m;
    }

    /// Signed determinant of the homogenized points in the given order.
    Integer oriented_volume(const std::vector<int>& ordered) const {
        if (ordered.size() != dim_ + 1)
            throw DimensionError("expected " + std::to_string(dim_ + 1) + " points, got " +
                                 std::to_string(ordered.size()));
        return determinant(column_matrix(ordered));
    }

    int orientation(const std::vector<int>& ordered) const { return oriented_volume(ordered).sign(); }

    Integer normalized_volume(IndexSet s) const {
        if (static_cast<std::size_t>(s.size()) != dim_ + 1)
            throw DimensionError("simplex needs " + std::to_string(dim_ + 1) + " points, got " +
                                 std::to_string(s.size()));
        return abs(oriented_volume(s.to_vector()));
    }

    std::size_t rank_of(IndexSet s) const { return rank(column_matrix(s.to_vector())); }

    bool spans(IndexSet s) const { return rank_of(s) == dim_ + 1; }

    /// The unique affine dependence of a corank-one subset of size d+2.
    CorankOneConfig corank_one(IndexSet j) const {
        if (static_cast<std::size_t>(j.size()) != dim_ + 2)
            throw DimensionError("corank-one set needs " + std::to_string(dim_ + 2) + " points, got " +
                                 std::to_string(j.size()));
        CorankOneConfig c;
        c.indices = j.to_vector();
        auto m = column_matrix(c.indices);
        if (rank(m) != dim_ + 1)
            throw DegenerateError("points " + j.str() + " do not span the affine hull");
        c.lambda = kernel_vector(m);
        for (std::size_t k = 0; k < c.indices.size(); ++k) {
            int s = c.lambda[k].sign();
            if (s > 0)
                c.plus.insert(c.indices[k]);
            else if (s < 0)
                c.minus.insert(c.indices[k]);
            else
                c.zero.insert(c.indices[k]);
        }
        return c;
    }

    /// Dependence of an arbitrary point set with one-dimensional dependence space.
    std::vector<Integer> dependence(IndexSet j) const { return kernel_vector(column_matrix(j.to_vector())); }

private:
    std::vector<Point> points_;
    std::size_t ambient_dim_ = 0;
    std::size_t dim_ = 0;
    std::vector<std::size_t> axes_;
    std::vector<std::vector<Integer>> coords_;
    std::vector<int> affine_basis_;
};

/**
 * Per-run memo of simplex volumes and circuit signs.
 *
 * Not thread-safe; each enumeration owns one.
 */
class GeometryMemo {
public:
    explicit GeometryMemo(const PointConfiguration& config) : config_(&config) {}

    const PointConfiguration& config() const { return *config_; }

    const Integer& volume(IndexSet s) {
        auto it = volumes_.find(s.bits());
        if (it != volumes_.end())
            return it->second;
        return volumes_.emplace(s.bits(), config_->normalized_volume(s)).first->second;
    }

    /// Sign partition (plus, minus) of the dependence of a corank-one set J.
    std::pair<IndexSet, IndexSet> circuit(IndexSet j) {
        auto it = circuits_.find(j.bits());
        if (it != circuits_.end())
            return it->second;
        auto lambda = config_->dependence(j);
        IndexSet plus, minus;
        std::size_t k = 0;
        for (int idx : j) {
            int s = lambda[k++].sign();
            if (s > 0)
                plus.insert(idx);
            else if (s < 0)
                minus.insert(idx);
        }
        return circuits_.emplace(j.bits(), std::make_pair(plus, minus)).first->second;
    }

    /// Entry p is the circuit of s + p oriented with p on the plus side, for
    /// every point p outside the simplex s.
    const std::vector<std::pair<IndexSet, IndexSet>>& circuits_through(IndexSet s) {
        auto it = through_.find(s.bits());
        if (it != through_.end())
            return it->second;
        std::vector<std::pair<IndexSet, IndexSet>> row(config_->size());
        for (int p = 0; p < static_cast<int>(row.size()); ++p) {
            if (s.contains(p))
                continue;
            auto c = circuit(s.with(p));
            if (!c.first.contains(p))
                std::swap(c.first, c.second);
            row[static_cast<std::size_t>(p)] = c;
        }
        return through_.emplace(s.bits(), std::move(row)).first->second;
    }

    std::size_t cached_volumes() const { return volumes_.size(); }
    std::size_t cached_circuits() const { return circuits_.size(); }

private:
    const PointConfiguration* config_;
    std::unordered_map<std::uint64_t, Integer> volumes_;
    std::unordered_map<std::uint64_t, std::pair<IndexSet, IndexSet>> circuits_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<IndexSet, IndexSet>>> through_;
};

} // namespace regflip

#endif // REGFLIP_POINT_CONFIG_HPP
