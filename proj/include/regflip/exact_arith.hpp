#ifndef REGFLIP_EXACT_ARITH_HPP
#define REGFLIP_EXACT_ARITH_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace regflip {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/** Exception thrown when operands have incompatible shapes. */
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/** Exception thrown by kernel_vector when the matrix has trivial kernel. */
class NoDependenceError : public std::runtime_error {
public:
    explicit NoDependenceError(const std::string& what) : std::runtime_error(what) {}
};

/** Exception thrown by kernel_vector when the kernel has dimension >= 2. */
class NotCorankOneError : public std::runtime_error {
public:
    explicit NotCorankOneError(const std::string& what) : std::runtime_error(what) {}
};

/** Exception thrown when an internal consistency check fails. */
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    return Rational(num, den);
}

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

template <class T>
std::string to_string(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

/**
 * Dense row-major matrix over an exact scalar type.
 */
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw DimensionError("ragged matrix initializer");
            for (const auto& x : row)
                data_.push_back(x);
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline Integer exact_div(const Integer& a, const Integer& b) { return a / b; }
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

// Fraction-free (Bareiss) forward elimination in place. Returns the rank and
// the parity of row swaps. After the call the last nonzero pivot equals the
// determinant of the leading square block (up to the swap sign).
template <class T>
std::size_t bareiss_eliminate(Matrix<T>& m, bool& odd_swaps, std::vector<std::size_t>* pivot_cols = nullptr) {
    odd_swaps = false;
    std::size_t rank = 0;
    T prev_pivot = 1;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != rank) {
            m.swap_rows(pivot, rank);
            odd_swaps = !odd_swaps;
        }
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            for (std::size_t c = col + 1; c < m.cols(); ++c)
                m(r, c) = exact_div(m(rank, col) * m(r, c) - m(r, col) * m(rank, c), prev_pivot);
            m(r, col) = 0;
        }
        if (pivot_cols)
            pivot_cols->push_back(col);
        prev_pivot = m(rank, col);
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Exact determinant by Bareiss elimination; integer input stays integral.
template <class T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols())
        throw DimensionError("determinant of non-square matrix");
    if (m.rows() == 0)
        return T(1);
    bool odd = false;
    std::size_t rank = detail::bareiss_eliminate(m, odd);
    if (rank < m.rows())
        return T(0);
    T det = m(m.rows() - 1, m.cols() - 1);
    return odd ? T(-det) : det;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    bool odd = false;
    return detail::bareiss_eliminate(m, odd);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd(a, b) * b);
}

/// The value of x if |x| < 2^31.
inline std::optional<std::int64_t> small_value(const Integer& x) {
    const auto& b = x.backend();
    if (b.size() != 1 || b.limbs()[0] >= (std::uint64_t{1} << 31))
        return std::nullopt;
    auto m = static_cast<std::int64_t>(b.limbs()[0]);
    return b.sign() ? -m : m;
}

/// Divides by the gcd of the entries. The zero vector is left unchanged.
inline void make_primitive(std::vector<Integer>& v) {
    {
        std::int64_t g = 0;
        bool fast = true;
        for (const auto& x : v) {
            auto s = small_value(x);
            if (!s) {
                fast = false;
                break;
            }
            g = std::gcd(g, *s);
        }
        if (fast) {
            if (g > 1)
                for (auto& x : v)
                    x = *small_value(x) / g;
            return;
        }
    }
    Integer g = 0;
    for (const auto& x : v) {
        if (x != 0)
            g = gcd(g, abs(x));
        if (g == 1)
            return;
    }
    if (g > 1)
        for (auto& x : v)
            x /= g;
}

/**
 * Primitive integer vector spanning the one-dimensional kernel of `m`.
 *
 * The vector has gcd 1 and its first nonzero entry is positive. Throws
 * NoDependenceError for trivial kernels and NotCorankOneError when the kernel
 * has dimension two or more.
 */
template <class T>
std::vector<Integer> kernel_vector(const Matrix<T>& m) {
    Matrix<Rational> a(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            a(r, c) = Rational(m(r, c));

    // reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(p, row);
        Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c)
            a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0)
                continue;
            Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }

    std::size_t nullity = a.cols() - pivots.size();
    if (nullity == 0)
        throw NoDependenceError("matrix has trivial kernel");
    if (nullity > 1)
        throw NotCorankOneError("kernel dimension " + std::to_string(nullity) + " exceeds one");

    std::size_t free_col = 0;
    for (std::size_t k = 0, c = 0; c < a.cols(); ++c) {
        if (k < pivots.size() && pivots[k] == c) {
            ++k;
            continue;
        }
        free_col = c;
        break;
    }

    std::vector<Rational> x(a.cols(), Rational(0));
    x[free_col] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = -a(k, free_col);

    Integer den = 1;
    for (const auto& q : x)
        den = lcm(den, denominator(q));
    std::vector<Integer> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = numerator(x[i]) * (den / denominator(x[i]));
    make_primitive(v);
    for (const auto& e : v) {
        if (e == 0)
            continue;
        if (e < 0)
            for (auto& y : v)
                y = -y;
        break;
    }
    return v;
}

} // namespace regflip

#endif // REGFLIP_EXACT_ARITH_HPP
