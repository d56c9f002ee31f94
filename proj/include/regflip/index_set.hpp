#ifndef REGFLIP_INDEX_SET_HPP
#define REGFLIP_INDEX_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace regflip {

/// Maximum number of points in a configuration (index sets are 64-bit masks).
inline constexpr std::size_t max_points = 64;

/**
 * Set of point indices in [0, 64), stored as a bit mask.
 *
 * Ordering is lexicographic on the ascending index lists, which for sets of
 * equal size is decided by the smallest element of the symmetric difference.
 */
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}
    IndexSet(std::initializer_list<int> idx) {
        for (int i : idx)
            insert(i);
    }
    template <class It>
    IndexSet(It first, It last) {
        for (; first != last; ++first)
            insert(static_cast<int>(*first));
    }

    static constexpr IndexSet single(int i) { return IndexSet(std::uint64_t{1} << i); }
    static constexpr IndexSet range(int n) {
        return IndexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
    constexpr bool contains(IndexSet o) const { return (bits_ & o.bits_) == o.bits_; }
    constexpr int min() const { return std::countr_zero(bits_); }

    void insert(int i) { bits_ |= std::uint64_t{1} << i; }
    void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }

    constexpr IndexSet with(int i) const { return IndexSet(bits_ | (std::uint64_t{1} << i)); }
    constexpr IndexSet without(int i) const { return IndexSet(bits_ & ~(std::uint64_t{1} << i)); }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
    friend constexpr IndexSet operator^(IndexSet a, IndexSet b) { return IndexSet(a.bits_ ^ b.bits_); }
    friend constexpr bool operator==(IndexSet a, IndexSet b) = default;

    /// Lexicographic order on the sorted index lists.
    friend constexpr std::strong_ordering operator<=>(IndexSet a, IndexSet b) {
        std::uint64_t diff = a.bits_ ^ b.bits_;
        if (diff == 0)
            return std::strong_ordering::equal;
        std::uint64_t low = diff & (~diff + 1);
        // the list holding the smaller differing element sorts first, unless the
        // other list ran out (prefix case)
        std::uint64_t below = low - 1;
        bool a_has = (a.bits_ & low) != 0;
        const std::uint64_t other = a_has ? b.bits_ : a.bits_;
        if ((other & ~below) == 0)
            return a_has ? std::strong_ordering::greater : std::strong_ordering::less;
        return a_has ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    class iterator {
    public:
        using value_type = int;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator t = *this;
            ++*this;
            return t;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<int> to_vector() const { return {begin(), end()}; }

    /// Formats as `{i,j,...}`.
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int i : *this) {
            if (!first)
                s += ',';
            first = false;
            s += std::to_string(i);
        }
        s += '}';
        return s;
    }

private:
    std::uint64_t bits_ = 0;
};

using Simplex = IndexSet;

} // namespace regflip

template <>
struct std::hash<regflip::IndexSet> {
    std::size_t operator()(regflip::IndexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

#endif // REGFLIP_INDEX_SET_HPP
