#ifndef REGFLIP_REGULARITY_HPP
#define REGFLIP_REGULARITY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "exact_arith.hpp"
#include "flip.hpp"
#include "index_set.hpp"
#include "lp.hpp"
#include "point_config.hpp"
#include "triangulation.hpp"

namespace regflip {

// ---------------------------------------------------------------------------
// Regularity of a triangulation

/**
 * Rows r with r.h > 0 for every height function h inducing t.
 *
 * One row per interior face (the dependence of the two adjacent simplices,
 * positive on the two opposite vertices) and one row per unused point u and
 * simplex S containing it (the dependence of S + u, positive at u).
 */
inline std::vector<std::vector<Integer>> regularity_rows(const PointConfiguration& config, const Triangulation& t) {
    const std::size_t n = config.size();
    std::vector<std::vector<Integer>> rows;
    auto scatter = [&](const CorankOneConfig& c) {
        std::vector<Integer> row(n, Integer(0));
        for (std::size_t k = 0; k < c.indices.size(); ++k)
            row[static_cast<std::size_t>(c.indices[k])] = c.lambda[k];
        return row;
    };

    std::map<IndexSet, std::vector<Simplex>> owners;
    for (auto s : t)
        for (auto [f, v] : facets_of(s))
            owners[f].push_back(s);
    for (const auto& [f, cells] : owners) {
        if (cells.size() != 2)
            continue;
        auto c = config.corank_one(cells[0] | cells[1]);
        int p = (cells[0] - cells[1]).min();
        if (c.coefficient(p) < 0)
            c.negate();
        rows.push_back(scatter(c));
    }

    const IndexSet unused = config.all() - t.used_points();
    for (int u : unused) {
        for (auto s : t) {
            auto c = config.corank_one(s.with(u));
            if (c.coefficient(u) < 0)
                c.negate();
            bool inside = true;
            for (std::size_t k = 0; k < c.indices.size(); ++k)
                if (c.indices[k] != u && c.lambda[k] > 0)
                    inside = false;
            if (inside)
                rows.push_back(scatter(c));
        }
    }
    return rows;
}

struct RegularityVerdict {
    bool regular = false;
    /// Heights h with r.h >= 1 for every row (when regular).
    RationalVector heights;
    /// z >= 0, z != 0 with sum z_k r_k = 0 (when non-regular).
    RationalVector certificate;
    std::vector<RationalVector> rows;

    explicit operator bool() const { return regular; }
};

inline std::vector<RationalVector> to_rational(const std::vector<std::vector<Integer>>& rows) {
    std::vector<RationalVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        RationalVector q;
        q.reserve(r.size());
        for (const auto& x : r)
            q.emplace_back(x);
        out.push_back(std::move(q));
    }
    return out;
}

inline RegularityVerdict is_regular(const PointConfiguration& config, const Triangulation& t) {
    RegularityVerdict v;
    v.rows = to_rational(regularity_rows(config, t));
    auto f = strict_homogeneous(v.rows, config.size());
    v.regular = f.feasible;
    v.heights = std::move(f.witness);
    v.certificate = std::move(f.certificate);
    return v;
}

// ---------------------------------------------------------------------------
// Extremal rays of the cone spanned by flip GKZ-vectors

enum class Reduction {
    lone_sign,   ///< only vector with a nonzero entry of its sign in a column, the rest zero there
    pair,        ///< exactly one positive and one negative entry
    one_vs_many, ///< one vector against two or more of opposite sign
    one_sided,   ///< two or more entries, all of the same sign
};

inline const char* reduction_name(Reduction r) {
    switch (r) {
    case Reduction::lone_sign:
        return "lone_sign";
    case Reduction::pair:
        return "pair";
    case Reduction::one_vs_many:
        return "one_vs_many";
    case Reduction::one_sided:
        return "one_sided";
    }
    return "?";
}

struct ScreeningStats {
    std::size_t candidates = 0;
    /// candidates confirmed as rays by the reductions themselves
    std::size_t screened = 0;
    std::size_t lone_sign = 0;
    std::size_t pair = 0;
    std::size_t one_vs_many = 0;
    std::size_t one_sided = 0;
    /// reductions applied while deciding a deferred candidate
    std::size_t targeted = 0;
    /// deferred candidates left without any other generator
    std::size_t sole = 0;
    /// deferred candidates decided by a column where no other vector shares their sign
    std::size_t direct = 0;
    /// deferred candidates decided by the two-vector scalar-multiple test
    std::size_t scalar_tests = 0;
    std::size_t lps_solved = 0;

    std::size_t reductions() const { return lone_sign + pair + one_vs_many + one_sided; }
    /// Every candidate is decided by exactly one of these.
    std::size_t decisions() const { return screened + sole + direct + scalar_tests + lps_solved; }

    ScreeningStats& operator+=(const ScreeningStats& o) {
        candidates += o.candidates;
        screened += o.screened;
        sole += o.sole;
        lone_sign += o.lone_sign;
        pair += o.pair;
        one_vs_many += o.one_vs_many;
        one_sided += o.one_sided;
        targeted += o.targeted;
        direct += o.direct;
        scalar_tests += o.scalar_tests;
        lps_solved += o.lps_solved;
        return *this;
    }
};

struct ReductionEvent {
    Reduction kind;
    std::size_t column;
    std::vector<int> confirmed;
    std::vector<int> deferred;
};

namespace detail {

// Raised by the checked 64-bit arithmetic; the caller reruns with Integer.
struct NarrowOverflow {};

inline int sign_of(const Integer& x) { return x.sign(); }
inline int sign_of(std::int64_t x) { return (x > 0) - (x < 0); }

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw NarrowOverflow{};
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw NarrowOverflow{};
    return r;
}

// products for cross-multiplication without overflow
inline Integer wide_mul(const Integer& a, const Integer& b) { return a * b; }
inline __int128 wide_mul(std::int64_t a, std::int64_t b) { return static_cast<__int128>(a) * b; }

} // namespace detail

/// A generator of a ray system: a candidate (id >= 0) or a known non-ray.
template <class T>
struct RayVectorT {
    std::vector<T> entries;
    int id = -1;

    bool candidate() const { return id >= 0; }
};

/**
 * Generators of a pointed cone, some of them candidates whose extremality is
 * asked for, the others combinations already known not to be rays.
 *
 * Reductions keep the following invariant: a candidate still present is
 * extremal in this system iff it is extremal in the original one.
 */
template <class T>
class RaySystemT {
public:
    RaySystemT() = default;
    explicit RaySystemT(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<RayVectorT<T>>& vectors() const { return vectors_; }
    std::vector<RayVectorT<T>>& vectors() { return vectors_; }
    std::size_t size() const { return vectors_.size(); }

    void add_candidate(int id, std::vector<T> v) { add(std::move(v), id); }
    void add_known_non_ray(std::vector<T> v) { add(std::move(v), -1); }

    std::size_t candidate_count() const {
        return static_cast<std::size_t>(
            std::count_if(vectors_.begin(), vectors_.end(), [](const RayVectorT<T>& r) { return r.candidate(); }));
    }

private:
    void add(std::vector<T> v, int id) {
        if (v.size() != dim_)
            throw DimensionError("ray vector of length " + std::to_string(v.size()) + " in system of dimension " +
                                 std::to_string(dim_));
        if (std::all_of(v.begin(), v.end(), [](const T& x) { return detail::sign_of(x) == 0; }))
            throw InvariantError("zero vector in ray system");
        vectors_.push_back({std::move(v), id});
    }

    std::size_t dim_ = 0;
    std::vector<RayVectorT<T>> vectors_;
};

template <class T>
struct DeferredCandidateT {
    std::shared_ptr<const RaySystemT<T>> system;
    int id;
};

template <class T>
struct ScreeningOutcomeT {
    std::vector<int> confirmed_rays;
    std::vector<int> confirmed_non_rays;
    std::vector<DeferredCandidateT<T>> deferred;
    ScreeningStats stats;
    std::vector<ReductionEvent> trace;
};

using RayVector = RayVectorT<Integer>;
using RaySystem = RaySystemT<Integer>;
using DeferredCandidate = DeferredCandidateT<Integer>;
using ScreeningOutcome = ScreeningOutcomeT<Integer>;

namespace detail {

inline void check_elimination(const std::vector<std::int64_t>& w, std::size_t c) {
    if (w[c] != 0)
        throw InvariantError("elimination left a nonzero pivot entry");
    if (std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; }))
        throw InvariantError("opposite generators: cone is not pointed");
}

// a[c] * u - u[c] * a with a[c] and u[c] of opposite signs, made primitive
inline std::vector<std::int64_t> eliminate(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& u,
                                           std::size_t c) {
    const std::int64_t fa = a[c] > 0 ? a[c] : -a[c], fu = u[c] > 0 ? u[c] : -u[c];
    std::vector<std::int64_t> w(a.size());
    std::int64_t g = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        w[i] = checked_add(checked_mul(fa, u[i]), checked_mul(fu, a[i]));
        g = std::gcd(g, w[i]);
    }
    if (g > 1)
        for (auto& x : w)
            x /= g;
    check_elimination(w, c);
    return w;
}

inline std::vector<Integer> eliminate(const std::vector<Integer>& a, const std::vector<Integer>& u, std::size_t c) {
    // entries below 2^31 keep every product and sum inside 64 bits
    std::vector<std::int64_t> sa(a.size()), su(a.size());
    bool fast = true;
    for (std::size_t i = 0; i < a.size() && fast; ++i) {
        auto x = small_value(a[i]), y = small_value(u[i]);
        fast = x && y;
        if (fast) {
            sa[i] = *x;
            su[i] = *y;
        }
    }
    if (fast) {
        auto w = eliminate(sa, su, c);
        return std::vector<Integer>(w.begin(), w.end());
    }
    Integer fa = a[c] > 0 ? Integer(a[c]) : Integer(-a[c]);
    Integer fu = u[c] > 0 ? Integer(u[c]) : Integer(-u[c]);
    std::vector<Integer> w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        w[i] = fa * u[i] + fu * a[i];
    make_primitive(w);
    if (w[c] != 0)
        throw InvariantError("elimination left a nonzero pivot entry");
    if (std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; }))
        throw InvariantError("opposite generators: cone is not pointed");
    return w;
}

struct ColumnSigns {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
};

template <class T>
ColumnSigns column_signs(const std::vector<RayVectorT<T>>& vs, std::size_t c) {
    ColumnSigns cs;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        int s = sign_of(vs[i].entries[c]);
        if (s > 0)
            cs.pos.push_back(i);
        else if (s < 0)
            cs.neg.push_back(i);
    }
    return cs;
}

// Sizes of both sides of a column and the candidates among them.
struct ColumnCounts {
    std::size_t pos = 0, neg = 0, pos_candidates = 0, neg_candidates = 0;
};

template <class T>
ColumnCounts column_counts(const std::vector<RayVectorT<T>>& vs, std::size_t c) {
    ColumnCounts k;
    for (const auto& r : vs) {
        int s = sign_of(r.entries[c]);
        if (s > 0) {
            ++k.pos;
            k.pos_candidates += r.candidate() ? 1 : 0;
        } else if (s < 0) {
            ++k.neg;
            k.neg_candidates += r.candidate() ? 1 : 0;
        }
    }
    return k;
}

template <class T>
std::size_t count_candidates(const std::vector<RayVectorT<T>>& vs, const std::vector<std::size_t>& idx) {
    std::size_t k = 0;
    for (auto i : idx)
        k += vs[i].candidate() ? 1 : 0;
    return k;
}

} // namespace detail

/// True if v = t * u for some t > 0.
template <class T>
bool positive_multiple(const std::vector<T>& v, const std::vector<T>& u) {
    if (v.size() != u.size())
        throw DimensionError("positive_multiple: length mismatch");
    std::size_t ref = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if ((detail::sign_of(v[i]) == 0) != (detail::sign_of(u[i]) == 0))
            return false;
        if (detail::sign_of(v[i]) != 0 && ref == v.size())
            ref = i;
    }
    if (ref == v.size())
        return false;
    if (detail::sign_of(v[ref]) != detail::sign_of(u[ref]))
        return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (detail::wide_mul(v[i], u[ref]) != detail::wide_mul(u[i], v[ref]))
            return false;
    return true;
}

/**
 * Sign-pattern screening of a ray system.
 *
 * Repeatedly picks a column and applies the cheapest applicable reduction:
 * lone_sign (a single nonzero entry of one sign, none of the other) confirms
 * that vector and drops it; pair confirms both vectors and replaces them by
 * their combination with zero entry in the column; one_vs_many confirms the
 * single vector, defers the candidates on the other side and replaces that
 * side by combinations; one_sided defers the candidates on the nonzero side
 * and drops it. The first column admitting lone_sign or pair is taken; failing
 * that, the one_vs_many or one_sided column deferring the fewest candidates.
 * Candidates left at the fixpoint are deferred against the final system.
 */
template <class T>
ScreeningOutcomeT<T> screen_rays(RaySystemT<T> system) {
    ScreeningOutcomeT<T> out;
    out.stats.candidates = system.candidate_count();
    auto& vs = system.vectors();
    std::vector<bool> active(system.dim(), true);

    auto confirm = [&](std::size_t i, ReductionEvent& ev) {
        if (vs[i].candidate()) {
            ++out.stats.screened;
            out.confirmed_rays.push_back(vs[i].id);
            ev.confirmed.push_back(vs[i].id);
        }
    };
    auto defer = [&](const std::vector<std::size_t>& idx, const std::shared_ptr<const RaySystemT<T>>& snap,
                     ReductionEvent& ev) {
        for (auto i : idx)
            if (vs[i].candidate()) {
                out.deferred.push_back({snap, vs[i].id});
                ev.deferred.push_back(vs[i].id);
            }
    };
    auto erase = [&](std::vector<std::size_t> idx) {
        std::sort(idx.begin(), idx.end());
        for (auto it = idx.rbegin(); it != idx.rend(); ++it)
            vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(*it));
    };

    while (system.candidate_count() > 0) {
        enum { none, lone, pair, many } best_kind = none;
        std::size_t best_col = 0;
        std::size_t best_deferred = 0;
        for (std::size_t c = 0; c < system.dim(); ++c) {
            if (!active[c])
                continue;
            auto k = detail::column_counts(vs, c);
            if (k.pos == 0 && k.neg == 0) {
                active[c] = false;
                continue;
            }
            if (k.pos + k.neg == 1 || (k.pos == 1 && k.neg == 1)) {
                best_kind = k.pos + k.neg == 1 ? lone : pair;
                best_col = c;
                break;
            }
            std::size_t deferred;
            if (k.pos == 1 || k.pos == 0)
                deferred = k.neg_candidates;
            else if (k.neg == 1 || k.neg == 0)
                deferred = k.pos_candidates;
            else
                continue;
            if (best_kind == none || deferred < best_deferred) {
                best_kind = many;
                best_col = c;
                best_deferred = deferred;
            }
        }
        if (best_kind == none)
            break;

        const std::size_t c = best_col;
        auto best = detail::column_signs(vs, c);
        auto& pos = best.pos;
        auto& neg = best.neg;
        ReductionEvent ev{Reduction::lone_sign, c, {}, {}};
        if (best_kind == lone) {
            std::size_t i = pos.empty() ? neg.front() : pos.front();
            confirm(i, ev);
            erase({i});
            ++out.stats.lone_sign;
        } else if (best_kind == pair) {
            ev.kind = Reduction::pair;
            std::size_t a = pos.front(), b = neg.front();
            confirm(a, ev);
            confirm(b, ev);
            auto w = detail::eliminate(vs[a].entries, vs[b].entries, c);
            erase({a, b});
            system.add_known_non_ray(std::move(w));
            ++out.stats.pair;
        } else if (pos.size() == 1 || neg.size() == 1) {
            ev.kind = Reduction::one_vs_many;
            std::size_t a = pos.size() == 1 ? pos.front() : neg.front();
            const auto& others = pos.size() == 1 ? neg : pos;
            confirm(a, ev);
            auto snap = std::make_shared<const RaySystemT<T>>(system);
            defer(others, snap, ev);
            std::vector<std::vector<T>> combos;
            for (auto u : others)
                combos.push_back(detail::eliminate(vs[a].entries, vs[u].entries, c));
            auto gone = others;
            gone.push_back(a);
            erase(gone);
            for (auto& w : combos)
                system.add_known_non_ray(std::move(w));
            ++out.stats.one_vs_many;
        } else {
            ev.kind = Reduction::one_sided;
            const auto& side = pos.empty() ? neg : pos;
            if (detail::count_candidates(vs, side) > 0)
                defer(side, std::make_shared<const RaySystemT<T>>(system), ev);
            erase(side);
            ++out.stats.one_sided;
        }
        active[c] = false;
        out.trace.push_back(std::move(ev));
    }

    if (system.candidate_count() > 0) {
        auto snap = std::make_shared<const RaySystemT<T>>(system);
        for (const auto& r : vs)
            if (r.candidate())
                out.deferred.push_back({snap, r.id});
    }
    return out;
}

/**
 * Decides whether candidate `id` is extremal in `system`.
 *
 * The other generators are first reduced by columns where the candidate is
 * zero (dropping one-sided entries, eliminating against a single vector of
 * opposite sign). A column where no other generator shares the candidate's
 * sign proves extremality. One remaining generator is settled by the
 * scalar-multiple test, more by an exact LP.
 */
template <class T>
bool decide_candidate(const RaySystemT<T>& system, int id, ScreeningStats& stats) {
    const auto& all = system.vectors();
    auto self = std::find_if(all.begin(), all.end(), [id](const RayVectorT<T>& r) { return r.id == id; });
    if (self == all.end())
        throw std::out_of_range("candidate not in system");
    const auto& v = self->entries;
    std::vector<RayVectorT<T>> rest;
    for (const auto& r : all)
        if (r.id != id || !r.candidate())
            rest.push_back(r);

    const std::size_t dim = system.dim();
    for (;;) {
        if (rest.empty()) {
            ++stats.sole;
            return true;
        }
        bool changed = false;
        for (std::size_t c = 0; c < dim && !changed; ++c) {
            auto k = detail::column_counts(rest, c);
            const int sv = detail::sign_of(v[c]);
            if (sv != 0) {
                if ((sv > 0 ? k.pos : k.neg) == 0) {
                    ++stats.direct;
                    return true;
                }
                continue;
            }
            if (k.pos + k.neg == 0 || (k.pos > 1 && k.neg > 1))
                continue;
            auto cs = detail::column_signs(rest, c);
            std::vector<std::size_t> gone;
            std::vector<std::vector<T>> combos;
            if (cs.pos.empty() || cs.neg.empty()) {
                gone = cs.pos.empty() ? cs.neg : cs.pos;
            } else {
                std::size_t a = cs.pos.size() == 1 ? cs.pos.front() : cs.neg.front();
                gone = cs.pos.size() == 1 ? cs.neg : cs.pos;
                for (auto u : gone)
                    combos.push_back(detail::eliminate(rest[a].entries, rest[u].entries, c));
                gone.push_back(a);
            }
            std::sort(gone.begin(), gone.end());
            for (auto it = gone.rbegin(); it != gone.rend(); ++it)
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*it));
            for (auto& w : combos)
                rest.push_back({std::move(w), -1});
            ++stats.targeted;
            changed = true;
        }
        if (!changed)
            break;
    }

    if (rest.size() == 1) {
        ++stats.scalar_tests;
        return !positive_multiple(v, rest.front().entries);
    }
    ++stats.lps_solved;
    auto rational = [](const std::vector<T>& x) {
        RationalVector q;
        q.reserve(x.size());
        for (const auto& e : x)
            q.emplace_back(e);
        return q;
    };
    std::vector<RationalVector> gens;
    gens.reserve(rest.size());
    for (const auto& r : rest)
        gens.push_back(rational(r.entries));
    return !nonneg_combination(gens, rational(v)).feasible;
}

namespace detail {

template <class T>
std::vector<int> extremal_rays_in(RaySystemT<T> system, ScreeningStats& stats) {
    auto outcome = screen_rays(std::move(system));
    std::vector<int> result = outcome.confirmed_rays;
    for (const auto& d : outcome.deferred)
        if (decide_candidate(*d.system, d.id, outcome.stats))
            result.push_back(d.id);
    std::sort(result.begin(), result.end());
    stats += outcome.stats;
    return result;
}

} // namespace detail

/**
 * Indices of the extremal vectors among `vectors`, which must span a pointed
 * cone with no two of them positively parallel.
 *
 * Small entries run in checked 64-bit arithmetic; on overflow the whole
 * computation is repeated with arbitrary precision.
 */
inline std::vector<int> extremal_rays(const std::vector<std::vector<Integer>>& vectors,
                                      ScreeningStats* stats = nullptr) {
    if (vectors.empty())
        return {};
    const std::size_t dim = vectors.front().size();
    ScreeningStats local;
    bool small = true;
    RaySystemT<std::int64_t> narrow(dim);
    for (std::size_t i = 0; i < vectors.size() && small; ++i) {
        std::vector<std::int64_t> v;
        v.reserve(vectors[i].size());
        for (const auto& x : vectors[i]) {
            auto s = small_value(x);
            if (!s) {
                small = false;
                break;
            }
            v.push_back(*s);
        }
        if (small)
            narrow.add_candidate(static_cast<int>(i), std::move(v));
    }
    std::vector<int> result;
    bool done = false;
    if (small) {
        try {
            result = detail::extremal_rays_in(std::move(narrow), local);
            done = true;
        } catch (const detail::NarrowOverflow&) {
            local = {};
        }
    }
    if (!done) {
        RaySystem system(dim);
        for (std::size_t i = 0; i < vectors.size(); ++i)
            system.add_candidate(static_cast<int>(i), vectors[i]);
        result = detail::extremal_rays_in(std::move(system), local);
    }
    if (stats)
        *stats += local;
    return result;
}

/**
 * Per-flip verdicts for a regular triangulation: a flip is regular iff its
 * GKZ-vector spans an extremal ray of the cone of all flip GKZ-vectors.
 */
inline std::vector<bool> regular_flips(const std::vector<Flip>& flips, ScreeningStats* stats = nullptr) {
    std::vector<std::vector<Integer>> deltas;
    deltas.reserve(flips.size());
    for (const auto& f : flips)
        deltas.push_back(f.delta);
    std::vector<bool> verdict(flips.size(), false);
    for (int i : extremal_rays(deltas, stats))
        verdict[static_cast<std::size_t>(i)] = true;
    return verdict;
}

} // namespace regflip

#endif // REGFLIP_REGULARITY_HPP
