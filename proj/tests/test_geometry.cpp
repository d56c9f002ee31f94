#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "regflip/flip.hpp"
#include "regflip/point_config.hpp"
#include "regflip/triangulation.hpp"

using namespace regflip;

namespace {

PointConfiguration square() { return PointConfiguration({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
PointConfiguration triangle_interior() { return PointConfiguration({{0, 0}, {3, 0}, {0, 3}, {1, 1}}); }

GkzVector ints(std::initializer_list<int> xs) { return GkzVector(xs.begin(), xs.end()); }

} // namespace

TEST(PointConfiguration, Dimensions) {
    auto sq = square();
    EXPECT_EQ(sq.dim(), 2u);
    EXPECT_EQ(sq.size(), 4u);
    auto prod = fixtures::config("d2xd5.txt");
    EXPECT_EQ(prod.size(), 18u);
    EXPECT_EQ(prod.dim(), 7u);
    EXPECT_EQ(prod.ambient_dim(), 9u);
}

TEST(PointConfiguration, InputErrors) {
    EXPECT_THROW(PointConfiguration({{0, 0}, {0, 0}}), InputError);
    EXPECT_THROW(PointConfiguration({{0, 0}}), InputError);
    EXPECT_THROW(PointConfiguration({{0, 0}, {1}}), InputError);
    std::vector<Point> many;
    for (int i = 0; i < 65; ++i)
        many.push_back({i});
    EXPECT_THROW(PointConfiguration(std::move(many)), InputError);
}

TEST(PointConfiguration, NormalizedVolume) {
    EXPECT_EQ(square().normalized_volume({0, 1, 2}), 1);
    EXPECT_EQ(PointConfiguration({{0, 0}, {3, 0}, {0, 3}}).normalized_volume({0, 1, 2}), 9);
    EXPECT_EQ(PointConfiguration({{0, 0}, {1, 0}, {2, 0}, {0, 1}}).normalized_volume({0, 1, 2}), 0);
    EXPECT_THROW(square().normalized_volume({0, 1}), DimensionError);
}

TEST(PointConfiguration, LowerDimensionalEmbedding) {
    // the square lifted into the plane z = 2 in 3-space
    PointConfiguration c({{0, 0, 2}, {1, 0, 2}, {1, 1, 2}, {0, 1, 2}});
    EXPECT_EQ(c.dim(), 2u);
    EXPECT_EQ(c.normalized_volume({0, 1, 2}), 1);
    auto k = c.corank_one({0, 1, 2, 3});
    EXPECT_EQ(k.plus, IndexSet({0, 2}));
}

TEST(PointConfiguration, CorankOne) {
    auto c = square().corank_one({0, 1, 2, 3});
    EXPECT_EQ(c.lambda, ints({1, -1, 1, -1}));
    EXPECT_EQ(c.plus, IndexSet({0, 2}));
    EXPECT_EQ(c.minus, IndexSet({1, 3}));
    EXPECT_EQ(c.zero, IndexSet{});

    auto t = triangle_interior().corank_one({0, 1, 2, 3});
    EXPECT_EQ(t.lambda, ints({1, 1, 1, -3}));
    EXPECT_EQ(t.plus, IndexSet({0, 1, 2}));
    EXPECT_EQ(t.minus, IndexSet({3}));

    PointConfiguration line({{0, 0}, {2, 0}, {1, 0}, {0, 1}});
    auto z = line.corank_one({0, 1, 2, 3});
    EXPECT_EQ(z.lambda, ints({1, 1, -2, 0}));
    EXPECT_EQ(z.zero, IndexSet({3}));
}

TEST(PointConfiguration, CorankOneErrors) {
    EXPECT_THROW(square().corank_one({0, 1, 2}), DimensionError);
    PointConfiguration c({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}});
    EXPECT_THROW(c.corank_one({0, 1, 2, 3}), DegenerateError);
}

TEST(PointConfiguration, DroppingSupportPointLeavesSimplex) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = fixtures::random_config(rng, 6, 2 + trial % 2);
        const int k = static_cast<int>(c.dim()) + 2;
        for (std::uint64_t m = 0; m < (1u << c.size()); ++m) {
            IndexSet j(m);
            if (j.size() != k || !c.spans(j))
                continue;
            auto cc = c.corank_one(j);
            for (int i : cc.support())
                EXPECT_GT(c.normalized_volume(j.without(i)), 0);
        }
    }
}

TEST(Gkz, Examples) {
    auto sq = square();
    EXPECT_EQ(gkz(sq, Triangulation{{0, 1, 2}, {0, 2, 3}}), ints({2, 1, 2, 1}));
    EXPECT_EQ(gkz(sq, Triangulation{{0, 1, 3}, {1, 2, 3}}), ints({1, 2, 1, 2}));
    EXPECT_EQ(gkz(triangle_interior(), Triangulation{{0, 1, 2}}), ints({9, 9, 9, 0}));
}

TEST(LexCompare, Examples) {
    EXPECT_EQ(lex_compare(ints({2, 1, 2, 1}), ints({1, 2, 1, 2})), std::strong_ordering::greater);
    EXPECT_EQ(lex_compare(ints({2, 1}), ints({2, 1})), std::strong_ordering::equal);
    EXPECT_EQ(lex_compare(ints({0, 5}), ints({1, 0})), std::strong_ordering::less);
    EXPECT_THROW(lex_compare(ints({1}), ints({1, 2})), DimensionError);
}

TEST(Placing, Examples) {
    EXPECT_EQ(placing_triangulation(square()), (Triangulation{{0, 1, 2}, {0, 2, 3}}));
    EXPECT_EQ(placing_triangulation(triangle_interior()), (Triangulation{{0, 1, 2}}));
    EXPECT_EQ(placing_triangulation(PointConfiguration({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})),
              (Triangulation{{0, 1, 2, 3}}));
}

TEST(Placing, RandomIsValid) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        auto c = fixtures::random_config(rng, 4 + trial % 5, 1 + trial % 3);
        auto t = placing_triangulation(c);
        auto r = validate(c, t);
        EXPECT_TRUE(r.ok()) << t.str() << ": " << r.message;
    }
}

TEST(Validate, Examples) {
    auto sq = square();
    EXPECT_TRUE(validate(sq, Triangulation{{0, 1, 2}, {0, 2, 3}}).ok());
    EXPECT_EQ(validate(sq, Triangulation{{0, 1, 2}}).kind, ValidationReport::Kind::total_volume);
    EXPECT_EQ(validate(sq, Triangulation{{0, 1, 2}, {1, 2, 3}}).kind, ValidationReport::Kind::facet_pairing);
    EXPECT_EQ(validate(sq, Triangulation{{0, 1}}).kind, ValidationReport::Kind::bad_simplex);
    EXPECT_EQ(validate(sq, Triangulation{{0, 1, 7}}).kind, ValidationReport::Kind::bad_simplex);
    PointConfiguration line({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
    EXPECT_EQ(validate(line, Triangulation{{0, 1, 2}, {0, 2, 3}}).kind, ValidationReport::Kind::degenerate_simplex);
    EXPECT_EQ(validate(sq, Triangulation{{0, 1, 2}, {0, 1, 2}}).kind, ValidationReport::Kind::duplicate_simplex);
}

TEST(Validate, PinwheelIsAValidTriangulation) {
    auto c = fixtures::config("nested_triangles.txt");
    auto t = parse_triangulation(fixtures::slurp("pinwheel.tri"));
    EXPECT_TRUE(validate(c, t).ok());
}

TEST(Flips, Square) {
    auto sq = square();
    Triangulation t{{0, 1, 2}, {0, 2, 3}};
    auto fs = find_flips(sq, t);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].plus, IndexSet({1, 3}));
    EXPECT_EQ(fs[0].minus, IndexSet({0, 2}));
    EXPECT_EQ(fs[0].delta, ints({-1, 1, -1, 1}));
    EXPECT_EQ(flip_gkz(sq, fs[0]), ints({-1, 1, -1, 1}));
    auto t2 = apply_flip(t, fs[0]);
    EXPECT_EQ(t2, (Triangulation{{0, 1, 3}, {1, 2, 3}}));
    EXPECT_EQ(gkz(sq, t2), ints({1, 2, 1, 2}));
    EXPECT_EQ(apply_flip(t2, fs[0].reversed()), t);
    EXPECT_THROW(apply_flip(t2, fs[0]), StaleFlipError);
}

TEST(Flips, InsertionAndDeletion) {
    auto c = triangle_interior();
    Triangulation coarse{{0, 1, 2}};
    auto fs = find_flips(c, coarse);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].delta, ints({-3, -3, -3, 9}));
    EXPECT_EQ(fs[0].removed, std::vector<Simplex>{IndexSet({0, 1, 2})});
    auto fine = apply_flip(coarse, fs[0]);
    EXPECT_EQ(gkz(c, fine), ints({6, 6, 6, 9}));

    auto back = find_flips(c, fine);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].delta, ints({3, 3, 3, -9}));
    EXPECT_EQ(apply_flip(fine, back[0]), coarse);
}

TEST(Flips, SimplexHasNone) {
    PointConfiguration c({{0, 0}, {1, 0}, {0, 1}});
    EXPECT_TRUE(find_flips(c, Triangulation{{0, 1, 2}}).empty());
}

TEST(Flips, ZeroEntriesOutsideTheCircuit) {
    // (2,0) is the midpoint of (0,0),(4,0); (1,2) sits above it and is not part of the circuit
    PointConfiguration c({{0, 0}, {4, 0}, {2, 0}, {1, 2}});
    Triangulation t{{0, 1, 3}};
    auto fs = find_flips(c, t);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].circuit(), IndexSet({0, 1, 2}));
    EXPECT_EQ(fs[0].delta[3], 0);
    EXPECT_EQ(fs[0].link, std::vector<IndexSet>{IndexSet({3})});
}

TEST(Flips, CubeHasMultiCellLinks) {
    auto c = fixtures::config("cube3.txt");
    auto t = placing_triangulation(c);
    bool seen_multi = false;
    for (auto& f : find_flips(c, t)) {
        if (f.link.size() > 1)
            seen_multi = true;
        auto g = gkz(c, apply_flip(t, f));
        auto expect = gkz(c, t);
        for (std::size_t i = 0; i < g.size(); ++i)
            expect[i] += f.delta[i];
        EXPECT_EQ(g, expect);
    }
    (void)seen_multi;
}

// Walk random flip chains: every triangulation stays valid, the incremental
// GKZ-vector matches a recomputation, no flip vector is zero and no two flips
// of the same triangulation have positively parallel vectors.
TEST(Flips, RandomChains) {
    std::mt19937_64 rng(23);
    const std::vector<std::string> named{"square.txt", "triangle_interior.txt", "nested_triangles.txt", "cube3.txt",
                                         "d2xd2.txt", "d1xd3.txt"};
    std::vector<PointConfiguration> configs;
    for (const auto& n : named)
        configs.push_back(fixtures::config(n));
    for (int i = 0; i < 30; ++i)
        configs.push_back(fixtures::random_config(rng, 5 + i % 4, 2 + i % 2));
    for (const auto& c : configs) {
        auto t = placing_triangulation(c);
        auto g = gkz(c, t);
        for (int step = 0; step < 25; ++step) {
            auto fs = find_flips(c, t);
            if (fs.empty())
                break;
            for (std::size_t a = 0; a < fs.size(); ++a) {
                EXPECT_TRUE(std::any_of(fs[a].delta.begin(), fs[a].delta.end(), [](const Integer& x) { return x != 0; }));
                for (std::size_t b = a + 1; b < fs.size(); ++b) {
                    bool parallel = true;
                    std::size_t ref = 0;
                    while (ref < fs[a].delta.size() && fs[a].delta[ref] == 0)
                        ++ref;
                    for (std::size_t k = 0; k < fs[a].delta.size(); ++k)
                        if (fs[a].delta[k] * fs[b].delta[ref] != fs[b].delta[k] * fs[a].delta[ref])
                            parallel = false;
                    EXPECT_FALSE(parallel && fs[a].delta[ref].sign() == fs[b].delta[ref].sign());
                }
            }
            auto& f = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
            auto next = apply_flip(t, f);
            auto r = validate(c, next);
            ASSERT_TRUE(r.ok()) << next.str() << ": " << r.message;
            for (std::size_t k = 0; k < g.size(); ++k)
                g[k] += f.delta[k];
            ASSERT_EQ(g, gkz(c, next));
            // the reverse flip is available and has the negated vector
            auto rs = find_flips(c, next);
            auto rev = f.reversed();
            EXPECT_TRUE(std::any_of(rs.begin(), rs.end(), [&](const Flip& x) {
                return x.delta == rev.delta && apply_flip(next, x) == t;
            }));
            t = std::move(next);
        }
    }
}

// Relabelling the ambient axes must not change volumes, circuits or flips.
TEST(PointConfiguration, AxisPermutationInvariance) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = fixtures::random_config(rng, 6, 3);
        std::vector<Point> swapped;
        for (const auto& p : c.points())
            swapped.push_back({p[2], p[0], p[1]});
        PointConfiguration d(swapped);
        auto t = placing_triangulation(c);
        EXPECT_TRUE(validate(d, t).ok());
        EXPECT_EQ(gkz(c, t), gkz(d, t));
        auto fc = find_flips(c, t), fd = find_flips(d, t);
        ASSERT_EQ(fc.size(), fd.size());
        for (std::size_t i = 0; i < fc.size(); ++i)
            EXPECT_EQ(fc[i].delta, fd[i].delta);
    }
}
