#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aswn/polygon.hpp"

using namespace aswn;

namespace {

Polygon poly(std::vector<std::pair<long long, Rat>> vs) {
    Polygon P;
    for (auto& [x, y] : vs) P.v.push_back({x, y});
    return P;
}

Polygon random_polygon(std::mt19937& rng, int len) {
    // random increasing slopes -> canonical polygon
    std::uniform_int_distribution<int> num(-4, 8), den(1, 4);
    SlopeMultiset S;
    for (int i = 0; i < len; ++i) S.s.push_back(make_rat(num(rng), den(rng)));
    return from_slopes(S);
}

} // namespace

TEST_CASE("lower hull basics") {
    Polygon P = lower_hull({{0, Rat(0)}, {1, Rat(0)}, {2, Rat(1)}});
    CHECK(P == poly({{0, Rat(0)}, {1, Rat(0)}, {2, Rat(1)}}));
    CHECK(slopes(P).s == std::vector<Rat>{Rat(0), Rat(1)});

    // collinear points collapse
    CHECK(lower_hull({{0, Rat(0)}, {1, Rat(1)}, {2, Rat(2)}}) == poly({{0, Rat(0)}, {2, Rat(2)}}));

    // interior point above the hull is dropped
    CHECK(lower_hull({{0, Rat(0)}, {1, Rat(5)}, {2, Rat(1)}}) == poly({{0, Rat(0)}, {2, Rat(1)}}));

    // infinite points (zero coefficients) are skipped
    CHECK(lower_hull({{0, Rat(0)}, {1, std::nullopt}, {2, Rat(1)}}) ==
          poly({{0, Rat(0)}, {2, Rat(1)}}));

    CHECK_THROWS_AS(lower_hull({{0, std::nullopt}}), EmptyInput);
}

TEST_CASE("hull idempotence and slope round trip on random polygons") {
    std::mt19937 rng(12345);
    for (int it = 0; it < 50; ++it) {
        Polygon P = random_polygon(rng, 1 + it % 7);
        std::vector<HullPoint> pts;
        for (const auto& v : P.v) pts.push_back({v.x, v.y});
        CHECK(lower_hull(pts) == P);
        CHECK(from_slopes(slopes(P)) == P);
    }
}

TEST_CASE("slopes and from_slopes") {
    Polygon seg = poly({{0, Rat(0)}, {2, Rat(1)}});
    CHECK(slopes(seg).s == std::vector<Rat>{make_rat(1, 2), make_rat(1, 2)});
    SlopeMultiset S;
    S.s = {Rat(1), Rat(0)};
    CHECK(from_slopes(S) == poly({{0, Rat(0)}, {1, Rat(0)}, {2, Rat(1)}}));
}

TEST_CASE("oplus: identity, commutativity, associativity, length, monotonicity") {
    SlopeMultiset A;
    A.s = {Rat(0), Rat(1)};
    SlopeMultiset B;
    B.s = {make_rat(1, 2)};
    Polygon PA = from_slopes(A), PB = from_slopes(B);
    Polygon PAB = oplus(PA, PB);
    CHECK(slopes(PAB).s == std::vector<Rat>{Rat(0), make_rat(1, 2), Rat(1)});
    CHECK(PAB.length() == PA.length() + PB.length());

    Polygon empty;
    empty.v.push_back({0, Rat(0)});
    CHECK(oplus(PA, empty) == PA);

    std::mt19937 rng(777);
    for (int it = 0; it < 30; ++it) {
        Polygon P1 = random_polygon(rng, 1 + it % 5);
        Polygon P2 = random_polygon(rng, 1 + (it * 7) % 5);
        Polygon P3 = random_polygon(rng, 1 + (it * 3) % 4);
        CHECK(oplus(P1, P2) == oplus(P2, P1));
        CHECK(oplus(oplus(P1, P2), P3) == oplus(P1, oplus(P2, P3)));
        CHECK(oplus(P1, P2).length() == P1.length() + P2.length());
    }

    // monotonicity: P1 >= P1', P2 >= P2' (same lengths) => P1+P2 >= P1'+P2'
    for (int it = 0; it < 30; ++it) {
        Polygon P1 = random_polygon(rng, 3);
        Polygon P2 = random_polygon(rng, 4);
        Polygon Q1 = shift(P1, make_rat(-(it % 3), 1));
        SlopeMultiset lower = slopes(P2);
        for (auto& s : lower.s) s -= Rat(1);
        Polygon Q2 = from_slopes(lower);
        REQUIRE(geq(P1, Q1));
        REQUIRE(geq(P2, Q2));
        CHECK(geq(oplus(P1, P2), oplus(Q1, Q2)));
    }
}

TEST_CASE("height, shift, scale") {
    Polygon P = poly({{0, Rat(0)}, {1, Rat(0)}, {3, Rat(3)}});
    CHECK(height(P, 1) == Rat(0));
    CHECK(height(P, 2) == make_rat(3, 2));
    CHECK_THROWS_AS(height(P, 4), OutOfDomain);
    CHECK(shift(P, Rat(0)) == P);
    CHECK(height(shift(P, make_rat(1, 3)), 2) == make_rat(3, 2) + make_rat(1, 3));
    CHECK(slopes(scale_y(P, make_rat(1, 2))).s ==
          std::vector<Rat>{Rat(0), make_rat(3, 4), make_rat(3, 4)});
    CHECK(truncate_at(P, 2) == poly({{0, Rat(0)}, {1, Rat(0)}, {2, make_rat(3, 2)}}));
}

TEST_CASE("technical vertex lemma for oplus") {
    // polygons sharing a cut value c between earlier and later slopes pass
    // their vertex sums through the oplus
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> small(1, 3);
    for (int it = 0; it < 25; ++it) {
        Rat c = make_rat(small(rng), 2);
        std::vector<Polygon> polys;
        long long kx = 0;
        Rat ky(0);
        for (int i = 0; i < 3; ++i) {
            SlopeMultiset S;
            int before = small(rng), after = small(rng);
            for (int b = 0; b < before; ++b) S.s.push_back(c - make_rat(small(rng), 1));
            for (int a = 0; a < after; ++a) S.s.push_back(c + make_rat(small(rng), 1));
            Polygon P = from_slopes(S);
            polys.push_back(P);
            kx += before;
            ky += height(P, before);
        }
        Polygon sum = oplus(oplus(polys[0], polys[1]), polys[2]);
        CHECK(height(sum, kx) == ky);
    }
}

TEST_CASE("y_u values") {
    CHECK(y_u(3, 1, 2, 1, 0) == Rat(0));
    CHECK(y_u(3, 1, 2, 1, 2) == Rat(2));
    CHECK(y_u(3, 1, 1, 1, 1) == Rat(1));
    CHECK(y_u(2, 2, 3, 2, 4) == Rat(4) + make_rat(4, 3)); // a=2,d=3,u=2=10_2, digit sum 1
}

TEST_CASE("c sequence") {
    CSeq c0 = c_sequence(3, 1, 0);
    CHECK(c0.b_u == 1);
    for (int n = 0; n < 6; ++n) CHECK(c0.c(n) == 2u * n);

    CSeq c1 = c_sequence(2, 2, 1); // q = 4
    CHECK(c1.b_u == 2);
    std::vector<std::uint64_t> expect = {1, 2, 4, 5, 7, 8};
    for (int n = 0; n < 6; ++n) CHECK(c1.c(n) == expect[n]);

    CSeq c31 = c_sequence(3, 1, 1);
    CHECK(c31.b_u == 1);
    for (int n = 0; n < 4; ++n) CHECK(c31.c(n) == 2u * n + 1);

    // non-decreasing across a wider grid
    for (long p : {2L, 3L, 5L}) {
        for (int a = 1; a <= 2; ++a) {
            std::uint64_t q1 = pow_u64(p, a) - 1;
            for (std::uint64_t u = 0; u < q1; ++u) {
                CSeq cs = c_sequence(p, a, u);
                for (int n = 1; n < 20; ++n) CHECK(cs.c(n) >= cs.c(n - 1));
            }
        }
    }
}

TEST_CASE("hodge polygon: heights equal y_u at every integer") {
    CHECK(height(hodge_polygon(3, 1, 1, 0, 5), 3) == Rat(6)); // k(k-1)
    for (long p : {2L, 3L, 5L}) {
        for (int a = 1; a <= 2; ++a) {
            std::uint64_t q1 = pow_u64(p, a) - 1;
            for (int d = 1; d <= 3; ++d) {
                if (gcd_u64(d, p) != 1) continue;
                for (std::uint64_t u = 0; u < q1; ++u) {
                    Polygon hp = hodge_polygon(p, a, d, u, 8);
                    for (long long k = 0; k <= 8; ++k)
                        CHECK(height(hp, k) == y_u(p, a, d, u, k));
                    CHECK(hp.v.size() == 9); // every integer point is a vertex
                }
            }
        }
    }
}

TEST_CASE("upper polygon and the vertical gap bound") {
    Polygon up = up_polygon(3, 1, 2, 0, 4);
    CHECK(height(up, 2) == Rat(1));
    CHECK(height(up, 1) == make_rat(1, 2));
    CHECK(up_polygon(3, 1, 1, 1, 4) == hodge_polygon(3, 1, 1, 1, 4)); // d = 1

    Polygon hp = hodge_polygon(3, 1, 2, 0, 4);
    CHECK(max_vertical_gap(up, hp) == make_rat(1, 2)); // attains ad(p-1)/8

    CHECK(max_vertical_gap(up_polygon(5, 1, 1, 2, 4), hodge_polygon(5, 1, 1, 2, 4)) == Rat(0));
}

TEST_CASE("sum of y_u over u") {
    // sum over u in [0, q-2] of y_u(kd) = a k ((q-1)kd - 1)(p-1)/2
    for (long p : {2L, 3L, 5L}) {
        for (int a = 1; a <= 2; ++a) {
            std::uint64_t q = pow_u64(p, a);
            for (int d : {1, 2, 3}) {
                if (gcd_u64(d, p) != 1) continue;
                for (long long k = 0; k <= 3; ++k) {
                    Rat total(0);
                    for (std::uint64_t u = 0; u + 1 < q; ++u) total += y_u(p, a, d, u, k * d);
                    Rat expect = make_rat(Int(a) * Int(static_cast<long>(k)) *
                                              (Int(static_cast<long>(q - 1)) * Int(static_cast<long>(k)) * Int(d) - 1) *
                                              Int(p - 1),
                                          Int(2));
                    CHECK(total == expect);
                }
            }
        }
    }
}

TEST_CASE("serialization") {
    Polygon P = poly({{0, Rat(0)}, {2, make_rat(1, 2)}});
    CHECK(polygon_to_json(P) == "[[0,\"0/1\"],[2,\"1/2\"]]");
    CHECK(polygon_to_csv(P) == "x,y_num,y_den\n0,0,1\n2,1,2\n");
    SlopeMultiset S = slopes(P);
    CHECK(slopes_to_json(S) == "[\"1/4\",\"1/4\"]");
}

TEST_CASE("error paths: duplicate x, span mismatch") {
    CHECK_THROWS_AS(lower_hull({{0, Rat(0)}, {0, Rat(1)}}), ParamMismatch);
    Polygon a = from_slopes(SlopeMultiset{{Rat(0), Rat(1)}});
    Polygon b = from_slopes(SlopeMultiset{{Rat(0)}});
    CHECK_THROWS_AS(geq(a, b), LengthMismatch);
    CHECK_THROWS_AS(max_vertical_gap(a, b), LengthMismatch);
}
