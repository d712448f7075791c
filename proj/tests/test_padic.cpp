#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aswn/cyc.hpp"
#include "aswn/field_tower.hpp"
#include "aswn/pi_ring.hpp"
#include "aswn/unram.hpp"

using namespace aswn;

TEST_CASE("teichmuller lifts") {
    FieldTower t5(5, 1, 1);
    UnramRingZ R(5, 3, t5.defining_poly(1));
    CHECK(R.teichmuller({0}, 5) == R.zero());
    CHECK(R.teichmuller({1}, 5) == R.one());

    // 2^25 mod 125 = 57; 57^2 = -1, 57^4 = 1 mod 125
    UElemZ z = R.teichmuller({2}, 5);
    CHECK(z == UElemZ{Int(57)});
    CHECK(R.mul(z, z) == UElemZ{Int(124)});
    CHECK(R.pow(z, 4) == R.one());

    // independent oracle: direct big-integer powering 2^(5^2) mod 5^3
    Int direct;
    Int base = 2, mod = 125;
    mpz_powm_ui(direct.get_mpz_t(), base.get_mpz_t(), 25, mod.get_mpz_t());
    CHECK(direct == 57);
}

TEST_CASE("teichmuller is multiplicative and Frobenius-stable") {
    FieldTower t9(3, 1, 2);
    UnramRingZ R(3, 4, t9.defining_poly(2));
    std::vector<FFElem> units;
    t9.enumerate_units(2, [&](const FFElem& x) { units.push_back(x); });
    for (const auto& x : units) {
        UElemZ zx = R.teichmuller(x.c, 9);
        CHECK(R.pow(zx, 9) == zx); // z^{q^l} = z
        for (const auto& y : units) {
            CHECK(R.teichmuller(t9.mul(x, y).c, 9) == R.mul(zx, R.teichmuller(y.c, 9)));
        }
    }
}

TEST_CASE("trace") {
    FieldTower t9(3, 1, 2);
    UnramRingZ R(3, 3, t9.defining_poly(2));
    CHECK(R.trace(R.one()) == Int(2)); // ring degree

    // z = teich(t) in F_9 = F_3[t]/(t^2+1): sigma(z) = -z, trace 0
    UElemZ z = R.teichmuller({0, 1}, 9);
    CHECK(R.trace(z) == Int(0));

    // linearity, and agreement with the sum of Frobenius conjugates
    R.ensure_frobenius();
    std::vector<FFElem> units;
    t9.enumerate_units(2, [&](const FFElem& x) { units.push_back(x); });
    for (const auto& x : units) {
        UElemZ zx = R.teichmuller(x.c, 9);
        UElemZ conj_sum = R.add(zx, R.frobenius(zx));
        CHECK(conj_sum == R.scalar(R.trace(zx)));
        for (const auto& y : units) {
            UElemZ zy = R.teichmuller(y.c, 9);
            CHECK(R.trace(R.add(zx, zy)) == R.mod_c(R.trace(zx) + R.trace(zy)));
        }
    }
}

TEST_CASE("frobenius automorphism") {
    FieldTower t9(3, 1, 2);
    UnramRingZ R(3, 5, t9.defining_poly(2));
    R.ensure_frobenius();

    // fixes the prime subring
    CHECK(R.frobenius(R.scalar(Int(17))) == R.scalar(Int(17)));

    // sigma^n = identity; sigma(teich(x)) = teich(x^p)
    t9.enumerate_units(2, [&](const FFElem& x) {
        UElemZ z = R.teichmuller(x.c, 9);
        CHECK(R.frobenius(R.frobenius(z)) == z);
        CHECK(R.frobenius(z) == R.teichmuller(t9.pow(x, 3).c, 9));
    });

    // ring homomorphism spot-check
    UElemZ s = R.teichmuller({1, 2}, 9);
    UElemZ t = R.teichmuller({2, 1}, 9);
    CHECK(R.frobenius(R.mul(s, t)) == R.mul(R.frobenius(s), R.frobenius(t)));
}

TEST_CASE("uint64 ring matches the bignum ring") {
    FieldTower t4(2, 2, 3);
    UnramRingZ RZ(2, 3, t4.defining_poly(3));
    UnramRingU RU(2, 3, t4.defining_poly(3));
    t4.enumerate_units(3, [&](const FFElem& x) {
        UElemZ a = RZ.teichmuller(x.c, 64);
        UElemU b = RU.teichmuller(x.c, 64);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Int(static_cast<long>(b[i])));
        CHECK(RZ.trace(a) == Int(static_cast<long>(RU.trace(b))));
    });
}

TEST_CASE("pi ring: valuations") {
    FieldTower t3(3, 1, 1);
    PiRing ring(3, 1, 6, t3.defining_poly(1));
    CHECK(ring.e() == 2);
    CHECK(ring.valuation(ring.one()) == Rat(0));
    CHECK(ring.valuation(ring.pi()) == make_rat(1, 2)); // Eisenstein: v_p(pi) = 1/phi(3)

    // pi^2 = -3 - 3pi from Phi_3(1+pi) = pi^2 + 3pi + 3
    auto pi2 = ring.mul(ring.pi(), ring.pi());
    CHECK(ring.valuation(pi2) == Rat(1));
    auto expect = ring.sub(ring.zero(), ring.add(ring.from_base(ring.base().scalar(Int(3))),
                                                 ring.smul(ring.pi(), ring.base().scalar(Int(3)))));
    CHECK(pi2 == expect);

    CHECK_THROWS_AS(ring.valuation(ring.zero()), PrecisionExhausted);

    // valuation is additive (sampled)
    auto x = ring.add(ring.one(), ring.pi());                  // v = 0
    auto y = ring.smul(ring.pi(), ring.base().scalar(Int(6))); // v = 1 + 1/2
    CHECK(ring.valuation(ring.mul(x, y)) == ring.valuation(x) + ring.valuation(y));
    CHECK(ring.valuation(ring.mul(y, y)) == Rat(3));
}

TEST_CASE("pi ring across conductors: v_p(chi(1)-1) = 1/((p-1)p^{m-1})") {
    for (auto [p, m] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
        FieldTower t(p, 1, 1);
        PiRing ring(p, m, 8, t.defining_poly(1));
        auto v = ring.valuation(ring.pi());
        CHECK(v == make_rat(1, static_cast<long>(phi_prime_power(p, m))));
    }
}

TEST_CASE("cyclotomic ring arithmetic") {
    const CycRing& R = cyc_ring(3, 3, 1); // q=3, p=3, m=1: X^2=1, Phi_3(Y)
    CycInt X = cyc_monomial(R, 1, 0);
    CycInt Y = cyc_monomial(R, 0, 1);

    CHECK(cyc_mul(X, X) == cyc_one(R));                       // X^{q-1} = 1
    CHECK(cyc_mul(Y, Y) == cyc_sub(cyc_neg(cyc_one(R)), Y));  // Y^2 = -1 - Y
    CHECK(cyc_mul(X, cyc_zero(R)) == cyc_zero(R));
    CHECK(cyc_monomial(R, 0, 3) == cyc_one(R)); // Y^{p^m} = 1

    // reduction mod Phi_2(X) = X+1 sends X to -1
    CycInt one_plus_x = cyc_add(cyc_one(R), X);
    CHECK_FALSE(one_plus_x.is_zero());
    CHECK(reduce_x_cyclotomic(one_plus_x).is_zero());

    // Y-power endomorphism
    CHECK(cyc_map_y_power(Y, 2) == cyc_mul(Y, Y));

    // rational layer
    CycRat half = cycrat_div(cycrat_from_int(cyc_one(R)), Int(2));
    CHECK_FALSE(cycrat_is_integral(half));
    CycRat whole = cycrat_add(half, half);
    CHECK(cycrat_is_integral(whole));
    CHECK(whole.num == cyc_one(R));
}

TEST_CASE("specialization: ring map into the pi ring") {
    FieldTower t3(3, 1, 1);
    const CycRing& R = cyc_ring(3, 3, 1);
    PiRing ring(3, 1, 8, t3.defining_poly(1));

    CHECK(specialize_to_pi(cyc_one(R), t3, ring, 1) == ring.one());
    CHECK(specialize_to_pi(cyc_monomial(R, 2, 0), t3, ring, 1) == ring.one()); // X^{q-1}

    // Y - Y^2 -> (1+pi) - (1+pi)^2 = -pi - pi^2, v_p = 1/2
    CycInt c = cyc_sub(cyc_monomial(R, 0, 1), cyc_mul(cyc_monomial(R, 0, 1), cyc_monomial(R, 0, 1)));
    auto img = specialize_to_pi(c, t3, ring, 1);
    CHECK(ring.valuation(img) == make_rat(1, 2));
    auto direct = ring.sub(ring.zero(), ring.add(ring.pi(), ring.mul(ring.pi(), ring.pi())));
    CHECK(img == direct);

    // v_p(specialize(Y-1)) = 1/((p-1)p^{m-1}) for a grid of (p, m)
    for (auto [p, m] : std::vector<std::pair<long, int>>{{2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        FieldTower t(p, 1, 1);
        const CycRing& Rp = cyc_ring(static_cast<std::uint64_t>(p), p, m);
        PiRing rp(p, m, 8, t.defining_poly(1));
        CycInt ym1 = cyc_sub(cyc_monomial(Rp, 0, 1), cyc_one(Rp));
        CHECK(rp.valuation(specialize_to_pi(ym1, t, rp, 1)) ==
              make_rat(1, static_cast<long>(phi_prime_power(p, m))));
    }

    // ring homomorphism property (sampled)
    CycInt aint = cyc_add(cyc_monomial(R, 1, 1), cyc_smul(cyc_one(R), Int(2)));
    CycInt bint = cyc_sub(cyc_monomial(R, 1, 2), cyc_monomial(R, 0, 1, Int(5)));
    CHECK(specialize_to_pi(cyc_mul(aint, bint), t3, ring, 1) ==
          ring.mul(specialize_to_pi(aint, t3, ring, 1), specialize_to_pi(bint, t3, ring, 1)));

    CHECK_THROWS_AS(specialize_to_pi(aint, t3, ring, 3), ParamMismatch); // gcd(r, p) != 1
}

TEST_CASE("cyc json round trip") {
    const CycRing& R = cyc_ring(4, 2, 2);
    CycInt a = cyc_add(cyc_monomial(R, 2, 1, Int(-7)), cyc_monomial(R, 0, 0, Int("12345678901234")));
    CHECK(cyc_from_json(cyc_to_json(a)) == a);
}

TEST_CASE("mismatched cyclotomic rings are rejected") {
    const CycRing& R1 = cyc_ring(3, 3, 1);
    const CycRing& R2 = cyc_ring(3, 3, 2);
    CHECK_THROWS_AS(cyc_add(cyc_one(R1), cyc_one(R2)), ParamMismatch);
    CHECK_THROWS_AS(cyc_mul(cyc_one(R1), cyc_one(R2)), ParamMismatch);
}

TEST_CASE("cyclotomic X-reduction with a nontrivial quotient (q = 8)") {
    const CycRing& R = cyc_ring(8, 2, 1); // X^7 = 1, Phi_7 of degree 6
    CycInt all = cyc_zero(R);
    for (int i = 0; i < 7; ++i) all = cyc_add(all, cyc_monomial(R, i, 0));
    CHECK_FALSE(all.is_zero());
    CHECK(reduce_x_cyclotomic(all).is_zero()); // 1 + X + ... + X^6 = Phi_7
    // X^6 alone reduces to -(1 + X + ... + X^5)
    CycReduced r = reduce_x_cyclotomic(cyc_monomial(R, 6, 0));
    for (int i = 0; i < 6; ++i) CHECK(r.c[i] == -1);
}
