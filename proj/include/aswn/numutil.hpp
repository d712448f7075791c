#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "aswn/errors.hpp"

namespace aswn {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r);   // "num/den", canonical, den > 0
Rat rat_from_string(const std::string& s);

bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n); // distinct primes
int mobius(std::uint64_t n);

std::uint64_t pow_u64(std::uint64_t base, unsigned exp); // throws on overflow
Int pow_int(long base, unsigned exp);

// Multiplicative order of the map v -> p*v on the residue u modulo md,
// i.e. the least b >= 1 with u*p^b == u (mod md).
int orbit_order(std::uint64_t u, std::uint64_t p, std::uint64_t md);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// p-adic valuation of a residue in [0, p^M); returns M for residue 0.
int residue_valuation(const Int& r, long p, int M);

// phi(p^m) = (p-1)p^{m-1}
std::uint64_t phi_prime_power(long p, int m);

} // namespace aswn
