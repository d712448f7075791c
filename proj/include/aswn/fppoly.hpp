#pragma once

#include <cstdint>
#include <vector>

namespace aswn {

// Dense polynomials over F_p, coefficients in [0, p), lowest degree first.
// Small fields only; schoolbook arithmetic throughout.
namespace fppoly {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f);
int degree(const Poly& f); // -1 for zero

Poly add(const Poly& a, const Poly& b, long p);
Poly sub(const Poly& a, const Poly& b, long p);
Poly mul(const Poly& a, const Poly& b, long p);
Poly mod(Poly a, const Poly& f, long p); // f monic
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, long p);
Poly powmod(Poly base, std::uint64_t e, const Poly& f, long p);
Poly gcd(Poly a, Poly b, long p);
Poly make_monic(Poly a, long p);

// Extended gcd restricted to what the ring code needs: inverse of a mod f,
// with f monic and gcd(a, f) = 1.
Poly invmod(const Poly& a, const Poly& f, long p);

// Distinct-degree criterion: t^{p^n} == t (mod f) and gcd(t^{p^{n/r}} - t, f) = 1
// for every prime r | n.
bool is_irreducible(const Poly& f, long p);

} // namespace fppoly
} // namespace aswn
