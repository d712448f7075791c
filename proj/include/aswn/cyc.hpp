#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aswn/field_tower.hpp"
#include "aswn/numutil.hpp"
#include "aswn/pi_ring.hpp"

namespace aswn {

// Coefficient ring for L-polynomials:
//   Z[X]/(X^{q-1} - 1)  tensor  Z[Y]/(Phi_{p^m}(Y)),
// X standing for the Teichmuller image of the tower generator and Y for the
// value chi(1). The X-relation is the group ring one; identities that need
// X to be a primitive (q-1)-th root of unity are checked after the further
// reduction mod Phi_{q-1}(X) (see reduce_x_cyclotomic).
struct CycRing {
    std::uint64_t q = 2;
    long p = 2;
    int m = 1;
    int xdim = 1;                         // q - 1
    int ydim = 1;                         // phi(p^m)
    std::uint64_t pm = 2;                 // p^m
    std::vector<std::vector<long>> yred;  // Y^{ydim+t} reduction rows
    std::vector<Int> phi_x;               // Phi_{q-1}(X), monic
    std::vector<std::vector<Int>> xred;   // X^{deg+t} mod Phi_{q-1}
};

const CycRing& cyc_ring(std::uint64_t q, long p, int m);

struct CycInt {
    const CycRing* R = nullptr;
    std::vector<Int> c; // row-major [x * ydim + y]

    bool operator==(const CycInt& o) const { return c == o.c; }
    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
};

CycInt cyc_zero(const CycRing& R);
CycInt cyc_one(const CycRing& R);
CycInt cyc_monomial(const CycRing& R, std::uint64_t xe, std::uint64_t ye, const Int& coef = 1);

CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_sub(const CycInt& a, const CycInt& b);
CycInt cyc_neg(const CycInt& a);
CycInt cyc_mul(const CycInt& a, const CycInt& b);
CycInt cyc_smul(const CycInt& a, const Int& s);

// Ring endomorphism Y -> Y^r (r coprime to p), the chi-rescaling.
CycInt cyc_map_y_power(const CycInt& a, std::uint64_t r);

// Image in Z[X]/Phi_{q-1}(X) tensor Z[Y]/Phi_{p^m}(Y) — a domain, and the
// ring where the L-function identities are exact.
struct CycReduced {
    int xdeg = 0;
    int ydim = 0;
    std::vector<Int> c;
    bool operator==(const CycReduced&) const = default;
    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
};
CycReduced reduce_x_cyclotomic(const CycInt& a);

// Rational multiples of CycInt, kept in lowest terms with positive denominator.
struct CycRat {
    CycInt num;
    Int den = 1;
};

CycRat cycrat_from_int(const CycInt& a);
void cycrat_normalize(CycRat& a);
CycRat cycrat_add(const CycRat& a, const CycRat& b);
CycRat cycrat_mul_int(const CycRat& a, const CycInt& b);
CycRat cycrat_div(const CycRat& a, const Int& k);
bool cycrat_is_integral(const CycRat& a);

// Ring map X -> teichmuller(g), Y -> (1+pi)^r into the Eisenstein ring.
PiRing::Elem specialize_to_pi(const CycInt& a, const FieldTower& tower, const PiRing& ring,
                              std::uint64_t r);

std::string cyc_to_json(const CycInt& a);
CycInt cyc_from_json(const std::string& text);

} // namespace aswn
