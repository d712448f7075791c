#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "aswn/cache.hpp"
#include "aswn/cyc.hpp"
#include "aswn/field_tower.hpp"
#include "aswn/polygon.hpp"

namespace aswn {

// Monic polynomial over F_q (level-1 coefficients), deg coprime to p.
struct FqPoly {
    int d = 1;
    std::vector<FFElem> coeffs; // a_0..a_d, a_d = 1
};

FqPoly make_fq_poly(const FieldTower& tower, const std::vector<std::vector<std::uint32_t>>& c);
std::string fq_poly_key(const FqPoly& f); // canonical digit string

// chi(1) = zeta_{p^m}^r with gcd(r,p)=1, 1 <= r < p^m
struct ChiSpec {
    int m = 1;
    std::uint64_t r = 1;
};

struct Budget {
    std::uint64_t per_sum = 10'000'000;
    std::uint64_t total = 100'000'000;
    std::uint64_t used = 0;
};

// Computes twisted exponential sums over F_{q^l}^x. The enumeration walks the
// cyclic group once per (f, m, l) and records the (norm dlog, trace) histogram,
// from which the sum for any u is assembled; the histogram is kept in-process,
// the per-u CycInt optionally on disk.
class ExpSumEngine {
public:
    ExpSumEngine(const FieldTower& tower, FqPoly f, int m, Budget budget,
                 const ExpSumCache* cache = nullptr);

    CycInt sum(std::uint64_t u, int l);
    std::uint64_t cost(int l_count) const; // sum of q^l, for budgeting and --dry-run

    const FieldTower& tower() const { return tower_; }
    const FqPoly& f() const { return f_; }
    int m() const { return m_; }

private:
    const FieldTower& tower_;
    FqPoly f_;
    int m_;
    Budget budget_;
    const ExpSumCache* cache_;
    std::map<int, std::vector<std::uint64_t>> raw_; // l -> histogram [(q-1) x p^m]

    const std::vector<std::uint64_t>& raw_histogram(int l);
    std::string cache_key(std::uint64_t u, int l) const;
};

using ExpSumTable = std::map<int, CycInt>; // l -> S_l

ExpSumTable exp_sums(ExpSumEngine& engine, std::uint64_t u, int l_count);

struct LPoly {
    long p;
    int a;
    std::uint64_t u;
    int m;
    int D; // d * p^{m-1}
    std::vector<CycInt> c; // c_0..c_D
};

// Power-series coefficients c_0..c_{k_max} of exp(sum S_l s^l / l); every
// coefficient must come out integral (the recursion divides by k).
std::vector<CycInt> l_series(const ExpSumTable& sums, int k_max);

// Degree-D truncation with the degree invariant: c_D != 0 and, when the table
// reaches l = D+2, c_{D+1} = c_{D+2} = 0 exactly.
LPoly l_polynomial(const ExpSumTable& sums, int D, long p, int a, std::uint64_t u, int m);

std::string lpoly_to_json(const LPoly& L); // instance header + coefficient matrices

// Independent oracle: the Euler product over closed points of the torus,
// expanded to order s^deg. Grouped by degree and character value, so the cost
// is enumeration plus a handful of series multiplications.
std::vector<CycInt> euler_oracle(const FieldTower& tower, const FqPoly& f, std::uint64_t u,
                                 const ChiSpec& chi, int deg, Budget& budget);

struct NewtonResult {
    Polygon np;   // p-adic Newton polygon of L (v_p units)
    int M_used;
};

// Valuations via specialization X -> teich(g), Y -> (1+pi)^r; doubles the
// working precision on PrecisionExhausted, up to M = 4096.
NewtonResult np_of_l(const LPoly& L, const FieldTower& tower, const ChiSpec& chi,
                     int M_start = 0);

// Slopes of the characteristic series below a*k_max: the union over i < k_max
// of (a*i + slopes of L). Requires all L-slopes in [0, a).
SlopeMultiset char_series_slopes(const Polygon& np_L, int a, int k_max);

FqPoly twist_compose(const FieldTower& tower, const FqPoly& f); // f(x^{q-1})

} // namespace aswn
