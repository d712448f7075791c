#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aswn/field_tower.hpp"
#include "aswn/lfun.hpp"
#include "aswn/polygon.hpp"
#include "aswn/unram.hpp"

namespace aswn {
namespace dwork {

// Series in tau = pi^{1/(d(q-1))} truncated at tau^{Ktau}, coefficients in the
// level-1 unramified ring mod p^M. v_T readings are v_tau / (d(q-1)).
struct TauRing {
    UnramRingZ base;
    int Ktau;
    int dq1; // d(q-1)

    TauRing(long p, int M, const fppoly::Poly& base_poly, int Ktau_, int dq1_)
        : base(p, M, base_poly), Ktau(Ktau_), dq1(dq1_) {
        base.ensure_frobenius();
    }
};

struct TauSeries {
    std::vector<UElemZ> c; // length Ktau
};

TauSeries ts_zero(const TauRing& R);
TauSeries ts_one(const TauRing& R);
TauSeries ts_add(const TauRing& R, const TauSeries& a, const TauSeries& b);
TauSeries ts_sub(const TauRing& R, const TauSeries& a, const TauSeries& b);
TauSeries ts_neg(const TauRing& R, const TauSeries& a);
TauSeries ts_mul(const TauRing& R, const TauSeries& a, const TauSeries& b);
TauSeries ts_sigma(const TauRing& R, const TauSeries& a); // Frobenius on coefficients
bool ts_is_zero(const TauRing& R, const TauSeries& a);
std::optional<int> ts_vtau(const TauRing& R, const TauSeries& a); // least nonzero index

// Artin-Hasse exponential over exact rationals, two routes: the exp formula
// and the Mobius product. Coefficients are p-integral; both routes must agree.
std::vector<Rat> artin_hasse_exp(long p, int K);
std::vector<Rat> artin_hasse_product(long p, int K);

// AH coefficients reduced into the ring after the p-integrality assertion.
std::vector<Int> artin_hasse_mod(long p, int K, const Int& pM);

// x-coefficients e_0..e_{j_max} of prod_i E(a_i pi x^i), as pi-power series of
// length P_pi over the base ring. Decay: v_pi(e_j) >= ceil(j/d).
std::vector<std::vector<UElemZ>> ef_pi_coeffs(const FieldTower& tower, const FqPoly& f,
                                              const UnramRingZ& base, int j_max, int P_pi);

struct NuclearMatrix {
    int n = 0;
    std::vector<TauSeries> a; // row-major

    const TauSeries& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
    TauSeries& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
};

// Matrix of sigma∘psi_p∘E_f on the basis tau^{c_{u,n}} x^{c_{u,n}/(q-1)}:
// entry (row, col) = tau^{c_col - c_row} sigma(e_j), j = (p c_row - c_col)/(q-1)
// when that is a nonnegative integer, else 0. Row `row` has v_tau >= (p-1)c_row.
NuclearMatrix nuclear_matrix(const FieldTower& tower, const FqPoly& f, const CSeq& cs, int n,
                             const TauRing& R);

// sigma^{a-1}(N) ... sigma(N) N
NuclearMatrix semilinear_power(const TauRing& R, const NuclearMatrix& N, int a);

// det(I - s M) coefficients r_0..r_{s_deg} by the Samuelson-Berkowitz
// division-free recurrence (the coefficient ring has zero divisors).
std::vector<TauSeries> char_series(const TauRing& R, const NuclearMatrix& M, int s_deg);

struct TadicNewton {
    Polygon det_np; // polygon of det(I - sM): heights v_tau(r_k)/(d(q-1))
    Polygon cf_np;  // after dividing slope multiplicities by b_u
};

TadicNewton tadic_np(const TauRing& R, const std::vector<TauSeries>& r, int b_u);

// Checks v_T(r_{kd}) = y_u(kd) with a unit coefficient at the leading index.
// Requires b_u = 1 so that r is the characteristic series itself.
bool unit_leading_term(const TauRing& R, const std::vector<TauSeries>& r, int k, int d,
                       long p, int a, std::uint64_t u);

// Lemma-style lower bound: given matrices M_i with row valuations >= t_i[row]
// (tau units), the polygon of det(I - s M_n...M_1) lies above the hull of
// (k, sum_i sum_{j<k} t_i[j]).  Entries are checked against t_i first.
bool lower_bound_check(const TauRing& R, const std::vector<NuclearMatrix>& mats,
                       const std::vector<std::vector<int>>& ts, int s_deg);

// Everything cmd-verify-dwork needs from one truncation level.
struct DworkRun {
    int n;
    int Ktau;
    int M;
    int s_deg;
    int b_u;
    std::vector<TauSeries> r; // det(I - sM) coefficients through s_deg
    Polygon det_np;
    Polygon cf_np;
    bool hp_bound_ok;         // per-coefficient v_T(r_k) >= scaled prefix sums
};

DworkRun run_dwork(const FieldTower& tower, const FqPoly& f, std::uint64_t u, int s_deg, int n,
                   int Ktau, int M);

// Longest common vertex prefix of two polygons (the doubling certificate).
Polygon stable_prefix(const Polygon& a, const Polygon& b);

// Debug serializers: coefficient vectors as decimal strings.
std::string tau_series_to_json(const TauRing& R, const TauSeries& t);
std::string matrix_to_json(const TauRing& R, const NuclearMatrix& M);

// Default truncation sizing for certifying vertices through s-degree s_deg.
void default_truncation(const FieldTower& tower, int d, std::uint64_t u, int s_deg, int& n,
                        int& Ktau, int& M);

} // namespace dwork
} // namespace aswn
