#pragma once

#include <memory>
#include <vector>

#include "aswn/numutil.hpp"
#include "aswn/unram.hpp"

namespace aswn {

// Z_q[pi] / (Phi_{p^m}(1+pi)) truncated mod p^M. Totally ramified of degree
// e = (p-1)p^{m-1} over the unramified base; v_p(pi) = 1/e. Elements are
// coefficient vectors over the base ring in the basis 1, pi, ..., pi^{e-1}.
class PiRing {
public:
    PiRing(long p, int m, int M, const fppoly::Poly& base_poly);

    long p() const { return p_; }
    int m() const { return m_; }
    int M() const { return M_; }
    int e() const { return e_; }
    const UnramRingZ& base() const { return base_; }

    using Elem = std::vector<UElemZ>; // length e

    Elem zero() const;
    Elem one() const;
    Elem pi() const;
    Elem from_base(const UElemZ& c) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem smul(const Elem& x, const UElemZ& s) const;
    Elem pow(Elem base, std::uint64_t k) const;

    bool is_zero(const Elem& x) const;

    // Exact p-adic valuation, in units with v_p(p) = 1: the candidate values
    // i/e + v_p(c_i) are pairwise distinct, so the minimum is certain whenever
    // any coefficient is nonzero mod p^M. Throws PrecisionExhausted otherwise.
    Rat valuation(const Elem& x) const;

private:
    long p_;
    int m_;
    int M_;
    int e_;
    UnramRingZ base_;
    std::vector<std::vector<Int>> red_; // pi^{e+t} = sum red_[t][i] pi^i, residues mod p^M
};

} // namespace aswn
