#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "aswn/errors.hpp"
#include "aswn/fppoly.hpp"
#include "aswn/numutil.hpp"

namespace aswn {

// Z_q truncated mod p^M: Z/p^M [t] / (H(t)) with H the naive lift of a
// defining polynomial over F_p. Elements are coefficient vectors of length n.
// C is the residue type: uint64_t when p^M is small (hot loops), mpz_class
// otherwise. All arithmetic is schoolbook; fields here are tiny.
template <class C>
struct UnramRing {
    long p = 0;
    int M = 1;
    C pM{};
    int n = 1;
    std::vector<C> mod_low;              // n low coefficients of the monic modulus
    std::vector<C> neg_mod_low;          // pM - mod_low, reduced
    std::vector<std::vector<C>> red;     // t^{n+i} mod H, i in [0, n-1)
    std::vector<C> basis_trace;          // Tr(t^j) mod p^M
    std::vector<std::vector<C>> frob_pow;// sigma(t)^j for j < n (filled on demand)

    using Elem = std::vector<C>;

    UnramRing() = default;
    UnramRing(long p_, int M_, const fppoly::Poly& poly);

    Elem zero() const { return Elem(n, C(0)); }
    Elem one() const {
        Elem e(n, C(0));
        e[0] = C(1);
        return e;
    }
    Elem scalar(const C& v) const {
        Elem e(n, C(0));
        e[0] = mod_c(v);
        return e;
    }

    C mod_c(const C& v) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem smul(const Elem& x, const C& s) const;
    Elem pow(Elem base, std::uint64_t e) const;
    Elem inv(const Elem& x) const; // x a unit (nonzero mod p)

    bool is_zero(const Elem& x) const {
        for (const C& v : x)
            if (v != C(0)) return false;
        return true;
    }
    bool is_unit(const Elem& x) const { // nonzero mod p
        for (const C& v : x)
            if (v % C(static_cast<long>(p)) != C(0)) return true;
        return false;
    }

    // Trace of the multiplication-by-z matrix in the power basis.
    C trace(const Elem& z) const;

    // min p-adic valuation over coefficients; M when z == 0 at this precision
    int valuation(const Elem& z) const;

    // The ring automorphism with sigma(z) == z^p mod p, as precomputed powers
    // of sigma(t); Hensel-lifted from the root t^p of H mod p.
    void ensure_frobenius();
    Elem frobenius(const Elem& z) const;

    // Teichmuller lift: naive lift of digits, then z -> z^{q_l} applied M-1
    // times; q_l is the cardinality of the residue field.
    Elem teichmuller(const std::vector<std::uint32_t>& digits, std::uint64_t q_l) const;
};

using UnramRingZ = UnramRing<Int>;
using UnramRingU = UnramRing<std::uint64_t>;
using UElemZ = UnramRingZ::Elem;
using UElemU = UnramRingU::Elem;

// --- implementation -------------------------------------------------------

template <class C>
C UnramRing<C>::mod_c(const C& v) const {
    if constexpr (std::is_same_v<C, Int>) {
        Int r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), pM.get_mpz_t());
        return r;
    } else {
        return v % pM;
    }
}

template <class C>
UnramRing<C>::UnramRing(long p_, int M_, const fppoly::Poly& poly) : p(p_), M(M_) {
    n = fppoly::degree(poly);
    if (n < 1) throw InvalidConfig("modulus must have positive degree");
    if constexpr (std::is_same_v<C, Int>) {
        pM = pow_int(p, static_cast<unsigned>(M));
    } else {
        pM = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(M));
        // accumulators in mul() hold up to 2n products of residues
        unsigned __int128 worst =
            static_cast<unsigned __int128>(pM - 1) * (pM - 1) * (2 * n + 2);
        if (worst > static_cast<unsigned __int128>(UINT64_MAX))
            throw PrecisionExhausted("p^M too large for the fixed-width ring");
    }
    mod_low.assign(n, C(0));
    neg_mod_low.assign(n, C(0));
    for (int i = 0; i < n; ++i) {
        mod_low[i] = C(static_cast<long>(poly[i]));
        neg_mod_low[i] = mod_c(pM - mod_low[i]);
    }
    // red[i] = t^{n+i} mod H, computed by iterated shift
    red.assign(std::max(0, n - 1), Elem());
    Elem cur = neg_mod_low; // t^n
    for (int i = 0; i + 1 < n; ++i) {
        red[i] = cur;
        // cur <- t*cur
        Elem nx(n, C(0));
        C top = cur[n - 1];
        for (int j = n - 1; j >= 1; --j) nx[j] = cur[j - 1];
        nx[0] = C(0);
        for (int j = 0; j < n; ++j) nx[j] = mod_c(nx[j] + top * neg_mod_low[j]);
        cur = std::move(nx);
    }
    // basis traces: Tr(t^j) = sum_i [t^{i+j}]_i
    basis_trace.assign(n, C(0));
    basis_trace[0] = mod_c(C(static_cast<long>(n)));
    for (int j = 1; j < n; ++j) {
        C s(0);
        for (int i = n - j; i < n; ++i) s = s + red[i + j - n][i];
        basis_trace[j] = mod_c(s);
    }
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::add(const Elem& x, const Elem& y) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = mod_c(x[i] + y[i]);
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::sub(const Elem& x, const Elem& y) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = mod_c(x[i] + pM - y[i]);
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::neg(const Elem& x) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = mod_c(pM - x[i]);
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::mul(const Elem& x, const Elem& y) const {
    std::vector<C> acc(2 * n - 1, C(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == C(0)) continue;
        for (int j = 0; j < n; ++j) acc[i + j] = acc[i + j] + x[i] * y[j];
    }
    for (auto& v : acc) v = mod_c(v);
    Elem r(acc.begin(), acc.begin() + n);
    for (int k = n; k < 2 * n - 1; ++k) {
        if (acc[k] == C(0)) continue;
        const Elem& row = red[k - n];
        for (int j = 0; j < n; ++j) r[j] = r[j] + acc[k] * row[j];
    }
    for (auto& v : r) v = mod_c(v);
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::smul(const Elem& x, const C& s) const {
    Elem r(n);
    C sm = mod_c(s);
    for (int i = 0; i < n; ++i) r[i] = mod_c(x[i] * sm);
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::pow(Elem base, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::inv(const Elem& x) const {
    if (!is_unit(x)) throw DivisionByZero("inverse of a non-unit");
    // bootstrap mod p via F_p polynomial egcd, then Newton to full precision
    fppoly::Poly xb(n), H(n + 1);
    for (int i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<C, Int>) {
            xb[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(x[i].get_mpz_t(), p));
            H[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(mod_low[i].get_mpz_t(), p));
        } else {
            xb[i] = static_cast<std::uint32_t>(x[i] % static_cast<C>(p));
            H[i] = static_cast<std::uint32_t>(mod_low[i] % static_cast<C>(p));
        }
    }
    H[n] = 1;
    fppoly::Poly y0 = fppoly::invmod(xb, H, p);
    Elem y = zero();
    for (size_t i = 0; i < y0.size(); ++i) y[i] = C(static_cast<long>(y0[i]));
    int prec = 1;
    while (prec < M) {
        // y <- y(2 - x y)
        Elem t = mul(x, y);
        Elem two = scalar(C(2));
        y = mul(y, sub(two, t));
        prec *= 2;
    }
    return y;
}

template <class C>
C UnramRing<C>::trace(const Elem& z) const {
    C s(0);
    for (int j = 0; j < n; ++j) s = s + z[j] * basis_trace[j];
    return mod_c(s);
}

template <class C>
int UnramRing<C>::valuation(const Elem& z) const {
    int best = M;
    for (const C& v : z) {
        if (v == C(0)) continue;
        int k = 0;
        C w = v;
        while (k < M && w % C(static_cast<long>(p)) == C(0)) {
            w = w / C(static_cast<long>(p));
            ++k;
        }
        best = std::min(best, k);
    }
    return best;
}

template <class C>
void UnramRing<C>::ensure_frobenius() {
    if (!frob_pow.empty()) return;
    // root of H congruent to t^p mod p, by Newton iteration
    Elem t = zero();
    if (n == 1) {
        frob_pow.assign(1, one());
        return;
    }
    t[1] = C(1);
    Elem r = pow(t, static_cast<std::uint64_t>(p));
    auto H_at = [&](const Elem& z) {
        // monic modulus: z^n + sum mod_low[i] z^i
        Elem acc = one();
        Elem val = zero();
        for (int i = 0; i < n; ++i) {
            val = add(val, smul(acc, mod_low[i]));
            acc = mul(acc, z);
        }
        return add(val, acc);
    };
    auto Hp_at = [&](const Elem& z) {
        // derivative: n z^{n-1} + sum i*mod_low[i] z^{i-1}
        Elem acc = one();
        Elem val = zero();
        for (int i = 1; i < n; ++i) {
            val = add(val, smul(acc, mod_c(mod_low[i] * C(i))));
            acc = mul(acc, z);
        }
        return add(val, smul(acc, C(static_cast<long>(n))));
    };
    int prec = 1;
    while (prec < M) {
        Elem corr = mul(H_at(r), inv(Hp_at(r)));
        r = sub(r, corr);
        prec *= 2;
    }
    if (!is_zero(H_at(r))) throw Error("frobenius root refinement failed");
    frob_pow.assign(n, one());
    for (int j = 1; j < n; ++j) frob_pow[j] = mul(frob_pow[j - 1], r);
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::frobenius(const Elem& z) const {
    if (n == 1) return z;
    if (frob_pow.empty()) throw Error("frobenius not initialized");
    Elem out = zero();
    for (int j = 0; j < n; ++j) {
        if (z[j] == C(0)) continue;
        for (int i = 0; i < n; ++i) out[i] = mod_c(out[i] + z[j] * frob_pow[j][i]);
    }
    return out;
}

template <class C>
typename UnramRing<C>::Elem UnramRing<C>::teichmuller(const std::vector<std::uint32_t>& digits,
                                                      std::uint64_t q_l) const {
    Elem z = zero();
    for (int i = 0; i < n && i < static_cast<int>(digits.size()); ++i)
        z[i] = C(static_cast<long>(digits[i]));
    for (int it = 1; it < M; ++it) z = pow(z, q_l);
    return z;
}

} // namespace aswn
