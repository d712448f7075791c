#include "aswn/pi_ring.hpp"

namespace aswn {

namespace {

// Phi_{p^m}(1+pi) = sum_{j<p} (1+pi)^{j p^{m-1}} as an exact integer
// polynomial in pi; monic of degree (p-1)p^{m-1}, Eisenstein at p.
std::vector<Int> eisenstein_poly(long p, int m) {
    std::uint64_t step = 1;
    for (int i = 1; i < m; ++i) step *= static_cast<std::uint64_t>(p);
    std::uint64_t e = static_cast<std::uint64_t>(p - 1) * step;
    std::vector<Int> out(e + 1, 0);
    for (long j = 0; j < p; ++j) {
        std::uint64_t k = static_cast<std::uint64_t>(j) * step;
        // add (1+pi)^k
        Int b = 1;
        for (std::uint64_t i = 0; i <= k; ++i) {
            out[i] += b;
            // binomial update C(k, i+1) = C(k, i) * (k-i) / (i+1)
            b *= static_cast<unsigned long>(k - i);
            b /= static_cast<unsigned long>(i + 1);
        }
    }
    if (out[e] != 1) throw Error("Eisenstein relation not monic");
    return out;
}

} // namespace

PiRing::PiRing(long p, int m, int M, const fppoly::Poly& base_poly)
    : p_(p), m_(m), M_(M), base_(p, M, base_poly) {
    e_ = static_cast<int>(phi_prime_power(p, m));
    auto rel = eisenstein_poly(p, m);
    // pi^e = -(low part); build shifted rows pi^{e+t} by iterated multiplication
    std::vector<Int> cur(e_);
    for (int i = 0; i < e_; ++i) {
        Int v = -rel[i];
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), base_.pM.get_mpz_t());
        cur[i] = v;
    }
    red_.assign(std::max(0, e_ - 1), {});
    for (int t = 0; t + 1 < e_; ++t) {
        red_[t] = cur;
        std::vector<Int> nx(e_, 0);
        Int top = cur[e_ - 1];
        for (int i = e_ - 1; i >= 1; --i) nx[i] = cur[i - 1];
        for (int i = 0; i < e_; ++i) {
            Int v = nx[i] + top * red_[0][i];
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), base_.pM.get_mpz_t());
            nx[i] = v;
        }
        cur = std::move(nx);
    }
}

PiRing::Elem PiRing::zero() const { return Elem(e_, base_.zero()); }

PiRing::Elem PiRing::one() const {
    Elem x = zero();
    x[0] = base_.one();
    return x;
}

PiRing::Elem PiRing::pi() const {
    Elem x = zero();
    if (e_ > 1)
        x[1] = base_.one();
    else
        x[0] = base_.scalar(Int(-static_cast<long>(p_))); // e=1: pi = -p (p=2, m=1)
    return x;
}

PiRing::Elem PiRing::from_base(const UElemZ& c) const {
    Elem x = zero();
    x[0] = c;
    return x;
}

PiRing::Elem PiRing::add(const Elem& x, const Elem& y) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.add(x[i], y[i]);
    return r;
}

PiRing::Elem PiRing::sub(const Elem& x, const Elem& y) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.sub(x[i], y[i]);
    return r;
}

PiRing::Elem PiRing::smul(const Elem& x, const UElemZ& s) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.mul(x[i], s);
    return r;
}

PiRing::Elem PiRing::mul(const Elem& x, const Elem& y) const {
    std::vector<UElemZ> acc(2 * e_ - 1, base_.zero());
    for (int i = 0; i < e_; ++i) {
        if (base_.is_zero(x[i])) continue;
        for (int j = 0; j < e_; ++j) {
            if (base_.is_zero(y[j])) continue;
            acc[i + j] = base_.add(acc[i + j], base_.mul(x[i], y[j]));
        }
    }
    Elem r(acc.begin(), acc.begin() + e_);
    for (int k = e_; k < 2 * e_ - 1; ++k) {
        if (base_.is_zero(acc[k])) continue;
        const auto& row = red_[k - e_];
        for (int i = 0; i < e_; ++i) {
            if (row[i] == 0) continue;
            r[i] = base_.add(r[i], base_.smul(acc[k], row[i]));
        }
    }
    return r;
}

PiRing::Elem PiRing::pow(Elem base, std::uint64_t k) const {
    Elem r = one();
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

bool PiRing::is_zero(const Elem& x) const {
    for (const auto& c : x)
        if (!base_.is_zero(c)) return false;
    return true;
}

Rat PiRing::valuation(const Elem& x) const {
    bool any = false;
    Rat best;
    for (int i = 0; i < e_; ++i) {
        if (base_.is_zero(x[i])) continue;
        int v = base_.valuation(x[i]);
        Rat cand = make_rat(static_cast<long>(i) + static_cast<long>(e_) * v,
                            static_cast<long>(e_));
        if (!any || cand < best) {
            best = cand;
            any = true;
        }
    }
    if (!any) throw PrecisionExhausted("pi-adic valuation: all coefficients vanish mod p^M");
    return best;
}

} // namespace aswn
