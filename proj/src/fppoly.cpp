#include "aswn/fppoly.hpp"

#include "aswn/errors.hpp"
#include "aswn/numutil.hpp"

namespace aswn {
namespace fppoly {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly add(const Poly& a, const Poly& b, long p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0u) + (i < b.size() ? b[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s % p);
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, long p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0u) + static_cast<std::uint64_t>(p) -
                          (i < b.size() ? b[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s % p);
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    Poly r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
    trim(r);
    return r;
}

Poly mod(Poly a, const Poly& f, long p) {
    int df = degree(f);
    if (df < 0) throw DivisionByZero("fppoly::mod by zero polynomial");
    trim(a);
    while (degree(a) >= df) {
        int da = degree(a);
        std::uint32_t lead = a[da]; // f monic: quotient coefficient is lead
        for (int i = 0; i <= df; ++i) {
            std::uint64_t s = a[da - df + i] + static_cast<std::uint64_t>(p) * p -
                              static_cast<std::uint64_t>(lead) * f[i] % p;
            a[da - df + i] = static_cast<std::uint32_t>(s % p);
        }
        trim(a);
    }
    return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, long p) {
    return mod(mul(a, b, p), f, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, long p) {
    Poly r = {1};
    base = mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = mulmod(r, base, f, p);
        base = mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly make_monic(Poly a, long p) {
    trim(a);
    int d = degree(a);
    if (d < 0) return a;
    if (a[d] == 1) return a;
    // scale by inverse of leading coefficient (Fermat)
    std::uint64_t inv = 1, base = a[d], e = static_cast<std::uint64_t>(p) - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
    return a;
}

Poly gcd(Poly a, Poly b, long p) {
    a = make_monic(std::move(a), p);
    b = make_monic(std::move(b), p);
    while (degree(b) >= 0) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = make_monic(std::move(r), p);
    }
    return a;
}

Poly invmod(const Poly& a, const Poly& f, long p) {
    // extended Euclid on (f, a mod f), tracking the a-cofactor only
    Poly r0 = f, r1 = mod(a, f, p);
    Poly s0 = {}, s1 = {1};
    while (degree(r1) > 0) {
        // divide r0 by r1: long division with monic-ized divisor
        Poly div = make_monic(r1, p);
        std::uint32_t lead = r1[degree(r1)];
        // quotient of r0 by r1 equals quotient by div scaled by lead^{-1}
        Poly q;
        {
            Poly rem = r0;
            int dd = degree(div);
            trim(rem);
            q.assign(std::max(0, degree(rem) - dd + 1), 0);
            while (degree(rem) >= dd) {
                int dr = degree(rem);
                std::uint32_t c = rem[dr];
                q[dr - dd] = c;
                for (int i = 0; i <= dd; ++i) {
                    std::uint64_t s = rem[dr - dd + i] + static_cast<std::uint64_t>(p) * p -
                                      static_cast<std::uint64_t>(c) * div[i] % p;
                    rem[dr - dd + i] = static_cast<std::uint32_t>(s % p);
                }
                trim(rem);
            }
            // scale quotient by lead^{-1}
            std::uint64_t inv = 1, base = lead, e = static_cast<std::uint64_t>(p) - 2;
            while (e) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& c : q) c = static_cast<std::uint32_t>(c * inv % p);
            trim(q);
        }
        Poly r2 = sub(r0, mul(q, r1, p), p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (degree(r1) != 0) throw DivisionByZero("fppoly::invmod of non-unit");
    // r1 is a nonzero constant c: inverse is s1 / c
    std::uint64_t inv = 1, base = r1[0], e = static_cast<std::uint64_t>(p) - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    Poly out = s1;
    for (auto& c : out) c = static_cast<std::uint32_t>(c * inv % p);
    trim(out);
    return out;
}

bool is_irreducible(const Poly& f, long p) {
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // a root in F_p gives a linear factor; cheap rejection before the gcd test
    for (long c = 0; c < p; ++c) {
        std::uint64_t val = 0, cpow = 1;
        for (int i = 0; i <= n; ++i) {
            val = (val + f[i] * cpow) % static_cast<std::uint64_t>(p);
            cpow = cpow * static_cast<std::uint64_t>(c) % static_cast<std::uint64_t>(p);
        }
        if (val == 0) return false;
    }
    Poly x = {0, 1};
    // t^{p^n} == t mod f
    Poly t = x;
    for (int i = 0; i < n; ++i) t = powmod(t, static_cast<std::uint64_t>(p), f, p);
    if (sub(t, x, p) != Poly{}) return false;
    for (std::uint64_t r : prime_factors_u64(static_cast<std::uint64_t>(n))) {
        int k = n / static_cast<int>(r);
        Poly s = x;
        for (int i = 0; i < k; ++i) s = powmod(s, static_cast<std::uint64_t>(p), f, p);
        Poly g = gcd(sub(s, x, p), f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

} // namespace fppoly
} // namespace aswn
