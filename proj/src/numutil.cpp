#include "aswn/numutil.hpp"

#include <limits>

namespace aswn {

std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        Rat r(Int(s), 1);
        r.canonicalize();
        return r;
    }
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

int mobius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw BudgetExceeded("pow_u64 overflow");
        r *= base;
    }
    return r;
}

Int pow_int(long base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

int orbit_order(std::uint64_t u, std::uint64_t p, std::uint64_t md) {
    if (md == 1) return 1;
    std::uint64_t v = (u * (p % md)) % md;
    int b = 1;
    while (v != u % md) {
        v = (v * (p % md)) % md;
        ++b;
        if (b > static_cast<int>(md)) throw Error("orbit_order failed to close");
    }
    return b;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int residue_valuation(const Int& r, long p, int M) {
    if (r == 0) return M;
    Int v = r;
    int k = 0;
    while (k < M && mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        v /= p;
        ++k;
    }
    return k;
}

std::uint64_t phi_prime_power(long p, int m) {
    std::uint64_t r = static_cast<std::uint64_t>(p) - 1;
    for (int i = 1; i < m; ++i) r *= static_cast<std::uint64_t>(p);
    return r;
}

} // namespace aswn
