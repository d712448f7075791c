#include "aswn/cyc.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aswn {

namespace {

using IPoly = std::vector<Int>; // dense over Z, lowest degree first

void itrim(IPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// exact division by a monic divisor
IPoly idiv_monic(IPoly a, const IPoly& d) {
    itrim(a);
    IPoly q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, 0);
    while (a.size() >= d.size()) {
        Int c = a.back();
        size_t shift = a.size() - d.size();
        q[shift] = c;
        for (size_t i = 0; i < d.size(); ++i) a[shift + i] -= c * d[i];
        itrim(a);
        if (!a.empty() && a.size() >= d.size() && a.back() == 0) itrim(a);
    }
    if (!a.empty()) throw Error("idiv_monic: nonzero remainder");
    return q;
}

IPoly cyclotomic(std::uint64_t n) {
    // X^n - 1 divided by all lower-order cyclotomic factors
    IPoly f(n + 1, 0);
    f[0] = -1;
    f[n] = 1;
    for (std::uint64_t d = 1; d < n; ++d) {
        if (n % d == 0) f = idiv_monic(std::move(f), cyclotomic(d));
    }
    return f;
}

std::map<std::tuple<std::uint64_t, long, int>, CycRing>& ring_registry() {
    static std::map<std::tuple<std::uint64_t, long, int>, CycRing> reg;
    return reg;
}

} // namespace

const CycRing& cyc_ring(std::uint64_t q, long p, int m) {
    auto key = std::make_tuple(q, p, m);
    auto& reg = ring_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;

    CycRing R;
    R.q = q;
    R.p = p;
    R.m = m;
    R.xdim = static_cast<int>(q - 1);
    R.ydim = static_cast<int>(phi_prime_power(p, m));
    R.pm = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(m));

    // Y^{ydim} = -(Y^{(p-2)p^{m-1}} + ... + Y^{p^{m-1}} + 1), then shifted rows.
    // Rows are kept through Y^{2 ydim - 1}: products need up to Y^{2 ydim - 2}
    // and raw exponents from reduction mod p^m reach p^m - 1.
    std::uint64_t step = R.pm / static_cast<std::uint64_t>(p); // p^{m-1}
    std::vector<long> base(R.ydim, 0);
    for (long j = 0; j + 1 < p; ++j) base[static_cast<size_t>(j) * step] = -1;
    R.yred.assign(R.ydim, {});
    std::vector<long> cur = base;
    for (int t = 0; t < R.ydim; ++t) {
        R.yred[t] = cur;
        std::vector<long> nx(R.ydim, 0);
        long top = cur[R.ydim - 1];
        for (int i = R.ydim - 1; i >= 1; --i) nx[i] = cur[i - 1];
        if (top != 0)
            for (int i = 0; i < R.ydim; ++i) nx[i] += top * base[i];
        cur = std::move(nx);
    }

    R.phi_x = cyclotomic(q - 1);
    int deg = static_cast<int>(R.phi_x.size()) - 1;
    R.xred.assign(std::max(0, R.xdim - deg), {});
    if (!R.xred.empty()) {
        std::vector<Int> curx(deg, 0);
        for (int i = 0; i < deg; ++i) curx[i] = -R.phi_x[i];
        for (int t = 0; t < R.xdim - deg; ++t) {
            R.xred[t] = curx;
            std::vector<Int> nx(deg, 0);
            Int top = curx[deg - 1];
            for (int i = deg - 1; i >= 1; --i) nx[i] = curx[i - 1];
            if (top != 0)
                for (int i = 0; i < deg; ++i) nx[i] += top * (-R.phi_x[i]);
            curx = std::move(nx);
        }
    }

    auto [ins, ok] = reg.emplace(key, std::move(R));
    (void)ok;
    return ins->second;
}

CycInt cyc_zero(const CycRing& R) {
    CycInt a;
    a.R = &R;
    a.c.assign(static_cast<size_t>(R.xdim) * R.ydim, 0);
    return a;
}

CycInt cyc_one(const CycRing& R) {
    CycInt a = cyc_zero(R);
    a.c[0] = 1;
    return a;
}

namespace {

void add_y_power(CycInt& a, int xe, std::uint64_t ye, const Int& coef) {
    const CycRing& R = *a.R;
    if (ye < static_cast<std::uint64_t>(R.ydim)) {
        a.c[static_cast<size_t>(xe) * R.ydim + ye] += coef;
        return;
    }
    const auto& row = R.yred[ye - R.ydim];
    for (int j = 0; j < R.ydim; ++j) {
        if (row[j] != 0) a.c[static_cast<size_t>(xe) * R.ydim + j] += coef * row[j];
    }
}

} // namespace

CycInt cyc_monomial(const CycRing& R, std::uint64_t xe, std::uint64_t ye, const Int& coef) {
    CycInt a = cyc_zero(R);
    add_y_power(a, static_cast<int>(xe % (R.q - 1)), ye % R.pm, coef);
    return a;
}

CycInt cyc_add(const CycInt& a, const CycInt& b) {
    if (a.R != b.R) throw ParamMismatch("cyc_add over different rings");
    CycInt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

CycInt cyc_sub(const CycInt& a, const CycInt& b) {
    if (a.R != b.R) throw ParamMismatch("cyc_sub over different rings");
    CycInt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

CycInt cyc_neg(const CycInt& a) {
    CycInt r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

CycInt cyc_smul(const CycInt& a, const Int& s) {
    CycInt r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

CycInt cyc_mul(const CycInt& a, const CycInt& b) {
    if (a.R != b.R) throw ParamMismatch("cyc_mul over different rings");
    const CycRing& R = *a.R;
    const int X = R.xdim, Y = R.ydim;
    // convolve, X cyclically, Y into a double-length buffer
    std::vector<Int> acc(static_cast<size_t>(X) * (2 * Y - 1), 0);
    for (int i = 0; i < X; ++i) {
        for (int j = 0; j < Y; ++j) {
            const Int& av = a.c[static_cast<size_t>(i) * Y + j];
            if (av == 0) continue;
            for (int k = 0; k < X; ++k) {
                int x = i + k;
                if (x >= X) x -= X;
                const size_t brow = static_cast<size_t>(k) * Y;
                const size_t orow = static_cast<size_t>(x) * (2 * Y - 1);
                for (int l = 0; l < Y; ++l) {
                    const Int& bv = b.c[brow + l];
                    if (bv == 0) continue;
                    acc[orow + j + l] += av * bv;
                }
            }
        }
    }
    CycInt r = cyc_zero(R);
    for (int x = 0; x < X; ++x) {
        const size_t orow = static_cast<size_t>(x) * (2 * Y - 1);
        const size_t rrow = static_cast<size_t>(x) * Y;
        for (int y = 0; y < Y; ++y) r.c[rrow + y] = acc[orow + y];
        for (int y = Y; y < 2 * Y - 1; ++y) {
            const Int& v = acc[orow + y];
            if (v == 0) continue;
            const auto& row = R.yred[y - Y];
            for (int j = 0; j < Y; ++j)
                if (row[j] != 0) r.c[rrow + j] += v * row[j];
        }
    }
    return r;
}

CycInt cyc_map_y_power(const CycInt& a, std::uint64_t r) {
    const CycRing& R = *a.R;
    CycInt out = cyc_zero(R);
    for (int x = 0; x < R.xdim; ++x)
        for (int y = 0; y < R.ydim; ++y) {
            const Int& v = a.c[static_cast<size_t>(x) * R.ydim + y];
            if (v == 0) continue;
            add_y_power(out, x, (static_cast<std::uint64_t>(y) * r) % R.pm, v);
        }
    return out;
}

CycReduced reduce_x_cyclotomic(const CycInt& a) {
    const CycRing& R = *a.R;
    int deg = static_cast<int>(R.phi_x.size()) - 1;
    CycReduced out;
    out.xdeg = deg;
    out.ydim = R.ydim;
    out.c.assign(static_cast<size_t>(deg) * R.ydim, 0);
    for (int x = 0; x < R.xdim; ++x) {
        for (int y = 0; y < R.ydim; ++y) {
            const Int& v = a.c[static_cast<size_t>(x) * R.ydim + y];
            if (v == 0) continue;
            if (x < deg) {
                out.c[static_cast<size_t>(x) * R.ydim + y] += v;
            } else {
                const auto& row = R.xred[x - deg];
                for (int i = 0; i < deg; ++i)
                    if (row[i] != 0) out.c[static_cast<size_t>(i) * R.ydim + y] += v * row[i];
            }
        }
    }
    return out;
}

CycRat cycrat_from_int(const CycInt& a) { return CycRat{a, Int(1)}; }

void cycrat_normalize(CycRat& a) {
    if (a.den < 0) {
        a.den = -a.den;
        for (auto& v : a.num.c) v = -v;
    }
    Int g = a.den;
    for (const auto& v : a.num.c) {
        if (v != 0) {
            Int av = abs(v);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), av.get_mpz_t());
        }
        if (g == 1) break;
    }
    if (g > 1) {
        a.den /= g;
        for (auto& v : a.num.c) v /= g;
    }
    if (a.num.is_zero()) a.den = 1;
}

CycRat cycrat_add(const CycRat& a, const CycRat& b) {
    CycRat r;
    r.num = cyc_add(cyc_smul(a.num, b.den), cyc_smul(b.num, a.den));
    r.den = a.den * b.den;
    cycrat_normalize(r);
    return r;
}

CycRat cycrat_mul_int(const CycRat& a, const CycInt& b) {
    CycRat r{cyc_mul(a.num, b), a.den};
    cycrat_normalize(r);
    return r;
}

CycRat cycrat_div(const CycRat& a, const Int& k) {
    if (k == 0) throw DivisionByZero("cycrat_div by zero");
    CycRat r{a.num, a.den * k};
    cycrat_normalize(r);
    return r;
}

bool cycrat_is_integral(const CycRat& a) { return a.den == 1; }

PiRing::Elem specialize_to_pi(const CycInt& a, const FieldTower& tower, const PiRing& ring,
                              std::uint64_t r) {
    const CycRing& R = *a.R;
    if (R.q != tower.q() || R.p != tower.p() || R.m != ring.m() || R.p != ring.p())
        throw ParamMismatch("specialize_to_pi: ring parameters disagree");
    if (r < 1 || r >= R.pm || gcd_u64(r, static_cast<std::uint64_t>(R.p)) != 1)
        throw ParamMismatch("specialize_to_pi: invalid chi choice r");

    const UnramRingZ& B = ring.base();
    // X -> teichmuller(g), powers precomputed
    UElemZ xhat = B.teichmuller(tower.generator().c, tower.q());
    std::vector<UElemZ> xpow(R.xdim, B.one());
    for (int i = 1; i < R.xdim; ++i) xpow[i] = B.mul(xpow[i - 1], xhat);

    // Y -> (1+pi)^r, powers precomputed
    PiRing::Elem base1 = ring.add(ring.one(), ring.pi());
    PiRing::Elem yr = ring.pow(base1, r);
    std::vector<PiRing::Elem> ypow(R.ydim, ring.one());
    for (int j = 1; j < R.ydim; ++j) ypow[j] = ring.mul(ypow[j - 1], yr);

    PiRing::Elem out = ring.zero();
    for (int j = 0; j < R.ydim; ++j) {
        UElemZ s = B.zero();
        bool nz = false;
        for (int i = 0; i < R.xdim; ++i) {
            const Int& v = a.c[static_cast<size_t>(i) * R.ydim + j];
            if (v == 0) continue;
            s = B.add(s, B.smul(xpow[i], v));
            nz = true;
        }
        if (nz) out = ring.add(out, ring.smul(ypow[j], s));
    }
    return out;
}

std::string cyc_to_json(const CycInt& a) {
    nlohmann::ordered_json j;
    j["q"] = a.R->q;
    j["p"] = a.R->p;
    j["m"] = a.R->m;
    auto rows = nlohmann::ordered_json::array();
    for (int x = 0; x < a.R->xdim; ++x) {
        auto row = nlohmann::ordered_json::array();
        for (int y = 0; y < a.R->ydim; ++y)
            row.push_back(a.c[static_cast<size_t>(x) * a.R->ydim + y].get_str());
        rows.push_back(row);
    }
    j["coeffs"] = rows;
    return j.dump();
}

CycInt cyc_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const CycRing& R = cyc_ring(j.at("q").get<std::uint64_t>(), j.at("p").get<long>(),
                                j.at("m").get<int>());
    CycInt a = cyc_zero(R);
    const auto& rows = j.at("coeffs");
    if (static_cast<int>(rows.size()) != R.xdim) throw ParamMismatch("cyc_from_json: bad shape");
    for (int x = 0; x < R.xdim; ++x) {
        const auto& row = rows[x];
        if (static_cast<int>(row.size()) != R.ydim)
            throw ParamMismatch("cyc_from_json: bad shape");
        for (int y = 0; y < R.ydim; ++y)
            a.c[static_cast<size_t>(x) * R.ydim + y] = Int(row[y].get<std::string>());
    }
    return a;
}

} // namespace aswn
