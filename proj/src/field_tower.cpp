#include "aswn/field_tower.hpp"

#include <algorithm>
#include <sstream>

#include "aswn/numutil.hpp"

namespace aswn {

namespace {

// Lexicographically next coefficient tuple, position 0 most significant,
// position n-1 incremented fastest. Returns false after the last tuple.
bool next_tuple(std::vector<std::uint32_t>& c, long p) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] + 1 < static_cast<std::uint32_t>(p)) {
            ++c[i];
            std::fill(c.begin() + i + 1, c.end(), 0u);
            return true;
        }
    }
    return false;
}

fppoly::Poly smallest_irreducible(long p, int n) {
    std::vector<std::uint32_t> low(n, 0);
    while (true) {
        fppoly::Poly f(low.begin(), low.end());
        f.push_back(1); // monic
        if (fppoly::is_irreducible(f, p)) return f;
        if (!next_tuple(low, p)) break;
    }
    throw Error("smallest_irreducible: search exhausted"); // unreachable
}

} // namespace

FieldTower::FieldTower(long p, int a, int lmax) : p_(p), a_(a), lmax_(lmax) {
    if (!is_prime_u64(static_cast<std::uint64_t>(p))) throw NotPrime("p = " + std::to_string(p));
    if (a < 1 || lmax < 1) throw InvalidConfig("a and lmax must be positive");
    q_ = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(a));

    levels_.resize(lmax);
    for (int l = 1; l <= lmax; ++l) {
        Level& L = levels_[l - 1];
        L.poly = smallest_irreducible(p, a * l);
        L.order = pow_u64(q_, static_cast<unsigned>(l)) - 1;
    }

    // level-1 generator of F_q^x: lex-smallest element of multiplicative order q-1
    {
        auto factors = prime_factors_u64(q_ - 1);
        std::vector<std::uint32_t> c(a, 0);
        bool found = false;
        while (next_tuple(c, p)) {
            FFElem cand{1, c};
            bool ok = !cand.is_zero();
            if (ok && q_ - 1 > 1) {
                for (auto r : factors) {
                    if (pow(cand, (q_ - 1) / r) == one(1)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                g_ = cand;
                found = true;
                break;
            }
        }
        if (!found && q_ == 2) {
            g_ = one(1); // F_2^x = {1}
            found = true;
        }
        if (!found) throw Error("generator search failed");
    }

    // dlog table at level 1
    g_pows_.reserve(q_ - 1);
    FFElem w = one(1);
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
        g_pows_.push_back(w);
        dlog_[encode(w)] = k;
        w = mul(w, g_);
    }
    if (!(w == one(1))) throw Error("generator order mismatch");

    // per-level generators and the embedded copy of F_q^x
    for (int l = 1; l <= lmax; ++l) {
        Level& L = levels_[l - 1];
        auto factors = prime_factors_u64(L.order);
        std::vector<std::uint32_t> c(static_cast<size_t>(a) * l, 0);
        bool found = false;
        while (next_tuple(c, p)) {
            FFElem cand{l, c};
            bool ok = true;
            for (auto r : factors) {
                if (pow(cand, L.order / r) == one(l)) {
                    ok = false;
                    break;
                }
            }
            if (L.order == 1) ok = !cand.is_zero();
            if (ok) {
                L.gamma = cand;
                found = true;
                break;
            }
        }
        if (!found) throw Error("level generator search failed");

        // minimal polynomial of g over F_p: prod over conjugates g^{p^j}
        std::vector<FFElem> conj;
        FFElem gc = g_;
        for (int j = 0; j < a; ++j) {
            conj.push_back(gc);
            gc = pow(gc, static_cast<std::uint64_t>(p));
        }
        // coefficients of minpoly as level-1 elements, then checked scalar
        std::vector<FFElem> mp = {one(1)};
        for (const FFElem& r : conj) {
            std::vector<FFElem> nx(mp.size() + 1, zero(1));
            for (size_t i = 0; i < mp.size(); ++i) {
                nx[i + 1] = add(nx[i + 1], mp[i]);
                nx[i] = sub(nx[i], mul(mp[i], r));
            }
            mp = std::move(nx);
        }
        fppoly::Poly minpoly(mp.size());
        for (size_t i = 0; i < mp.size(); ++i) {
            for (size_t j = 1; j < mp[i].c.size(); ++j)
                if (mp[i].c[j] != 0) throw Error("minimal polynomial not over F_p");
            minpoly[i] = mp[i].c.empty() ? 0u : mp[i].c[0];
        }

        // cyclic subgroup of order q-1 inside level l; among its elements with
        // the right minimal polynomial pick the lex-smallest coefficient vector
        FFElem h0 = pow(L.gamma, L.order / (q_ - 1));
        FFElem h = one(l);
        FFElem best;
        bool have = false;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            // evaluate minpoly at h
            FFElem acc = zero(l);
            for (int i = static_cast<int>(minpoly.size()) - 1; i >= 0; --i) {
                acc = mul(acc, h);
                if (minpoly[i]) {
                    FFElem s = zero(l);
                    s.c[0] = minpoly[i];
                    acc = add(acc, s);
                }
            }
            if (acc.is_zero()) {
                if (!have || std::lexicographical_compare(h.c.begin(), h.c.end(), best.c.begin(),
                                                          best.c.end())) {
                    best = h;
                    have = true;
                }
            }
            h = mul(h, h0);
        }
        if (!have) throw NotInSubfield("no embedded copy of g at level " + std::to_string(l));
        L.embed_g = best;

        L.embed_pows.reserve(q_ - 1);
        FFElem e = one(l);
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            L.embed_pows.push_back(e);
            L.embed_dlog[encode(e)] = k;
            e = mul(e, L.embed_g);
        }
        if (!(e == one(l))) throw Error("embedded generator order mismatch");
    }
}

FFElem FieldTower::zero(int level) const {
    return FFElem{level, std::vector<std::uint32_t>(static_cast<size_t>(a_) * level, 0)};
}

FFElem FieldTower::one(int level) const {
    FFElem e = zero(level);
    e.c[0] = 1;
    return e;
}

FFElem FieldTower::from_coeffs(int level, const std::vector<std::uint32_t>& c) const {
    if (level < 1 || level > lmax_) throw LevelMismatch("level out of range");
    if (c.size() != static_cast<size_t>(a_) * level) throw LevelMismatch("coefficient length");
    for (auto x : c)
        if (x >= static_cast<std::uint32_t>(p_)) throw InvalidConfig("coefficient out of [0,p)");
    return FFElem{level, c};
}

void FieldTower::check_same_level(const FFElem& x, const FFElem& y) const {
    if (x.level != y.level) throw LevelMismatch("operands at different levels");
}

FFElem FieldTower::add(const FFElem& x, const FFElem& y) const {
    check_same_level(x, y);
    FFElem r = x;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = static_cast<std::uint32_t>((r.c[i] + y.c[i]) % p_);
    return r;
}

FFElem FieldTower::sub(const FFElem& x, const FFElem& y) const {
    check_same_level(x, y);
    FFElem r = x;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = static_cast<std::uint32_t>((r.c[i] + p_ - y.c[i]) % p_);
    return r;
}

FFElem FieldTower::mul_raw(int level, const FFElem& x, const FFElem& y) const {
    const fppoly::Poly& f = levels_[level - 1].poly;
    fppoly::Poly a(x.c.begin(), x.c.end());
    fppoly::Poly b(y.c.begin(), y.c.end());
    fppoly::Poly r = fppoly::mod(fppoly::mul(a, b, p_), f, p_);
    FFElem out = zero(level);
    for (size_t i = 0; i < r.size(); ++i) out.c[i] = r[i];
    return out;
}

FFElem FieldTower::mul(const FFElem& x, const FFElem& y) const {
    check_same_level(x, y);
    return mul_raw(x.level, x, y);
}

FFElem FieldTower::pow(const FFElem& x, std::uint64_t e) const {
    FFElem r = one(x.level);
    FFElem b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FFElem FieldTower::inv(const FFElem& x) const {
    if (x.is_zero()) throw DivisionByZero("inv(0)");
    return pow(x, order(x.level) - 1);
}

void FieldTower::enumerate_units(int level, const std::function<void(const FFElem&)>& fn) const {
    if (level < 1 || level > lmax_) throw LevelMismatch("level out of range");
    std::vector<std::uint32_t> c(static_cast<size_t>(a_) * level, 0);
    while (next_tuple(c, p_)) fn(FFElem{level, c});
}

FFElem FieldTower::norm_to_base(const FFElem& x) const {
    if (x.is_zero()) throw ZeroArgument("norm of 0");
    int l = x.level;
    if (l == 1) return x;
    FFElem y = pow(x, order(l) / (q_ - 1));
    auto it = levels_[l - 1].embed_dlog.find(encode(y));
    if (it == levels_[l - 1].embed_dlog.end())
        throw NotInSubfield("norm image not in embedded F_q");
    return g_pows_[it->second];
}

std::uint64_t FieldTower::dlog(const FFElem& y) const {
    if (y.level != 1) throw LevelMismatch("dlog needs a level-1 element");
    if (y.is_zero()) throw ZeroArgument("dlog(0)");
    return dlog_.at(encode(y));
}

FFElem FieldTower::embed(const FFElem& x, int level) const {
    if (x.level != 1) throw LevelMismatch("embed needs a level-1 element");
    if (x.is_zero()) return zero(level);
    return levels_[level - 1].embed_pows[dlog(x)];
}

std::uint64_t FieldTower::encode(const FFElem& x) const {
    std::uint64_t v = 0;
    for (auto c : x.c) v = v * static_cast<std::uint64_t>(p_) + c;
    return v;
}

std::string FieldTower::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << p_ << ",\"a\":" << a_ << ",\"l_max\":" << lmax_ << ",\"defining_polys\":[";
    for (int l = 1; l <= lmax_; ++l) {
        if (l > 1) os << ",";
        os << "[";
        const auto& f = levels_[l - 1].poly;
        for (size_t i = 0; i < f.size(); ++i) {
            if (i) os << ",";
            os << f[i];
        }
        os << "]";
    }
    os << "],\"g\":[";
    for (size_t i = 0; i < g_.c.size(); ++i) {
        if (i) os << ",";
        os << g_.c[i];
    }
    os << "]}";
    return os.str();
}

} // namespace aswn
