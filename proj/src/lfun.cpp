#include "aswn/lfun.hpp"

#include <sstream>
#include <unordered_set>

#include "aswn/unram.hpp"

namespace aswn {

FqPoly make_fq_poly(const FieldTower& tower, const std::vector<std::vector<std::uint32_t>>& c) {
    if (c.size() < 2) throw InvalidConfig("polynomial needs degree >= 1");
    FqPoly f;
    f.d = static_cast<int>(c.size()) - 1;
    if (gcd_u64(static_cast<std::uint64_t>(f.d), static_cast<std::uint64_t>(tower.p())) != 1)
        throw InvalidConfig("degree must be coprime to p");
    for (const auto& v : c) f.coeffs.push_back(tower.from_coeffs(1, v));
    FFElem lead = f.coeffs.back();
    if (!(lead == tower.one(1))) throw InvalidConfig("polynomial must be monic");
    return f;
}

std::string fq_poly_key(const FqPoly& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) os << ";";
        for (size_t j = 0; j < f.coeffs[i].c.size(); ++j) {
            if (j) os << ",";
            os << f.coeffs[i].c[j];
        }
    }
    return os.str();
}

ExpSumEngine::ExpSumEngine(const FieldTower& tower, FqPoly f, int m, Budget budget,
                           const ExpSumCache* cache)
    : tower_(tower), f_(std::move(f)), m_(m), budget_(budget), cache_(cache) {}

std::uint64_t ExpSumEngine::cost(int l_count) const {
    std::uint64_t total = 0;
    for (int l = 1; l <= l_count; ++l) total += pow_u64(tower_.q(), static_cast<unsigned>(l));
    return total;
}

std::string ExpSumEngine::cache_key(std::uint64_t u, int l) const {
    std::ostringstream os;
    os << "p=" << tower_.p() << ";a=" << tower_.a() << ";poly1=";
    for (auto c : tower_.defining_poly(1)) os << c << ",";
    os << ";g=";
    for (auto c : tower_.generator().c) os << c << ",";
    os << ";f=" << fq_poly_key(f_) << ";u=" << u << ";m=" << m_ << ";l=" << l;
    return os.str();
}

const std::vector<std::uint64_t>& ExpSumEngine::raw_histogram(int l) {
    auto it = raw_.find(l);
    if (it != raw_.end()) return it->second;

    if (l > tower_.lmax()) throw LevelMismatch("exp_sum level beyond tower");
    std::uint64_t ql = pow_u64(tower_.q(), static_cast<unsigned>(l));
    if (ql - 1 > budget_.per_sum)
        throw EnumerationTooLarge("exp_sum at level " + std::to_string(l) + " needs " +
                                  std::to_string(ql - 1) + " elements");
    budget_.used += ql - 1;
    if (budget_.used > budget_.total)
        throw EnumerationTooLarge("total enumeration budget exhausted");

    const std::uint64_t q1 = tower_.q() - 1;
    const std::uint64_t pm = pow_u64(static_cast<std::uint64_t>(tower_.p()),
                                     static_cast<unsigned>(m_));
    UnramRingU U(tower_.p(), m_, tower_.defining_poly(l));

    // Teichmuller data: the level generator and the embedded f-coefficients
    const FFElem& gamma = tower_.level_generator(l);
    UElemU ghat = U.teichmuller(gamma.c, ql);
    std::vector<UElemU> fhat;
    for (const FFElem& ai : f_.coeffs) {
        if (ai.is_zero())
            fhat.push_back(U.zero());
        else
            fhat.push_back(U.teichmuller(tower_.embed(ai, l).c, ql));
    }
    const std::uint64_t w = tower_.dlog(tower_.norm_to_base(gamma)); // norm exponent step

    std::vector<std::uint64_t> hist(q1 * pm, 0);
    UElemU xhat = U.one();
    std::uint64_t j = 0;
    const int d = f_.d;
    for (std::uint64_t k = 0; k < ql - 1; ++k) {
        UElemU val = fhat[d];
        for (int i = d - 1; i >= 0; --i) {
            val = U.mul(val, xhat);
            if (!U.is_zero(fhat[i])) val = U.add(val, fhat[i]);
        }
        std::uint64_t t = U.trace(val);
        ++hist[j * pm + t];
        xhat = U.mul(xhat, ghat);
        j += w;
        if (j >= q1) j -= q1;
    }
    auto [ins, ok] = raw_.emplace(l, std::move(hist));
    (void)ok;
    return ins->second;
}

CycInt ExpSumEngine::sum(std::uint64_t u, int l) {
    const CycRing& R = cyc_ring(tower_.q(), tower_.p(), m_);
    if (cache_) {
        if (auto hit = cache_->load(cache_key(u, l))) return cyc_from_json(*hit);
    }
    const auto& hist = raw_histogram(l);
    const std::uint64_t q1 = tower_.q() - 1;
    const std::uint64_t pm = R.pm;
    CycInt S = cyc_zero(R);
    for (std::uint64_t j = 0; j < q1; ++j) {
        // the twisted character acts through the inverse norm class: exponent
        // -u * dlog(Norm x); this is the orientation under which the slope
        // formulas carry the base-p digit sum of u itself
        std::uint64_t xe = (q1 - (u * j) % q1) % q1;
        for (std::uint64_t t = 0; t < pm; ++t) {
            std::uint64_t cnt = hist[j * pm + t];
            if (cnt)
                S = cyc_add(S, cyc_monomial(R, xe, t, Int(static_cast<unsigned long>(cnt))));
        }
    }
    if (cache_) cache_->store(cache_key(u, l), cyc_to_json(S));
    return S;
}

ExpSumTable exp_sums(ExpSumEngine& engine, std::uint64_t u, int l_count) {
    ExpSumTable table;
    for (int l = 1; l <= l_count; ++l) table.emplace(l, engine.sum(u, l));
    return table;
}

std::vector<CycInt> l_series(const ExpSumTable& sums, int k_max) {
    if (k_max > 0 && sums.find(k_max) == sums.end())
        throw ParamMismatch("l_series: missing exponential sums");
    const CycRing& R = *sums.at(1).R;
    std::vector<CycRat> c;
    c.push_back(cycrat_from_int(cyc_one(R)));
    for (int k = 1; k <= k_max; ++k) {
        CycRat acc = cycrat_from_int(cyc_zero(R));
        for (int l = 1; l <= k; ++l)
            acc = cycrat_add(acc, cycrat_mul_int(c[k - l], sums.at(l)));
        c.push_back(cycrat_div(acc, Int(k)));
    }
    std::vector<CycInt> out;
    for (int k = 0; k <= k_max; ++k) {
        if (!cycrat_is_integral(c[k]))
            throw IntegralityViolation("L-coefficient " + std::to_string(k) +
                                       " has denominator " + c[k].den.get_str());
        out.push_back(c[k].num);
    }
    return out;
}

LPoly l_polynomial(const ExpSumTable& sums, int D, long p, int a, std::uint64_t u, int m) {
    int k_have = static_cast<int>(sums.size());
    if (k_have < D) throw ParamMismatch("l_polynomial: need sums through l = D");
    auto coeffs = l_series(sums, std::min(k_have, D + 2));
    LPoly L{p, a, u, m, D, {}};
    L.c.assign(coeffs.begin(), coeffs.begin() + D + 1);
    if (L.c[D].is_zero())
        throw IntegralityViolation("L-polynomial degree dropped below D");
    for (int k = D + 1; k < static_cast<int>(coeffs.size()); ++k)
        if (!coeffs[k].is_zero())
            throw IntegralityViolation("L-polynomial exceeds degree D at s^" +
                                       std::to_string(k));
    return L;
}

std::string lpoly_to_json(const LPoly& L) {
    std::ostringstream os;
    os << "{\"p\":" << L.p << ",\"a\":" << L.a << ",\"u\":" << L.u << ",\"m\":" << L.m
       << ",\"D\":" << L.D << ",\"coefficients\":[";
    for (size_t k = 0; k < L.c.size(); ++k) {
        if (k) os << ",";
        os << cyc_to_json(L.c[k]);
    }
    os << "]}";
    return os.str();
}

std::vector<CycInt> euler_oracle(const FieldTower& tower, const FqPoly& f, std::uint64_t u,
                                 const ChiSpec& chi, int deg, Budget& budget) {
    if (deg > 12) throw EnumerationTooLarge("euler_oracle degree capped at 12");
    const CycRing& R = cyc_ring(tower.q(), tower.p(), chi.m);
    std::vector<CycInt> series(deg + 1, cyc_zero(R));
    series[0] = cyc_one(R);
    if (deg == 0) return series;

    const std::uint64_t q1 = tower.q() - 1;
    for (int l = 1; l <= deg; ++l) {
        std::uint64_t ql = pow_u64(tower.q(), static_cast<unsigned>(l));
        if (ql - 1 > budget.per_sum) throw EnumerationTooLarge("euler_oracle enumeration");
        budget.used += ql - 1;
        if (budget.used > budget.total) throw EnumerationTooLarge("budget exhausted");

        UnramRingU U(tower.p(), chi.m, tower.defining_poly(l));
        // proper-subfield degrees to exclude
        std::vector<int> proper;
        for (int j = 1; j < l; ++j)
            if (l % j == 0) proper.push_back(j);

        std::unordered_set<std::uint64_t> visited;
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> weight_count;
        std::uint64_t orbit_count = 0;

        tower.enumerate_units(l, [&](const FFElem& x) {
            std::uint64_t enc = tower.encode(x);
            if (visited.count(enc)) return;
            bool sub = false;
            for (int j : proper) {
                if (tower.pow(x, pow_u64(tower.q(), static_cast<unsigned>(j))) == x) {
                    sub = true;
                    break;
                }
            }
            if (sub) return;
            // walk the Frobenius orbit of size l
            FFElem y = x;
            for (int i = 0; i < l; ++i) {
                visited.insert(tower.encode(y));
                y = tower.pow(y, tower.q());
            }
            if (!(y == x)) throw Error("Frobenius orbit did not close");
            ++orbit_count;

            std::uint64_t dn = tower.dlog(tower.norm_to_base(x));
            UElemU xhat = U.teichmuller(x.c, ql);
            UElemU val = U.teichmuller(tower.embed(f.coeffs[f.d], l).c, ql);
            for (int i = f.d - 1; i >= 0; --i) {
                val = U.mul(val, xhat);
                if (!f.coeffs[i].is_zero())
                    val = U.add(val, U.teichmuller(tower.embed(f.coeffs[i], l).c, ql));
            }
            std::uint64_t t = U.trace(val);
            std::uint64_t xe = (q1 - (u * dn) % q1) % q1; // same orientation as exp_sum
            std::uint64_t ye = (t * chi.r) % R.pm;
            ++weight_count[{xe, ye}];
        });

        // Mobius cross-check of the closed-point count
        std::uint64_t expect = 0;
        long long signed_sum = 0;
        for (int j = 1; j <= l; ++j) {
            if (l % j) continue;
            int mu = mobius(static_cast<std::uint64_t>(l / j));
            if (mu == 0) continue;
            signed_sum += static_cast<long long>(mu) *
                          static_cast<long long>(pow_u64(tower.q(), static_cast<unsigned>(j)) - 1);
        }
        expect = static_cast<std::uint64_t>(signed_sum / l);
        if (expect != orbit_count)
            throw Error("closed point count mismatch at degree " + std::to_string(l));

        // multiply the series by (1 - w s^l)^{-count} for each distinct weight
        for (const auto& [w, cnt] : weight_count) {
            std::vector<CycInt> factor;
            Int binom = 1;
            for (int k = 0; k * l <= deg; ++k) {
                std::uint64_t xe = (w.first * k) % q1;
                std::uint64_t ye = (w.second * k) % R.pm;
                factor.push_back(cyc_monomial(R, xe, ye, binom));
                // C(cnt+k, k+1) = C(cnt+k-1, k) * (cnt+k) / (k+1)
                binom *= Int(static_cast<unsigned long>(cnt) + static_cast<unsigned long>(k));
                binom /= static_cast<unsigned long>(k + 1);
            }
            std::vector<CycInt> next(deg + 1, cyc_zero(R));
            for (int i = 0; i <= deg; ++i) {
                if (series[i].is_zero()) continue;
                for (int k = 0; i + k * l <= deg && k < static_cast<int>(factor.size()); ++k)
                    next[i + k * l] = cyc_add(next[i + k * l], cyc_mul(series[i], factor[k]));
            }
            series = std::move(next);
        }
    }
    return series;
}

NewtonResult np_of_l(const LPoly& L, const FieldTower& tower, const ChiSpec& chi, int M_start) {
    if (chi.m != L.m) throw ParamMismatch("chi conductor exponent differs from L");
    // exact zero test in the cyclotomic quotient, where the specialization is faithful
    std::vector<bool> zero(L.c.size());
    for (size_t k = 0; k < L.c.size(); ++k) zero[k] = reduce_x_cyclotomic(L.c[k]).is_zero();

    int M = M_start;
    if (M <= 0) {
        int pm1 = static_cast<int>(pow_u64(static_cast<std::uint64_t>(L.p),
                                           static_cast<unsigned>(L.m - 1)));
        int d = L.D / pm1;
        Rat top = y_u(L.p, L.a, d, L.u, L.D);
        Int ceil_top = top.get_num() / top.get_den() + 1;
        M = static_cast<int>(ceil_top.get_si()) + 8;
        M = std::max(M, L.m + 2);
    }

    while (true) {
        try {
            PiRing ring(L.p, L.m, M, tower.defining_poly(1));
            std::vector<HullPoint> pts;
            for (size_t k = 0; k < L.c.size(); ++k) {
                if (zero[k]) {
                    pts.push_back({static_cast<long long>(k), std::nullopt});
                    continue;
                }
                auto val = ring.valuation(specialize_to_pi(L.c[k], tower, ring, chi.r));
                pts.push_back({static_cast<long long>(k), val});
            }
            return NewtonResult{lower_hull(std::move(pts)), M};
        } catch (const PrecisionExhausted&) {
            if (2 * M > 4096) throw;
            M *= 2;
        }
    }
}

SlopeMultiset char_series_slopes(const Polygon& np_L, int a, int k_max) {
    SlopeMultiset base = slopes(np_L);
    for (const Rat& s : base.s)
        if (s < 0 || s >= Rat(a))
            throw SlopeOutOfRange("L-slope " + rat_to_string(s) + " outside [0, a)");
    SlopeMultiset out;
    out.s.reserve(base.s.size() * static_cast<size_t>(k_max));
    for (int i = 0; i < k_max; ++i)
        for (const Rat& s : base.s) out.s.push_back(s + Rat(a) * Rat(i));
    return out;
}

FqPoly twist_compose(const FieldTower& tower, const FqPoly& f) {
    std::uint64_t q1 = tower.q() - 1;
    FqPoly g;
    g.d = f.d * static_cast<int>(q1);
    g.coeffs.assign(static_cast<size_t>(g.d) + 1, tower.zero(1));
    for (int i = 0; i <= f.d; ++i) g.coeffs[static_cast<size_t>(i) * q1] = f.coeffs[i];
    return g;
}

} // namespace aswn
