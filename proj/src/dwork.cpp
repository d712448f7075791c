#include "aswn/dwork.hpp"

#include <algorithm>
#include <map>

namespace aswn {
namespace dwork {

TauSeries ts_zero(const TauRing& R) { return TauSeries{std::vector<UElemZ>(R.Ktau, R.base.zero())}; }

TauSeries ts_one(const TauRing& R) {
    TauSeries t = ts_zero(R);
    t.c[0] = R.base.one();
    return t;
}

TauSeries ts_add(const TauRing& R, const TauSeries& a, const TauSeries& b) {
    TauSeries r = a;
    for (int i = 0; i < R.Ktau; ++i) r.c[i] = R.base.add(r.c[i], b.c[i]);
    return r;
}

TauSeries ts_sub(const TauRing& R, const TauSeries& a, const TauSeries& b) {
    TauSeries r = a;
    for (int i = 0; i < R.Ktau; ++i) r.c[i] = R.base.sub(r.c[i], b.c[i]);
    return r;
}

TauSeries ts_neg(const TauRing& R, const TauSeries& a) {
    TauSeries r = a;
    for (int i = 0; i < R.Ktau; ++i) r.c[i] = R.base.neg(r.c[i]);
    return r;
}

TauSeries ts_mul(const TauRing& R, const TauSeries& a, const TauSeries& b) {
    TauSeries r = ts_zero(R);
    for (int i = 0; i < R.Ktau; ++i) {
        if (R.base.is_zero(a.c[i])) continue;
        for (int j = 0; i + j < R.Ktau; ++j) {
            if (R.base.is_zero(b.c[j])) continue;
            r.c[i + j] = R.base.add(r.c[i + j], R.base.mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

TauSeries ts_sigma(const TauRing& R, const TauSeries& a) {
    TauSeries r = a;
    for (int i = 0; i < R.Ktau; ++i)
        if (!R.base.is_zero(r.c[i])) r.c[i] = R.base.frobenius(r.c[i]);
    return r;
}

bool ts_is_zero(const TauRing& R, const TauSeries& a) {
    for (const auto& v : a.c)
        if (!R.base.is_zero(v)) return false;
    return true;
}

std::optional<int> ts_vtau(const TauRing& R, const TauSeries& a) {
    for (int i = 0; i < R.Ktau; ++i)
        if (!R.base.is_zero(a.c[i])) return i;
    return std::nullopt;
}

std::vector<Rat> artin_hasse_exp(long p, int K) {
    // n E_n = sum over p^i <= n of E_{n - p^i}
    std::vector<Rat> E(K + 1, Rat(0));
    E[0] = Rat(1);
    for (int n = 1; n <= K; ++n) {
        Rat s(0);
        for (std::uint64_t pe = 1; pe <= static_cast<std::uint64_t>(n);
             pe *= static_cast<std::uint64_t>(p))
            s += E[n - static_cast<int>(pe)];
        E[n] = s / Rat(n);
    }
    return E;
}

std::vector<Rat> artin_hasse_product(long p, int K) {
    std::vector<Rat> E(K + 1, Rat(0));
    E[0] = Rat(1);
    for (int i = 1; i <= K; ++i) {
        if (i % p == 0) continue;
        int mu = mobius(static_cast<std::uint64_t>(i));
        if (mu == 0) continue;
        Rat alpha = make_rat(-mu, i);
        // multiply E by (1 - z^i)^{alpha}: coefficients C(alpha, k)(-1)^k z^{ik}
        std::vector<Rat> nx(K + 1, Rat(0));
        Rat binom(1);
        for (int k = 0; k * i <= K; ++k) {
            Rat term = binom * (k % 2 ? Rat(-1) : Rat(1));
            if (term != 0) {
                for (int t = 0; t + k * i <= K; ++t) {
                    if (E[t] != 0) nx[t + k * i] += E[t] * term;
                }
            }
            binom = binom * (alpha - Rat(k)) / Rat(k + 1);
        }
        E = std::move(nx);
    }
    return E;
}

std::vector<Int> artin_hasse_mod(long p, int K, const Int& pM) {
    auto E = artin_hasse_exp(p, K);
    std::vector<Int> out(K + 1);
    for (int n = 0; n <= K; ++n) {
        const Int& den = E[n].get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
            throw IntegralityViolation("Artin-Hasse coefficient " + std::to_string(n) +
                                       " is not p-integral");
        Int dinv, num;
        if (!mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pM.get_mpz_t()))
            throw IntegralityViolation("Artin-Hasse denominator not invertible mod p^M");
        num = E[n].get_num() * dinv;
        mpz_mod(out[n].get_mpz_t(), num.get_mpz_t(), pM.get_mpz_t());
    }
    return out;
}

std::vector<std::vector<UElemZ>> ef_pi_coeffs(const FieldTower& tower, const FqPoly& f,
                                              const UnramRingZ& base, int j_max, int P_pi) {
    auto AH = artin_hasse_mod(tower.p(), P_pi, base.pM);
    // Teichmuller lifts of the coefficients in the level-1 ring
    std::vector<UElemZ> ahat;
    for (const FFElem& ai : f.coeffs) {
        if (ai.is_zero())
            ahat.push_back(base.zero());
        else
            ahat.push_back(base.teichmuller(ai.c, tower.q()));
    }

    // series in x with pi-series coefficients; multiply in one factor at a time
    std::vector<std::vector<UElemZ>> e(static_cast<size_t>(j_max) + 1,
                                       std::vector<UElemZ>(P_pi, base.zero()));
    e[0][0] = base.one();
    for (int i = 0; i <= f.d; ++i) {
        if (base.is_zero(ahat[i])) continue; // E(0) = 1
        // F_i(x) = sum_k AH_k ahat_i^k pi^k x^{ik}; fold in k >= 1 terms
        std::vector<std::vector<UElemZ>> nx = e;
        UElemZ apow = base.one();
        for (int k = 1; k < P_pi && (i == 0 ? k < P_pi : k * i <= j_max); ++k) {
            apow = base.mul(apow, ahat[i]);
            if (AH[k] == 0) continue;
            UElemZ coef = base.smul(apow, AH[k]);
            int xs = k * i;
            if (xs > j_max) break;
            for (int x = 0; x + xs <= j_max; ++x) {
                for (int t = 0; t + k < P_pi; ++t) {
                    if (base.is_zero(e[x][t])) continue;
                    nx[x + xs][t + k] = base.add(nx[x + xs][t + k], base.mul(e[x][t], coef));
                }
            }
        }
        e = std::move(nx);
    }

    // decay check: v_pi(e_j) >= ceil(j/d)
    for (int j = 0; j <= j_max; ++j) {
        int lead = -1;
        for (int t = 0; t < P_pi; ++t) {
            if (!base.is_zero(e[j][t])) {
                lead = t;
                break;
            }
        }
        if (lead >= 0 && static_cast<long>(lead) * f.d < j)
            throw Error("E_f coefficient decay violated at x^" + std::to_string(j));
    }
    return e;
}

NuclearMatrix nuclear_matrix(const FieldTower& tower, const FqPoly& f, const CSeq& cs, int n,
                             const TauRing& R) {
    const long p = tower.p();
    const std::uint64_t q1 = tower.q() - 1;
    std::vector<long> c(n);
    for (int i = 0; i < n; ++i) c[i] = static_cast<long>(cs.c(static_cast<std::uint64_t>(i)));

    const long c_last = c[n - 1];
    const long K_ext = R.Ktau + c_last; // negative shifts consume tau precision
    long j_max = (p * c_last - c[0]) / static_cast<long>(q1);
    if (j_max < 0) j_max = 0;
    const int P_pi = static_cast<int>(K_ext / R.dq1) + 2;

    auto e = ef_pi_coeffs(tower, f, R.base, static_cast<int>(j_max), P_pi);

    NuclearMatrix N;
    N.n = n;
    N.a.assign(static_cast<size_t>(n) * n, ts_zero(R));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            long num = p * c[row] - c[col];
            if (num < 0 || num % static_cast<long>(q1) != 0) continue;
            long j = num / static_cast<long>(q1);
            if (j > j_max) throw TruncationTooSmall("e_j request beyond computed range");
            long delta = c[col] - c[row]; // tau-shift
            TauSeries entry = ts_zero(R);
            for (int t = 0; t < P_pi; ++t) {
                if (R.base.is_zero(e[j][t])) continue;
                long idx = static_cast<long>(t) * R.dq1 + delta;
                if (idx < 0) throw NegativeValuation("matrix entry below tau^0");
                if (idx < R.Ktau) entry.c[idx] = R.base.frobenius(e[j][t]);
            }
            // row valuation of the explicit-matrix shape
            auto v = ts_vtau(R, entry);
            if (v && static_cast<long>(*v) < (p - 1) * c[row])
                throw Error("nuclear matrix row valuation violated");
            N.at(row, col) = std::move(entry);
        }
    }
    return N;
}

namespace {

NuclearMatrix mat_mul(const TauRing& R, const NuclearMatrix& A, const NuclearMatrix& B) {
    NuclearMatrix C;
    C.n = A.n;
    C.a.assign(static_cast<size_t>(A.n) * A.n, ts_zero(R));
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            if (ts_is_zero(R, A.at(i, k))) continue;
            for (int j = 0; j < A.n; ++j) {
                if (ts_is_zero(R, B.at(k, j))) continue;
                C.at(i, j) = ts_add(R, C.at(i, j), ts_mul(R, A.at(i, k), B.at(k, j)));
            }
        }
    return C;
}

NuclearMatrix mat_sigma(const TauRing& R, const NuclearMatrix& A) {
    NuclearMatrix B = A;
    for (auto& e : B.a) e = ts_sigma(R, e);
    return B;
}

} // namespace

NuclearMatrix semilinear_power(const TauRing& R, const NuclearMatrix& N, int a) {
    NuclearMatrix M = N;
    NuclearMatrix Si = N;
    for (int i = 1; i < a; ++i) {
        Si = mat_sigma(R, Si);
        M = mat_mul(R, Si, M);
    }
    return M;
}

std::vector<TauSeries> char_series(const TauRing& R, const NuclearMatrix& M, int s_deg) {
    if (s_deg > M.n) throw ParamMismatch("char_series: s_deg exceeds matrix size");
    const int cap = s_deg;
    // Samuelson-Berkowitz: c_r = T_r c_{r-1}, first column of T_r is
    // [1, -a_rr, -(R C), -(R A C), -(R A^2 C), ...]; everything truncated to
    // degree cap since the recurrence is lower-triangular in s-degree.
    std::vector<TauSeries> c = {ts_one(R)};
    for (int r = 1; r <= M.n; ++r) {
        int out_len = std::min(r, cap) + 1;
        std::vector<TauSeries> col0;
        col0.push_back(ts_one(R));
        if (out_len >= 2) col0.push_back(ts_neg(R, M.at(r - 1, r - 1)));
        if (out_len >= 3) {
            std::vector<TauSeries> w(r - 1);
            for (int i = 0; i < r - 1; ++i) w[i] = M.at(i, r - 1);
            for (int idx = 2; idx < out_len; ++idx) {
                TauSeries dot = ts_zero(R);
                for (int i = 0; i < r - 1; ++i) {
                    if (ts_is_zero(R, M.at(r - 1, i)) || ts_is_zero(R, w[i])) continue;
                    dot = ts_add(R, dot, ts_mul(R, M.at(r - 1, i), w[i]));
                }
                col0.push_back(ts_neg(R, dot));
                if (idx + 1 < out_len) {
                    std::vector<TauSeries> nw(r - 1, ts_zero(R));
                    for (int i = 0; i < r - 1; ++i) {
                        if (ts_is_zero(R, w[i])) continue;
                        for (int t = 0; t < r - 1; ++t) {
                            if (ts_is_zero(R, M.at(t, i))) continue;
                            nw[t] = ts_add(R, nw[t], ts_mul(R, M.at(t, i), w[i]));
                        }
                    }
                    w = std::move(nw);
                }
            }
        }
        std::vector<TauSeries> nc(out_len, ts_zero(R));
        for (int i = 0; i < out_len; ++i) {
            // nc[i] = sum_j col0[i-j] c[j]; col0[0] = 1
            for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j) {
                int k = i - j;
                if (k >= static_cast<int>(col0.size())) continue;
                if (k == 0)
                    nc[i] = ts_add(R, nc[i], c[j]);
                else if (!ts_is_zero(R, col0[k]) && !ts_is_zero(R, c[j]))
                    nc[i] = ts_add(R, nc[i], ts_mul(R, col0[k], c[j]));
            }
        }
        c = std::move(nc);
    }
    c.resize(static_cast<size_t>(s_deg) + 1, ts_zero(R));
    return c;
}

TadicNewton tadic_np(const TauRing& R, const std::vector<TauSeries>& r, int b_u) {
    std::vector<HullPoint> pts;
    for (size_t k = 0; k < r.size(); ++k) {
        auto v = ts_vtau(R, r[k]);
        if (v)
            pts.push_back({static_cast<long long>(k), make_rat(*v, R.dq1)});
        else
            pts.push_back({static_cast<long long>(k), std::nullopt});
    }
    TadicNewton out;
    out.det_np = lower_hull(std::move(pts));
    if (b_u == 1) {
        out.cf_np = out.det_np;
        return out;
    }
    SlopeMultiset sl = slopes(out.det_np);
    SlopeMultiset div;
    size_t i = 0;
    while (i < sl.s.size()) {
        size_t j = i;
        while (j < sl.s.size() && sl.s[j] == sl.s[i]) ++j;
        size_t count = j - i;
        if (count % static_cast<size_t>(b_u) != 0) {
            if (j != sl.s.size())
                throw MultiplicityNotDivisible("slope " + rat_to_string(sl.s[i]) +
                                               " multiplicity " + std::to_string(count));
            count -= count % static_cast<size_t>(b_u); // trailing group cut by truncation
        }
        for (size_t t = 0; t < count / static_cast<size_t>(b_u); ++t) div.s.push_back(sl.s[i]);
        i = j;
    }
    out.cf_np = from_slopes(div);
    return out;
}

bool unit_leading_term(const TauRing& R, const std::vector<TauSeries>& r, int k, int d, long p,
                       int a, std::uint64_t u) {
    Rat y = y_u(p, a, d, u, static_cast<long long>(k) * d);
    if (y.get_den() != 1) throw Error("y_u(kd) unexpectedly non-integral");
    long idx = mpz_get_si(y.get_num().get_mpz_t()) * R.dq1;
    size_t pos = static_cast<size_t>(k) * d;
    if (pos >= r.size()) throw PrecisionExhausted("series does not reach s^{kd}");
    if (idx >= R.Ktau) throw PrecisionExhausted("tau truncation below the expected leading term");
    const TauSeries& rk = r[pos];
    for (long i = 0; i < idx; ++i)
        if (!R.base.is_zero(rk.c[i])) return false;
    return R.base.is_unit(rk.c[idx]);
}

bool lower_bound_check(const TauRing& R, const std::vector<NuclearMatrix>& mats,
                       const std::vector<std::vector<int>>& ts, int s_deg) {
    if (mats.empty() || mats.size() != ts.size()) throw ParamMismatch("lower_bound_check input");
    const int n = mats[0].n;
    for (size_t i = 0; i < mats.size(); ++i) {
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                auto v = ts_vtau(R, mats[i].at(row, col));
                if (v && *v < ts[i][row]) return false; // not diagonal-extractable as claimed
            }
        }
    }
    NuclearMatrix P = mats[0];
    for (size_t i = 1; i < mats.size(); ++i) P = mat_mul(R, mats[i], P);
    auto r = char_series(R, P, std::min(s_deg, n));
    // bound at k: sum_i sum_{j<k} t_i[j], in tau units
    for (size_t k = 0; k < r.size(); ++k) {
        long bound = 0;
        for (const auto& t : ts)
            for (size_t j = 0; j < k; ++j) bound += t[j];
        auto v = ts_vtau(R, r[k]);
        if (v && static_cast<long>(*v) < bound) return false;
    }
    return true;
}

DworkRun run_dwork(const FieldTower& tower, const FqPoly& f, std::uint64_t u, int s_deg, int n,
                   int Ktau, int M) {
    CSeq cs = c_sequence(tower.p(), tower.a(), u);
    const int dq1 = f.d * static_cast<int>(tower.q() - 1);
    TauRing R(tower.p(), M, tower.defining_poly(1), Ktau, dq1);
    NuclearMatrix N = nuclear_matrix(tower, f, cs, n, R);
    NuclearMatrix Mm = semilinear_power(R, N, tower.a());
    int deg = std::min(s_deg, n);
    auto r = char_series(R, Mm, deg);

    DworkRun out;
    out.n = n;
    out.Ktau = Ktau;
    out.M = M;
    out.s_deg = deg;
    out.b_u = cs.b_u;
    out.r = r;
    auto np = tadic_np(R, r, cs.b_u);
    out.det_np = np.det_np;
    out.cf_np = np.cf_np;

    // per-coefficient Hodge bound, valid at every truncation: v_T(r_k) is at
    // least (a(p-1)/(d(q-1))) * (c_0 + ... + c_{k-1})
    out.hp_bound_ok = true;
    Int prefix = 0;
    for (size_t k = 0; k < r.size(); ++k) {
        if (k > 0) prefix += static_cast<unsigned long>(cs.c(static_cast<std::uint64_t>(k - 1)));
        auto v = ts_vtau(R, r[k]);
        if (!v) continue;
        Rat vt = make_rat(*v, R.dq1);
        Rat bound = make_rat(Int(tower.a()) * Int(tower.p() - 1) * prefix,
                             Int(f.d) * Int(tower.q() - 1));
        if (vt < bound) {
            out.hp_bound_ok = false;
            break;
        }
    }
    return out;
}

std::string tau_series_to_json(const TauRing& R, const TauSeries& t) {
    std::string out = "[";
    for (int i = 0; i < R.Ktau; ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < R.base.n; ++j) {
            if (j) out += ",";
            out += "\"" + t.c[i][j].get_str() + "\"";
        }
        out += "]";
    }
    return out + "]";
}

std::string matrix_to_json(const TauRing& R, const NuclearMatrix& M) {
    std::string out = "{\"n\":" + std::to_string(M.n) + ",\"K_tau\":" + std::to_string(R.Ktau) +
                      ",\"entries\":[";
    for (int r = 0; r < M.n; ++r) {
        if (r) out += ",";
        out += "[";
        for (int c = 0; c < M.n; ++c) {
            if (c) out += ",";
            out += tau_series_to_json(R, M.at(r, c));
        }
        out += "]";
    }
    return out + "]}";
}

Polygon stable_prefix(const Polygon& a, const Polygon& b) {
    Polygon out;
    size_t n = std::min(a.v.size(), b.v.size());
    for (size_t i = 0; i < n; ++i) {
        if (a.v[i] == b.v[i])
            out.v.push_back(a.v[i]);
        else
            break;
    }
    return out;
}

void default_truncation(const FieldTower& tower, int d, std::uint64_t u, int s_deg, int& n,
                        int& Ktau, int& M) {
    CSeq cs = c_sequence(tower.p(), tower.a(), u);
    n = 2 * cs.b_u * s_deg;
    // K_tau >= d(q-1) * UP-height(s_deg) + d(q-1)
    long long kd = ((s_deg + d - 1) / d) * d; // next multiple of d
    Rat up_h;
    if (kd == s_deg) {
        up_h = y_u(tower.p(), tower.a(), d, u, s_deg);
    } else {
        Rat y0 = y_u(tower.p(), tower.a(), d, u, kd - d);
        Rat y1 = y_u(tower.p(), tower.a(), d, u, kd);
        up_h = y0 + (y1 - y0) * make_rat(s_deg - (kd - d), d);
    }
    int dq1 = d * static_cast<int>(tower.q() - 1);
    Int ceil_h = up_h.get_num() / up_h.get_den() + 1;
    Ktau = static_cast<int>(ceil_h.get_si()) * dq1 + dq1;
    M = static_cast<int>(ceil_h.get_si()) + 8;
}

} // namespace dwork
} // namespace aswn
