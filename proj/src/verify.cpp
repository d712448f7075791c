#include "aswn/verify.hpp"

#include <algorithm>
#include <chrono>

namespace aswn {
namespace cli {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

std::uint64_t p_pow(long p, int e) {
    return pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(e));
}

Rat scale_down(long p, int m) { // 1 / ((p-1) p^{m-1})
    return make_rat(Int(1), Int(p - 1) * Int(p_pow(p, m - 1)));
}

// first integer x with a(x) < b(x), for witnesses
std::optional<long long> first_below(const Polygon& a, const Polygon& b) {
    for (long long x = a.x_min(); x <= a.x_max(); ++x)
        if (height(a, x) < height(b, x)) return x;
    return std::nullopt;
}

std::uint64_t tower_cost(std::uint64_t q, int lmax) {
    std::uint64_t total = 0;
    for (int l = 1; l <= lmax; ++l) total += pow_u64(q, static_cast<unsigned>(l));
    return total;
}

void guard_budget(const Instance& inst, int lmax) {
    std::uint64_t top = pow_u64(inst.q(), static_cast<unsigned>(lmax));
    if (top - 1 > inst.budget_per_sum || tower_cost(inst.q(), lmax) > inst.budget_total)
        throw BudgetExceeded("instance needs enumeration through l_max = " + std::to_string(lmax) +
                             " (q^l_max = " + std::to_string(top) + "), beyond the budget");
}

} // namespace

std::uint64_t Instance::q() const {
    return pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(a));
}

int Instance::D() const {
    return d() * static_cast<int>(p_pow(p, m - 1));
}

Instance instance_from_json(const Json& j) {
    Instance inst;
    inst.p = j.at("p").get<long>();
    inst.a = j.at("a").get<int>();
    for (const auto& row : j.at("f")) {
        std::vector<std::uint32_t> v;
        for (const auto& c : row) {
            long long e = c.get<long long>();
            if (e < 0) throw InvalidConfig("f coefficient entries must be nonnegative");
            v.push_back(static_cast<std::uint32_t>(e));
        }
        inst.f.push_back(v);
    }
    long long u_signed = j.value("u", 0LL);
    long long r_signed = j.value("r", 1LL);
    if (u_signed < 0 || r_signed < 0) throw InvalidConfig("u and r must be nonnegative");
    inst.u = static_cast<std::uint64_t>(u_signed);
    inst.m = j.value("m", 1);
    inst.r = static_cast<std::uint64_t>(r_signed);
    inst.M = j.value("M", 0);
    inst.K_tau = j.value("K_tau", 0);
    inst.n_rows = j.value("n_rows", 0);
    inst.budget_per_sum = j.value("budget_per_sum", 10'000'000ULL);
    inst.budget_total = j.value("budget_total", 100'000'000ULL);
    validate(inst);
    return inst;
}

Json instance_echo(const Instance& inst) {
    Json j;
    j["p"] = inst.p;
    j["a"] = inst.a;
    Json f = Json::array();
    for (const auto& row : inst.f) {
        Json r = Json::array();
        for (auto c : row) r.push_back(c);
        f.push_back(r);
    }
    j["f"] = f;
    j["u"] = inst.u;
    j["m"] = inst.m;
    j["r"] = inst.r;
    return j;
}

void validate(const Instance& inst) {
    if (!is_prime_u64(static_cast<std::uint64_t>(inst.p)))
        throw InvalidConfig("p must be prime");
    if (inst.a < 1) throw InvalidConfig("a must be positive");
    if (inst.f.size() < 2) throw InvalidConfig("f must have degree >= 1");
    for (const auto& row : inst.f) {
        if (static_cast<int>(row.size()) != inst.a)
            throw InvalidConfig("f coefficients must be length-a vectors");
        for (auto c : row)
            if (c >= static_cast<std::uint32_t>(inst.p))
                throw InvalidConfig("f coefficient entries must lie in [0, p)");
    }
    const auto& lead = inst.f.back();
    if (lead[0] != 1 ||
        !std::all_of(lead.begin() + 1, lead.end(), [](std::uint32_t c) { return c == 0; }))
        throw InvalidConfig("f must be monic");
    int d = inst.d();
    if (gcd_u64(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(inst.p)) != 1)
        throw InvalidConfig("deg f must be coprime to p");
    if (inst.m < 1) throw InvalidConfig("m must be >= 1");
    std::uint64_t q = inst.q();
    if (inst.u > q - 2) throw InvalidConfig("u must lie in [0, q-2]");
    std::uint64_t pm = p_pow(inst.p, inst.m);
    if (inst.r < 1 || inst.r >= pm ||
        gcd_u64(inst.r, static_cast<std::uint64_t>(inst.p)) != 1)
        throw InvalidConfig("r must lie in [1, p^m) and be coprime to p");
}

LRun l_pipeline(const Instance& inst, const ExpSumCache* cache, int extra_levels) {
    int lmax = inst.D() + extra_levels;
    guard_budget(inst, lmax);
    FieldTower tower(inst.p, inst.a, lmax);
    FqPoly fq = make_fq_poly(tower, inst.f);
    Budget budget{inst.budget_per_sum, inst.budget_total, 0};
    ExpSumEngine engine(tower, fq, inst.m, budget, cache);
    ExpSumTable sums = exp_sums(engine, inst.u, inst.D());
    LPoly L = l_polynomial(sums, inst.D(), inst.p, inst.a, inst.u, inst.m);
    NewtonResult nr = np_of_l(L, tower, ChiSpec{inst.m, inst.r}, inst.M);
    Rat sc = scale_down(inst.p, inst.m);
    Polygon hp = scale_y(hodge_polygon(inst.p, inst.a, inst.d(), inst.u, inst.D()), sc);
    Polygon up = scale_y(up_polygon(inst.p, inst.a, inst.d(), inst.u, inst.D()), sc);
    return LRun{std::move(tower), std::move(fq), std::move(L), std::move(nr), std::move(hp),
                std::move(up)};
}

namespace {

void sandwich_checks(Report& rep, const LRun& run) {
    auto low = first_below(run.nr.np, run.hp_scaled);
    rep.add("hodge_lower_bound", !low,
            low ? Json{{"x", *low},
                      {"np", rat_to_string(height(run.nr.np, *low))},
                      {"hp", rat_to_string(height(run.hp_scaled, *low))}}
                : Json::object());
    auto highv = first_below(run.up_scaled, run.nr.np);
    rep.add("upper_bound", !highv,
            highv ? Json{{"x", *highv},
                        {"np", rat_to_string(height(run.nr.np, *highv))},
                        {"up", rat_to_string(height(run.up_scaled, *highv))}}
                  : Json::object());
}

void fill_l_report(Report& rep, const Instance& inst, const LRun& run) {
    rep.instance = instance_echo(inst);
    rep.np = run.nr.np;
    rep.hp_scaled = run.hp_scaled;
    rep.up_scaled = run.up_scaled;
    rep.slopes = slopes(run.nr.np);
    rep.M = run.nr.M_used;
}

} // namespace

Report run_lpoly(const Instance& inst, const ExpSumCache* cache, std::string* l_json) {
    auto t0 = Clock::now();
    LRun run = l_pipeline(inst, cache);
    Report rep;
    fill_l_report(rep, inst, run);
    sandwich_checks(rep, run);
    if (l_json) *l_json = lpoly_to_json(run.L);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_main(const Instance& inst, const ExpSumCache* cache) {
    auto t0 = Clock::now();
    LRun run = l_pipeline(inst, cache);
    Report rep;
    fill_l_report(rep, inst, run);

    // (a) the scaled polygon passes through (kd, y_u(kd)) for 0 <= k <= p^{m-1}
    Rat scale = make_rat(Int(inst.p - 1) * Int(p_pow(inst.p, inst.m - 1)), Int(1));
    bool ok_a = true;
    Json wit_a = Json::object();
    for (long long k = 0; k <= static_cast<long long>(p_pow(inst.p, inst.m - 1)); ++k) {
        long long x = k * inst.d();
        Rat got = height(run.nr.np, x) * scale;
        Rat want = y_u(inst.p, inst.a, inst.d(), inst.u, x);
        if (got != want) {
            ok_a = false;
            wit_a = {{"x", x}, {"got", rat_to_string(got)}, {"want", rat_to_string(want)}};
            break;
        }
    }
    rep.add("vertices_main_a", ok_a, wit_a);

    // (b) slope intervals, block by block
    SlopeMultiset sl = slopes(run.nr.np);
    long pm1 = static_cast<long>(p_pow(inst.p, inst.m - 1));
    long su = digit_sum(inst.p, inst.u);
    bool ok_b = static_cast<int>(sl.s.size()) == inst.D();
    Json wit_b = Json::object();
    if (!ok_b) wit_b = {{"slope_count", sl.s.size()}, {"expected", inst.D()}};
    for (long k = 1; ok_b && k <= pm1; ++k) {
        Rat lo = make_rat(Int(inst.a) * Int(k - 1), Int(pm1)) +
                 make_rat(Int(su), Int(inst.d()) * Int(inst.p - 1) * Int(pm1));
        Rat hi = lo + make_rat(Int(inst.a) * Int(inst.d() - 1), Int(inst.d()) * Int(pm1));
        for (int j = 0; j < inst.d(); ++j) {
            const Rat& s = sl.s[static_cast<size_t>((k - 1) * inst.d() + j)];
            if (s < lo || s > hi) {
                ok_b = false;
                wit_b = {{"k", k},
                         {"slope", rat_to_string(s)},
                         {"lo", rat_to_string(lo)},
                         {"hi", rat_to_string(hi)}};
                break;
            }
        }
    }
    rep.add("slope_intervals_main_b", ok_b, wit_b);

    sandwich_checks(rep, run);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_strong(const Instance& inst, const std::vector<int>& m_list,
                         const ExpSumCache* cache) {
    auto t0 = Clock::now();
    // minimal m0 with p^{m0} > a d p / (8(p-1))
    int m0 = 1;
    while (!(Rat(Int(p_pow(inst.p, m0))) >
             make_rat(Int(inst.a) * Int(inst.d()) * Int(inst.p), Int(8) * Int(inst.p - 1))))
        ++m0;

    Instance base = inst;
    base.m = m0;
    base.r = 1;
    validate(base);
    LRun base_run = l_pipeline(base, cache);
    SlopeMultiset alpha = slopes(base_run.nr.np);

    Report rep;
    fill_l_report(rep, base, base_run);
    rep.instance["m0"] = m0;
    rep.instance["base_slope_count"] = alpha.s.size(); // d p^{m0-1}, the degree count
    rep.instance["m_list"] = m_list;

    for (int m : m_list) {
        if (m < m0) throw InvalidConfig("m_list entries must be >= m0 = " + std::to_string(m0));
        Instance cur = inst;
        cur.m = m;
        cur.r = 1;
        validate(cur);
        LRun run = l_pipeline(cur, cache);
        SlopeMultiset direct = slopes(run.nr.np);

        std::uint64_t shift_count = p_pow(inst.p, m - m0);
        SlopeMultiset predicted;
        for (std::uint64_t i = 0; i < shift_count; ++i)
            for (const Rat& al : alpha.s)
                predicted.s.push_back((al + Rat(inst.a) * Rat(Int(i))) / Rat(Int(shift_count)));
        std::sort(predicted.s.begin(), predicted.s.end());

        bool ok = predicted == direct;
        Json wit = Json::object();
        if (!ok) {
            wit = {{"m", m},
                   {"predicted", json_slopes(predicted)},
                   {"direct", json_slopes(direct)}};
        }
        rep.add("progression_m" + std::to_string(m), ok, wit);
    }
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_decompose(const Instance& inst, const ExpSumCache* cache) {
    auto t0 = Clock::now();
    std::uint64_t q1 = inst.q() - 1;
    int Dg = inst.d() * static_cast<int>(q1) * static_cast<int>(p_pow(inst.p, inst.m - 1));
    guard_budget(inst, Dg);

    FieldTower tower(inst.p, inst.a, std::max(Dg, inst.D()));
    FqPoly fq = make_fq_poly(tower, inst.f);
    FqPoly g = twist_compose(tower, fq);

    Budget budget{inst.budget_per_sum, inst.budget_total, 0};
    ExpSumEngine eng_g(tower, g, inst.m, budget, cache);
    ExpSumTable sums_g = exp_sums(eng_g, 0, Dg);
    LPoly Lg = l_polynomial(sums_g, Dg, inst.p, inst.a, 0, inst.m);

    ExpSumEngine eng_f(tower, fq, inst.m, budget, cache);
    const CycRing& R = cyc_ring(tower.q(), inst.p, inst.m);
    std::vector<CycInt> prod = {cyc_one(R)};
    for (std::uint64_t u = 0; u <= q1 - 1; ++u) {
        ExpSumTable sums_f = exp_sums(eng_f, u, inst.D());
        LPoly Lf = l_polynomial(sums_f, inst.D(), inst.p, inst.a, u, inst.m);
        std::vector<CycInt> nx(prod.size() + Lf.c.size() - 1, cyc_zero(R));
        for (size_t i = 0; i < prod.size(); ++i) {
            if (prod[i].is_zero()) continue;
            for (size_t j = 0; j < Lf.c.size(); ++j)
                nx[i + j] = cyc_add(nx[i + j], cyc_mul(prod[i], Lf.c[j]));
        }
        prod = std::move(nx);
    }

    Report rep;
    rep.instance = instance_echo(inst);
    rep.instance["g_degree"] = g.d;
    bool ok = prod.size() == Lg.c.size();
    Json wit = Json::object();
    if (!ok) wit = {{"lhs_degree", Lg.c.size() - 1}, {"rhs_degree", prod.size() - 1}};
    for (size_t k = 0; ok && k < prod.size(); ++k) {
        // equality holds in the cyclotomic quotient, where X is a primitive root
        if (!(reduce_x_cyclotomic(Lg.c[k]) == reduce_x_cyclotomic(prod[k]))) {
            ok = false;
            wit = {{"k", k}, {"lhs", cyc_to_json(Lg.c[k])}, {"rhs", cyc_to_json(prod[k])}};
        }
    }
    rep.add("twisted_decomposition", ok, wit);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_independent(const Instance& inst, const std::vector<std::uint64_t>& r_list,
                              const ExpSumCache* cache) {
    auto t0 = Clock::now();
    if (r_list.empty()) throw InvalidConfig("r_list must not be empty");
    bool normative =
        Rat(Int(p_pow(inst.p, inst.m))) * Rat(8) > Rat(Int(inst.a) * Int(inst.d()) * Int(inst.p));

    Instance first = inst;
    first.r = r_list[0];
    validate(first);
    LRun run = l_pipeline(first, cache);

    Report rep;
    fill_l_report(rep, first, run);
    Json rl = Json::array();
    for (auto r : r_list) rl.push_back(r);
    rep.instance["r_list"] = rl;

    bool ok = true;
    Json wit = Json::object();
    for (size_t i = 1; i < r_list.size(); ++i) {
        Instance cur = inst;
        cur.r = r_list[i];
        validate(cur);
        NewtonResult nr = np_of_l(run.L, run.tower, ChiSpec{inst.m, r_list[i]}, inst.M);
        if (!(nr.np == run.nr.np)) {
            ok = false;
            wit = {{"r", r_list[i]},
                   {"polygon_r0", json_polygon(run.nr.np)},
                   {"polygon_r", json_polygon(nr.np)}};
            break;
        }
    }
    rep.add(normative ? "independence" : "info_independence", ok, wit);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_dwork(const Instance& inst, const ExpSumCache* cache) {
    auto t0 = Clock::now();
    int d = inst.d();
    // the determinant computes C^{b_u}; reaching x = 2d on C_f itself needs
    // b_u complete slope groups per unit step plus one spare coefficient
    int b_u = c_sequence(inst.p, inst.a, inst.u).b_u;
    int s_deg = 2 * d * b_u + 1;

    FieldTower tower(inst.p, inst.a, std::max(1, inst.D()));
    FqPoly fq = make_fq_poly(tower, inst.f);

    int n, Ktau, M;
    dwork::default_truncation(tower, d, inst.u, s_deg, n, Ktau, M);
    if (inst.n_rows > 0) n = inst.n_rows;
    if (inst.K_tau > 0) Ktau = inst.K_tau;
    if (inst.M > 0) M = inst.M;

    dwork::DworkRun base = dwork::run_dwork(tower, fq, inst.u, s_deg, n, Ktau, M);
    dwork::DworkRun dbl = dwork::run_dwork(tower, fq, inst.u, s_deg, 2 * n, 2 * Ktau, M);
    Polygon stable = dwork::stable_prefix(base.cf_np, dbl.cf_np);
    if (stable.v.size() < 2 || stable.x_max() < 2 * d)
        throw PrecisionExhausted("stable range does not reach s-degree 2d; raise n/K_tau");
    long long stable_x = stable.x_max();

    Report rep;
    rep.instance = instance_echo(inst);
    rep.instance["side"] = "tadic";
    rep.np = stable;
    rep.hp_scaled = truncate_at(
        hodge_polygon(inst.p, inst.a, d, inst.u, stable_x), stable_x);
    rep.up_scaled = up_polygon(inst.p, inst.a, d, inst.u, (stable_x / d) * d);
    rep.slopes = slopes(stable);
    rep.M = M;
    rep.K_tau = dbl.Ktau;
    rep.n_rows = dbl.n;

    rep.add("hp_lower_bound_every_truncation", base.hp_bound_ok && dbl.hp_bound_ok,
            base.hp_bound_ok ? Json::object() : Json{{"run", "base"}});

    // vertices at (kd, y_u(kd)) for k <= 2, exact heights and vertex membership
    bool ok_v = true;
    Json wit_v = Json::object();
    for (int k = 0; k <= 2; ++k) {
        long long x = static_cast<long long>(k) * d;
        Rat want = y_u(inst.p, inst.a, d, inst.u, x);
        bool found = false;
        for (const auto& v : stable.v)
            if (v.x == x && v.y == want) found = true;
        if (!found) {
            ok_v = false;
            wit_v = {{"x", x}, {"want", rat_to_string(want)}};
            break;
        }
    }
    rep.add("vertices_tadic", ok_v, wit_v);

    // unit leading coefficients (characteristic series itself only when b_u = 1)
    if (base.b_u == 1) {
        bool ok_u = true;
        Json wit_u = Json::object();
        dwork::TauRing R(inst.p, M, tower.defining_poly(1), dbl.Ktau,
                         d * static_cast<int>(tower.q() - 1));
        for (int k = 1; k <= 2; ++k) {
            if (!dwork::unit_leading_term(R, dbl.r, k, d, inst.p, inst.a, inst.u)) {
                ok_u = false;
                wit_u = {{"k", k}};
                break;
            }
        }
        rep.add("unit_leading_term", ok_u, wit_u);
    } else {
        rep.add_skipped("unit_leading_term", Json{{"reason", "b_u > 1"}});
    }

    // specialization inequality against the p-adic side:
    // (p-1) p^m NP_p(C) >= NP_T(C) pointwise on the stable range
    {
        LRun lrun = l_pipeline(inst, cache);
        int k_blocks = static_cast<int>((stable_x + inst.D()) / inst.D()) + 1;
        Polygon cp = from_slopes(char_series_slopes(lrun.nr.np, inst.a, k_blocks));
        Rat factor = Rat(Int(inst.p - 1) * Int(p_pow(inst.p, inst.m)));
        bool ok_s = true;
        Json wit_s = Json::object();
        for (long long x = 0; x <= stable_x; ++x) {
            if (factor * height(cp, x) < height(stable, x)) {
                ok_s = false;
                wit_s = {{"x", x},
                         {"padic_scaled", rat_to_string(factor * height(cp, x))},
                         {"tadic", rat_to_string(height(stable, x))}};
                break;
            }
        }
        rep.add("specialization_inequality", ok_s, wit_s);
    }

    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_distance(const Instance& inst) {
    auto t0 = Clock::now();
    int d = inst.d();
    long long x_max = 2LL * d;
    Polygon hp = hodge_polygon(inst.p, inst.a, d, inst.u, x_max);
    Polygon up = up_polygon(inst.p, inst.a, d, inst.u, x_max);
    Rat gap = max_vertical_gap(up, hp);
    Rat bound = make_rat(Int(inst.a) * Int(d) * Int(inst.p - 1), Int(8));

    Report rep;
    rep.instance = instance_echo(inst);
    rep.hp_scaled = hp;
    rep.up_scaled = up;
    rep.add("distance_bound", gap <= bound,
            Json{{"gap", rat_to_string(gap)}, {"bound", rat_to_string(bound)}});
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_distance_sweep(long p_max, int a_max, int d_max) {
    auto t0 = Clock::now();
    Report rep;
    rep.instance = Json{{"sweep", {{"p_max", p_max}, {"a_max", a_max}, {"d_max", d_max}}}};
    std::uint64_t checked = 0, attained = 0;
    bool ok = true;
    Json wit = Json::object();
    Json attained_list = Json::array();
    for (long p = 2; p <= p_max && ok; ++p) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
        for (int a = 1; a <= a_max && ok; ++a) {
            std::uint64_t q = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(a));
            for (int d = 1; d <= d_max && ok; ++d) {
                if (gcd_u64(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(p)) != 1)
                    continue;
                for (std::uint64_t u = 0; u + 1 < q && ok; ++u) {
                    Polygon hp = hodge_polygon(p, a, d, u, 2LL * d);
                    Polygon up = up_polygon(p, a, d, u, 2LL * d);
                    Rat gap = max_vertical_gap(up, hp);
                    Rat bound = make_rat(Int(a) * Int(d) * Int(p - 1), Int(8));
                    ++checked;
                    if (gap > bound) {
                        ok = false;
                        wit = {{"p", p},       {"a", a},
                               {"d", d},       {"u", u},
                               {"gap", rat_to_string(gap)}, {"bound", rat_to_string(bound)}};
                    } else if (gap == bound) {
                        ++attained;
                        if (attained_list.size() < 8)
                            attained_list.push_back(Json{{"p", p}, {"a", a}, {"d", d}, {"u", u}});
                    }
                }
            }
        }
    }
    if (ok)
        wit = {{"instances_checked", checked},
               {"bound_attained", attained},
               {"attained_examples", attained_list}};
    rep.add("distance_bound_sweep", ok, wit);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

Report run_verify_oracle(const Instance& inst, const ExpSumCache* cache) {
    auto t0 = Clock::now();
    int want = inst.D() + 2;
    int lmax = 0;
    std::uint64_t cum = 0;
    for (int l = 1; l <= want; ++l) {
        std::uint64_t ql = pow_u64(inst.q(), static_cast<unsigned>(l));
        if (ql - 1 > inst.budget_per_sum || cum + ql > inst.budget_total) break;
        cum += ql;
        lmax = l;
    }
    if (lmax < inst.D()) throw BudgetExceeded("oracle run cannot reach l = D");

    FieldTower tower(inst.p, inst.a, lmax);
    FqPoly fq = make_fq_poly(tower, inst.f);
    Budget budget{inst.budget_per_sum, inst.budget_total, 0};
    ExpSumEngine engine(tower, fq, inst.m, budget, cache);
    ExpSumTable sums = exp_sums(engine, inst.u, lmax);
    auto series = l_series(sums, lmax);

    Report rep;
    rep.instance = instance_echo(inst);
    rep.instance["l_max"] = lmax;

    // exact degree bound: coefficients beyond D vanish in the group ring
    if (lmax >= inst.D() + 1) {
        bool ok = true;
        Json wit = Json::object();
        for (int k = inst.D() + 1; k <= lmax && k <= inst.D() + 2; ++k) {
            if (!series[static_cast<size_t>(k)].is_zero()) {
                ok = false;
                wit = {{"k", k}};
                break;
            }
        }
        ok = ok && !series[static_cast<size_t>(inst.D())].is_zero();
        rep.add("degree_exact", ok, wit);
    } else {
        rep.add_skipped("degree_exact", Json{{"reason", "budget stops below D+1"}});
    }

    // Euler-product oracle through s-degree min(D+2, 8), capped by the budget
    int deg = std::min(lmax, std::min(inst.D() + 2, 8));
    Budget budget2{inst.budget_per_sum, inst.budget_total, 0};
    auto oracle = euler_oracle(tower, fq, inst.u, ChiSpec{inst.m, inst.r}, deg, budget2);
    bool ok_or = true;
    Json wit_or = Json::object();
    for (int k = 0; k <= deg; ++k) {
        CycInt lhs = cyc_map_y_power(series[static_cast<size_t>(k)], inst.r);
        if (!(lhs == oracle[static_cast<size_t>(k)])) {
            ok_or = false;
            wit_or = {{"k", k}};
            break;
        }
    }
    rep.add("oracle_equivalence", ok_or, wit_or);
    rep.timing_ms = elapsed_ms(t0);
    return rep;
}

std::uint64_t dry_run_cost(const Instance& inst, const std::string& command) {
    std::uint64_t q = inst.q();
    if (command == "decompose") {
        std::uint64_t q1 = q - 1;
        int Dg = inst.d() * static_cast<int>(q1) * static_cast<int>(p_pow(inst.p, inst.m - 1));
        return tower_cost(q, Dg) + q1 * tower_cost(q, inst.D());
    }
    if (command == "oracle") return tower_cost(q, std::min(inst.D() + 2, 8)) * 2;
    if (command == "distance") return 0;
    return tower_cost(q, inst.D());
}

int exit_code_for(const Report& rep) { return rep.all_pass() ? 0 : 1; }

} // namespace cli
} // namespace aswn
