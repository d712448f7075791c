#include "aswn/polygon.hpp"

#include <algorithm>
#include <sstream>

#include "aswn/errors.hpp"

namespace aswn {

long long Polygon::x_min() const {
    if (v.empty()) throw EmptyInput("empty polygon");
    return v.front().x;
}

long long Polygon::x_max() const {
    if (v.empty()) throw EmptyInput("empty polygon");
    return v.back().x;
}

Polygon lower_hull(std::vector<HullPoint> points) {
    std::vector<Polygon::Vertex> pts;
    for (auto& [x, y] : points)
        if (y) pts.push_back({x, *y});
    if (pts.empty()) throw EmptyInput("lower_hull: no finite points");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.x < b.x; });
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x == pts[i - 1].x) throw ParamMismatch("lower_hull: duplicate x");

    std::vector<Polygon::Vertex> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // pop b unless slope(a,b) < slope(b,pt)
            Rat lhs = (b.y - a.y) * Rat(static_cast<long>(pt.x - b.x));
            Rat rhs = (pt.y - b.y) * Rat(static_cast<long>(b.x - a.x));
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    Polygon P;
    P.v = std::move(hull);
    return P;
}

SlopeMultiset slopes(const Polygon& P) {
    SlopeMultiset S;
    for (size_t i = 1; i < P.v.size(); ++i) {
        long long dx = P.v[i].x - P.v[i - 1].x;
        Rat s = (P.v[i].y - P.v[i - 1].y) / Rat(static_cast<long>(dx));
        for (long long k = 0; k < dx; ++k) S.s.push_back(s);
    }
    return S;
}

Polygon from_slopes(const SlopeMultiset& S) {
    std::vector<Rat> sl = S.s;
    std::sort(sl.begin(), sl.end());
    Polygon P;
    P.v.push_back({0, Rat(0)});
    long long x = 0;
    Rat y(0);
    size_t i = 0;
    while (i < sl.size()) {
        size_t j = i;
        while (j < sl.size() && sl[j] == sl[i]) ++j;
        x += static_cast<long long>(j - i);
        y += sl[i] * Rat(static_cast<long>(j - i));
        P.v.push_back({x, y});
        i = j;
    }
    return P;
}

SlopeMultiset uplus(const SlopeMultiset& a, const SlopeMultiset& b) {
    SlopeMultiset r;
    r.s.reserve(a.s.size() + b.s.size());
    std::merge(a.s.begin(), a.s.end(), b.s.begin(), b.s.end(), std::back_inserter(r.s));
    return r;
}

Polygon oplus(const Polygon& a, const Polygon& b) {
    return from_slopes(uplus(slopes(a), slopes(b)));
}

Rat height(const Polygon& P, long long x) {
    if (P.v.empty()) throw EmptyInput("height of empty polygon");
    if (x < P.x_min() || x > P.x_max()) throw OutOfDomain("height: x outside polygon");
    for (size_t i = 1; i < P.v.size(); ++i) {
        if (x <= P.v[i].x) {
            const auto& a = P.v[i - 1];
            const auto& b = P.v[i];
            if (x == a.x) return a.y;
            return a.y + (b.y - a.y) * Rat(static_cast<long>(x - a.x)) /
                             Rat(static_cast<long>(b.x - a.x));
        }
    }
    return P.v.back().y;
}

Polygon shift(const Polygon& P, const Rat& t) {
    Polygon r = P;
    for (auto& v : r.v) v.y += t;
    return r;
}

Polygon scale_y(const Polygon& P, const Rat& c) {
    if (c <= 0) throw ParamMismatch("scale_y needs c > 0");
    Polygon r = P;
    for (auto& v : r.v) v.y *= c;
    return r;
}

bool geq(const Polygon& a, const Polygon& b) {
    if (a.v.empty() || b.v.empty()) throw EmptyInput("geq on empty polygon");
    if (a.x_min() != b.x_min() || a.x_max() != b.x_max())
        throw LengthMismatch("geq needs equal spans");
    for (long long x = a.x_min(); x <= a.x_max(); ++x)
        if (height(a, x) < height(b, x)) return false;
    return true;
}

long digit_sum(long p, std::uint64_t u) {
    long s = 0;
    while (u) {
        s += static_cast<long>(u % static_cast<std::uint64_t>(p));
        u /= static_cast<std::uint64_t>(p);
    }
    return s;
}

Rat y_u(long p, int a, int d, std::uint64_t u, long long k) {
    Rat quad = make_rat(Int(a) * Int(static_cast<long>(k)) * Int(static_cast<long>(k - 1)) * Int(p - 1), Int(2) * Int(d));
    Rat lin = make_rat(Int(static_cast<long>(k)) * Int(digit_sum(p, u)), Int(d));
    return quad + lin;
}

std::uint64_t CSeq::c(std::uint64_t n) const {
    return q1 * (n / static_cast<std::uint64_t>(b_u)) + u_sorted[n % static_cast<std::uint64_t>(b_u)];
}

Int CSeq::prefix_sum(std::uint64_t count) const {
    Int s = 0;
    for (std::uint64_t n = 0; n < count; ++n) s += static_cast<unsigned long>(c(n));
    return s;
}

CSeq c_sequence(long p, int a, std::uint64_t u) {
    CSeq cs;
    cs.p = p;
    cs.a = a;
    cs.u = u;
    cs.q1 = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(a)) - 1;
    if (u > cs.q1 - 1 && cs.q1 > 0) throw ParamMismatch("u out of range");
    if (cs.q1 == 0) throw ParamMismatch("q must exceed 1");
    cs.b_u = orbit_order(u, static_cast<std::uint64_t>(p), cs.q1);
    std::uint64_t v = u % cs.q1;
    for (int i = 0; i < cs.b_u; ++i) {
        cs.u_sorted.push_back(v);
        v = (v * (static_cast<std::uint64_t>(p) % cs.q1)) % cs.q1;
    }
    std::sort(cs.u_sorted.begin(), cs.u_sorted.end());
    return cs;
}

Polygon hodge_polygon(long p, int a, int d, std::uint64_t u, long long k_max) {
    CSeq cs = c_sequence(p, a, u);
    Rat scale = make_rat(Int(a) * Int(p - 1), Int(d) * Int(cs.b_u) * Int(cs.q1));
    Polygon P;
    Int acc = 0;
    std::uint64_t idx = 0;
    for (long long k = 0; k <= k_max; ++k) {
        P.v.push_back({k, scale * Rat(acc)});
        for (int j = 0; j < cs.b_u; ++j) acc += static_cast<unsigned long>(cs.c(idx++));
    }
    // increments are strictly increasing, so every point is a vertex
    for (size_t i = 2; i < P.v.size(); ++i) {
        Rat s0 = P.v[i - 1].y - P.v[i - 2].y;
        Rat s1 = P.v[i].y - P.v[i - 1].y;
        if (!(s0 < s1)) throw Error("hodge polygon not strictly convex");
    }
    return P;
}

Polygon up_polygon(long p, int a, int d, std::uint64_t u, long long x_max) {
    if (x_max % d != 0) throw ParamMismatch("up_polygon needs x_max divisible by d");
    Polygon P;
    for (long long k = 0; k * d <= x_max; ++k) P.v.push_back({k * d, y_u(p, a, d, u, k * d)});
    for (size_t i = 2; i < P.v.size(); ++i) {
        Rat s0 = (P.v[i - 1].y - P.v[i - 2].y);
        Rat s1 = (P.v[i].y - P.v[i - 1].y);
        if (!(s0 < s1)) throw Error("upper polygon not strictly convex");
    }
    return P;
}

Rat max_vertical_gap(const Polygon& up, const Polygon& hp) {
    if (up.x_min() != hp.x_min() || up.x_max() != hp.x_max())
        throw LengthMismatch("max_vertical_gap needs equal spans");
    Rat best(0);
    for (long long x = up.x_min(); x <= up.x_max(); ++x) {
        Rat g = height(up, x) - height(hp, x);
        if (g > best) best = g;
    }
    return best;
}

Polygon truncate_at(const Polygon& P, long long x_max) {
    if (P.v.empty()) throw EmptyInput("truncate_at on empty polygon");
    if (x_max >= P.x_max()) return P;
    if (x_max < P.x_min()) throw OutOfDomain("truncate_at before polygon start");
    Polygon r;
    for (const auto& v : P.v) {
        if (v.x <= x_max) r.v.push_back(v);
    }
    if (r.v.empty() || r.v.back().x != x_max) r.v.push_back({x_max, height(P, x_max)});
    return r;
}

std::string polygon_to_json(const Polygon& P) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < P.v.size(); ++i) {
        if (i) os << ",";
        os << "[" << P.v[i].x << ",\"" << rat_to_string(P.v[i].y) << "\"]";
    }
    os << "]";
    return os.str();
}

std::string polygon_to_csv(const Polygon& P) {
    std::ostringstream os;
    os << "x,y_num,y_den\n";
    for (const auto& v : P.v)
        os << v.x << "," << v.y.get_num().get_str() << "," << v.y.get_den().get_str() << "\n";
    return os.str();
}

std::string slopes_to_json(const SlopeMultiset& S) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < S.s.size(); ++i) {
        if (i) os << ",";
        os << "\"" << rat_to_string(S.s[i]) << "\"";
    }
    os << "]";
    return os.str();
}

} // namespace aswn
