#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aswn/numutil.hpp"

namespace aswn {

// Lower convex hulls with integer x and exact rational y, in canonical vertex
// form: x strictly increasing, slopes between consecutive vertices strictly
// increasing. All Newton/Hodge/upper polygons live here.
struct Polygon {
    struct Vertex {
        long long x;
        Rat y;
        bool operator==(const Vertex&) const = default;
    };
    std::vector<Vertex> v;

    bool operator==(const Polygon&) const = default;
    bool empty() const { return v.size() < 2; }
    long long x_min() const;
    long long x_max() const;
    long long length() const { return v.empty() ? 0 : x_max() - x_min(); }
};

// Multiset of exact rational slopes, stored sorted.
struct SlopeMultiset {
    std::vector<Rat> s;
    bool operator==(const SlopeMultiset&) const = default;
    size_t size() const { return s.size(); }
};

using HullPoint = std::pair<long long, std::optional<Rat>>; // nullopt = +infinity

Polygon lower_hull(std::vector<HullPoint> points);

SlopeMultiset slopes(const Polygon& P);
Polygon from_slopes(const SlopeMultiset& S); // anchored at (0,0)

SlopeMultiset uplus(const SlopeMultiset& a, const SlopeMultiset& b);
Polygon oplus(const Polygon& a, const Polygon& b);

Rat height(const Polygon& P, long long x);
Polygon shift(const Polygon& P, const Rat& t);
Polygon scale_y(const Polygon& P, const Rat& c); // c > 0
bool geq(const Polygon& a, const Polygon& b);    // a(x) >= b(x) at every integer x

// y_u(k) = a k (k-1)(p-1) / (2d) + (k/d) * digitsum_p(u)
Rat y_u(long p, int a, int d, std::uint64_t u, long long k);
long digit_sum(long p, std::uint64_t u);

// The merged exponent sequence c_{u,n} and its closed form.
struct CSeq {
    long p;
    int a;
    std::uint64_t u;
    std::uint64_t q1; // q - 1
    int b_u;
    std::vector<std::uint64_t> u_sorted; // the orbit u*p^i mod (q-1), sorted

    std::uint64_t c(std::uint64_t n) const;
    Int prefix_sum(std::uint64_t count) const; // sum of c(0..count-1)
};
CSeq c_sequence(long p, int a, std::uint64_t u);

// Hodge polygon: heights (a(p-1)/(d b_u (q-1))) * prefix_sum(k b_u); every
// integer point is a vertex and the height at k equals y_u(k).
Polygon hodge_polygon(long p, int a, int d, std::uint64_t u, long long k_max);

// Upper-bound polygon: hull through (kd, y_u(kd)) only.
Polygon up_polygon(long p, int a, int d, std::uint64_t u, long long x_max);

// max over integer x of UP(x) - HP(x); needs equal spans.
Rat max_vertical_gap(const Polygon& up, const Polygon& hp);

// Initial segment on [x_min, x_max], interpolating a final vertex if needed.
Polygon truncate_at(const Polygon& P, long long x_max);

std::string polygon_to_json(const Polygon& P);
std::string polygon_to_csv(const Polygon& P);
std::string slopes_to_json(const SlopeMultiset& S);

} // namespace aswn
