#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aswn/errors.hpp"
#include "aswn/fppoly.hpp"

namespace aswn {

// Element of F_{q^level}, coefficient vector in the power basis of the
// level's defining polynomial (length a*level, entries in [0, p)).
struct FFElem {
    int level = 1;
    std::vector<std::uint32_t> c;

    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }
    bool operator==(const FFElem&) const = default;
};

// F_p c F_q c F_{q^l} for 1 <= l <= lmax, with deterministic defining data:
// each level's modulus is the lexicographically smallest monic irreducible
// (coefficients compared low-to-high), g is the lex-smallest generator of
// F_q^x, and embed[l] is the image of g inside level l.
class FieldTower {
public:
    FieldTower(long p, int a, int lmax);

    long p() const { return p_; }
    int a() const { return a_; }
    int lmax() const { return lmax_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t order(int level) const { return levels_.at(level - 1).order; } // q^l - 1

    const fppoly::Poly& defining_poly(int level) const { return levels_.at(level - 1).poly; }
    const FFElem& generator() const { return g_; }                  // generator of F_q^x, level 1
    const FFElem& level_generator(int level) const { return levels_.at(level - 1).gamma; }
    const FFElem& embedded_g(int level) const { return levels_.at(level - 1).embed_g; }

    FFElem zero(int level) const;
    FFElem one(int level) const;
    FFElem from_coeffs(int level, const std::vector<std::uint32_t>& c) const;

    FFElem add(const FFElem& x, const FFElem& y) const;
    FFElem sub(const FFElem& x, const FFElem& y) const;
    FFElem mul(const FFElem& x, const FFElem& y) const;
    FFElem pow(const FFElem& x, std::uint64_t e) const;
    FFElem inv(const FFElem& x) const;

    // All q^l - 1 nonzero elements once, lexicographic on coefficient vectors
    // (position 0 most significant).
    void enumerate_units(int level, const std::function<void(const FFElem&)>& fn) const;

    // x^{(q^l-1)/(q-1)} re-expressed in the level-1 basis.
    FFElem norm_to_base(const FFElem& x) const;

    // Discrete log at level 1: g^k = y, table-backed.
    std::uint64_t dlog(const FFElem& y) const;

    // Map a level-1 element into level l through g -> embed[l].
    FFElem embed(const FFElem& x, int level) const;

    std::uint64_t encode(const FFElem& x) const; // base-p digits packed, low index most significant
    std::string to_json() const;

private:
    struct Level {
        fppoly::Poly poly;     // monic defining polynomial of degree a*l
        std::uint64_t order;   // q^l - 1
        FFElem gamma;          // lex-smallest generator of the unit group
        FFElem embed_g;        // image of g in this level
        std::vector<FFElem> embed_pows;                  // embed_g^k, k in [0, q-1)
        std::unordered_map<std::uint64_t, std::uint64_t> embed_dlog; // encode -> k
    };

    long p_;
    int a_;
    int lmax_;
    std::uint64_t q_;
    std::vector<Level> levels_;
    FFElem g_;
    std::vector<FFElem> g_pows_;                            // g^k at level 1
    std::unordered_map<std::uint64_t, std::uint64_t> dlog_; // encode -> k, level 1

    void check_same_level(const FFElem& x, const FFElem& y) const;
    FFElem mul_raw(int level, const FFElem& x, const FFElem& y) const;
};

} // namespace aswn
