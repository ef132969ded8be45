#ifndef HADFAM_N12_HPP
#define HADFAM_N12_HPP

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "hadfam/expansion.hpp"
#include "hadfam/numtheory.hpp"

namespace hadfam::n12 {

using cdouble = std::complex<double>;

/// The reduced variables of the N = 12 fourth-order consistency system.
/// x3c and x9c are dependent: x3a + x3b + x3c = x9a + x9b + x9c = 0.
struct N12Vars {
    cdouble x2, x10;
    cdouble x4a, x4b, x8a, x8b;
    cdouble x6a, x6b, x6c;
    cdouble x3a, x3b, x3c;
    cdouble x9a, x9b, x9c;
};

namespace detail {
inline cdouble key(const KeyIndex& ki, const std::vector<cdouble>& a, long c, long d)
{
    return a[ki.index(ParamKey{d, c})];
}
} // namespace detail

/// Reduce a first-order N = 12 parameter assignment to the 15 combinations
/// (13 independent) the consistency conditions depend on.
inline N12Vars reduce(const std::vector<cdouble>& assignment)
{
    KeyIndex ki(12);
    if (static_cast<long>(assignment.size()) != ki.size())
        throw std::invalid_argument("n12::reduce: expected an N=12 assignment");
    auto x = [&](long c, long d) { return detail::key(ki, assignment, c, d); };
    N12Vars v;
    v.x2 = x(0, 2) - x(1, 2);
    v.x10 = x(0, 10) - x(1, 10);
    v.x4a = x(0, 4) - x(2, 4);
    v.x4b = x(1, 4) - x(3, 4);
    v.x8a = x(0, 8) - x(2, 8);
    v.x8b = x(1, 8) - x(3, 8);
    v.x6a = x(0, 6) - x(3, 6);
    v.x6b = x(4, 6) - x(1, 6);
    v.x6c = x(2, 6) - x(5, 6);
    v.x3a = 2.0 * x(0, 3) - x(1, 3) - x(2, 3);
    v.x3b = 2.0 * x(1, 3) - x(0, 3) - x(2, 3);
    v.x3c = 2.0 * x(2, 3) - x(0, 3) - x(1, 3);
    v.x9a = 2.0 * x(0, 9) - x(1, 9) - x(2, 9);
    v.x9b = 2.0 * x(1, 9) - x(0, 9) - x(2, 9);
    v.x9c = 2.0 * x(2, 9) - x(0, 9) - x(1, 9);
    return v;
}

struct AuxPolys {
    cdouble p1, p2, p3, p4, p5, p6;
};

inline AuxPolys aux_polys(const N12Vars& v)
{
    AuxPolys p;
    p.p1 = v.x3a * v.x3a + v.x9a * v.x9a;
    p.p2 = v.x3b * v.x3b + v.x9b * v.x9b;
    p.p3 = v.x3c * v.x3c + v.x9c * v.x9c;
    p.p4 = v.x4a * v.x4a - v.x4b * v.x4b;
    p.p5 = v.x8a * v.x8a - v.x8b * v.x8b;
    p.p6 = v.x4a * v.x8a - v.x4b * v.x8b;
    return p;
}

/// The 13 nontrivial consistency conditions, transcribed literally.
inline std::vector<cdouble> evaluate_system(const N12Vars& v)
{
    const AuxPolys p = aux_polys(v);
    const cdouble ps = p.p1 + p.p2 + p.p3;
    const cdouble mix = v.x6a * p.p1 + v.x6b * p.p2 + v.x6c * p.p3;
    const cdouble lin = v.x10 * p.p4 + v.x2 * p.p5;
    return {
        p.p1 * p.p6,
        p.p2 * p.p6,
        p.p3 * p.p6,
        ps * p.p4,
        ps * p.p5,
        v.x4a * v.x10 * ps + v.x8a * mix,
        v.x4b * v.x10 * ps + v.x8b * mix,
        v.x8a * v.x2 * ps + v.x4a * mix,
        v.x8b * v.x2 * ps + v.x4b * mix,
        3.0 * v.x3a * lin + 2.0 * p.p6 * (v.x3a * (2.0 * v.x6a + v.x6c) + v.x3b * (v.x6c - v.x6b)),
        3.0 * v.x3b * lin + 2.0 * p.p6 * (v.x3b * (2.0 * v.x6b + v.x6c) + v.x3a * (v.x6c - v.x6a)),
        3.0 * v.x9a * lin + 2.0 * p.p6 * (v.x9a * (2.0 * v.x6a + v.x6c) + v.x9b * (v.x6c - v.x6b)),
        3.0 * v.x9b * lin + 2.0 * p.p6 * (v.x9b * (2.0 * v.x6b + v.x6c) + v.x9a * (v.x6c - v.x6a)),
    };
}

enum class SolutionType { I, II, one, two, three, generic };

inline const char* to_string(SolutionType t)
{
    switch (t) {
        case SolutionType::I: return "I";
        case SolutionType::II: return "II";
        case SolutionType::one: return "1";
        case SolutionType::two: return "2";
        case SolutionType::three: return "3";
        default: return "generic";
    }
}

/// Most specific label first: I, II, 1, 2, 3, generic.
inline SolutionType classify(const N12Vars& v, double tol)
{
    const AuxPolys p = aux_polys(v);
    auto small = [tol](cdouble z) { return std::abs(z) <= tol; };
    if (small(v.x4a) && small(v.x4b) && small(v.x8a) && small(v.x8b))
        return SolutionType::I;
    if (small(v.x3a) && small(v.x3b) && small(v.x9a) && small(v.x9b))
        return SolutionType::II;
    if (small(p.p4) && small(p.p5) && small(p.p6))
        return SolutionType::one;
    if (small(p.p1) && small(p.p2) && small(p.p3))
        return SolutionType::two;
    const bool triple123 = small(p.p1) && small(p.p2) && small(p.p3);
    const bool triple456 = small(p.p4) && small(p.p5) && small(p.p6);
    if (!triple123 && !triple456 &&
        small(p.p1 + p.p2 + p.p3) && small(p.p6) &&
        small(v.x6a * p.p1 + v.x6b * p.p2 + v.x6c * p.p3) &&
        small(v.x10 * p.p4 + v.x2 * p.p5))
        return SolutionType::three;
    return SolutionType::generic;
}

namespace detail {
inline void set_key(const KeyIndex& ki, std::vector<cdouble>& a, long c, long d, cdouble v)
{
    a[ki.index(ParamKey{d, c})] = v;
}
} // namespace detail

/// Build a full N = 12 assignment realizing given reduced variables;
/// the complementary directions (diagonal sums etc.) are random.
inline std::vector<cdouble> assignment_from_vars(const N12Vars& v, std::mt19937_64& rng)
{
    KeyIndex ki(12);
    std::vector<cdouble> a(ki.size());
    for (auto& z : a) z = unit_disc(rng);
    auto set = [&](long c, long d, cdouble z) { detail::set_key(ki, a, c, d, z); };
    auto get = [&](long c, long d) { return detail::key(ki, a, c, d); };

    set(0, 2, get(1, 2) + v.x2);
    set(0, 10, get(1, 10) + v.x10);
    set(0, 4, get(2, 4) + v.x4a);
    set(1, 4, get(3, 4) + v.x4b);
    set(0, 8, get(2, 8) + v.x8a);
    set(1, 8, get(3, 8) + v.x8b);
    set(0, 6, get(3, 6) + v.x6a);
    set(4, 6, get(1, 6) + v.x6b);
    set(2, 6, get(5, 6) + v.x6c);
    // diag 3: shift-invariant direction random via x_{2,3}
    {
        cdouble c3 = get(2, 3);
        set(0, 3, c3 + (2.0 * v.x3a + v.x3b) / 3.0);
        set(1, 3, c3 + (v.x3a + 2.0 * v.x3b) / 3.0);
    }
    {
        cdouble c9 = get(2, 9);
        set(0, 9, c9 + (2.0 * v.x9a + v.x9b) / 3.0);
        set(1, 9, c9 + (v.x9a + 2.0 * v.x9b) / 3.0);
    }
    return a;
}

/// Generic random reduced-variable point (sum identities enforced).
inline N12Vars random_vars(std::mt19937_64& rng)
{
    N12Vars v;
    v.x2 = unit_disc(rng);
    v.x10 = unit_disc(rng);
    v.x4a = unit_disc(rng);
    v.x4b = unit_disc(rng);
    v.x8a = unit_disc(rng);
    v.x8b = unit_disc(rng);
    v.x6a = unit_disc(rng);
    v.x6b = unit_disc(rng);
    v.x6c = unit_disc(rng);
    v.x3a = unit_disc(rng);
    v.x3b = unit_disc(rng);
    v.x3c = -v.x3a - v.x3b;
    v.x9a = unit_disc(rng);
    v.x9b = unit_disc(rng);
    v.x9c = -v.x9a - v.x9b;
    return v;
}

/// Random point on the type-1 branch of the fourth-order system:
/// p4 = p5 = p6 = 0 with x4a = x4b != 0 and x8a = x8b != 0, and the two
/// leftover equations solved exactly for x10 and x2.
inline N12Vars type1_vars(std::mt19937_64& rng)
{
    N12Vars v = random_vars(rng);
    v.x4b = v.x4a;
    v.x8b = v.x8a;
    const AuxPolys p = aux_polys(v);
    const cdouble s = p.p1 + p.p2 + p.p3;
    const cdouble mix = v.x6a * p.p1 + v.x6b * p.p2 + v.x6c * p.p3;
    v.x10 = -v.x8a * mix / (v.x4a * s);
    v.x2 = -v.x4a * mix / (v.x8a * s);
    return v;
}

/// Random point on the type-3 branch: p1+p2+p3 = 0, p6 = 0,
/// x6-weighted sum = 0, x10*p4 + x2*p5 = 0, neither triple zero.
inline N12Vars type3_vars(std::mt19937_64& rng)
{
    N12Vars v = random_vars(rng);
    // p1+p2+p3 = 0: quadratic in x9b
    const cdouble t3 = v.x3a * v.x3a + v.x3b * v.x3b + v.x3c * v.x3c;
    const cdouble qa = 2.0, qb = 2.0 * v.x9a, qc = t3 + 2.0 * v.x9a * v.x9a;
    v.x9b = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
    v.x9c = -v.x9a - v.x9b;
    // p6 = 0
    v.x8b = v.x4a * v.x8a / v.x4b;
    AuxPolys p = aux_polys(v);
    // x6a p1 + x6b p2 + x6c p3 = 0
    v.x6c = -(v.x6a * p.p1 + v.x6b * p.p2) / p.p3;
    // x10 p4 + x2 p5 = 0
    v.x2 = -v.x10 * p.p4 / p.p5;
    return v;
}

/// Samplers usable with breakdown_scan.
inline AssignmentSampler type1_sampler()
{
    return [](std::mt19937_64& rng) { return assignment_from_vars(type1_vars(rng), rng); };
}

inline AssignmentSampler type3_sampler()
{
    return [](std::mt19937_64& rng) { return assignment_from_vars(type3_vars(rng), rng); };
}

} // namespace hadfam::n12

#endif // HADFAM_N12_HPP
