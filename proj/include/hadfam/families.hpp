#ifndef HADFAM_FAMILIES_HPP
#define HADFAM_FAMILIES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "hadfam/defect.hpp"
#include "hadfam/expansion.hpp"
#include "hadfam/matrix.hpp"
#include "hadfam/numtheory.hpp"

namespace hadfam {

/// Base Hadamard matrix plus a real linear subspace of phase matrices:
/// members are H o EXP(i sum_k params_k * basis_k), entrywise.
struct AffineFamily {
    CMat base;
    std::vector<Eigen::MatrixXd> basis;  // zero first row and column

    long dim() const { return static_cast<long>(basis.size()); }

    CMat member(const std::vector<double>& params) const
    {
        if (params.size() != basis.size())
            throw std::invalid_argument("AffineFamily::member: parameter count mismatch");
        const long n = base.n();
        CMat h(n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                double phase = 0.0;
                for (size_t k = 0; k < basis.size(); ++k)
                    phase += params[k] * basis[k](i, j);
                h(i, j) = base(i, j) * std::polar(1.0, phase);
            }
        return h;
    }
};

/// The two-parameter N = 6 family through the Fourier matrix: free phases
/// multiply the odd rows on columns {1,4} and {2,5}.
inline AffineFamily haagerup_family()
{
    AffineFamily fam;
    fam.base = fourier(6);
    Eigen::MatrixXd ra = Eigen::MatrixXd::Zero(6, 6);
    Eigen::MatrixXd rb = Eigen::MatrixXd::Zero(6, 6);
    for (long i = 1; i < 6; i += 2) {
        ra(i, 1) = ra(i, 4) = 1.0;
        rb(i, 2) = rb(i, 5) = 1.0;
    }
    fam.basis = {ra, rb};
    return fam;
}

/// Affine family of maximal dimension d1 for N = p^k: block-periodic phase
/// matrices R_ij = sum_n phi_{n, i mod p^n, j mod p^{k-n}}.
inline AffineFamily prime_power_family(long p, long k)
{
    if (!is_prime(p))
        throw std::domain_error("prime_power_family: p must be prime");
    if (k < 2)
        throw std::domain_error("prime_power_family: k >= 2 required");
    long n = 1;
    for (long t = 0; t < k; ++t) n *= p;
    if (n > 64)
        throw std::domain_error("prime_power_family: p^k <= 64 required");

    AffineFamily fam;
    fam.base = fourier(n);
    long pn = 1;  // p^{n-1} below becomes p^{level-1}
    for (long level = 1; level <= k - 1; ++level) {
        long plevel = pn * p;        // p^level
        long pother = n / plevel;    // p^{k-level}
        for (long i0 = pn; i0 < plevel; ++i0)
            for (long j0 = 1; j0 < pother; ++j0) {
                Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j)
                        if (i % plevel == i0 && j % pother == j0)
                            r(i, j) = 1.0;
                fam.basis.push_back(std::move(r));
            }
        pn = plevel;
    }
    return fam;
}

/// Block construction: one N1 x N1 Hadamard, N1 Hadamards of size N2, and
/// N1 - 1 diagonal phase vectors (first entries fixed to 1).
struct DitaSpec {
    CMat h0;
    std::vector<CMat> blocks;            // size N1, each N2 x N2
    std::vector<std::vector<cdouble>> phases;  // N1 - 1 vectors of length N2

    long n1() const { return h0.n(); }
    long n2() const { return blocks.empty() ? 0 : blocks.front().n(); }
};

inline CMat dita(const DitaSpec& spec, double input_tol = 1e-8)
{
    const long n1 = spec.n1();
    const long n2 = spec.n2();
    if (static_cast<long>(spec.blocks.size()) != n1)
        throw std::invalid_argument("dita: need N1 blocks");
    if (static_cast<long>(spec.phases.size()) != n1 - 1)
        throw std::invalid_argument("dita: need N1-1 phase vectors");
    if (!is_hadamard(spec.h0, input_tol).passes)
        throw std::domain_error("dita: H0 is not Hadamard");
    for (const auto& b : spec.blocks)
        if (b.n() != n2 || !is_hadamard(b, input_tol).passes)
            throw std::domain_error("dita: block is not Hadamard");
    for (const auto& d : spec.phases) {
        if (static_cast<long>(d.size()) != n2)
            throw std::invalid_argument("dita: phase vector length mismatch");
        if (std::abs(d[0] - cdouble(1.0)) > input_tol)
            throw std::invalid_argument("dita: phase vectors must start with 1");
        for (const auto& z : d)
            if (std::abs(std::abs(z) - 1.0) > input_tol)
                throw std::invalid_argument("dita: phases must be unimodular");
    }

    CMat h(n1 * n2);
    for (long r = 0; r < n1; ++r)
        for (long s = 0; s < n1; ++s)
            for (long m = 0; m < n2; ++m) {
                cdouble d = s == 0 ? cdouble(1.0) : spec.phases[s - 1][m];
                for (long nn = 0; nn < n2; ++nn)
                    h(r * n2 + m, s * n2 + nn) = spec.h0(r, s) * d * spec.blocks[s](m, nn);
            }
    return h;
}

/// Diagonal unitary with random phases, first entry 1.
inline std::vector<cdouble> random_phase_vector(long len, std::mt19937_64& rng)
{
    std::vector<cdouble> d(len, cdouble(1.0));
    for (long i = 1; i < len; ++i)
        d[i] = std::polar(1.0, 2.0 * M_PI * uniform01(rng));
    return d;
}

struct DitaFourierPoint {
    DitaSpec spec;
    std::vector<long> col_perm;  // permuted(i,j) = dita(spec)(i, col_perm[j])
};

/// The point of the F_{N1} / F_{N2} Dita family that is column-permutation
/// equivalent to fourier(N1*N2): phases x_m^{(s)} = omega^{ms} and the
/// column interleaving sN2+n -> nN1+s.
inline DitaFourierPoint dita_fourier_point(long n1, long n2)
{
    if (n1 < 2 || n2 < 2)
        throw std::domain_error("dita_fourier_point: N1, N2 >= 2 required");
    const long n = n1 * n2;
    DitaFourierPoint fp;
    fp.spec.h0 = fourier(n1);
    fp.spec.blocks.assign(n1, fourier(n2));
    for (long s = 1; s < n1; ++s) {
        std::vector<cdouble> d(n2);
        for (long m = 0; m < n2; ++m)
            d[m] = std::polar(1.0, 2.0 * M_PI * double(mod_pos(m * s, n)) / double(n));
        fp.spec.phases.push_back(std::move(d));
    }
    fp.col_perm.resize(n);
    for (long s = 0; s < n1; ++s)
        for (long nn = 0; nn < n2; ++nn)
            fp.col_perm[nn * n1 + s] = s * n2 + nn;
    return fp;
}

inline CMat permute_columns(const CMat& h, const std::vector<long>& perm)
{
    const long n = h.n();
    CMat r(n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            r(i, j) = h(i, perm[j]);
    return r;
}

/// Two-stage Dita family for N = p1*p2^2 that is closed under
/// transposition. Phases: x[s][v][m] (s < p1, v < p2, m < p2, with
/// x[0][.][.] = x[.][.][0] = 1) and y[v][t] (v < p2, t < p1*p2, with
/// y[0][.] = y[.][0] = 1).
class SelfCognateFamily {
public:
    using XPhases = std::vector<std::vector<std::vector<cdouble>>>;
    using YPhases = std::vector<std::vector<cdouble>>;

    SelfCognateFamily(long p1, long p2) : p1_(p1), p2_(p2), n_(p1 * p2 * p2)
    {
        if (p1 == p2 || !is_prime(p1) || !is_prime(p2))
            throw std::domain_error("SelfCognateFamily: distinct primes required");
    }

    long n() const { return n_; }
    long p1() const { return p1_; }
    long p2() const { return p2_; }

    /// Free-phase count; equals the maximal affine dimension dA(N).
    long dim() const
    {
        return (p1_ - 1) * p2_ * (p2_ - 1) + (p2_ - 1) * (p1_ * p2_ - 1);
    }

    CMat member(const XPhases& x, const YPhases& y) const
    {
        check(x, y);
        const long pp = p1_ * p2_;
        CMat h(n_);
        const double q1 = 2.0 * M_PI / double(p1_);
        const double q2 = 2.0 * M_PI / double(p2_);
        const double scale = 1.0 / std::sqrt(double(n_));
        for (long u = 0; u < p2_; ++u)
            for (long r = 0; r < p1_; ++r)
                for (long m = 0; m < p2_; ++m) {
                    const long row = pp * u + r * p2_ + m;
                    for (long nn = 0; nn < p2_; ++nn)
                        for (long s = 0; s < p1_; ++s)
                            for (long v = 0; v < p2_; ++v) {
                                const long col = pp * nn + s * p2_ + v;
                                cdouble ph = std::polar(1.0, q1 * double(mod_pos(r * s, p1_)) +
                                                             q2 * double(mod_pos(m * nn + u * v, p2_)));
                                h(row, col) = scale * ph * x[s][v][m] * y[v][r * p2_ + m];
                            }
                }
        return h;
    }

    /// Phases realizing member(x,y)^T = member(transpose_partner(x,y)).
    std::pair<XPhases, YPhases> transpose_partner(const XPhases& x, const YPhases& y) const
    {
        check(x, y);
        XPhases xt(p1_, std::vector<std::vector<cdouble>>(p2_, std::vector<cdouble>(p2_)));
        YPhases yt(p2_, std::vector<cdouble>(p1_ * p2_));
        for (long s = 0; s < p1_; ++s)
            for (long v = 0; v < p2_; ++v)
                for (long m = 0; m < p2_; ++m)
                    xt[s][v][m] = y[m][s * p2_ + v];
        for (long v = 0; v < p2_; ++v)
            for (long r = 0; r < p1_; ++r)
                for (long m = 0; m < p2_; ++m)
                    yt[v][r * p2_ + m] = x[r][m][v];
        return {std::move(xt), std::move(yt)};
    }

    std::pair<XPhases, YPhases> random_phases(std::mt19937_64& rng) const
    {
        XPhases x(p1_, std::vector<std::vector<cdouble>>(p2_, std::vector<cdouble>(p2_, cdouble(1.0))));
        YPhases y(p2_, std::vector<cdouble>(p1_ * p2_, cdouble(1.0)));
        for (long s = 1; s < p1_; ++s)
            for (long v = 0; v < p2_; ++v)
                for (long m = 1; m < p2_; ++m)
                    x[s][v][m] = std::polar(1.0, 2.0 * M_PI * uniform01(rng));
        for (long v = 1; v < p2_; ++v)
            for (long t = 1; t < p1_ * p2_; ++t)
                y[v][t] = std::polar(1.0, 2.0 * M_PI * uniform01(rng));
        return {std::move(x), std::move(y)};
    }

    /// Phase choice at which member(x,y) equals fourier(N) entrywise.
    std::pair<XPhases, YPhases> fourier_point() const
    {
        XPhases x(p1_, std::vector<std::vector<cdouble>>(p2_, std::vector<cdouble>(p2_, cdouble(1.0))));
        YPhases y(p2_, std::vector<cdouble>(p1_ * p2_, cdouble(1.0)));
        const long pp = p1_ * p2_;
        for (long s = 0; s < p1_; ++s)
            for (long v = 0; v < p2_; ++v)
                for (long m = 0; m < p2_; ++m)
                    x[s][v][m] = std::polar(1.0, 2.0 * M_PI * double(mod_pos(m * s, pp)) / double(pp));
        for (long v = 0; v < p2_; ++v)
            for (long t = 0; t < pp; ++t)
                y[v][t] = std::polar(1.0, 2.0 * M_PI * double(mod_pos(t * v, n_)) / double(n_));
        return {std::move(x), std::move(y)};
    }

private:
    void check(const XPhases& x, const YPhases& y) const
    {
        if (static_cast<long>(x.size()) != p1_ || static_cast<long>(y.size()) != p2_)
            throw std::invalid_argument("SelfCognateFamily: phase shape mismatch");
    }

    long p1_, p2_, n_;
};

/// Random member of the Dita-variant family built along p2 -> p2^2 -> N.
inline CMat dita_variant_a_member(long p1, long p2, std::mt19937_64& rng)
{
    std::vector<CMat> inner;
    for (long t = 0; t < p1; ++t) {
        DitaSpec s;
        s.h0 = fourier(p2);
        s.blocks.assign(p2, fourier(p2));
        for (long k = 1; k < p2; ++k)
            s.phases.push_back(random_phase_vector(p2, rng));
        inner.push_back(dita(s));
    }
    DitaSpec outer;
    outer.h0 = fourier(p1);
    outer.blocks = std::move(inner);
    for (long k = 1; k < p1; ++k)
        outer.phases.push_back(random_phase_vector(p2 * p2, rng));
    return dita(outer);
}

/// Random member of the Dita-variant family built along p1 -> p1*p2 -> N.
inline CMat dita_variant_b_member(long p1, long p2, std::mt19937_64& rng)
{
    std::vector<CMat> inner;
    for (long t = 0; t < p2; ++t) {
        DitaSpec s;
        s.h0 = fourier(p2);
        s.blocks.assign(p2, fourier(p1));
        for (long k = 1; k < p2; ++k)
            s.phases.push_back(random_phase_vector(p1, rng));
        inner.push_back(dita(s));
    }
    DitaSpec outer;
    outer.h0 = fourier(p2);
    outer.blocks = std::move(inner);
    for (long k = 1; k < p2; ++k)
        outer.phases.push_back(random_phase_vector(p1 * p2, rng));
    return dita(outer);
}

} // namespace hadfam

#endif // HADFAM_FAMILIES_HPP
