#ifndef HADFAM_DEFECT_HPP
#define HADFAM_DEFECT_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <stdexcept>

#include "hadfam/matrix.hpp"
#include "hadfam/numtheory.hpp"

namespace hadfam {

struct DefectSummary {
    long n;
    long big_d1;                   // sum of gcd(n,N)
    long d1;                       // big_d1 - (2N-1)
    long d_affine;                 // largest Dita-construction affine dimension
    std::optional<long> d_conj;    // (d1 + d_affine)/2, only for N = p1*p2^2
};

/// D1 = sum_{n=0}^{N-1} gcd(n,N); d1 = D1 - (2N-1).
inline std::pair<long, long> linear_defect(long n)
{
    if (n < 1) throw std::domain_error("linear_defect: N >= 1 required");
    long big = n;  // the n = 0 term
    for (long k = 1; k < n; ++k)
        big += gcd_z(k, n);
    return {big, big - (2 * n - 1)};
}

/// d1 from the prime decomposition: N * prod(1 + k_i - k_i/p_i) - 2N + 1,
/// evaluated exactly in integers.
inline long linear_defect_product(long n)
{
    if (n < 2) throw std::domain_error("linear_defect_product: N >= 2 required");
    auto fac = factorize(n);
    long num = n;  // becomes N * prod((1+k)p - k) / prod(p)
    for (auto [p, k] : fac) {
        num /= p;
        num *= (1 + k) * p - k;
    }
    return num - 2 * n + 1;
}

/// dA = (k1 + ... + kn - 1)N - sum k_i N/p_i + 1.
inline long affine_max_dim(long n)
{
    if (n < 2) throw std::domain_error("affine_max_dim: N >= 2 required");
    auto fac = factorize(n);
    long ksum = 0, sub = 0;
    for (auto [p, k] : fac) {
        ksum += k;
        sub += k * (n / p);
    }
    return (ksum - 1) * n - sub + 1;
}

/// d = 3N - 3*p1*p2 - 2*p2^2 + p2 + 1 for N = p1*p2^2. All three closed
/// forms are evaluated and cross-asserted.
inline long conjectured_dim(long p1, long p2)
{
    if (p1 == p2 || !is_prime(p1) || !is_prime(p2))
        throw std::domain_error("conjectured_dim: distinct primes required");
    const long n = p1 * p2 * p2;
    const long d = 3 * n - 3 * p1 * p2 - 2 * p2 * p2 + p2 + 1;
    const long d1 = linear_defect(n).second;
    const long da = affine_max_dim(n);
    if (2 * d != d1 + da)
        throw std::logic_error("conjectured_dim: (d1+dA)/2 mismatch");
    // d = d1 - N(1 - 1/p1)(1 - 1/p2), exact in integers
    if (d != d1 - (n / (p1 * p2)) * (p1 - 1) * (p2 - 1))
        throw std::logic_error("conjectured_dim: defect-difference form mismatch");
    return d;
}

inline DefectSummary defect_summary(long n)
{
    auto [big, d1] = linear_defect(n);
    DefectSummary s{n, big, d1, n >= 2 ? affine_max_dim(n) : 0, std::nullopt};
    if (n >= 2) {
        auto fac = factorize(n);
        if (fac.size() == 2) {
            long p1 = 0, p2 = 0;
            for (auto [p, k] : fac) {
                if (k == 1) p1 = p;
                else if (k == 2) p2 = p;
            }
            if (p1 && p2) s.d_conj = conjectured_dim(p1, p2);
        }
    }
    return s;
}

struct NumericDefect {
    long defect;
    bool reliable_rank;
    double gap_ratio;  // ratio of singular values straddling the cut
};

/// Dimension of first-order dephased deformations H o EXP(iR): real
/// nullity of the linearized unitarity system minus the 2N-1 trivial
/// phase directions.
inline NumericDefect numeric_defect(const CMat& h, double rank_tol = 1e-8)
{
    const long n = h.n();
    if (!is_hadamard(h, 1e-8).passes)
        throw std::domain_error("numeric_defect: input is not Hadamard at 1e-8");

    const long pairs = n * (n - 1) / 2;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * pairs, n * n);
    long row = 0;
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            for (long k = 0; k < n; ++k) {
                cdouble c = h(i, k) * std::conj(h(j, k));
                a(row, i * n + k) += c.real();
                a(row, j * n + k) -= c.real();
                a(row + 1, i * n + k) += c.imag();
                a(row + 1, j * n + k) -= c.imag();
            }
            row += 2;
        }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    long rank = 0;
    for (long k = 0; k < sv.size(); ++k)
        if (sv(k) > rank_tol * smax) ++rank;

    double gap = std::numeric_limits<double>::infinity();
    if (rank > 0 && rank < sv.size() && sv(rank) > 0.0)
        gap = sv(rank - 1) / sv(rank);

    long nullity = n * n - rank;
    return {nullity - (2 * n - 1), gap >= 10.0, gap};
}

} // namespace hadfam

#endif // HADFAM_DEFECT_HPP
