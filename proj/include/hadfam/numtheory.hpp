#ifndef HADFAM_NUMTHEORY_HPP
#define HADFAM_NUMTHEORY_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hadfam {

/// gcd with the convention gcd(0,N) = N, so the main diagonal of an
/// N x N matrix carries N independent classes.
inline long gcd_z(long a, long b)
{
    if (a == 0 && b == 0)
        throw std::domain_error("gcd_z: gcd(0,0) undefined");
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_z(long a, long b)
{
    return a / gcd_z(a, b) * b;
}

/// Euclidean remainder in [0, m).
inline long mod_pos(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

/// Multiplicative inverse of a modulo m. Requires gcd(a,m) = 1.
inline long mod_inverse(long a, long m)
{
    if (m <= 0)
        throw std::domain_error("mod_inverse: modulus must be positive");
    a = mod_pos(a, m);
    // extended Euclid
    long r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw std::domain_error("mod_inverse: arguments are not coprime");
    return mod_pos(t0, m);
}

/// Canonical index of a free parameter x_{i mod gcd(j-i,N), j-i}.
struct ParamKey {
    long diag;       // (j - i) mod N
    long row_class;  // i mod gcd(diag, N), with gcd(0,N) = N

    auto operator<=>(const ParamKey&) const = default;
};

inline ParamKey canonical_key(long i, long j, long n)
{
    long diag = mod_pos(j - i, n);
    long g = gcd_z(diag, n);  // gcd(0,N) = N
    return ParamKey{diag, mod_pos(i, g)};
}

/// Number of iteration steps that connect position (i,j) to the
/// free-parameter position on its displaced diagonal. Zero exactly at
/// the free positions themselves. Off-diagonal only.
inline long particular_steps(long i, long j, long n)
{
    if (mod_pos(i - j, n) == 0)
        throw std::domain_error("particular_steps: main diagonal is unconstrained");
    long d = mod_pos(i - j, n);
    long g = gcd_z(d, n);
    long rhs = (mod_pos(i, g) - i) / g;       // multiple of g by construction
    long inv = mod_inverse(d / g, n / g);
    return mod_pos(rhs * inv, n / g);
}

/// All distinct parameter keys for dimension N, sorted by (diag, row_class).
inline std::vector<ParamKey> param_keys(long n)
{
    std::vector<ParamKey> keys;
    for (long d = 0; d < n; ++d) {
        long g = gcd_z(d, n);
        for (long c = 0; c < g; ++c)
            keys.push_back(ParamKey{d, c});
    }
    return keys;
}

/// Fast key -> flat index lookup for one dimension N.
class KeyIndex {
public:
    explicit KeyIndex(long n) : n_(n), offset_(n, 0)
    {
        long acc = 0;
        for (long d = 0; d < n; ++d) {
            offset_[d] = acc;
            acc += gcd_z(d, n);
        }
        size_ = acc;
    }

    long n() const { return n_; }
    long size() const { return size_; }

    long index(const ParamKey& k) const { return offset_[k.diag] + k.row_class; }
    long index(long i, long j) const { return index(canonical_key(i, j, n_)); }

    ParamKey key(long flat) const
    {
        long d = static_cast<long>(offset_.size()) - 1;
        while (offset_[d] > flat) --d;
        return ParamKey{d, flat - offset_[d]};
    }

private:
    long n_;
    long size_;
    std::vector<long> offset_;
};

/// Trial-division factorization, returned as (prime, exponent) pairs.
inline std::vector<std::pair<long, long>> factorize(long n)
{
    if (n < 1)
        throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<long, long>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long k = 0;
            while (n % p == 0) { n /= p; ++k; }
            f.emplace_back(p, k);
        }
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

inline bool is_prime(long n)
{
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace hadfam

#endif // HADFAM_NUMTHEORY_HPP
