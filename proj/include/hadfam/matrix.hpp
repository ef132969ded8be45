#ifndef HADFAM_MATRIX_HPP
#define HADFAM_MATRIX_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadfam/numtheory.hpp"

namespace hadfam {

template <typename C>
using real_t = typename C::value_type;

/// Dense square complex matrix, row-major. The scalar type is a complex
/// number type (std::complex<double> by default, multiprecision complex
/// for the high-precision engine mode).
template <typename C>
class Mat {
public:
    Mat() : n_(0) {}
    explicit Mat(long n) : n_(n), a_(static_cast<size_t>(n) * n, C(0)) {}

    long n() const { return n_; }

    C& operator()(long i, long j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const C& operator()(long i, long j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    /// Access with indices reduced mod N.
    C& at_mod(long i, long j) { return (*this)(mod_pos(i, n_), mod_pos(j, n_)); }
    const C& at_mod(long i, long j) const { return (*this)(mod_pos(i, n_), mod_pos(j, n_)); }

    Mat& operator+=(const Mat& o)
    {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o)
    {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const C& s)
    {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const C& s) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b)
    {
        const long n = a.n_;
        Mat r(n);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                const C aik = a(i, k);
                if (aik == C(0)) continue;
                for (long j = 0; j < n; ++j)
                    r(i, j) += aik * b(k, j);
            }
        return r;
    }

    Mat dagger() const
    {
        using std::conj;
        Mat r(n_);
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                r(j, i) = conj((*this)(i, j));
        return r;
    }

    Mat transposed() const
    {
        Mat r(n_);
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    real_t<C> max_abs() const
    {
        using std::abs;
        real_t<C> m(0);
        for (const auto& v : a_) {
            real_t<C> t = abs(v);
            if (t > m) m = t;
        }
        return m;
    }

    static Mat identity(long n)
    {
        Mat r(n);
        for (long i = 0; i < n; ++i) r(i, i) = C(1);
        return r;
    }

private:
    long n_;
    std::vector<C> a_;
};

using cdouble = std::complex<double>;
using CMat = Mat<cdouble>;

template <typename R>
R pi_v()
{
    using std::acos;
    return acos(R(-1));
}

template <typename C>
C unit_phase(real_t<C> theta)
{
    using std::cos;
    using std::sin;
    return C(cos(theta), sin(theta));
}

/// F_{ij} = omega^{ij} / sqrt(N), omega = exp(2 pi i / N).
template <typename C = cdouble>
Mat<C> fourier(long n)
{
    using R = real_t<C>;
    using std::sqrt;
    if (n < 1) throw std::domain_error("fourier: N >= 1 required");
    Mat<C> f(n);
    const R two_pi = R(2) * pi_v<R>();
    const R s = R(1) / sqrt(R(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            long e = mod_pos(i * j, n);
            f(i, j) = unit_phase<C>(two_pi * R(e) / R(n)) * s;
        }
    return f;
}

/// Cyclic shift P_{ij} = delta_{i+1,j}.
template <typename C = cdouble>
Mat<C> shift(long n)
{
    if (n < 1) throw std::domain_error("shift: N >= 1 required");
    Mat<C> p(n);
    for (long i = 0; i < n; ++i)
        p(i, mod_pos(i + 1, n)) = C(1);
    return p;
}

template <typename R>
struct HadamardReport {
    R unitarity_residual;  // max |(HH^dag - 1)_{ij}|
    R modulus_residual;    // max | |H_{ij}| sqrt(N) - 1 |
    bool passes;
};

/// Entrywise Hadamard verification: unitary and all moduli 1/sqrt(N).
template <typename C>
HadamardReport<real_t<C>> is_hadamard(const Mat<C>& h, real_t<C> tol)
{
    using R = real_t<C>;
    using std::abs;
    using std::sqrt;
    const long n = h.n();
    Mat<C> g = h * h.dagger();
    R ur(0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            R t = abs(g(i, j) - (i == j ? C(1) : C(0)));
            if (t > ur) ur = t;
        }
    R mr(0);
    const R root_n = sqrt(R(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            R t = abs(abs(h(i, j)) * root_n - R(1));
            if (t > mr) mr = t;
        }
    return {ur, mr, ur <= tol && mr <= tol};
}

/// max over n in [1,N) and i of |(M P^n M^dag)_{ii}|.
template <typename C>
real_t<C> diag_conditions(const Mat<C>& m)
{
    using R = real_t<C>;
    using std::abs;
    const long n = m.n();
    const Mat<C> md = m.dagger();
    R worst(0);
    // (M P^k)_{ij} = M_{i, j-k}
    for (long k = 1; k < n; ++k) {
        for (long i = 0; i < n; ++i) {
            C acc(0);
            for (long j = 0; j < n; ++j)
                acc += m.at_mod(i, j - k) * md(j, i);
            R t = abs(acc);
            if (t > worst) worst = t;
        }
    }
    return worst;
}

/// X = 1 - H F^dag.
template <typename C>
Mat<C> x_of_h(const Mat<C>& h)
{
    return Mat<C>::identity(h.n()) - h * fourier<C>(h.n()).dagger();
}

/// H = (1 - X) F.
template <typename C>
Mat<C> h_of_x(const Mat<C>& x)
{
    return (Mat<C>::identity(x.n()) - x) * fourier<C>(x.n());
}

/// D_L H D_R with first row and column made real positive.
template <typename C>
Mat<C> dephase(const Mat<C>& h)
{
    using R = real_t<C>;
    using std::abs;
    using std::conj;
    const long n = h.n();
    for (long i = 0; i < n; ++i)
        if (abs(h(i, 0)) == R(0) || abs(h(0, i)) == R(0))
            throw std::domain_error("dephase: zero entry in first row or column");
    Mat<C> r(n);
    for (long i = 0; i < n; ++i) {
        C row_phase = conj(h(i, 0)) / C(abs(h(i, 0)));
        for (long j = 0; j < n; ++j)
            r(i, j) = row_phase * h(i, j);
    }
    for (long j = 1; j < n; ++j) {
        C col_phase = conj(r(0, j)) / C(abs(r(0, j)));
        for (long i = 0; i < n; ++i)
            r(i, j) *= col_phase;
    }
    return r;
}

/// Transposition of H expressed on X: X -> F X^T F^dag.
template <typename C>
Mat<C> transpose_x(const Mat<C>& x)
{
    const Mat<C> f = fourier<C>(x.n());
    return f * x.transposed() * f.dagger();
}

} // namespace hadfam

#endif // HADFAM_MATRIX_HPP
