#ifndef HADFAM_GENPERT_HPP
#define HADFAM_GENPERT_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <boost/rational.hpp>
#include <map>
#include <stdexcept>
#include <vector>

namespace hadfam {

using Fraction = boost::rational<long long>;

/// Polynomial system f_m(x) = 0 with f_m(0) = 0, stored as a map from
/// (equation, sorted variable multiset) to the combined symmetric
/// coefficient: f_m = sum over multisets c * prod_k x_{idx_k}.
template <typename S>
class PolySystem {
public:
    PolySystem(long num_eqs, long num_vars, long max_degree = 4)
        : m_(num_eqs), n_(num_vars), deg_(max_degree)
    {
        if (num_eqs < 1 || num_vars < 1 || max_degree < 1)
            throw std::domain_error("PolySystem: positive sizes required");
    }

    long num_eqs() const { return m_; }
    long num_vars() const { return n_; }
    long max_degree() const { return deg_; }

    void add_term(long m, std::vector<long> idx, S coeff)
    {
        if (m < 0 || m >= m_)
            throw std::out_of_range("PolySystem::add_term: equation index");
        if (idx.empty() || static_cast<long>(idx.size()) > deg_)
            throw std::domain_error("PolySystem::add_term: degree out of range");
        for (long v : idx)
            if (v < 0 || v >= n_)
                throw std::out_of_range("PolySystem::add_term: variable index");
        std::sort(idx.begin(), idx.end());
        terms_[{m, std::move(idx)}] += coeff;
    }

    /// The degree-1 coefficient matrix A (num_eqs x num_vars).
    std::vector<std::vector<S>> linear_matrix() const
    {
        std::vector<std::vector<S>> a(m_, std::vector<S>(n_, S(0)));
        for (const auto& [key, c] : terms_)
            if (key.second.size() == 1)
                a[key.first][key.second[0]] += c;
        return a;
    }

    std::vector<S> evaluate(const std::vector<S>& x) const
    {
        if (static_cast<long>(x.size()) != n_)
            throw std::invalid_argument("PolySystem::evaluate: size mismatch");
        std::vector<S> f(m_, S(0));
        for (const auto& [key, c] : terms_) {
            S prod = c;
            for (long v : key.second) prod *= x[v];
            f[key.first] += prod;
        }
        return f;
    }

    /// Order-s part of the nonlinear (degree >= 2) terms under the grading
    /// x = x^{(1)} + x^{(2)} + ...; uses xs[r-1] = x^{(r)} for r < s only,
    /// so it is exactly the lower-order source of the order-s equation
    /// A x^{(s)} + (this) = 0.
    std::vector<S> order_source(const std::vector<std::vector<S>>& xs, long s) const
    {
        std::vector<S> b(m_, S(0));
        for (const auto& [key, c] : terms_) {
            const auto& idx = key.second;
            const long d = static_cast<long>(idx.size());
            if (d < 2) continue;
            S acc(0);
            compose(idx, xs, s, 0, s, S(1), acc);
            b[key.first] += c * acc;
        }
        return b;
    }

private:
    void compose(const std::vector<long>& idx, const std::vector<std::vector<S>>& xs,
                 long s, size_t pos, long remaining, S prod, S& acc) const
    {
        const long d = static_cast<long>(idx.size());
        const long left = d - static_cast<long>(pos);
        if (left == 0) {
            if (remaining == 0) acc += prod;
            return;
        }
        // each remaining factor takes order >= 1 and < s (x^{(s)} is unknown)
        for (long r = 1; r <= remaining - (left - 1) && r < s; ++r) {
            if (r > static_cast<long>(xs.size())) break;
            compose(idx, xs, s, pos + 1, remaining - r, prod * xs[r - 1][idx[pos]], acc);
        }
    }

    long m_, n_, deg_;
    std::map<std::pair<long, std::vector<long>>, S> terms_;
};

namespace linalg {

template <typename S>
using Table = std::vector<std::vector<S>>;

template <typename S>
Table<S> transpose(const Table<S>& a)
{
    if (a.empty()) return {};
    Table<S> r(a[0].size(), std::vector<S>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j)
            r[j][i] = a[i][j];
    return r;
}

template <typename S>
Table<S> mul(const Table<S>& a, const Table<S>& b)
{
    Table<S> r(a.size(), std::vector<S>(b.empty() ? 0 : b[0].size(), S(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < r[i].size(); ++j)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <typename S>
std::vector<S> mul_vec(const Table<S>& a, const std::vector<S>& v)
{
    std::vector<S> r(a.size(), S(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            r[i] += a[i][j] * v[j];
    return r;
}

/// Gauss-Jordan inverse over an exact field.
template <typename S>
Table<S> inverse(Table<S> a)
{
    const size_t n = a.size();
    Table<S> inv(n, std::vector<S>(n, S(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = S(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == S(0)) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const S d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == S(0)) continue;
            const S f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace linalg

/// Moore-Penrose inverse over an exact field via the rank factorization
/// A = C F (C: pivot columns of A, F: nonzero rows of the reduced row
/// echelon form): A+ = F^T (F F^T)^{-1} (C^T C)^{-1} C^T.
template <typename S>
linalg::Table<S> pseudo_inverse_exact(const linalg::Table<S>& a)
{
    using linalg::Table;
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    Table<S> rref = a;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && rref[piv][col] == S(0)) ++piv;
        if (piv == m) continue;
        std::swap(rref[piv], rref[row]);
        const S d = rref[row][col];
        for (size_t j = 0; j < n; ++j) rref[row][j] /= d;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || rref[i][col] == S(0)) continue;
            const S f = rref[i][col];
            for (size_t j = 0; j < n; ++j) rref[i][j] -= f * rref[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    const size_t r = pivots.size();
    if (r == 0) return Table<S>(n, std::vector<S>(m, S(0)));

    Table<S> c(m, std::vector<S>(r));
    for (size_t i = 0; i < m; ++i)
        for (size_t k = 0; k < r; ++k)
            c[i][k] = a[i][pivots[k]];
    Table<S> f(r, std::vector<S>(n));
    for (size_t k = 0; k < r; ++k)
        for (size_t j = 0; j < n; ++j)
            f[k][j] = rref[k][j];

    using namespace linalg;
    Table<S> ft = transpose(f), ct = transpose(c);
    Table<S> mid = mul(inverse(mul(f, ft)), inverse(mul(ct, c)));
    return mul(ft, mul(mid, ct));
}

/// Moore-Penrose inverse of a real or complex floating matrix via SVD.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
pseudo_inverse(const Eigen::MatrixBase<Derived>& a)
{
    using MatT = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::JacobiSVD<MatT> svd(a.derived(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cut = std::max(a.rows(), a.cols()) *
                       std::numeric_limits<double>::epsilon() *
                       (sv.size() ? sv(0) : 0.0);
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    for (long k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) inv_sv(k) = 1.0 / sv(k);
    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
}

/// Per-order decomposition x^{(s)} = h^{(s)} + H^{(s)}: free part from the
/// kernel projector, heterogeneous part from the pseudo-inverse.
template <typename S>
struct PerturbOrders {
    std::vector<std::vector<S>> h;         // h[s-1] = free part of x^{(s)}
    std::vector<std::vector<S>> het;       // het[s-1] = H^{(s)}, het[0] = 0
    std::vector<std::vector<S>> residual;  // (1 - A A+) applied to the source

    long populated() const { return static_cast<long>(h.size()); }

    std::vector<S> x(long s) const
    {
        std::vector<S> r = h[s - 1];
        for (size_t k = 0; k < r.size(); ++k) r[k] += het[s - 1][k];
        return r;
    }

    std::vector<std::vector<S>> totals() const
    {
        std::vector<std::vector<S>> xs;
        for (long s = 1; s <= populated(); ++s) xs.push_back(x(s));
        return xs;
    }
};

template <typename S>
struct OrderSolution {
    std::vector<S> source;    // B: lower-order part of the order-s equation
    std::vector<S> het;       // H^{(s)} = -A+ B
    std::vector<S> residual;  // (1 - A A+) B; zero iff the order is solvable
};

/// Solve the order-s linear system A x^{(s)} + B = 0 given orders 1..s-1.
/// The free part (1 - A+A) Z stays with the caller.
template <typename S>
OrderSolution<S> solve_order(const PolySystem<S>& sys, const linalg::Table<S>& pinv,
                             const std::vector<std::vector<S>>& lower, long s)
{
    if (static_cast<long>(lower.size()) < s - 1)
        throw std::invalid_argument("solve_order: orders 1..s-1 required");
    OrderSolution<S> out;
    out.source = sys.order_source(lower, s);
    std::vector<S> y = linalg::mul_vec(pinv, out.source);
    out.het.assign(sys.num_vars(), S(0));
    for (size_t k = 0; k < y.size(); ++k) out.het[k] = -y[k];
    const auto a = sys.linear_matrix();
    std::vector<S> ay = linalg::mul_vec(a, y);
    out.residual = out.source;
    for (size_t k = 0; k < ay.size(); ++k) out.residual[k] -= ay[k];
    return out;
}

/// Degree-4 truncation of X (X-1)^2 - (exp(Y) - 1)^2 around one of its
/// two obvious zeros. Variables: 0 = X, 1 = Y (X shifted by 1 at the
/// second base point).
inline PolySystem<Fraction> toy_system(bool shifted)
{
    PolySystem<Fraction> sys(1, 2, 4);
    if (!shifted) {
        sys.add_term(0, {0}, Fraction(1));
        sys.add_term(0, {0, 0}, Fraction(-2));
    } else {
        sys.add_term(0, {0, 0}, Fraction(1));
    }
    sys.add_term(0, {0, 0, 0}, Fraction(1));
    sys.add_term(0, {1, 1}, Fraction(-1));
    sys.add_term(0, {1, 1, 1}, Fraction(-1));
    sys.add_term(0, {1, 1, 1, 1}, Fraction(-7, 12));
    return sys;
}

enum class ToyBranch { origin, shifted_I, shifted_II, origin_alt, shifted_II_alt };

/// Coefficients of t^1..t^4.
struct ToySeries {
    std::array<Fraction, 4> x{};
    std::array<Fraction, 4> y{};
};

namespace detail {

/// With A = 0 (the shifted toy system) the order-s consistency residual is
/// affine in any single still-free slot u of x^{(s-1)}; extract the affine
/// form from two evaluations and solve for u.
inline Fraction solve_affine_slot(const PolySystem<Fraction>& sys,
                                  std::vector<std::vector<Fraction>>& xs,
                                  long s, long var)
{
    auto eval = [&](Fraction u) {
        xs[s - 2][var] = u;
        return sys.order_source(xs, s)[0];
    };
    const Fraction b0 = eval(Fraction(0));
    const Fraction b1 = eval(Fraction(1));
    const Fraction slope = b1 - b0;
    if (slope == Fraction(0))
        throw std::domain_error("solve_affine_slot: residual independent of slot");
    const Fraction u = -b0 / slope;
    xs[s - 2][var] = u;
    return u;
}

} // namespace detail

/// Order-4 series of the toy model in the parametrizations worked out by
/// hand: the smooth branch at the origin, the two crossing branches at the
/// second zero, and the two reparametrized variants (Y as free parameter).
inline ToySeries toy_series(ToyBranch branch)
{
    ToySeries out;

    if (branch == ToyBranch::origin || branch == ToyBranch::origin_alt) {
        const auto sys = toy_system(false);
        // A = [1 0], A+ = [1; 0]; kernel is the Y direction
        const linalg::Table<Fraction> pinv = {{Fraction(1)}, {Fraction(0)}};
        std::vector<Fraction> ychoice =
            branch == ToyBranch::origin
                ? std::vector<Fraction>{Fraction(1), Fraction(0), Fraction(0), Fraction(0)}
                : std::vector<Fraction>{Fraction(1), Fraction(-1, 2), Fraction(-2, 3), Fraction(0)};
        std::vector<std::vector<Fraction>> xs;
        xs.push_back({Fraction(0), ychoice[0]});
        for (long s = 2; s <= 4; ++s) {
            auto sol = solve_order(sys, pinv, xs, s);
            if (sol.residual[0] != Fraction(0))
                throw std::logic_error("toy_series: unexpected inconsistency at the origin");
            xs.push_back({sol.het[0], ychoice[s - 1]});
        }
        for (long s = 1; s <= 4; ++s) {
            out.x[s - 1] = xs[s - 1][0];
            out.y[s - 1] = xs[s - 1][1];
        }
        return out;
    }

    // second base point: A = 0, everything rides on the consistency conditions
    const auto sys = toy_system(true);
    // free slot per order: the variable solved from the next consistency
    // condition (Y for the X-parametrized branches, X for the alternate)
    const bool by_y = branch == ToyBranch::shifted_II_alt;
    const long fixed_var = by_y ? 1 : 0;  // set to the parameter choice
    const long solved_var = by_y ? 0 : 1;

    std::vector<std::vector<Fraction>> xs;
    if (branch == ToyBranch::shifted_I)
        xs.push_back({Fraction(1), Fraction(1)});
    else if (branch == ToyBranch::shifted_II)
        xs.push_back({Fraction(1), Fraction(-1)});
    else
        xs.push_back({Fraction(-1), Fraction(1)});  // x1 = -t, y1 = t

    // order-2 consistency must already hold on the chosen branch
    if (sys.order_source(xs, 2)[0] != Fraction(0))
        throw std::logic_error("toy_series: branch does not satisfy the order-2 condition");

    for (long s = 3; s <= 4; ++s) {
        // higher free parts of the parameter variable are set to zero,
        // the other variable is fixed by the order-s condition
        xs.push_back({Fraction(0), Fraction(0)});
        xs[s - 2][fixed_var] = Fraction(0);
        detail::solve_affine_slot(sys, xs, s, solved_var);
    }
    xs.push_back({Fraction(0), Fraction(0)});  // order 4 free part set to zero

    for (long s = 1; s <= 4; ++s) {
        out.x[s - 1] = xs[s - 1][0];
        out.y[s - 1] = xs[s - 1][1];
    }
    return out;
}

} // namespace hadfam

#endif // HADFAM_GENPERT_HPP
