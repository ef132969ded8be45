#ifndef HADFAM_EXPANSION_HPP
#define HADFAM_EXPANSION_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "hadfam/matrix.hpp"
#include "hadfam/numtheory.hpp"

namespace hadfam {

/// [P^n, X]_{ij} = X_{i+n,j} - X_{i,j-n}.
template <typename C>
Mat<C> commutator_pn(const Mat<C>& x, long n)
{
    const long N = x.n();
    Mat<C> r(N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            r(i, j) = x.at_mod(i + n, j) - x.at_mod(i, j - n);
    return r;
}

/// Homogeneous solution: X_{i,j} = vals[key(i,j)]; constant along the
/// equality strings of each displaced diagonal.
template <typename C>
Mat<C> homogeneous_x(const KeyIndex& ki, const std::vector<C>& vals)
{
    const long N = ki.n();
    Mat<C> x(N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            x(i, j) = vals[ki.index(i, j)];
    return x;
}

template <typename C>
struct ResidualEntry {
    long diag;
    long row_class;
    C value;
    real_t<C> abs_value;
};

template <typename C>
struct ConsistencyReport {
    using R = real_t<C>;
    int order = 0;
    std::vector<ResidualEntry<C>> residuals;
    R max_abs = R(0);
    R scale = R(1);
    bool broken = false;

    R relative() const { return max_abs / scale; }

    std::vector<C> values() const
    {
        std::vector<C> v;
        v.reserve(residuals.size());
        for (const auto& e : residuals) v.push_back(e.value);
        return v;
    }
};

/// Order-by-order state of the expansion of X around the Fourier matrix.
/// X^{(1)} is fixed at construction from a parameter assignment; higher
/// orders are appended by advance().
template <typename C>
class SeriesState {
public:
    using R = real_t<C>;

    SeriesState(long n, std::vector<C> first_order)
        : n_(n), ki_(n), assignment_(std::move(first_order))
    {
        if (static_cast<long>(assignment_.size()) != ki_.size())
            throw std::invalid_argument("SeriesState: assignment size mismatch");
        x_.push_back(homogeneous_x(ki_, assignment_));
        hom_.push_back(assignment_);
        using std::abs;
        base_ = R(0);
        for (const auto& v : assignment_)
            if (abs(v) > base_) base_ = abs(v);
        if (base_ == R(0)) base_ = R(1);
    }

    long n() const { return n_; }
    const KeyIndex& keys() const { return ki_; }
    int order() const { return static_cast<int>(x_.size()); }
    const std::vector<C>& first_order_assignment() const { return assignment_; }

    /// X^{(s)}, 1-based; available up to order().
    const Mat<C>& x(int s) const { return x_.at(s - 1); }

    /// B^{(s,n)}, cached. Needs X^{(1..s-1)}.
    const Mat<C>& b(int s, long n)
    {
        auto it = b_cache_.find({s, n});
        if (it != b_cache_.end()) return it->second;
        if (s > order() + 1)
            throw std::logic_error("SeriesState::b: lower orders missing");
        Mat<C> acc(n_);
        if (s > 1) {
            for (int r = 1; r <= s - 1; ++r) {
                Mat<C> lead = commutator_pn(x(r), n) + b(r, n);
                acc += lead * x(s - r);
            }
        }
        return b_cache_.emplace(std::pair<int, long>{s, n}, std::move(acc)).first->second;
    }

    /// Solvability residuals at order s: per displaced diagonal n
    /// and class i, the trace of B^{(s,n)} over the equality string.
    ConsistencyReport<C> consistency(int s, R breakdown_tol = R(1e-6))
    {
        using std::abs;
        using std::pow;
        ConsistencyReport<C> rep;
        rep.order = s;
        rep.scale = pow(base_, R(s));
        for (long n = 1; n < n_; ++n) {
            const Mat<C>& bm = b(s, n);
            long g = gcd_z(n, n_);
            for (long i = 0; i < g; ++i) {
                C sum(0);
                for (long q = 0; q < n_ / g; ++q) {
                    long t = mod_pos(i + q * g, n_);
                    sum += bm(t, t);
                }
                R a = abs(sum);
                rep.residuals.push_back({n, i, sum, a});
                if (a > rep.max_abs) rep.max_abs = a;
            }
        }
        rep.broken = rep.max_abs / rep.scale > breakdown_tol;
        return rep;
    }

    /// Homogeneous part currently carried by X^{(s)}.
    const std::vector<C>& homogeneous(int s) const { return hom_.at(s - 1); }

    /// Replace the homogeneous part of X^{(s)} for any 2 <= s <= order()
    /// and rebuild every higher order on top of the change.
    void set_homogeneous(int s, std::vector<C> hom)
    {
        if (s < 2 || s > order())
            throw std::logic_error("set_homogeneous: order out of range");
        if (static_cast<long>(hom.size()) != ki_.size())
            throw std::invalid_argument("set_homogeneous: size mismatch");
        hom_[s - 1] = std::move(hom);
        for (auto it = b_cache_.begin(); it != b_cache_.end();)
            it = it->first.first > s ? b_cache_.erase(it) : std::next(it);
        // B^{(s,.)} stays valid (it only sees X^{(1..s-1)}); everything
        // above is recomputed in order on the cleared cache.
        for (int r = s; r <= order(); ++r)
            x_[r - 1] = particular(r) + homogeneous_x(ki_, hom_[r - 1]);
    }

    /// Heterogeneous (particular) part of X^{(s)} alone.
    Mat<C> particular(int s)
    {
        Mat<C> p(n_);
        if (s == 1) return p;
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j) {
                if (i == j) continue;
                long d = mod_pos(i - j, n_);
                const Mat<C>& bm = b(s, d);
                long m = particular_steps(i, j, n_);
                C sum(0);
                for (long q = 0; q < m; ++q) {
                    long t = mod_pos(i + q * (i - j), n_);
                    sum += bm(t, t);
                }
                p(i, j) = sum;
            }
        return p;
    }

    /// Append X^{(s)} for s = order()+1 as homogeneous + particular.
    /// Missing homogeneous parts read as zero.
    void advance(const std::vector<C>* homogeneous = nullptr)
    {
        int s = order() + 1;
        Mat<C> xs = particular(s);
        std::vector<C> hom(ki_.size(), C(0));
        if (homogeneous) {
            if (static_cast<long>(homogeneous->size()) != ki_.size())
                throw std::invalid_argument("advance: homogeneous size mismatch");
            xs += homogeneous_x(ki_, *homogeneous);
            hom = *homogeneous;
        }
        x_.push_back(std::move(xs));
        hom_.push_back(std::move(hom));
    }

    /// max over n, i of |diag([P^n, X^{(s)}] + B^{(s,n)})_i|; zero when the
    /// order-s equations are solved.
    R equation_residual(int s)
    {
        using std::abs;
        R worst(0);
        for (long n = 1; n < n_; ++n) {
            Mat<C> lhs = commutator_pn(x(s), n) + b(s, n);
            for (long i = 0; i < n_; ++i) {
                R t = abs(lhs(i, i));
                if (t > worst) worst = t;
            }
        }
        return worst;
    }

    R parameter_scale() const { return base_; }

private:
    long n_;
    KeyIndex ki_;
    R base_;
    std::vector<C> assignment_;
    std::vector<Mat<C>> x_;
    std::vector<std::vector<C>> hom_;  // homogeneous part per order
    std::map<std::pair<int, long>, Mat<C>> b_cache_;
};

/// Least-squares solver |A u - t| -> min over explicit columns of A,
/// built once and reusable for several targets. Works for any complex
/// scalar type; rank decisions are relative to the largest column.
template <typename C>
class PivotedLeastSquares {
public:
    using R = real_t<C>;

    PivotedLeastSquares(std::vector<std::vector<C>> cols, long rows,
                        R rank_tol = default_rank_tol())
        : num_rows_(rows), num_cols_(static_cast<long>(cols.size()))
    {
        for (const auto& c : cols)
            if (static_cast<long>(c.size()) != rows)
                throw std::invalid_argument("PivotedLeastSquares: ragged columns");
        factorize(std::move(cols), rank_tol);
    }

    long rank() const { return static_cast<long>(pivot_.size()); }

    struct Result {
        std::vector<C> coeffs;  // minimizer of |A u - target|
        R residual;             // max-norm of A u - target at the minimizer
    };

    Result solve(const std::vector<C>& target) const
    {
        using std::abs;
        if (static_cast<long>(target.size()) != num_rows_)
            throw std::invalid_argument("PivotedLeastSquares::solve: size mismatch");
        const long r = rank();
        std::vector<C> y(r);
        std::vector<C> rem = target;
        for (long m = 0; m < r; ++m) {
            C coef(0);
            for (long i = 0; i < num_rows_; ++i)
                coef += conj_of(q_[m][i]) * rem[i];
            y[m] = coef;
            for (long i = 0; i < num_rows_; ++i)
                rem[i] -= coef * q_[m][i];
        }
        Result out;
        out.residual = R(0);
        for (const auto& v : rem) {
            R a = abs(v);
            if (a > out.residual) out.residual = a;
        }
        out.coeffs.assign(num_cols_, C(0));
        for (long m = r - 1; m >= 0; --m) {
            C acc = y[m];
            for (long l = m + 1; l < r; ++l)
                acc -= rupper_[l][m] * out.coeffs[pivot_[l]];
            out.coeffs[pivot_[m]] = acc / rdiag_[m];
        }
        return out;
    }

private:
    static R default_rank_tol()
    {
        using std::sqrt;
        return sqrt(std::numeric_limits<R>::epsilon());
    }

    static C conj_of(const C& z)
    {
        using std::conj;
        return conj(z);
    }

    static R norm2(const std::vector<C>& v)
    {
        using std::abs;
        using std::sqrt;
        R s(0);
        for (const auto& z : v) {
            R a = abs(z);
            s += a * a;
        }
        return sqrt(s);
    }

    /// Modified Gram-Schmidt with column pivoting; keeps Q, the pivot
    /// order, and the projection coefficients needed to recover h.
    void factorize(std::vector<std::vector<C>> work, R rank_tol)
    {
        std::vector<bool> used(num_cols_, false);
        std::vector<std::vector<C>> proj(num_cols_);
        R max_init(0);
        for (const auto& c : work) {
            R n = norm2(c);
            if (n > max_init) max_init = n;
        }
        if (max_init == R(0)) return;
        for (;;) {
            long best = -1;
            R best_norm(0);
            for (long k = 0; k < num_cols_; ++k) {
                if (used[k]) continue;
                R n = norm2(work[k]);
                if (n > best_norm) {
                    best_norm = n;
                    best = k;
                }
            }
            if (best < 0 || best_norm <= rank_tol * max_init) break;
            used[best] = true;
            std::vector<C> q = work[best];
            for (auto& z : q) z /= C(best_norm);
            for (long k = 0; k < num_cols_; ++k) {
                if (used[k]) continue;
                C coef(0);
                for (long i = 0; i < num_rows_; ++i)
                    coef += conj_of(q[i]) * work[k][i];
                for (long i = 0; i < num_rows_; ++i)
                    work[k][i] -= coef * q[i];
                proj[k].push_back(coef);
            }
            pivot_.push_back(best);
            rdiag_.push_back(C(best_norm));
            rupper_.push_back(std::move(proj[best]));
            q_.push_back(std::move(q));
        }
    }

    long num_rows_ = 0;
    long num_cols_ = 0;
    std::vector<std::vector<C>> q_;      // orthonormal basis of range(U)
    std::vector<long> pivot_;            // original column per step
    std::vector<C> rdiag_;               // norms at selection time
    std::vector<std::vector<C>> rupper_; // projections of each pivot column
};

/// Unitarity imposition (order-by-order). Given the state with final
/// X^{(1..s-1)} and the heterogeneous part of order s, returns the
/// homogeneous assignment whose free slots are taken from `free_vals`
/// (imaginary parts on diagonals 0 and N/2, full values on 0 < n < N/2)
/// and whose remaining slots are fixed by the unitarity equations.
template <typename C>
std::vector<C> impose_unitarity(SeriesState<C>& state, int s,
                                const std::vector<C>& free_vals,
                                real_t<C> check_tol = real_t<C>(1e-8))
{
    using R = real_t<C>;
    using std::abs;
    using std::conj;
    using std::pow;
    const long N = state.n();
    const KeyIndex& ki = state.keys();
    if (static_cast<long>(free_vals.size()) != ki.size())
        throw std::invalid_argument("impose_unitarity: free_vals size mismatch");

    Mat<C> f(N);
    if (s > 1) {
        Mat<C> het = state.particular(s);
        for (int r = 1; r <= s - 1; ++r)
            f += state.x(s - r) * state.x(r).dagger();
        f -= het;
        f -= het.dagger();
        // precondition: F must solve the homogeneous system, or the
        // diagonal equations below have no solution at all
        R scale = pow(state.parameter_scale(), R(s));
        for (long n = 1; n < N; ++n) {
            Mat<C> cm = commutator_pn(f, n);
            for (long i = 0; i < N; ++i)
                if (abs(cm(i, i)) > check_tol * scale)
                    throw std::runtime_error("impose_unitarity: diag[P^n,F] != 0");
        }
    }

    std::vector<C> out(ki.size(), C(0));
    const long half = N % 2 == 0 ? N / 2 : -1;
    for (long flat = 0; flat < ki.size(); ++flat) {
        ParamKey k = ki.key(flat);
        const long n = k.diag;
        const long c = k.row_class;
        if (n == 0) {
            // Re x_{i,0} = F_{ii}/2, Im free
            R re = f(c, c).real() / R(2);
            R im = free_vals[flat].imag();
            out[flat] = C(re, im);
        } else if (n == half) {
            R re = f(c, mod_pos(c + half, N)).real() / R(2);
            R im = free_vals[flat].imag();
            out[flat] = C(re, im);
        } else if (n < N - n) {
            out[flat] = free_vals[flat];
        }
    }
    // dependent diagonals: x_{.,-n} = F_{i,i-n} - conj(x_{.,n})
    for (long flat = 0; flat < ki.size(); ++flat) {
        ParamKey k = ki.key(flat);
        const long n = k.diag;
        if (n == 0 || n == half || n < N - n) continue;
        const long np = N - n;  // 0 < np < N/2
        const long c = k.row_class;
        long mirror = ki.index(ParamKey{np, k.row_class});
        out[flat] = f(c, mod_pos(c - np, N)) - conj(out[mirror]);
    }
    return out;
}

/// Deterministic uniform double in [0,1) from raw 64-bit output.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform draw from the closed unit disc (rejection from the square).
inline std::complex<double> unit_disc(std::mt19937_64& rng)
{
    for (;;) {
        double x = 2.0 * uniform01(rng) - 1.0;
        double y = 2.0 * uniform01(rng) - 1.0;
        if (x * x + y * y <= 1.0) return {x, y};
    }
}

enum class PatternLabel { none, type_one, type_two, custom };

/// Equality classes over first-order parameter keys. Keys inside one
/// group carry equal values when sampling.
struct ConstraintPattern {
    PatternLabel label = PatternLabel::none;
    std::vector<std::vector<long>> groups;  // flat key indices

    /// Representative flat index per key (identity outside groups).
    std::vector<long> representative(long num_keys) const
    {
        std::vector<long> rep(num_keys);
        for (long i = 0; i < num_keys; ++i) rep[i] = i;
        for (const auto& g : groups)
            for (long m : g)
                rep[m] = g.front();
        return rep;
    }
};

/// The conjectured surviving patterns for N = p1*p2^2.
/// Type I merges classes in strides of p2 on diagonals with gcd = p2^2;
/// type II merges each diagonal with gcd = p1 completely.
inline ConstraintPattern apply_pattern(long n, PatternLabel label)
{
    ConstraintPattern pat;
    pat.label = label;
    if (label == PatternLabel::none) return pat;
    if (label == PatternLabel::custom)
        throw std::invalid_argument("apply_pattern: custom patterns come from files");

    auto fac = factorize(n);
    long p1 = 0, p2 = 0;
    if (fac.size() == 2) {
        for (auto [p, k] : fac) {
            if (k == 1) p1 = p;
            else if (k == 2) p2 = p;
        }
    }
    if (p1 == 0 || p2 == 0)
        throw std::domain_error("apply_pattern: type I/II require N = p1*p2^2");

    KeyIndex ki(n);
    for (long d = 1; d < n; ++d) {
        long g = gcd_z(d, n);
        if (label == PatternLabel::type_one && g == p2 * p2) {
            for (long c = 0; c < p2; ++c) {
                std::vector<long> grp;
                for (long i = c; i < g; i += p2)
                    grp.push_back(ki.index(ParamKey{d, i}));
                pat.groups.push_back(std::move(grp));
            }
        } else if (label == PatternLabel::type_two && g == p1) {
            std::vector<long> grp;
            for (long i = 0; i < g; ++i)
                grp.push_back(ki.index(ParamKey{d, i}));
            pat.groups.push_back(std::move(grp));
        }
    }
    return pat;
}

/// Number of independent equalities a pattern imposes.
inline long pattern_condition_count(const ConstraintPattern& pat)
{
    long c = 0;
    for (const auto& g : pat.groups)
        c += static_cast<long>(g.size()) - 1;
    return c;
}

using AssignmentSampler =
    std::function<std::vector<std::complex<double>>(std::mt19937_64&)>;

/// Sampler drawing one unit-disc value per pattern group.
inline AssignmentSampler pattern_sampler(long n, const ConstraintPattern& pat)
{
    KeyIndex ki(n);
    std::vector<long> rep = pat.representative(ki.size());
    long num_keys = ki.size();
    return [rep, num_keys](std::mt19937_64& rng) {
        std::vector<std::complex<double>> vals(num_keys);
        for (long i = 0; i < num_keys; ++i)
            if (rep[i] == i) vals[i] = unit_disc(rng);
        for (long i = 0; i < num_keys; ++i)
            vals[i] = vals[rep[i]];
        return vals;
    };
}

struct TrialResult {
    std::optional<int> first_break;
    std::vector<double> per_order_relative;  // index 0 -> order 2
};

struct ScanResult {
    std::optional<int> first_break;
    bool inconclusive = false;
    std::vector<TrialResult> trials;
    std::vector<double> per_order_max_relative;  // max over trials
};

/// Continue one series as far as the consistency conditions allow.
///
/// At order s the stacked conditions of orders 3..s depend affinely -- with
/// no cross terms -- on every homogeneous part h^{(r)} with 2r > s, because
/// products of two such parts only enter beyond order s. Those parts are
/// therefore re-fitted jointly by exact least squares at every order; a
/// part becomes frozen once 2r <= s. A residual that survives the joint
/// fit signals a genuine dimension drop at order s.
/// Optional progress sink: called once per completed order with the
/// relative residual left after refitting.
using OrderProgress = std::function<void(int order, double relative)>;

template <typename C>
TrialResult continue_series(SeriesState<C>& state, int max_order, double tol,
                            const OrderProgress& progress = {})
{
    using R = real_t<C>;
    using std::abs;
    using std::pow;
    const long num_keys = state.keys().size();
    const R base = state.parameter_scale();
    TrialResult tr;

    // conditions of orders 3..s, each block scaled to O(1)
    auto stacked = [&](int s) {
        std::vector<C> out;
        for (int t = 3; t <= s; ++t) {
            auto rep = state.consistency(t);
            R inv = R(1) / rep.scale;
            for (const auto& e : rep.residuals) out.push_back(e.value * inv);
        }
        return out;
    };

    auto max_abs_of = [](const std::vector<C>& v) {
        using std::abs;
        R worst(0);
        for (const auto& z : v) {
            R a = abs(z);
            if (a > worst) worst = a;
        }
        return worst;
    };

    for (int s = 2; s <= max_order; ++s) {
        double rel;
        if (s == 2) {
            rel = static_cast<double>(state.consistency(2).relative());
        } else {
            // Gauss-Newton. Parts with 2r > s enter exactly linearly (unit
            // steps give exact columns, one step suffices for them alone);
            // parts with 2r <= s enter through higher powers as well and
            // need small-step differencing plus iteration.
            const R fd = R(1) / R(1024);
            rel = static_cast<double>(max_abs_of(stacked(s)));
            for (int iter = 0; iter < 30 && rel > tol; ++iter) {
                std::vector<C> c0 = stacked(s);
                std::vector<std::vector<C>> cols;
                cols.reserve(static_cast<size_t>(s - 2) * num_keys);
                for (int r = 2; r <= s - 1; ++r) {
                    const bool linear = 2 * r > s;
                    const R mag = (linear ? R(1) : fd) * pow(base, R(r));
                    const std::vector<C> saved = state.homogeneous(r);
                    for (long k = 0; k < num_keys; ++k) {
                        std::vector<C> h = saved;
                        h[k] += C(mag);
                        state.set_homogeneous(r, std::move(h));
                        std::vector<C> col = stacked(s);
                        for (size_t i = 0; i < col.size(); ++i) {
                            col[i] -= c0[i];
                            if (!linear) col[i] /= C(fd);
                        }
                        cols.push_back(std::move(col));
                    }
                    state.set_homogeneous(r, saved);
                }

                PivotedLeastSquares<C> ls(std::move(cols),
                                          static_cast<long>(c0.size()));
                std::vector<C> target = c0;
                for (auto& z : target) z = -z;
                auto fit = ls.solve(target);

                std::vector<std::vector<C>> saved_homs;
                for (int r = 2; r <= s - 1; ++r)
                    saved_homs.push_back(state.homogeneous(r));

                bool improved = false;
                for (R lambda(1); lambda > R(1) / R(512); lambda /= R(2)) {
                    size_t idx = 0;
                    for (int r = 2; r <= s - 1; ++r) {
                        const C step(pow(base, R(r)) * lambda);
                        std::vector<C> h = saved_homs[static_cast<size_t>(r - 2)];
                        for (long k = 0; k < num_keys; ++k)
                            h[k] += fit.coeffs[idx++] * step;
                        state.set_homogeneous(r, std::move(h));
                    }
                    R trial = max_abs_of(stacked(s));
                    if (static_cast<double>(trial) < 0.9 * rel ||
                        static_cast<double>(trial) <= tol) {
                        rel = static_cast<double>(trial);
                        improved = true;
                        break;
                    }
                }
                if (!improved) {
                    for (int r = 2; r <= s - 1; ++r)
                        state.set_homogeneous(r,
                            saved_homs[static_cast<size_t>(r - 2)]);
                    break;
                }
            }
        }
        tr.per_order_relative.push_back(rel);
        if (progress) progress(s, rel);
        if (rel > tol) {
            tr.first_break = s;
            break;
        }
        state.advance();
    }
    return tr;
}

/// Advance random first-order assignments order by order and report the
/// first order whose relative consistency residual exceeds tol.
/// All trials must agree; disagreement is flagged inconclusive.
using ScanProgress = std::function<void(int trial, int order, double relative)>;

template <typename C = cdouble>
ScanResult breakdown_scan(long n, int max_order, const AssignmentSampler& sampler,
                          int trials, std::uint64_t seed, double tol = 1e-6,
                          const ScanProgress& progress = {})
{
    using R = real_t<C>;
    if (max_order < 2)
        throw std::invalid_argument("breakdown_scan: max_order >= 2 required");
    ScanResult result;
    result.per_order_max_relative.assign(max_order - 1, 0.0);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<std::complex<double>> drawn = sampler(rng);
        std::vector<C> vals(drawn.size());
        for (size_t i = 0; i < drawn.size(); ++i)
            vals[i] = C(R(drawn[i].real()), R(drawn[i].imag()));
        SeriesState<C> state(n, std::move(vals));
        OrderProgress per_order;
        if (progress)
            per_order = [&progress, t](int order, double rel) { progress(t, order, rel); };
        TrialResult tr = continue_series(state, max_order, tol, per_order);
        for (size_t i = 0; i < tr.per_order_relative.size(); ++i) {
            auto& agg = result.per_order_max_relative[i];
            if (tr.per_order_relative[i] > agg) agg = tr.per_order_relative[i];
        }
        result.trials.push_back(std::move(tr));
    }
    bool all_none = true, all_same = true;
    std::optional<int> common;
    for (const auto& tr : result.trials) {
        if (tr.first_break) all_none = false;
        if (!common && tr.first_break) common = tr.first_break;
        if (tr.first_break != result.trials.front().first_break) all_same = false;
    }
    if (all_none) {
        result.first_break = std::nullopt;
    } else if (all_same) {
        result.first_break = result.trials.front().first_break;
    } else {
        result.inconclusive = true;
    }
    return result;
}

} // namespace hadfam

#endif // HADFAM_EXPANSION_HPP
