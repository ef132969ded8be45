#include <doctest.h>

#include <cmath>
#include <random>

#include "hadfam/genpert.hpp"

using namespace hadfam;

namespace {

double penrose_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& ap)
{
    double e = 0.0;
    e = std::max(e, (a * ap * a - a).cwiseAbs().maxCoeff());
    e = std::max(e, (ap * a * ap - ap).cwiseAbs().maxCoeff());
    e = std::max(e, ((a * ap).transpose() - a * ap).cwiseAbs().maxCoeff());
    e = std::max(e, ((ap * a).transpose() - ap * a).cwiseAbs().maxCoeff());
    return e;
}

} // namespace

TEST_CASE("exact pseudo-inverse on the hand-worked cases")
{
    using T = linalg::Table<Fraction>;
    T a = {{Fraction(1), Fraction(0)}};
    T ap = pseudo_inverse_exact(a);
    REQUIRE(ap.size() == 2);
    CHECK(ap[0][0] == Fraction(1));
    CHECK(ap[1][0] == Fraction(0));

    T z = {{Fraction(0), Fraction(0)}};
    T zp = pseudo_inverse_exact(z);
    CHECK(zp[0][0] == Fraction(0));
    CHECK(zp[1][0] == Fraction(0));

    // invertible -> plain inverse
    T b = {{Fraction(2), Fraction(1)}, {Fraction(1), Fraction(1)}};
    T bp = pseudo_inverse_exact(b);
    CHECK(bp[0][0] == Fraction(1));
    CHECK(bp[0][1] == Fraction(-1));
    CHECK(bp[1][0] == Fraction(-1));
    CHECK(bp[1][1] == Fraction(2));

    // rank-deficient rectangular case, Penrose identities exactly
    T c = {{Fraction(1), Fraction(2), Fraction(3)},
           {Fraction(2), Fraction(4), Fraction(6)}};
    T cp = pseudo_inverse_exact(c);
    auto prod = linalg::mul(c, linalg::mul(cp, c));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < c[0].size(); ++j)
            CHECK(prod[i][j] == c[i][j]);
    auto sym = linalg::mul(c, cp);
    CHECK(sym[0][1] == sym[1][0]);
}

TEST_CASE("floating pseudo-inverse satisfies the Penrose identities")
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> rows(1, 20), cols(1, 30);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = rows(rng), n = cols(rng);
        Eigen::MatrixXd a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = unif(rng);
        if (trial % 5 == 0 && m > 1) a.row(m - 1) = a.row(0);  // force rank deficiency
        CHECK(penrose_error(a, pseudo_inverse(a)) < 1e-10);
    }
}

TEST_CASE("toy system coefficients and base point")
{
    auto origin = toy_system(false);
    CHECK(origin.evaluate({Fraction(0), Fraction(0)}) == std::vector<Fraction>{Fraction(0)});
    // f(X,0) = X - 2X^2 + X^3
    auto fx = origin.evaluate({Fraction(1, 2), Fraction(0)});
    CHECK(fx[0] == Fraction(1, 2) - Fraction(2) * Fraction(1, 4) + Fraction(1, 8));

    auto shifted = toy_system(true);
    CHECK(shifted.evaluate({Fraction(0), Fraction(0)}) == std::vector<Fraction>{Fraction(0)});
    auto gx = shifted.evaluate({Fraction(1, 2), Fraction(0)});
    CHECK(gx[0] == Fraction(1, 4) + Fraction(1, 8));
    // Y side identical in both systems
    auto fy = origin.evaluate({Fraction(0), Fraction(1, 2)});
    auto gy = shifted.evaluate({Fraction(0), Fraction(1, 2)});
    CHECK(fy[0] == gy[0]);
    CHECK(fy[0] == -Fraction(1, 4) - Fraction(1, 8) - Fraction(7, 12) * Fraction(1, 16));
}

TEST_CASE("toy series, all parametrizations, exact")
{
    auto origin = toy_series(ToyBranch::origin);
    CHECK(origin.y == std::array<Fraction, 4>{Fraction(1), Fraction(0), Fraction(0), Fraction(0)});
    CHECK(origin.x == std::array<Fraction, 4>{Fraction(0), Fraction(1), Fraction(1), Fraction(31, 12)});

    auto b1 = toy_series(ToyBranch::shifted_I);
    CHECK(b1.x == std::array<Fraction, 4>{Fraction(1), Fraction(0), Fraction(0), Fraction(0)});
    CHECK(b1.y == std::array<Fraction, 4>{Fraction(1), Fraction(0), Fraction(-7, 24), Fraction(0)});

    auto b2 = toy_series(ToyBranch::shifted_II);
    CHECK(b2.x == std::array<Fraction, 4>{Fraction(1), Fraction(0), Fraction(0), Fraction(0)});
    CHECK(b2.y == std::array<Fraction, 4>{Fraction(-1), Fraction(-1), Fraction(-17, 24), Fraction(0)});

    auto oa = toy_series(ToyBranch::origin_alt);
    CHECK(oa.y == std::array<Fraction, 4>{Fraction(1), Fraction(-1, 2), Fraction(-2, 3), Fraction(0)});
    CHECK(oa.x == std::array<Fraction, 4>{Fraction(0), Fraction(1), Fraction(0), Fraction(0)});

    // Y as the free parameter on the second crossing branch; the cubic
    // coefficient is forced to -31/24 by the closed form
    // Y = ln[1 - (X-1) sqrt(X)]
    auto ba = toy_series(ToyBranch::shifted_II_alt);
    CHECK(ba.y == std::array<Fraction, 4>{Fraction(1), Fraction(0), Fraction(0), Fraction(0)});
    CHECK(ba.x == std::array<Fraction, 4>{Fraction(-1), Fraction(-1), Fraction(-31, 24), Fraction(0)});
}

TEST_CASE("origin series matches the closed form numerically")
{
    // X = (4/3) sin^2[(1/3) arcsin((3 sqrt(3)/2)(e^Y - 1))]
    const double y = 0.01;
    const double closed =
        (4.0 / 3.0) * std::pow(std::sin(std::asin(1.5 * std::sqrt(3.0) * (std::exp(y) - 1.0)) / 3.0), 2);
    auto s = toy_series(ToyBranch::origin);
    double series = 0.0;
    for (int k = 4; k >= 1; --k)
        series = series * y + boost::rational_cast<double>(s.x[k - 1]);
    series *= y;
    CHECK(std::abs(series - closed) < 1e-9);  // agreement to O(y^5)
}

TEST_CASE("heterogeneous parts are degree-s homogeneous in the first order")
{
    const auto sys = toy_system(false);
    const linalg::Table<Fraction> pinv = {{Fraction(1)}, {Fraction(0)}};
    auto run = [&](Fraction lambda) {
        std::vector<std::vector<Fraction>> xs{{Fraction(0), lambda}};
        std::vector<std::vector<Fraction>> hs;
        for (long s = 2; s <= 4; ++s) {
            auto sol = solve_order(sys, pinv, xs, s);
            hs.push_back(sol.het);
            xs.push_back(sol.het);  // higher free parts zero
        }
        return hs;
    };
    auto base = run(Fraction(1));
    auto scaled = run(Fraction(3));
    Fraction pow(3);  // lambda^1
    for (long s = 2; s <= 4; ++s) {
        pow *= Fraction(3);  // lambda^s
        for (size_t k = 0; k < base[s - 2].size(); ++k)
            CHECK(scaled[s - 2][k] == pow * base[s - 2][k]);
    }
}
