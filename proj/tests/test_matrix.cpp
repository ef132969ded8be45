#include <doctest.h>

#include <random>

#include "hadfam/expansion.hpp"
#include "hadfam/families.hpp"
#include "hadfam/matrix.hpp"

using namespace hadfam;

TEST_CASE("fourier matrices are Hadamard")
{
    for (long n = 1; n <= 16; ++n) {
        auto rep = is_hadamard(fourier(n), 1e-12);
        CHECK(rep.passes);
    }
}

TEST_CASE("shift matrix powers and wraparound")
{
    const long n = 7;
    CMat p = shift(n);
    CMat acc = CMat::identity(n);
    for (long k = 0; k < n; ++k) acc = acc * p;
    CHECK((acc - CMat::identity(n)).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("displaced diagonal conditions vanish for Hadamard-derived M")
{
    // M = H F^dag is unitary with vanishing displaced diagonals exactly
    // when H is Hadamard
    std::mt19937_64 rng(11);
    auto fam = haagerup_family();
    CMat h = fam.member({2.0 * uniform01(rng), 2.0 * uniform01(rng)});
    REQUIRE(is_hadamard(h, 1e-10).passes);
    CMat m = h * fourier(6).dagger();
    CHECK(diag_conditions(m) < 1e-10);

    // a non-Hadamard unitary fails the displaced diagonal conditions:
    // F^dag turns each P^n into a diagonal matrix, so every displaced
    // diagonal of F^dag P^n F has full-size entries
    CHECK(diag_conditions(fourier(6).dagger()) > 0.5);
}

TEST_CASE("X parametrization round trip and first-order structure")
{
    std::mt19937_64 rng(5);
    auto fam = haagerup_family();
    CMat h = fam.member({1.0, 0.3});
    CMat x = x_of_h(h);
    CHECK((h_of_x(x) - h).max_abs() < 1e-13);

    // X + X^dag = X X^dag whenever H is Hadamard
    CMat lhs = x + x.dagger();
    CMat rhs = x * x.dagger();
    CHECK((lhs - rhs).max_abs() < 1e-12);
}

TEST_CASE("dephasing fixes the first row and column")
{
    std::mt19937_64 rng(17);
    auto fam = haagerup_family();
    CMat h = fam.member({0.7, 1.9});
    CMat d = dephase(h);
    for (long i = 0; i < 6; ++i) {
        CHECK(d(i, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d(i, 0).real() > 0.0);
        CHECK(d(0, i).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d(0, i).real() > 0.0);
    }
    CHECK(is_hadamard(d, 1e-10).passes);
    CHECK((dephase(d) - d).max_abs() < 1e-12);
}

TEST_CASE("transposition acts on X as F X^T F^dag")
{
    auto fam = haagerup_family();
    CMat h = fam.member({0.4, 2.2});
    CMat xt = transpose_x(x_of_h(h));
    CHECK((h_of_x(xt) - h.transposed()).max_abs() < 1e-12);
}
