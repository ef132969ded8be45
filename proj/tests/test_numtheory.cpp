#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>

#include "hadfam/numtheory.hpp"

using namespace hadfam;

TEST_CASE("gcd convention and basics")
{
    CHECK(gcd_z(0, 12) == 12);
    CHECK(gcd_z(12, 0) == 12);
    CHECK(gcd_z(8, 12) == 4);
    CHECK(gcd_z(-8, 12) == 4);
    CHECK(gcd_z(7, 12) == 1);
    CHECK_THROWS_AS(gcd_z(0, 0), std::domain_error);
    CHECK(lcm_z(4, 6) == 12);
}

TEST_CASE("mod_pos and mod_inverse")
{
    CHECK(mod_pos(-1, 12) == 11);
    CHECK(mod_pos(25, 12) == 1);
    CHECK(mod_pos(0, 5) == 0);
    for (long m : {2L, 3L, 5L, 7L, 12L, 35L})
        for (long a = 1; a < m; ++a) {
            if (gcd_z(a, m) != 1) {
                CHECK_THROWS_AS(mod_inverse(a, m), std::domain_error);
                continue;
            }
            long inv = mod_inverse(a, m);
            CHECK(mod_pos(a * inv, m) == 1);
        }
}

TEST_CASE("canonical keys label the equality strings")
{
    for (long n : {4L, 6L, 12L}) {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                ParamKey k = canonical_key(i, j, n);
                long d = mod_pos(j - i, n);
                long g = d == 0 ? n : gcd_z(d, n);
                CHECK(k.diag == d);
                CHECK(k.row_class == i % g);
                // every shift of the row by g stays in the same class
                ParamKey k2 = canonical_key(mod_pos(i + g, n), mod_pos(j + g, n), n);
                CHECK(k == k2);
            }
    }
}

TEST_CASE("particular step counts")
{
    CHECK(particular_steps(2, 0, 6) == 2);
    CHECK(particular_steps(1, 0, 6) == 5);
    CHECK(particular_steps(0, 3, 6) == 0);
    CHECK_THROWS_AS(particular_steps(3, 3, 6), std::domain_error);

    // walking m steps of size (i-j) from i lands on the class representative
    for (long n : {4L, 6L, 9L, 12L}) {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                if (i == j) continue;
                long g = gcd_z(i - j, n);
                long m = particular_steps(i, j, n);
                CHECK(m >= 0);
                CHECK(m < n / g);
                CHECK(mod_pos(i + m * (i - j), n) == i % g);
            }
    }
}

TEST_CASE("key index enumerates sum-of-gcd many parameters")
{
    for (long n = 2; n <= 30; ++n) {
        KeyIndex ki(n);
        long expect = n;  // the diag = 0 term
        for (long d = 1; d < n; ++d) expect += gcd_z(d, n);
        CHECK(ki.size() == expect);

        std::set<std::pair<long, long>> seen;
        for (long f = 0; f < ki.size(); ++f) {
            ParamKey k = ki.key(f);
            CHECK(ki.index(k) == f);
            seen.insert({k.diag, k.row_class});
        }
        CHECK(static_cast<long>(seen.size()) == ki.size());

        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                CHECK(ki.index(i, j) == ki.index(canonical_key(i, j, n)));
    }
}

TEST_CASE("factorization and primality")
{
    CHECK(factorize(12) == std::vector<std::pair<long, long>>{{2, 2}, {3, 1}});
    CHECK(factorize(97) == std::vector<std::pair<long, long>>{{97, 1}});
    CHECK(factorize(360) == std::vector<std::pair<long, long>>{{2, 3}, {3, 2}, {5, 1}});
    for (long n = 2; n <= 200; ++n) {
        auto fac = factorize(n);
        long prod = 1;
        for (auto [p, k] : fac) {
            CHECK(is_prime(p));
            for (long t = 0; t < k; ++t) prod *= p;
        }
        CHECK(prod == n);
        CHECK(is_prime(n) == (fac.size() == 1 && fac[0].second == 1));
    }
}
