#include "gbn/ratmat.hpp"

#include <doctest.h>

#include <random>

using namespace gbn;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, int n, bool singular) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    RationalMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(r, c) = rat(num(rng), den(rng));
    if (singular && n >= 2)
        for (int c = 0; c < n; ++c) m.at(n - 1, c) = m.at(0, c) * 2;
    return m;
}

} // namespace

TEST_CASE("rat canonicalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(1, -2) == rat(-1, 2));
    CHECK(rat(0, 7) == rat(0));
}

TEST_CASE("determinant dual routes agree") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k < 20; ++k) {
            RationalMatrix m = random_matrix(rng, n, k % 4 == 0);
            CHECK(m.det() == m.det_cofactor());
        }
}

TEST_CASE("inverse and rank") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        RationalMatrix m = random_matrix(rng, 4, false);
        if (m.det() == 0) continue;
        CHECK(m * m.inverse() == RationalMatrix::identity(4));
        CHECK(m.rank() == 4);
    }
    RationalMatrix s = random_matrix(rng, 3, true);
    CHECK(s.rank() <= 2);
    CHECK(s.det() == 0);
    CHECK_THROWS_AS(s.inverse(), MatrixError);
}

TEST_CASE("submatrix and minor respect order") {
    RationalMatrix m(3, 3);
    int v = 1;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = v++;
    RationalMatrix s = m.submatrix({2, 0}, {1, 2});
    CHECK(s.at(0, 0) == 8);
    CHECK(s.at(1, 1) == 3);
    CHECK(m.minor({0, 1}, {0, 1}) == m.submatrix({0, 1}, {0, 1}).det());
    // Swapping two rows flips the sign.
    CHECK(m.minor({1, 0}, {0, 1}) == -m.minor({0, 1}, {0, 1}));
}
