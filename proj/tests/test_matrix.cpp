#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellcov/matrix.hpp"

using namespace ellcov;

namespace {

bool is_unimodular(const Mat& m) {
    Int d = det(m);
    return d == 1 || d == -1;
}

bool divisibility_chain(const Mat& d) {
    std::size_t n = std::min(d.rows, d.cols);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d.at(i, i) == 0) {
            if (d.at(i + 1, i + 1) != 0) return false;
            continue;
        }
        if (d.at(i + 1, i + 1) % d.at(i, i) != 0) return false;
    }
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            if (i != j && d.at(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t r = dim(rng), c = dim(rng);
        Mat a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a.at(i, j) = val(rng);
        SmithForm s = smith_normal_form(a);
        CHECK(mat_mul(mat_mul(s.U, a), s.V) == s.D);
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
        CHECK(divisibility_chain(s.D));
        for (std::size_t i = 0; i < std::min(r, c); ++i) CHECK(s.D.at(i, i) >= 0);
    }
}

TEST_CASE("smith normal form of diag(4,6) is diag(2,12)") {
    Mat a(2, 2);
    a.at(0, 0) = 4;
    a.at(1, 1) = 6;
    SmithForm s = smith_normal_form(a);
    CHECK(s.D.at(0, 0) == 2);
    CHECK(s.D.at(1, 1) == 12);
}

TEST_CASE("unimodular inverse round trip") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        // build a random unimodular matrix from elementary operations
        std::size_t n = 1 + iter % 4;
        Mat u = Mat::identity(n);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), f(-3, 3);
        for (int step = 0; step < 12; ++step) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            Int fac = f(rng);
            for (std::size_t t = 0; t < n; ++t) u.at(i, t) += fac * u.at(j, t);
        }
        Mat inv = unimodular_inverse(u);
        CHECK(mat_mul(u, inv) == Mat::identity(n));
        CHECK(mat_mul(inv, u) == Mat::identity(n));
    }
}

TEST_CASE("determinant matches cofactor expansion on small cases") {
    Mat a(3, 3);
    Int vals[9] = {2, -1, 0, 3, 5, 1, 0, 4, -2};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = vals[3 * i + j];
    // 2*(5*-2-1*4) - (-1)*(3*-2-0) + 0 = 2*(-14) + (-6) = -34
    CHECK(det(a) == -34);
    CHECK(det(Mat::identity(4)) == 1);
    CHECK(det(Mat(0, 0)) == 1);
}

TEST_CASE("solve_congruences finds solutions and detects infeasibility") {
    // 2x ≡ 1 (mod 4) has no solution; 2x ≡ 2 (mod 4) does
    Mat a(1, 1);
    a.at(0, 0) = 2;
    CHECK(!solve_congruences(a, {Int(1)}, {Int(4)}).has_value());
    auto sol = solve_congruences(a, {Int(2)}, {Int(4)});
    REQUIRE(sol.has_value());
    CHECK((Int(2) * (*sol)[0] - 2) % 4 == 0);

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dim(1, 4), val(0, 11), mod(1, 12);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t l = dim(rng), m = dim(rng);
        Mat A(l, m);
        std::vector<Int> mods(l);
        for (std::size_t i = 0; i < l; ++i) {
            mods[i] = mod(rng);
            for (std::size_t j = 0; j < m; ++j) A.at(i, j) = val(rng);
        }
        // choose a known solution, then solve for it
        std::vector<Int> x(m);
        for (std::size_t j = 0; j < m; ++j) x[j] = val(rng);
        std::vector<Int> b = mat_apply(A, x);
        for (std::size_t i = 0; i < l; ++i) b[i] %= mods[i];
        auto found = solve_congruences(A, b, mods);
        REQUIRE(found.has_value());
        std::vector<Int> check = mat_apply(A, *found);
        for (std::size_t i = 0; i < l; ++i) CHECK((check[i] - b[i]) % mods[i] == 0);
    }
}
