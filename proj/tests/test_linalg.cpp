/*
   Copyright 2026 The uq-adjoint Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <random>

#include "doctest.h"
#include "support.hpp"
#include "uqadjoint/linalg.hpp"

using namespace uqa::linalg;
using uqa::testing::random_cyc;
using uqa::testing::random_invertible;
using uqa::testing::random_matrix;
using uqa::testing::random_nonzero_cyc;

TEST_CASE("nullspace vectors are killed and count matches rank") {
    std::mt19937_64 rng(21);
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        for (int trial = 0; trial < 25; ++trial) {
            const auto r = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
            const auto c = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
            // Low rank products exercise nontrivial kernels.
            const auto k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
            const Matrix m = random_matrix(f, rng, r, k) * random_matrix(f, rng, k, c);
            const Matrix n = nullspace(m, f);
            CHECK(n.rows() == c);
            CHECK(n.cols() + rank(m) == c);
            CHECK((m * n).is_zero());
            CHECK(rank(n) == n.cols());
        }
    }
}

TEST_CASE("inverse and solve") {
    std::mt19937_64 rng(22);
    CyclotomicField f(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        const Matrix a = random_invertible(f, rng, n);
        const auto inv = inverse(a);
        REQUIRE(inv.has_value());
        CHECK(a * *inv == Matrix::identity(f, n));
        const Matrix b = random_matrix(f, rng, n, 2);
        const auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(a * *x == b);
    }
    Matrix singular(2, 2);
    singular(0, 0) = f.one();
    singular(1, 0) = f.one();
    CHECK_FALSE(inverse(singular).has_value());
    Matrix rhs(2, 1);
    rhs(1, 0) = f.one();
    CHECK_FALSE(solve(singular, rhs).has_value());
}

TEST_CASE("column space rref is canonical") {
    std::mt19937_64 rng(23);
    CyclotomicField f(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_matrix(f, rng, 5, 3);
        const Matrix g = random_invertible(f, rng, 3);
        std::vector<std::size_t> p1, p2;
        const Matrix a = column_space_rref(m, &p1);
        const Matrix b = column_space_rref(m * g, &p2);
        CHECK(a == b);
        CHECK(p1 == p2);
    }
}

TEST_CASE("polynomial division, gcd and modular inverse") {
    std::mt19937_64 rng(24);
    CyclotomicField f(7);
    auto random_poly = [&](int deg) {
        std::vector<Cyc> c(static_cast<std::size_t>(deg + 1));
        for (auto& x : c) x = random_cyc(f, rng);
        c.back() = random_nonzero_cyc(f, rng);
        return Poly(std::move(c));
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Poly a = random_poly(5), b = random_poly(2);
        const auto [qt, rm] = divmod(a, b);
        CHECK(qt * b + rm == a);
        CHECK(rm.degree() < b.degree());
        const Poly g = random_poly(1);
        const Poly common = gcd(a * g, b * g);
        CHECK(divmod(common, g.monic()).second.is_zero());
    }
    const Poly m = Poly::linear(f, f.q()) * Poly::linear(f, f.q_pow(2));
    const Poly a = Poly::linear(f, f.q_pow(3));
    const Poly s = inverse_mod(a, m);
    CHECK(divmod(s * a, m).second == Poly(std::vector<Cyc>{f.one()}));
    CHECK(m(f.q()).is_zero());
    CHECK((m.derivative())(f.q()) == f.q() - f.q_pow(2));
}

TEST_CASE("matrix power") {
    CyclotomicField f(5);
    Matrix n(3, 3);
    n(0, 1) = f.one();
    n(1, 2) = f.q();
    CHECK(power(n, 3, f).is_zero());
    CHECK(power(n, 0, f) == Matrix::identity(f, 3));
    CHECK(power(n, 2, f)(0, 2) == f.q());
}
