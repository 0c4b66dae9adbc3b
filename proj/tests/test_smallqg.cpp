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
#include "uqadjoint/smallqg.hpp"

using namespace uqa::smallqg;
using uqa::testing::random_cyc;

namespace {

AlgElem random_element(const SmallQuantumGroup& u, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<std::size_t> pick(0, u.basis().size() - 1);
    AlgElem x;
    for (int i = 0; i < terms; ++i) x.add_term(u.basis()[pick(rng)], random_cyc(u.field(), rng));
    return x;
}

std::vector<Letter> word_of(const Monomial& m) {
    std::vector<Letter> w;
    w.insert(w.end(), static_cast<std::size_t>(m.e), Letter::E);
    w.insert(w.end(), static_cast<std::size_t>(m.f), Letter::F);
    w.insert(w.end(), static_cast<std::size_t>(m.k), Letter::K);
    return w;
}

// Baby Verma module with top weight lam, written down directly:
// K v_i = q^(lam-2i) v_i, F v_i = v_(i+1), E v_i = (i)(lam-i+1) v_(i-1).
struct BabyVerma {
    Matrix e, f, k;
};

BabyVerma baby_verma(const CyclotomicField& fld, int lam) {
    const auto n = static_cast<std::size_t>(fld.l());
    BabyVerma v{Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        const long ii = static_cast<long>(i);
        v.k(i, i) = fld.q_pow(lam - 2 * ii);
        if (i + 1 < n) v.f(i + 1, i) = fld.one();
        if (i > 0) v.e(i - 1, i) = fld.qint(ii) * fld.qint(lam - ii + 1);
    }
    return v;
}

Matrix represent(const BabyVerma& v, const CyclotomicField& fld, const AlgElem& x) {
    const std::size_t n = v.e.rows();
    Matrix out(n, n);
    for (const auto& [m, c] : x.terms()) {
        Matrix p = Matrix::identity(fld, n);
        for (int i = 0; i < m.e; ++i) p = p * v.e;
        for (int i = 0; i < m.f; ++i) p = p * v.f;
        for (int i = 0; i < m.k; ++i) p = p * v.k;
        out += c * p;
    }
    return out;
}

}  // namespace

TEST_CASE("defining relations hold") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        CHECK(u.dimension() == static_cast<std::size_t>(l * l * l));
        CHECK(u.multiply(u.K(), u.E()) == f.q_pow(2) * u.multiply(u.E(), u.K()));
        CHECK(u.multiply(u.K(), u.F()) == f.q_pow(-2) * u.multiply(u.F(), u.K()));
        const AlgElem comm = u.multiply(u.E(), u.F()) - u.multiply(u.F(), u.E());
        CHECK(comm == (f.q() - f.q_inv()).inv() * (u.K() - u.K_inv()));
        CHECK(u.power(u.E(), static_cast<unsigned>(l)).is_zero());
        CHECK(u.power(u.F(), static_cast<unsigned>(l)).is_zero());
        CHECK(u.power(u.K(), static_cast<unsigned>(l)) == u.one());
        CHECK(u.multiply(u.K(), u.K_inv()) == u.one());
    }
}

TEST_CASE("rewriting strategies reach the same normal form") {
    std::mt19937_64 rng(31);
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        std::uniform_int_distribution<int> letter(0, 2);
        std::uniform_int_distribution<int> len(0, 2 * l + 2);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Letter> w(static_cast<std::size_t>(len(rng)));
            for (auto& x : w) x = static_cast<Letter>(letter(rng));
            const AlgElem a = u.normalize_word(w, RewriteStrategy::Leftmost);
            CHECK(a == u.normalize_word(w, RewriteStrategy::Rightmost));
            CHECK(a == u.normalize_word(w, RewriteStrategy::Random, &rng));
        }
    }
}

TEST_CASE("monomial products agree with rewriting of concatenated words") {
    std::mt19937_64 rng(32);
    CyclotomicField f(5);
    SmallQuantumGroup u(f);
    std::uniform_int_distribution<std::size_t> pick(0, u.basis().size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
        const Monomial a = u.basis()[pick(rng)], b = u.basis()[pick(rng)];
        auto w = word_of(a);
        const auto wb = word_of(b);
        w.insert(w.end(), wb.begin(), wb.end());
        CHECK(u.multiply(a, b) == u.normalize_word(w, RewriteStrategy::Leftmost));
    }
}

TEST_CASE("products agree with the baby Verma representation") {
    std::mt19937_64 rng(33);
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        for (int lam : {0, 1, l - 1, l + 2}) {
            const BabyVerma v = baby_verma(f, lam);
            for (int trial = 0; trial < 10; ++trial) {
                const AlgElem x = random_element(u, rng, 3), y = random_element(u, rng, 3);
                CHECK(represent(v, f, u.multiply(x, y)) == represent(v, f, x) * represent(v, f, y));
            }
        }
    }
}

TEST_CASE("associativity on random triples") {
    std::mt19937_64 rng(34);
    CyclotomicField f(3);
    SmallQuantumGroup u(f);
    for (int trial = 0; trial < 30; ++trial) {
        const AlgElem a = random_element(u, rng, 3), b = random_element(u, rng, 3), c = random_element(u, rng, 3);
        CHECK(u.multiply(u.multiply(a, b), c) == u.multiply(a, u.multiply(b, c)));
    }
}

TEST_CASE("Hopf structure") {
    std::mt19937_64 rng(35);
    CyclotomicField f(3);
    SmallQuantumGroup u(f);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElem x = random_element(u, rng, 2), y = random_element(u, rng, 2);
        CHECK(u.coproduct(u.multiply(x, y)) == u.tensor_multiply(u.coproduct(x), u.coproduct(y)));
        CHECK(u.antipode(u.multiply(x, y)) == u.multiply(u.antipode(y), u.antipode(x)));
        CHECK(u.omega(u.multiply(x, y)) == u.multiply(u.omega(x), u.omega(y)));
        CHECK(u.counit(u.multiply(x, y)) == u.counit(x) * u.counit(y));
        // m (S (x) id) Delta = eps
        AlgElem lhs;
        const TensorElem dx = u.coproduct(x);
        for (const auto& [key, c] : dx.terms()) {
            lhs += c * u.multiply(u.antipode(u.mono(key.first)), u.mono(key.second));
        }
        CHECK(lhs == u.scalar(u.counit(x)));
    }
    CHECK(u.omega(u.omega(u.E())) == u.E());
    CHECK(u.omega(u.K()) == u.K_inv());
}

TEST_CASE("Casimir is central and has both normal forms") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        const AlgElem x = u.casimir();
        CHECK(x == u.casimir_via_fe());
        for (const AlgElem& g : {u.E(), u.F(), u.K()}) CHECK(u.multiply(x, g) == u.multiply(g, x));
    }
}

TEST_CASE("adjoint action: weights, K powers, and module axioms") {
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        for (const auto& m : u.basis()) CHECK(u.ad_K(u.mono(m)) == f.q_pow(m.degree()) * u.mono(m));
        for (int i = 1; i <= l; ++i) CHECK(u.ad_casimir(u.K_pow(i)) == u.ad_casimir_on_K_powers(i));
        AdjointRep ad(u);
        CHECK(ad.module().total_dim() == u.dimension());
        CHECK_FALSE(ad.module().check_invariants().has_value());
        CHECK(ad.module().weights().front() == -2 * (l - 1));
        CHECK(ad.module().weights().back() == 2 * (l - 1));
    }
}

TEST_CASE("Casimir minimal polynomial and block idempotents") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        SmallQuantumGroup u(f);
        const CasimirBlocks cb = casimir_blocks(u);
        CHECK(cb.minimal_polynomial.degree() == l);
        REQUIRE(cb.blocks.size() == static_cast<std::size_t>((l + 1) / 2));
        AlgElem total;
        for (std::size_t i = 0; i < cb.blocks.size(); ++i) {
            CHECK(cb.blocks[i].root_multiplicity == (cb.blocks[i].is_steinberg() ? 1 : 2));
            const AlgElem& e = cb.idempotents[i];
            CHECK(u.multiply(e, e) == e);
            for (std::size_t k = 0; k < i; ++k) CHECK(u.multiply(e, cb.idempotents[k]).is_zero());
            total += e;
        }
        CHECK(total == u.one());
        // The roots b_j are pairwise distinct.
        for (std::size_t i = 0; i < cb.blocks.size(); ++i) {
            for (std::size_t k = 0; k < i; ++k) CHECK_FALSE(cb.blocks[i].b == cb.blocks[k].b);
        }
        AdjointRep ad(u);
        for (const auto& b : cb.blocks) {
            const auto pr = block_projector(ad, cb, b.j);
            std::size_t r = 0;
            for (const auto& [w, blk] : pr.blocks()) r += uqa::linalg::rank(blk);
            CHECK(r == static_cast<std::size_t>(b.is_steinberg() ? l * l : 2 * l * l));
            CHECK(uqa::modcat::is_intertwiner(pr, ad.module(), ad.module()));
        }
    }
}
