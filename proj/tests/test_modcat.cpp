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
#include "uqadjoint/error.hpp"
#include "uqadjoint/modcat.hpp"

using namespace uqa::modcat;
using uqa::testing::random_invertible;

namespace {

// Dimension of Hom(M, N) from the full dense system, one unknown per matrix
// entry of every weight block. Independent of the generator-based solver.
std::size_t brute_hom_dim(const GradedModule& m, const GradedModule& n) {
    const CyclotomicField& f = m.field();
    std::map<int, std::size_t> off;
    std::size_t vars = 0;
    for (const auto& [w, d] : m.weight_dims()) {
        off[w] = vars;
        vars += d * n.dim(w);
    }
    if (vars == 0) return 0;
    auto var = [&](int w, std::size_t r, std::size_t c) { return off.at(w) + r * m.dim(w) + c; };
    std::vector<std::vector<Cyc>> rows;
    for (const auto& [w, d] : m.weight_dims()) {
        for (int step : {2, -2}) {
            const int t = w + step;
            const Matrix am = step == 2 ? m.e(w) : m.f(w);
            const Matrix an = step == 2 ? n.e(w) : n.f(w);
            // (phi_t * am - an * phi_w)(r, c) = 0
            for (std::size_t r = 0; r < n.dim(t); ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    std::vector<Cyc> row(vars);
                    for (std::size_t k = 0; k < m.dim(t); ++k) row[var(t, r, k)] += am(k, c);
                    for (std::size_t k = 0; k < n.dim(w); ++k) row[var(w, k, c)] -= an(r, k);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    Matrix sys(rows.size(), vars);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < vars; ++c) sys(r, c) = rows[r][c];
    }
    return vars - uqa::linalg::rank(sys);
}

// Random per-weight change of basis of a module.
GradedModule conjugate(const GradedModule& m, std::mt19937_64& rng) {
    const CyclotomicField& f = m.field();
    std::map<int, Matrix> g, gi;
    for (const auto& [w, d] : m.weight_dims()) {
        g[w] = random_invertible(f, rng, d);
        gi[w] = *uqa::linalg::inverse(g[w]);
    }
    GradedModule out(f);
    for (const auto& [w, d] : m.weight_dims()) out.set_dim(w, d);
    for (const auto& [w, d] : m.weight_dims()) {
        if (m.dim(w + 2)) out.set_e(w, g[w + 2] * m.e(w) * gi[w]);
        if (m.dim(w - 2)) out.set_f(w, g[w - 2] * m.f(w) * gi[w]);
    }
    return out;
}

bool casimir_is_scalar(const GradedModule& m, const Cyc& b) {
    for (const auto& [w, d] : m.weight_dims()) {
        if (!(m.casimir(w) == b * Matrix::identity(m.field(), d))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Verma modules") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        for (int lam = -l; lam <= 2 * l; ++lam) {
            for (Direction dir : {Direction::Lowering, Direction::Raising}) {
                const GradedModule m = verma(f, lam, dir);
                CHECK(m.total_dim() == static_cast<std::size_t>(l));
                CHECK_FALSE(m.check_invariants().has_value());
                // Top weight lam for M-, bottom weight lam for M+.
                CHECK(casimir_is_scalar(m, f.casimir_root(dir == Direction::Lowering ? lam : lam - 2)));
            }
            const GradedModule low = verma(f, lam, Direction::Lowering);
            CHECK(singular_vectors(low, lam, Side::Upper).cols() == 1);
            CHECK(verma(f, lam, Direction::Raising).weight_dims().begin()->first == lam);
        }
    }
    CyclotomicField f3(3);
    const GradedModule m0 = verma(f3, 0, Direction::Lowering);
    CHECK(m0.e(-2).is_zero());
    CHECK(singular_vectors(m0, -2, Side::Upper).cols() == 1);
}

TEST_CASE("simple modules") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        CHECK(simple(f, l - 1).total_dim() == static_cast<std::size_t>(l));
        const GradedModule one = simple(f, 0);
        CHECK(one.total_dim() == 1);
        CHECK(one.e(0).empty());
        for (int lam = 1 - l; lam <= 2 * l - 2; ++lam) {
            const GradedModule s = simple(f, lam);
            CHECK_FALSE(s.check_invariants().has_value());
            CHECK(s.total_dim() == label_dimension(simple_label(lam), l));
            CHECK(casimir_is_scalar(s, f.casimir_root(lam)));
            // Every weight vector generates everything.
            for (const auto& [w, d] : s.weight_dims()) {
                std::map<int, Matrix> seed{{w, Matrix::identity(f, 1)}};
                CHECK(generated_submodule(s, seed).module.total_dim() == s.total_dim());
            }
            CHECK(brute_hom_dim(s, s) == 1);
        }
        for (int j = 0; j <= (l - 3) / 2; ++j) {
            CHECK(simple(f, j).total_dim() + simple(f, l - 2 - j).total_dim() == static_cast<std::size_t>(l));
        }
    }
    CyclotomicField f(3);
    const GradedModule s4 = simple(f, 4);
    CHECK(s4.weights() == std::vector<int>{2, 4});
}

TEST_CASE("projective covers") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        const GradedModule st = projective(f, l - 1);
        CHECK(is_isomorphic(st, simple(f, l - 1)).isomorphic);
        for (int lam = 0; lam < l - 1; ++lam) {
            const GradedModule p = projective(f, lam);
            CHECK(p.total_dim() == static_cast<std::size_t>(2 * l));
            CHECK_FALSE(p.check_invariants().has_value());
            CHECK_FALSE(casimir_is_scalar(p, f.casimir_root(lam)));
            const Multiset expect{{simple_label(lam), 2}, {simple_label(-2 - lam), 1}, {simple_label(2 * l - 2 - lam), 1}};
            CHECK(composition_multiplicities(p) == expect);
            // Shifting by 2l moves every weight by 2l.
            const GradedModule p2 = projective(f, lam + 2 * l);
            WeightDims shifted;
            for (const auto& [w, d] : p.weight_dims()) shifted[w + 2 * l] = d;
            CHECK(graded_character(p2) == shifted);
            CHECK(hom_space(simple(f, lam), p).size() == 1);
        }
    }
    CyclotomicField f(3);
    CHECK(hom_space(projective(f, 0), projective(f, 0)).size() == 2);
    CHECK(brute_hom_dim(projective(f, 0), projective(f, 0)) == 2);
}

TEST_CASE("hom spaces agree with the dense oracle") {
    std::mt19937_64 rng(41);
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        std::vector<GradedModule> zoo;
        for (int lam = 0; lam < l; lam += 2) {
            zoo.push_back(simple(f, lam));
            zoo.push_back(projective(f, lam));
            zoo.push_back(simple(f, -2 - lam));
            zoo.push_back(simple(f, 2 * l - 2 - lam));
        }
        zoo.push_back(verma(f, 0, Direction::Lowering));
        zoo.push_back(verma(f, 2 * l - 2, Direction::Lowering));
        std::uniform_int_distribution<std::size_t> pick(0, zoo.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const GradedModule parts_a[] = {zoo[pick(rng)], zoo[pick(rng)]};
            const GradedModule a = conjugate(direct_sum(parts_a), rng);
            const GradedModule& b = zoo[pick(rng)];
            const auto h = hom_space(a, b);
            CHECK(h.size() == brute_hom_dim(a, b));
            for (const auto& phi : h) CHECK(is_intertwiner(phi, a, b));
            const auto h2 = hom_space(b, a);
            CHECK(h2.size() == brute_hom_dim(b, a));
            for (const auto& phi : h2) CHECK(is_intertwiner(phi, b, a));
        }
        for (std::size_t i = 0; i < zoo.size(); ++i) {
            for (std::size_t k = 0; k < zoo.size(); ++k) {
                CHECK(hom_space(zoo[i], zoo[k]).size() == brute_hom_dim(zoo[i], zoo[k]));
            }
        }
    }
}

TEST_CASE("Schur and isomorphism tests") {
    CyclotomicField f(5);
    for (int a = -4; a <= 8; a += 2) {
        for (int b = -4; b <= 8; b += 2) {
            CHECK(hom_space(simple(f, a), simple(f, b)).size() == (a == b ? 1U : 0U));
        }
    }
    std::mt19937_64 rng(42);
    const GradedModule parts[] = {projective(f, 2), simple(f, 0), simple(f, 0)};
    const GradedModule m = direct_sum(parts);
    const auto iso = is_isomorphic(m, conjugate(m, rng));
    CHECK(iso.isomorphic);
    CHECK(iso.witness->is_invertible());
    CHECK_FALSE(is_isomorphic(simple(f, 0), simple(f, 2)).isomorphic);
    // Same character, not isomorphic: P(0) against its composition factors.
    const GradedModule factors[] = {simple(f, 0), simple(f, 0), simple(f, -2), simple(f, 8)};
    const GradedModule semi = direct_sum(factors);
    CHECK(graded_character(semi) == graded_character(projective(f, 0)));
    CHECK_FALSE(is_isomorphic(semi, projective(f, 0)).isomorphic);
}

TEST_CASE("duality") {
    std::mt19937_64 rng(43);
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        for (int lam = 1 - l; lam <= 2 * l - 2; ++lam) {
            const GradedModule s = simple(f, lam);
            const GradedModule ds = dual(s);
            CHECK_FALSE(ds.check_invariants().has_value());
            CHECK(is_isomorphic(ds, s).isomorphic);
        }
        for (int lam = 0; lam < l; lam += 2) {
            const GradedModule p = conjugate(projective(f, lam), rng);
            const GradedModule dp = dual(p);
            CHECK_FALSE(dp.check_invariants().has_value());
            CHECK(graded_character(dp) == graded_character(p));
            CHECK(is_isomorphic(dual(dp), p).isomorphic);
            CHECK(is_isomorphic(dp, p).isomorphic);
        }
        // D exchanges submodules and quotients of a Verma module.
        const GradedModule v = verma(f, 0, Direction::Lowering);
        CHECK(singular_vectors(v, 0, Side::Upper).cols() == 1);
        CHECK(singular_vectors(dual(v), 0, Side::Upper).cols() == 1);
        CHECK(hom_space(simple(f, 0), v).empty());
        CHECK(hom_space(simple(f, 0), dual(v)).size() == 1);
    }
}

TEST_CASE("composition multiplicities") {
    CyclotomicField f(5);
    CHECK(composition_multiplicities(simple(f, 3)) == Multiset{{simple_label(3), 1}});
    CHECK(composition_multiplicities(projective(f, 0)) ==
          Multiset{{simple_label(0), 2}, {simple_label(-2), 1}, {simple_label(8), 1}});
    WeightDims bad{{0, 1}, {-2, 0}, {2, 0}};
    bad[4] = 1;  // L(4) needs weight 2
    CHECK_THROWS_AS(composition_multiplicities(bad, 5), uqa::Error);
}

TEST_CASE("labels") {
    CHECK(canonical(simple_label(2), 3) == projective_label(2));
    CHECK(canonical(simple_label(0), 3) == simple_label(0));
    CHECK(projective_label(4) < simple_label(-8));
    CHECK(label_dimension(projective_label(4), 5) == 5);
    CHECK(label_dimension(projective_label(0), 5) == 10);
    CHECK(label_dimension(simple_label(-2), 5) == 4);
    CHECK(to_string(projective_label(-2)) == "P(-2)");
}

TEST_CASE("module JSON round trip") {
    std::mt19937_64 rng(44);
    CyclotomicField f(5);
    const GradedModule m = conjugate(projective(f, 2), rng);
    const std::string s = module_to_json(m);
    const GradedModule back = module_from_json(f, s);
    CHECK(module_to_json(back) == s);
    CHECK(back.weight_dims() == m.weight_dims());
    for (const auto& [w, d] : m.weight_dims()) {
        CHECK(back.e(w) == m.e(w));
        CHECK(back.f(w) == m.f(w));
    }
    CHECK_THROWS_AS(module_from_json(f, "{\"weights\": [0]}"), uqa::Error);
}
