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
#include "uqadjoint/decomp.hpp"
#include "uqadjoint/error.hpp"

using namespace uqa::decomp;
using uqa::modcat::direct_sum;
using uqa::modcat::model;
using uqa::modcat::projective;
using uqa::modcat::projective_label;
using uqa::modcat::simple;
using uqa::modcat::simple_label;
using uqa::testing::scramble;

namespace {

GradedModule sum_of(std::initializer_list<GradedModule> parts) {
    std::vector<GradedModule> v(parts);
    return direct_sum(v);
}

std::size_t multiset_dim(const Multiset& ms, int l) {
    std::size_t d = 0;
    for (const auto& [lab, k] : ms) d += k * uqa::modcat::label_dimension(lab, l);
    return d;
}

Multiset composition_of(const Multiset& ms, const CyclotomicField& f) {
    Multiset out;
    for (const auto& [lab, k] : ms) {
        for (const auto& [s, c] : uqa::modcat::composition_multiplicities(model(f, lab))) out[s] += k * c;
    }
    return out;
}

// Independent statement of the multiplicity table, written from the closed form.
Multiset table(int l) {
    Multiset t;
    t[projective_label(l - 1)] = l;
    for (int i = 0; i <= (l - 3) / 2; ++i) {
        t[projective_label(2 * i)] = (l + 1) / 2 + i;
        t[simple_label(2 * i)] = l - 1 - 2 * i;
        t[simple_label(2 * l - 2 - 2 * i)] = (l - 1) / 2 - i;
        t[simple_label(-2 - 2 * i)] = (l - 1) / 2 - i;
    }
    return t;
}

}  // namespace

TEST_CASE("endomorphism algebras and radicals") {
    CyclotomicField f(3);
    const GradedModule l0 = simple(f, 0);
    CHECK(endomorphism_algebra(l0).dim() == 1);
    CHECK(radical(endomorphism_algebra(l0)).empty());
    const GradedModule ll = sum_of({l0, l0});
    CHECK(endomorphism_algebra(ll).dim() == 4);
    CHECK(radical(endomorphism_algebra(ll)).empty());
    const GradedModule p0 = projective(f, 0);
    const EndAlgebra ep = endomorphism_algebra(p0);
    CHECK(ep.dim() == 2);
    CHECK(radical(ep).size() == 1);
    // L(0) + P(0): End has dimension 1 + 2 + 1 + 1 (L(0) is the head and socle of P(0)).
    const EndAlgebra mixed = endomorphism_algebra(sum_of({l0, p0}));
    CHECK(mixed.dim() == 5);
    CHECK(mixed.dim() - radical(mixed).size() == 2);
}

TEST_CASE("indecomposability") {
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        for (int lam = 0; lam <= l - 1; lam += 2) {
            CHECK(is_indecomposable(projective(f, lam)));
            CHECK(is_indecomposable(simple(f, lam)));
        }
        CHECK_FALSE(is_indecomposable(sum_of({simple(f, 0), simple(f, 0)})));
        CHECK_FALSE(is_indecomposable(sum_of({simple(f, 2), projective(f, 0)})));
    }
}

TEST_CASE("Fitting splits") {
    CyclotomicField f(3);
    const GradedModule l0 = simple(f, 0);
    const GradedModule m = sum_of({l0, projective(f, 0)});
    CHECK_FALSE(fitting_split(m, GradedMap::identity(m)).has_value());
    CHECK_FALSE(fitting_split(m, GradedMap::zero(m, m)).has_value());
    // The idempotent onto P(0) along L(0).
    GradedMap e = GradedMap::identity(m);
    Matrix b0 = e.block(0);
    b0(0, 0) = f.zero();
    e.set_block(0, b0);
    REQUIRE(uqa::modcat::is_intertwiner(e, m, m));
    const auto s = fitting_split(m, e);
    REQUIRE(s.has_value());
    CHECK(s->kernel_part.module.total_dim() == 1);
    CHECK(s->image_part.module.total_dim() == 6);
    // The radical of End(P(0)) is nilpotent: no split.
    const GradedModule p0 = projective(f, 0);
    const auto rad = radical(endomorphism_algebra(p0));
    REQUIRE(rad.size() == 1);
    CHECK_FALSE(fitting_split(p0, rad[0]).has_value());
}

TEST_CASE("decompositions of small sums") {
    CyclotomicField f(3);
    const auto cands = adjoint_candidates(f);
    const GradedModule m = sum_of({simple(f, 0), projective(f, 0)});
    const Decomposition d = decompose(m, cands);
    CHECK(d.summands == Multiset{{projective_label(0), 1}, {simple_label(0), 1}});
    CHECK(verify_certificates(d, m));

    // Modules outside the candidate family are rejected.
    CyclotomicField f5(5);
    const auto c5 = adjoint_candidates(f5);
    CHECK_THROWS_AS(decompose(simple(f5, 1), c5), uqa::Error);
}

TEST_CASE("candidate family") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        const auto c = adjoint_candidates(f);
        // (l+1)/2 projectives and 3(l-1)/2 simples other than L(l-1).
        CHECK(c.size() == static_cast<std::size_t>((l + 1) / 2 + 3 * (l - 1) / 2));
        bool seen_simple = false;
        for (const auto& x : c) {
            if (x.label.kind == ModuleLabel::Kind::Simple) seen_simple = true;
            else CHECK_FALSE(seen_simple);
            CHECK(x.model.check_invariants() == std::nullopt);
        }
    }
}

TEST_CASE("decomposition JSON") {
    const Multiset ms{{simple_label(-2), 1}, {projective_label(2), 3}, {simple_label(0), 2}, {projective_label(0), 2}};
    const std::string js = decomposition_json(ms);
    CHECK(js ==
          R"([{"kind":"P","multiplicity":2,"weight":0},{"kind":"P","multiplicity":3,"weight":2},)"
          R"({"kind":"L","multiplicity":1,"weight":-2},{"kind":"L","multiplicity":2,"weight":0}])");
    CHECK(decomposition_from_json(js) == ms);
    CHECK_THROWS_AS(decomposition_from_json(R"([{"kind":"Q","weight":0,"multiplicity":1}])"), uqa::Error);
}

TEST_CASE("random round trips through decompose") {
    std::mt19937_64 rng(20261017);
    int cases = 0;
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        const auto cands = adjoint_candidates(f);
        const int n = l == 3 ? 90 : l == 5 ? 70 : 50;
        const std::size_t cap = 60;
        for (int it = 0; it < n; ++it) {
            Multiset want;
            std::vector<GradedModule> parts;
            std::size_t dim = 0;
            for (;;) {
                const auto& c = cands[rng() % cands.size()];
                if (dim + c.model.total_dim() > cap) break;
                dim += c.model.total_dim();
                want[c.label] += 1;
                parts.push_back(c.model);
            }
            if (parts.empty()) continue;
            std::shuffle(parts.begin(), parts.end(), rng);
            const GradedModule m = scramble(direct_sum(parts), rng);
            const Decomposition d = decompose(m, cands);
            CHECK(d.summands == want);
            if (it % 10 == 0) CHECK(verify_certificates(d, m));
            ++cases;
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("steinberg block") {
    CyclotomicField f(3);
    AdjointContext ctx(f);
    const Decomposition d = decompose_block(ctx, -1);
    CHECK(d.summands == Multiset{{projective_label(0), 1}, {projective_label(2), 1}});
    CHECK(ctx.block(-1).sub.module.total_dim() == 9);
}

TEST_CASE("block filtrations") {
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        AdjointContext ctx(f);
        for (const auto& b : ctx.casimir_blocks().blocks) {
            const BlockFiltration bf = casimir_block_filtration(ctx, b.j);
            CHECK(bf.quotient_isomorphic);
            if (b.is_steinberg()) {
                CHECK(bf.block.module.total_dim() == static_cast<std::size_t>(l * l));
                continue;
            }
            const std::size_t n = (b.J + 1) * (b.J + 1) + (b.J_prime + 1) * (b.J_prime + 1);
            CHECK(bf.block.module.total_dim() == static_cast<std::size_t>(2 * l * l));
            CHECK(bf.n.module.total_dim() == n);
            CHECK(bf.block.module.total_dim() - bf.m.module.total_dim() == n);
            CHECK(bf.m.module.total_dim() - n == static_cast<std::size_t>(4 * (b.J + 1) * (b.J_prime + 1)));
        }
    }
}

TEST_CASE("N_j decompositions at l = 5") {
    CyclotomicField f(5);
    AdjointContext ctx(f);
    const Decomposition d1 = decompose_N_j(ctx, 1);
    CHECK(d1.summands == Multiset{{simple_label(0), 2}, {simple_label(2), 2}, {projective_label(4), 1}});
    CHECK(multiset_dim(d1.summands, 5) == 13);
    const Decomposition d0 = decompose_N_j(ctx, 0);
    CHECK(d0.summands == Multiset{{simple_label(0), 2}, {projective_label(2), 1}, {projective_label(4), 1}});
    CHECK(multiset_dim(d0.summands, 5) == 17);
}

TEST_CASE("adjoint decomposition at l = 3") {
    CyclotomicField f(3);
    AdjointContext ctx(f);
    const Decomposition d = decompose_adjoint(ctx);
    CHECK(d.summands == table(3));
    CHECK(multiset_dim(d.summands, 3) == 27);
    CHECK(verify_certificates(d, ctx.module()));
    // Non-simple summands are projective, and the composition factors add up.
    for (const auto& [lab, k] : d.summands) {
        if (lab.kind == ModuleLabel::Kind::Simple) CHECK(endomorphism_algebra(model(f, lab)).dim() == 1);
    }
    CHECK(composition_of(d.summands, f) == uqa::modcat::composition_multiplicities(ctx.module()));
}
