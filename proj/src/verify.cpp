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

#include "uqadjoint/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

#include "uqadjoint/error.hpp"

namespace uqa::verify {

using decomp::Decomposition;
using modcat::GradedMap;
using modcat::GradedModule;
using modcat::ModuleLabel;
using modcat::projective_label;
using modcat::simple_label;
using nlohmann::json;
using smallqg::AlgElem;
using smallqg::Monomial;
using smallqg::SmallQuantumGroup;

namespace {

constexpr int kDefaultMaxL = 7;
constexpr int kLargeMaxL = 9;
constexpr int kFirstPrecision = 64;
constexpr int kLastPrecision = 4096;
constexpr int kHopfSampleSize = 12;
constexpr unsigned kSampleSeed = 20260101;

int half(int l) { return (l - 3) / 2; }

void require_block(const CyclotomicField& f, int j, bool allow_steinberg) {
    if (j < (allow_steinberg ? -1 : 0) || j > half(f.l())) {
        fail(ErrorCode::InvalidArgument, "block label " + std::to_string(j) + " outside " +
                                             (allow_steinberg ? "{-1, ..., " : "{0, ..., ") +
                                             std::to_string(half(f.l())) + "}");
    }
}

void require_k(const CyclotomicField& f, int k) {
    if (k < 0 || k % 2 != 0 || k >= f.l() - 1) {
        fail(ErrorCode::InvalidArgument, "k must be even with 0 <= k < l-1, got " + std::to_string(k));
    }
}

// (q^i - q^-i)^2
Cyc qdiff_sq(const CyclotomicField& f, long i) {
    const Cyc d = f.q_pow(i) - f.q_pow(-i);
    return d * d;
}

Cyc conjugate(const Cyc& a) {
    if (!a.field()) return a;
    const CyclotomicField& f = *a.field();
    Cyc out = f.zero();
    const auto c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) out += f.zeta_pow(-static_cast<long>(i)) * c[i];
    }
    return out;
}

std::size_t block_position(const smallqg::CasimirBlocks& cb, int j) {
    for (std::size_t i = 0; i < cb.blocks.size(); ++i) {
        if (cb.blocks[i].j == j) return i;
    }
    fail(ErrorCode::InvalidArgument, "no Casimir block with label " + std::to_string(j));
}

// Matrix of ad(X) on span(basis) in that basis (weight 0 elements).
Matrix action_matrix(const AdjointContext& ctx, const std::vector<AlgElem>& basis) {
    const SmallQuantumGroup& u = ctx.algebra();
    const std::size_t n = basis.size();
    const std::size_t d0 = ctx.module().dim(0);
    Matrix b(d0, n);
    Matrix img(d0, n);
    for (std::size_t i = 0; i < n; ++i) {
        b.set_col(i, ctx.ad().coordinates(basis[i], 0));
        img.set_col(i, ctx.ad().coordinates(u.ad_casimir(basis[i]), 0));
    }
    if (linalg::rank(b) != n) fail(ErrorCode::Internal, "weight-zero basis vectors are dependent");
    auto c = linalg::solve(b, img);
    if (!c) fail(ErrorCode::Internal, "span of the weight-zero basis is not ad(X)-stable");
    return *c;
}

Cyc signed_one(const CyclotomicField& f, long i) { return i % 2 == 0 ? f.one() : -f.one(); }

json labels_json(const Multiset& ms) { return multiset_to_json(ms); }

Multiset sum(const Multiset& a, const Multiset& b) {
    Multiset out = a;
    for (const auto& [k, v] : b) out[k] += v;
    return out;
}

// Expected summands of N_j.
Multiset expected_N_j(int l, int j) {
    Multiset out;
    for (int i = 0; i <= j; ++i) out[simple_label(2 * i)] += 2;
    for (int i = j + 1; i <= half(l); ++i) out[projective_label(2 * i)] += 1;
    out[projective_label(l - 1)] += 1;
    return out;
}

Multiset expected_steinberg(int l) {
    Multiset out;
    for (int i = 0; i <= (l - 1) / 2; ++i) out[projective_label(2 * i)] = 1;
    return out;
}

json error_json(const Error& e) { return {{"error", static_cast<int>(e.code())}, {"message", e.what()}}; }

// ---------------------------------------------------------------------------
// Individual checks. Each fills computed / expected / pass of a record.

using Check = void (*)(const AdjointContext&, const VerifyOptions&, CheckRecord&, Report&);

void algebra_axioms(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const SmallQuantumGroup& u = ctx.algebra();
    const CyclotomicField& f = ctx.field();
    const int l = f.l();
    json failures = json::array();
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    const std::size_t cube = static_cast<std::size_t>(l) * l * l;
    expect(u.dimension() == cube, "dim u");
    const AlgElem E = u.E(), F = u.F(), K = u.K(), Ki = u.K_inv();
    expect(u.multiply(K, E) == f.q_pow(2) * u.multiply(E, K), "KE = q^2 EK");
    expect(u.multiply(K, F) == f.q_pow(-2) * u.multiply(F, K), "KF = q^-2 FK");
    expect(u.multiply(E, F) - u.multiply(F, E) == (f.q() - f.q_inv()).inv() * (K - Ki), "[E,F]");
    expect(u.power(E, l).is_zero(), "E^l = 0");
    expect(u.power(F, l).is_zero(), "F^l = 0");
    expect(u.power(K, l) == u.one(), "K^l = 1");

    std::mt19937_64 rng(kSampleSeed);
    std::vector<AlgElem> sample{E, F, K, Ki};
    while (sample.size() < kHopfSampleSize) sample.push_back(u.mono(u.basis()[rng() % u.dimension()]));

    auto antipode_identity = [&](const AlgElem& x, bool left) {
        AlgElem acc;
        const smallqg::TensorElem dx = u.coproduct(x);
        for (const auto& [key, c] : dx.terms()) {
            const AlgElem a = u.mono(key.first), b = u.mono(key.second);
            acc += c * (left ? u.multiply(u.antipode(a), b) : u.multiply(a, u.antipode(b)));
        }
        return acc == u.counit(x) * u.one();
    };
    auto counit_identity = [&](const AlgElem& x) {
        AlgElem left, right;
        const smallqg::TensorElem dx = u.coproduct(x);
        for (const auto& [key, c] : dx.terms()) {
            left += (c * u.counit(u.mono(key.first))) * u.mono(key.second);
            right += (c * u.counit(u.mono(key.second))) * u.mono(key.first);
        }
        return left == x && right == x;
    };
    for (const auto& x : sample) {
        expect(antipode_identity(x, true), "m(S x id)Delta on " + x.to_string());
        expect(antipode_identity(x, false), "m(id x S)Delta on " + x.to_string());
        expect(counit_identity(x), "counit on " + x.to_string());
        for (const auto& y : sample) {
            const AlgElem xy = u.multiply(x, y);
            if (!(u.coproduct(xy) == u.tensor_multiply(u.coproduct(x), u.coproduct(y)))) {
                failures.push_back("Delta(xy) for " + x.to_string() + ", " + y.to_string());
            }
            expect(u.antipode(xy) == u.multiply(u.antipode(y), u.antipode(x)), "S anti-multiplicative");
            expect(u.counit(xy) == u.counit(x) * u.counit(y), "counit multiplicative");
            expect(u.omega(xy) == u.multiply(u.omega(x), u.omega(y)), "omega multiplicative");
        }
    }
    rec.expected = {{"dimension", cube}, {"failures", json::array()}};
    rec.computed = {{"dimension", u.dimension()}, {"failures", failures}};
    rec.witness = {{"sample_size", sample.size()}, {"seed", kSampleSeed}};
    rec.pass = u.dimension() == cube && failures.empty();
}

void module_invariants(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const CyclotomicField& f = ctx.field();
    json failures = json::array();
    std::size_t count = 0;
    auto check = [&](const GradedModule& m, const std::string& name) {
        ++count;
        if (auto bad = m.check_invariants()) failures.push_back(name + ": " + *bad);
    };
    check(ctx.module(), "ad");
    check(modcat::dual(ctx.module()), "D(ad)");
    for (const auto& c : decomp::adjoint_candidates(f)) {
        check(c.model, modcat::to_string(c.label));
        check(modcat::dual(c.model), "D(" + modcat::to_string(c.label) + ")");
    }
    for (int lam = 0; lam < f.l(); ++lam) {
        check(modcat::verma(f, lam, modcat::Direction::Lowering), "M-(" + std::to_string(lam) + ")");
        check(modcat::verma(f, lam, modcat::Direction::Raising), "M+(" + std::to_string(lam) + ")");
    }
    for (const auto& b : ctx.casimir_blocks().blocks) check(ctx.block(b.j).sub.module, "ad_" + std::to_string(b.j));
    rec.expected = json::array();
    rec.computed = failures;
    rec.witness = {{"modules_checked", count}};
    rec.pass = failures.empty();
}

void casimir(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const SmallQuantumGroup& u = ctx.algebra();
    const CyclotomicField& f = ctx.field();
    const AlgElem x = u.casimir();
    AlgElem p = u.one();
    for (int j = 0; j < f.l(); ++j) p = u.multiply(p, x - u.scalar(f.casimir_root(j)));
    std::size_t noncommuting = 0;
    for (const auto& m : u.basis()) {
        const AlgElem y = u.mono(m);
        if (!(u.multiply(x, y) == u.multiply(y, x))) ++noncommuting;
    }
    const bool both_forms = x == u.casimir_via_fe();
    json mult = json::object();
    bool mult_ok = true;
    for (const auto& b : ctx.casimir_blocks().blocks) {
        mult[std::to_string(b.j)] = b.root_multiplicity;
        mult_ok = mult_ok && b.root_multiplicity == (b.is_steinberg() ? 1 : 2);
    }
    const int deg = ctx.casimir_blocks().minimal_polynomial.degree();
    rec.expected = {{"product_vanishes", true},
                    {"noncommuting_monomials", 0},
                    {"both_normal_forms_agree", true},
                    {"minimal_polynomial_degree", f.l()}};
    rec.computed = {{"product_vanishes", p.is_zero()},
                    {"noncommuting_monomials", noncommuting},
                    {"both_normal_forms_agree", both_forms},
                    {"minimal_polynomial_degree", deg},
                    {"root_multiplicities", mult}};
    rec.pass = p.is_zero() && noncommuting == 0 && both_forms && deg == f.l() && mult_ok;
}

void ad_dimensions(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const int l = ctx.field().l();
    json bad = json::array();
    for (int m = 1 - l; m <= l - 1; ++m) {
        const std::size_t a = static_cast<std::size_t>(std::abs(m));
        const std::size_t want = static_cast<std::size_t>(l) * (l - a);
        if (ctx.module().dim(2 * m) != want) bad.push_back("ad^" + std::to_string(2 * m));
        for (const auto& b : ctx.casimir_blocks().blocks) {
            const std::size_t wj = (b.is_steinberg() ? 1 : 2) * (l - a);
            if (ctx.block(b.j).sub.module.dim(2 * m) != wj) {
                bad.push_back("ad_" + std::to_string(b.j) + "^" + std::to_string(2 * m));
            }
        }
    }
    json n0 = json::object();
    for (const auto& b : ctx.casimir_blocks().blocks) {
        const auto filt = decomp::casimir_block_filtration(ctx, b.j, false);
        n0[std::to_string(b.j)] = filt.n.module.dim(0);
        if (filt.n.module.dim(0) != static_cast<std::size_t>(l)) bad.push_back("N_" + std::to_string(b.j) + "^0");
        if (filt.m.module.dim(0) != filt.n.module.dim(0)) bad.push_back("M_" + std::to_string(b.j) + "^0 != N^0");
    }
    rec.expected = {{"mismatches", json::array()}};
    rec.computed = {{"mismatches", bad}, {"dim_N_j^0", n0}};
    rec.pass = bad.empty();
}

void block_dimensions(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const int l = ctx.field().l();
    json expected = json::object(), computed = json::object();
    bool ok = true;
    for (const auto& b : ctx.casimir_blocks().blocks) {
        const auto filt = decomp::casimir_block_filtration(ctx, b.j, true);
        const std::size_t dj = filt.block.module.total_dim();
        const std::size_t dm = filt.m.module.total_dim();
        const std::size_t dn = filt.n.module.total_dim();
        json e, c;
        if (b.is_steinberg()) {
            e = {{"ad_j", l * l}};
            c = {{"ad_j", dj}};
            ok = ok && dj == static_cast<std::size_t>(l * l);
        } else {
            const std::size_t n = (b.J + 1) * (b.J + 1) + (b.J_prime + 1) * (b.J_prime + 1);
            const std::size_t mid = 4 * (b.J + 1) * (b.J_prime + 1);
            e = {{"ad_j", 2 * l * l}, {"N_j", n}, {"ad_j/M_j", n}, {"M_j/N_j", mid}, {"ad_j/M_j = N_j", true}};
            c = {{"ad_j", dj}, {"N_j", dn}, {"ad_j/M_j", dj - dm}, {"M_j/N_j", dm - dn},
                 {"ad_j/M_j = N_j", filt.quotient_isomorphic}};
            ok = ok && e == c;
        }
        expected[std::to_string(b.j)] = e;
        computed[std::to_string(b.j)] = c;
    }
    rec.expected = expected;
    rec.computed = computed;
    rec.pass = ok;
}

void matrix_A(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const CyclotomicField& f = ctx.field();
    json mism = json::array();
    for (int j = -1; j <= half(f.l()); ++j) {
        const Matrix a = build_A(f, j).entries;
        if (!(a == machinery_A(ctx, j))) mism.push_back(j);
        for (int i = 0; i < f.l(); ++i) {
            if (!(a(i, i) == f.casimir_root(2 * i))) mism.push_back("diagonal of A(" + std::to_string(j) + ")");
        }
    }
    rec.expected = {{"mismatched_blocks", json::array()}};
    rec.computed = {{"mismatched_blocks", mism}};
    rec.witness = {{"A(-1)", matrix_to_json(f, build_A(f, -1).entries)}};
    rec.pass = mism.empty();
}

void matrix_Aprime(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const CyclotomicField& f = ctx.field();
    json mism = json::array();
    for (int j = 0; j <= half(f.l()); ++j) {
        if (!(build_Aprime(f, j).entries == machinery_Aprime(ctx, j))) mism.push_back(j);
    }
    rec.expected = {{"mismatched_blocks", json::array()}};
    rec.computed = {{"mismatched_blocks", mism}};
    rec.pass = mism.empty();
}

void determinants(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const CyclotomicField& f = ctx.field();
    const int l = f.l();
    json expected = json::object(), computed = json::object();
    bool ok = true;
    for (int k = 0; k < l - 1; k += 2) {
        std::vector<int> want;
        for (int j = 0; j <= half(l); ++j) {
            if (k <= 2 * j) want.push_back(j);
        }
        const auto got = vanishing_blocks(f, k);
        bool degrees = true;
        for (int j = -1; j <= half(l); ++j) {
            const Determinant d = det_d(f, j, k);
            degrees = degrees && d.even && d.in_b.degree() == l - 1 - k;
        }
        const std::string key = std::to_string(k);
        expected[key] = {{"vanishing_j", want}, {"count", (l - 1 - k) / 2}, {"even_of_full_degree", true}};
        computed[key] = {{"vanishing_j", got}, {"count", got.size()}, {"even_of_full_degree", degrees}};
        ok = ok && expected[key] == computed[key];
    }
    rec.expected = expected;
    rec.computed = computed;
    rec.pass = ok;
}

void coranks(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const CyclotomicField& f = ctx.field();
    const int l = f.l();
    json expected = json::object(), computed = json::object(), signs = json::array();
    bool ok = true;
    for (int j = 0; j <= half(l); ++j) {
        for (int k = 0; k < l - 1; k += 2) {
            const CorankResult r = corank_check(f, j, k);
            const bool semisimple_case = k <= 2 * j;
            const std::string key = std::to_string(j) + "," + std::to_string(k);
            json e = {{"corank", semisimple_case ? 3 : 2}};
            json c = {{"corank", r.corank}};
            if (semisimple_case) {
                e["D_semisimple"] = true;
                e["D_corank"] = 1;
                e["signs"] = true;
                c["D_semisimple"] = r.normalized_d_semisimple;
                c["D_corank"] = r.normalized_d_corank;
                c["signs"] = r.signs.holds;
                signs.push_back({{"j", j},
                                 {"k", k},
                                 {"precision_bits", r.signs.precision_bits},
                                 {"max_interval_radius", r.signs.max_radius}});
            }
            ok = ok && e == c;
            expected[key] = e;
            computed[key] = c;
        }
    }
    rec.expected = expected;
    rec.computed = computed;
    rec.witness = {{"sign_certificates", signs}};
    rec.pass = ok;
}

void sign_lemma_check(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const SignCertificate c = sign_lemma(ctx.field());
    rec.expected = {{"holds", true}};
    rec.computed = {{"holds", c.holds}, {"signs", c.detail}};
    rec.witness = {{"embedding_exponent", special_embedding(ctx.field())},
                   {"precision_bits", c.precision_bits},
                   {"max_interval_radius", c.max_radius}};
    rec.pass = c.holds;
}

void n_j(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const int l = ctx.field().l();
    json expected = json::object(), computed = json::object();
    bool ok = true;
    for (int j = 0; j <= half(l); ++j) {
        const Multiset want = expected_N_j(l, j);
        const Multiset got = decomp::decompose_N_j(ctx, j).summands;
        expected[std::to_string(j)] = labels_json(want);
        computed[std::to_string(j)] = labels_json(got);
        ok = ok && want == got;
    }
    rec.expected = expected;
    rec.computed = computed;
    rec.pass = ok;
}

void steinberg_block(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const Multiset want = expected_steinberg(ctx.field().l());
    const Multiset got = decomp::decompose_block(ctx, -1).summands;
    rec.expected = labels_json(want);
    rec.computed = labels_json(got);
    rec.pass = want == got;
}

void decomposition(const AdjointContext& ctx, const VerifyOptions& opts, CheckRecord& rec, Report& report) {
    const Multiset want = expected_multiplicities(ctx.field().l()).entries;
    const Decomposition d = decomp::decompose_adjoint(ctx);
    rec.expected = labels_json(want);
    rec.computed = labels_json(d.summands);
    rec.pass = want == d.summands;
    if (opts.certificates) {
        const bool certs = decomp::verify_certificates(d, ctx.module());
        rec.witness = {{"certificates_verified", certs}, {"summands", d.certificates.size()}};
        rec.pass = rec.pass && certs;
    }
    report.decomposition = d.summands;
}

void block_recomposition(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    Multiset total;
    json per = json::object();
    for (const auto& b : ctx.casimir_blocks().blocks) {
        const Multiset mj = decomp::decompose_block(ctx, b.j).summands;
        per[std::to_string(b.j)] = labels_json(mj);
        total = sum(total, mj);
    }
    const Multiset want = expected_multiplicities(ctx.field().l()).entries;
    rec.expected = labels_json(want);
    rec.computed = labels_json(total);
    rec.witness = {{"blocks", per}};
    rec.pass = total == want;
}

void autoduality(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const GradedModule& ad = ctx.module();
    const GradedModule dad = modcat::dual(ad);
    std::vector<decomp::Piece> dual_blocks;
    for (const auto& b : ctx.casimir_blocks().blocks) {
        const GradedMap e = modcat::dual_map(ctx.projector(b.j));
        modcat::Submodule sub = modcat::image(e, dad);
        GradedMap proj = sub.coordinates.compose(e);
        dual_blocks.push_back(decomp::Piece{std::move(sub), std::move(proj), b.j});
    }
    const auto pd = decomp::split_by_casimir(dad, dual_blocks, ctx.eigenvalues());
    const auto res = decomp::is_isomorphic_presplit(dad, pd, ad, ctx.presplit());
    rec.expected = {{"isomorphic", true}};
    rec.computed = {{"isomorphic", res.isomorphic}};
    rec.witness = {{"pieces", pd.size()}};
    rec.pass = res.isomorphic;
}

void singular_vectors(const AdjointContext& ctx, const VerifyOptions&, CheckRecord& rec, Report&) {
    const SmallQuantumGroup& u = ctx.algebra();
    const CyclotomicField& f = ctx.field();
    const int l = f.l();
    const AlgElem ke = u.multiply(u.K_inv(), u.E());
    json bad = json::array();
    std::size_t checked = 0;
    for (int j = 0; j <= half(l); ++j) {
        const auto& cb = ctx.casimir_blocks();
        const AlgElem pr = cb.idempotents[block_position(cb, j)];
        const AlgElem shift = u.casimir() - u.scalar(f.casimir_root(j));
        for (int s = 0; s <= (l - 1) / 2; ++s) {
            const AlgElem up = u.multiply(pr, u.power(ke, s));
            const AlgElem down = u.multiply(pr, u.power(u.F(), s));
            const std::string tag = "j=" + std::to_string(j) + " s=" + std::to_string(s);
            if (!u.ad_E(up).is_zero()) bad.push_back("pr_j (K^-1 E)^s not upper singular, " + tag);
            if (u.multiply(shift, up).is_zero()) bad.push_back("(X-b_j) pr_j (K^-1 E)^s = 0, " + tag);
            if (!u.ad_F(down).is_zero()) bad.push_back("pr_j F^s not lower singular, " + tag);
            if (u.multiply(shift, down).is_zero()) bad.push_back("pr_j F^s in M_j, " + tag);
            ++checked;
        }
    }
    rec.expected = {{"failures", json::array()}};
    rec.computed = {{"failures", bad}, {"pairs_checked", checked}};
    rec.pass = bad.empty();
}

struct CheckSpec {
    const char* name;
    const char* citation;
    Check run;
};

const std::vector<CheckSpec>& registry() {
    static const std::vector<CheckSpec> specs{
        {"algebra_axioms", "defining relations of u and its Hopf structure", algebra_axioms},
        {"module_invariants", "graded category: [E,F] = (w)_q on V_w, E^l = F^l = 0", module_invariants},
        {"casimir", "Casimir equation prod_j (X - b_j) = 0 and centrality of X", casimir},
        {"ad_dimensions", "dim ad^2m, dim ad_j^2m, dim N_j^0", ad_dimensions},
        {"block_dimensions", "ad_j, N_j, M_j/N_j and ad_j/M_j = N_j", block_dimensions},
        {"matrix_A", "ad(X) on N_j^0 is the lower-triangular matrix A(j)", matrix_A},
        {"matrix_Aprime", "ad(X) on ad_j^0 is the block matrix A'(j)", matrix_Aprime},
        {"determinants", "d(j,k) is even in b_j and vanishes for (l-1-k)/2 labels j", determinants},
        {"coranks", "A'(j) - b_k has corank 3 when k <= 2J", coranks},
        {"sign_lemma", "(t)_q > 0 iff t odd at q = exp(pi i (l+1)/l)", sign_lemma_check},
        {"N_j", "decomposition of N_j into simples and projectives", n_j},
        {"steinberg_block", "ad_-1 is the sum of P(2i), i = 0..(l-1)/2", steinberg_block},
        {"decomposition", "multiplicities of P and L in ad", decomposition},
        {"block_recomposition", "the block decompositions add up to the table", block_recomposition},
        {"autoduality", "D(ad) is isomorphic to ad", autoduality},
        {"singular_vectors", "pr_j (K^-1 E)^s and pr_j F^s for s <= (l-1)/2", singular_vectors},
    };
    return specs;
}

}  // namespace

// ---------------------------------------------------------------------------

int max_supported_l(bool allow_large) {
    int cap = allow_large ? kLargeMaxL : kDefaultMaxL;
    if (const char* env = std::getenv("UQ_ADJOINT_MAX_L")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 3) {
            fail(ErrorCode::InvalidArgument, std::string("UQ_ADJOINT_MAX_L is not an integer >= 3: ") + env);
        }
        cap = std::min<long>(cap, v);
    }
    return cap;
}

void require_supported_l(int l, int max_l) {
    if (l < 3 || l % 2 == 0) fail(ErrorCode::InvalidL, "l must be odd and at least 3, got " + std::to_string(l));
    if (l > max_l) {
        fail(ErrorCode::InvalidL, "l = " + std::to_string(l) + " exceeds the configured maximum " + std::to_string(max_l));
    }
}

ExpectedTable expected_multiplicities(int l) {
    if (l < 3 || l % 2 == 0) fail(ErrorCode::InvalidL, "l must be odd and at least 3, got " + std::to_string(l));
    ExpectedTable t{l, {}};
    t.entries[projective_label(l - 1)] = l;
    for (int i = 0; i <= half(l); ++i) {
        t.entries[projective_label(2 * i)] = (l + 1) / 2 + i;
        t.entries[simple_label(2 * i)] = l - 1 - 2 * i;
        t.entries[simple_label(2 * l - 2 - 2 * i)] = (l - 1) / 2 - i;
        t.entries[simple_label(-2 - 2 * i)] = (l - 1) / 2 - i;
    }
    return t;
}

std::size_t table_dimension(const ExpectedTable& t) {
    std::size_t d = 0;
    for (const auto& [lab, k] : t.entries) d += static_cast<std::size_t>(k) * modcat::label_dimension(lab, t.l);
    return d;
}

std::string to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::A: return "A";
        case MatrixKind::D: return "D";
        case MatrixKind::Aprime: return "Aprime";
    }
    return "?";
}

MatrixKind matrix_kind_from_string(const std::string& s) {
    if (s == "A") return MatrixKind::A;
    if (s == "D") return MatrixKind::D;
    if (s == "Aprime") return MatrixKind::Aprime;
    fail(ErrorCode::InvalidArgument, "matrix kind must be A, D or Aprime, got " + s);
}

PaperMatrix build_A(const CyclotomicField& f, int j) {
    require_block(f, j, true);
    const int l = f.l();
    const Cyc bj = f.casimir_root(j);
    Matrix a(l, l);
    for (int c = 0; c < l; ++c) {
        const int i = c + 1;
        a(c, c) = f.casimir_root(2 * i - 2);
        if (c + 1 < l) a(c + 1, c) = qdiff_sq(f, i) * bj;
        if (c + 2 < l) a(c + 2, c) = f.qint(i) * f.qint(i + 1);
    }
    return {MatrixKind::A, j, std::nullopt, std::move(a)};
}

PaperMatrix build_D(const CyclotomicField& f, int j, int k) {
    require_block(f, j, true);
    require_k(f, k);
    const int n = f.l() - 1 - k;
    const Cyc bj = f.casimir_root(j);
    const Cyc bk = f.casimir_root(k);
    Matrix d(n, n);
    for (int r = 0; r < n; ++r) {
        const int t = k / 2 + 1 + r;
        d(r, r) = qdiff_sq(f, t) * bj;
        if (r + 1 < n) {
            d(r, r + 1) = f.casimir_root(2 * t) - bk;
            d(r + 1, r) = f.qint(t) * f.qint(t + 1);
        }
    }
    return {MatrixKind::D, j, k, std::move(d)};
}

PaperMatrix build_Aprime(const CyclotomicField& f, int j) {
    require_block(f, j, false);
    const int l = f.l();
    const Matrix a = build_A(f, j).entries;
    Matrix out(2 * l, 2 * l);
    for (int r = 0; r < l; ++r) {
        for (int c = 0; c < l; ++c) {
            out(r, c) = a(r, c);
            out(l + r, l + c) = a(r, c);
        }
    }
    for (int c = 0; c + 1 < l; ++c) out(l + c + 1, c) = -qdiff_sq(f, c + 1);
    return {MatrixKind::Aprime, j, std::nullopt, std::move(out)};
}

Matrix machinery_A(const AdjointContext& ctx, int j) {
    const CyclotomicField& f = ctx.field();
    require_block(f, j, true);
    const SmallQuantumGroup& u = ctx.algebra();
    const auto& cb = ctx.casimir_blocks();
    const AlgElem pr = cb.idempotents[block_position(cb, j)];
    const AlgElem base = j == -1 ? pr : u.multiply(u.casimir() - u.scalar(f.casimir_root(j)), pr);
    std::vector<AlgElem> basis;
    for (int i = 1; i <= f.l(); ++i) basis.push_back(signed_one(f, i) * u.multiply(base, u.K_pow(i)));
    return action_matrix(ctx, basis);
}

Matrix machinery_Aprime(const AdjointContext& ctx, int j) {
    const CyclotomicField& f = ctx.field();
    require_block(f, j, false);
    const SmallQuantumGroup& u = ctx.algebra();
    const auto& cb = ctx.casimir_blocks();
    const AlgElem pr = cb.idempotents[block_position(cb, j)];
    const AlgElem shifted = u.multiply(u.casimir() - u.scalar(f.casimir_root(j)), pr);
    std::vector<AlgElem> basis;
    for (int i = 1; i <= f.l(); ++i) basis.push_back(signed_one(f, i) * u.multiply(pr, u.K_pow(i)));
    for (int i = 1; i <= f.l(); ++i) basis.push_back(signed_one(f, i + 1) * u.multiply(shifted, u.K_pow(i)));
    return action_matrix(ctx, basis);
}

Determinant det_d(const CyclotomicField& f, int j, int k) {
    const Matrix d = build_D(f, j, k).entries;
    const std::size_t n = d.rows();
    Determinant out;
    out.value = linalg::determinant(d, f);
    // Interpolate det(D) as a polynomial in the diagonal variable through n+1 points.
    std::vector<Cyc> xs, ys;
    for (std::size_t p = 0; p <= n; ++p) {
        Matrix dp = d;
        const Cyc x = f.from_int(static_cast<long>(p));
        for (std::size_t r = 0; r < n; ++r) dp(r, r) = qdiff_sq(f, k / 2 + 1 + static_cast<long>(r)) * x;
        xs.push_back(x);
        ys.push_back(linalg::determinant(dp, f));
    }
    linalg::Poly acc;
    for (std::size_t i = 0; i <= n; ++i) {
        linalg::Poly term(std::vector<Cyc>{ys[i]});
        for (std::size_t m = 0; m <= n; ++m) {
            if (m == i) continue;
            term = term * linalg::Poly::linear(f, xs[m]) * linalg::Poly(std::vector<Cyc>{(xs[i] - xs[m]).inv()});
        }
        acc = acc + term;
    }
    if (!(acc(f.casimir_root(j)) == out.value)) fail(ErrorCode::Internal, "interpolated determinant disagrees");
    out.even = true;
    for (std::size_t i = 1; i < acc.coeffs().size(); i += 2) out.even = out.even && acc.coeffs()[i].is_zero();
    out.in_b = std::move(acc);
    return out;
}

std::vector<int> vanishing_blocks(const CyclotomicField& f, int k) {
    std::vector<int> out;
    for (int j = -1; j <= half(f.l()); ++j) {
        if (linalg::determinant(build_D(f, j, k).entries, f).is_zero()) out.push_back(j);
    }
    return out;
}

long special_embedding(const CyclotomicField& f) {
    const int l = f.l();
    const long target = (l + 1) / 2;
    for (long e = 1; e < l; ++e) {
        if ((e * f.root_exponent()) % l == target) return e;
    }
    fail(ErrorCode::Internal, "no embedding sends q to exp(pi i (l+1)/l)");
}

int certified_sign(const Cyc& a, int* precision_bits, double* radius) {
    if (a.is_zero()) fail(ErrorCode::SignInconclusive, "sign of an exact zero");
    if (!(conjugate(a) == a)) fail(ErrorCode::InvalidArgument, "sign of a non-real element " + a.to_string());
    const long e = special_embedding(*a.field());
    for (int prec = kFirstPrecision; prec <= kLastPrecision; prec *= 2) {
        const auto enc = cyclotomic::embed(a, e, prec);
        if (auto s = enc.re.sign()) {
            if (precision_bits) *precision_bits = std::max(*precision_bits, prec);
            if (radius) *radius = std::max(*radius, enc.re.radius());
            return *s;
        }
    }
    fail(ErrorCode::SignInconclusive, "sign of " + a.to_string() + " undecided at " + std::to_string(kLastPrecision) + " bits");
}

SignCertificate sign_lemma(const CyclotomicField& f) {
    SignCertificate c;
    c.holds = true;
    for (int t = 1; t < f.l(); ++t) {
        const int s = certified_sign(f.qint(t), &c.precision_bits, &c.max_radius);
        c.holds = c.holds && ((s > 0) == (t % 2 == 1));
        c.detail += (t > 1 ? " " : "") + std::string("(") + std::to_string(t) + ")" + (s > 0 ? "+" : "-");
    }
    return c;
}

CorankResult corank_check(const CyclotomicField& f, int j, int k) {
    require_block(f, j, false);
    require_k(f, k);
    const int l = f.l();
    CorankResult out;
    const Matrix ap = build_Aprime(f, j).entries - f.casimir_root(k) * Matrix::identity(f, 2 * l);
    out.corank = 2 * l - static_cast<int>(linalg::rank(ap));

    Matrix d = build_D(f, j, k).entries;
    const std::size_t n = d.rows();
    SignCertificate& sc = out.signs;
    sc.holds = true;
    for (int i = 1; i < l; ++i) {
        if (certified_sign(-qdiff_sq(f, i), &sc.precision_bits, &sc.max_radius) <= 0) {
            sc.holds = false;
            sc.detail += "divisor " + std::to_string(i) + " not positive; ";
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        const Cyc inv = (-qdiff_sq(f, k / 2 + 1 + static_cast<long>(c))).inv();
        for (std::size_t r = 0; r < n; ++r) {
            if (!d(r, c).is_zero()) d(r, c) = d(r, c) * inv;
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (d(r, c).is_zero()) continue;
            if (!(conjugate(d(r, c)) == d(r, c))) {
                sc.holds = false;
                sc.detail += "entry not real; ";
                continue;
            }
            if (r != c && certified_sign(d(r, c), &sc.precision_bits, &sc.max_radius) >= 0) {
                sc.holds = false;
                sc.detail += "off-diagonal entry not negative; ";
            }
        }
    }
    out.normalized_d_semisimple = linalg::is_semisimple(d, f);
    out.normalized_d_corank = static_cast<int>(n - linalg::rank(d));
    return out;
}

// ---------------------------------------------------------------------------
// Reports

bool Report::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

json matrix_to_json(const CyclotomicField& f, const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(f.to_strings(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json multiset_to_json(const Multiset& ms) { return json::parse(decomp::decomposition_json(ms)); }

std::string report_to_json(const Report& r, int indent) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e = {{"name", c.name},
                  {"citation", c.citation},
                  {"pass", c.pass},
                  {"expected", c.expected},
                  {"computed", c.computed}};
        if (!c.witness.is_null()) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    json out = {{"l", r.l}, {"pass", r.passed()}, {"checks", std::move(checks)}};
    out["decomposition"] = r.decomposition ? multiset_to_json(*r.decomposition) : json(nullptr);
    return out.dump(indent);
}

Report report_from_json(const std::string& text) {
    Report r;
    try {
        const json in = json::parse(text);
        r.l = in.at("l").get<int>();
        for (const auto& c : in.at("checks")) {
            CheckRecord rec;
            rec.name = c.at("name").get<std::string>();
            rec.citation = c.at("citation").get<std::string>();
            rec.pass = c.at("pass").get<bool>();
            rec.expected = c.at("expected");
            rec.computed = c.at("computed");
            if (c.contains("witness")) rec.witness = c.at("witness");
            r.checks.push_back(std::move(rec));
        }
        if (in.contains("decomposition") && !in.at("decomposition").is_null()) {
            r.decomposition = decomp::decomposition_from_json(in.at("decomposition").dump());
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("bad report JSON: ") + e.what());
    }
    return r;
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "l = " << r.l << "\n";
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  [" << c.citation << "]\n";
        if (!c.pass) {
            os << "     expected: " << c.expected.dump() << "\n";
            os << "     computed: " << c.computed.dump() << "\n";
        }
        passed += c.pass;
    }
    if (r.decomposition) os << "ad = " << modcat::to_string(*r.decomposition) << "\n";
    os << (r.passed() ? "all checks passed" : "some checks FAILED") << " (" << passed << "/" << r.checks.size()
       << ")\n";
    return os.str();
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : registry()) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

Report run_verification(const AdjointContext& ctx, const VerifyOptions& opts) {
    for (const auto& n : opts.checks) {
        if (std::find(check_names().begin(), check_names().end(), n) == check_names().end()) {
            fail(ErrorCode::InvalidArgument, "unknown check " + n);
        }
    }
    Report report;
    report.l = ctx.field().l();
    for (const auto& entry : registry()) {
        if (!opts.checks.empty() && std::find(opts.checks.begin(), opts.checks.end(), entry.name) == opts.checks.end()) {
            continue;
        }
        if (opts.progress) opts.progress(entry.name);
        CheckRecord rec;
        rec.name = entry.name;
        rec.citation = entry.citation;
        try {
            entry.run(ctx, opts, rec, report);
        } catch (const Error& e) {
            rec.pass = false;
            rec.computed = error_json(e);
        }
        report.checks.push_back(std::move(rec));
    }
    return report;
}

}  // namespace uqa::verify
