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

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "uqadjoint/error.hpp"
#include "uqadjoint/verify.hpp"

using namespace uqa::verify;
using uqa::ErrorCode;
using uqa::modcat::projective_label;
using uqa::modcat::simple_label;
using uqa::testing::to_complex;

namespace {

Matrix from_rows(const CyclotomicField& f, std::initializer_list<std::initializer_list<long>> num, long den) {
    Matrix m(num.size(), num.begin()->size());
    std::size_t r = 0;
    for (const auto& row : num) {
        std::size_t c = 0;
        for (long v : row) {
            uqa::cyclotomic::Rat x(v, den);
            x.canonicalize();
            m(r, c++) = f.from_rat(x);
        }
        ++r;
    }
    return m;
}

// Dimensions written down directly: dim P(lam) = 2l off the Steinberg
// class, l on it; dim L(lam) = (lam mod l) + 1.
std::size_t oracle_dim(const uqa::modcat::ModuleLabel& lab, int l) {
    const int r = ((lab.weight % l) + l) % l;
    if (lab.kind == uqa::modcat::ModuleLabel::Kind::Projective) return r == l - 1 ? l : 2 * l;
    return r + 1;
}

std::complex<double> complex_det(std::vector<std::vector<std::complex<double>>> a) {
    const std::size_t n = a.size();
    std::complex<double> det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        if (std::abs(a[p][c]) < 1e-300) return 0.0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const auto factor = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
        }
    }
    return det;
}

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value) setenv("UQ_ADJOINT_MAX_L", value, 1);
        else unsetenv("UQ_ADJOINT_MAX_L");
    }
    ~EnvGuard() { unsetenv("UQ_ADJOINT_MAX_L"); }
};

}  // namespace

TEST_CASE("expected tables") {
    const Multiset l3{{projective_label(2), 3}, {projective_label(0), 2}, {simple_label(0), 2},
                      {simple_label(4), 1},     {simple_label(-2), 1}};
    CHECK(expected_multiplicities(3).entries == l3);
    const Multiset l5{{projective_label(4), 5}, {projective_label(0), 3}, {projective_label(2), 4},
                      {simple_label(0), 4},     {simple_label(2), 2},     {simple_label(8), 2},
                      {simple_label(-2), 2},    {simple_label(6), 1},     {simple_label(-4), 1}};
    CHECK(expected_multiplicities(5).entries == l5);
    CHECK(table_dimension(expected_multiplicities(5)) == 125);
    for (int l = 3; l <= 99; l += 2) {
        const ExpectedTable t = expected_multiplicities(l);
        std::size_t d = 0;
        for (const auto& [lab, k] : t.entries) d += k * oracle_dim(lab, l);
        CHECK(d == static_cast<std::size_t>(l) * l * l);
        CHECK(table_dimension(t) == d);
    }
    for (int bad : {-3, 0, 1, 2, 4, 10}) {
        try {
            expected_multiplicities(bad);
            FAIL("accepted l = " << bad);
        } catch (const uqa::Error& e) {
            CHECK(e.code() == ErrorCode::InvalidL);
        }
    }
}

TEST_CASE("supported l and the environment cap") {
    {
        EnvGuard g(nullptr);
        CHECK(max_supported_l(false) == 7);
        CHECK(max_supported_l(true) == 9);
    }
    {
        EnvGuard g("5");
        CHECK(max_supported_l(false) == 5);
        CHECK(max_supported_l(true) == 5);
        CHECK_THROWS_AS(require_supported_l(7, max_supported_l(false)), uqa::Error);
        CHECK_NOTHROW(require_supported_l(5, max_supported_l(false)));
    }
    {
        EnvGuard g("11");
        CHECK(max_supported_l(true) == 9);
    }
    {
        EnvGuard g("seven");
        CHECK_THROWS_AS(max_supported_l(false), uqa::Error);
    }
    CHECK_THROWS_AS(require_supported_l(4, 7), uqa::Error);
}

TEST_CASE("explicit matrices at l = 3") {
    CyclotomicField f(3);
    CHECK(build_A(f, 0).entries == from_rows(f, {{1, 0, 0}, {-3, -2, 0}, {-3, -3, 1}}, 3));
    const PaperMatrix d = build_D(f, 0, 0);
    CHECK(d.entries == from_rows(f, {{-1, -1}, {-1, -1}}, 1));
    CHECK(uqa::linalg::determinant(d.entries, f).is_zero());
    CHECK_THROWS_AS(build_D(f, 0, 2), uqa::Error);
    CHECK_THROWS_AS(build_D(f, 0, 1), uqa::Error);
    CHECK_THROWS_AS(build_Aprime(f, -1), uqa::Error);
    CHECK_THROWS_AS(build_A(f, 1), uqa::Error);
}

TEST_CASE("shape of A, D and A'") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        for (int j = -1; j <= (l - 3) / 2; ++j) {
            const Matrix a = build_A(f, j).entries;
            REQUIRE(a.rows() == static_cast<std::size_t>(l));
            for (int r = 0; r < l; ++r) {
                for (int c = r + 1; c < l; ++c) CHECK(a(r, c).is_zero());
                for (int c = 0; c + 2 < r; ++c) CHECK(a(r, c).is_zero());
            }
            CHECK(a(0, 0) == f.casimir_root(0));
            CHECK(a(l - 1, l - 1) == f.casimir_root(0));
            for (int k = 0; k < l - 1; k += 2) CHECK(build_D(f, j, k).entries.rows() == static_cast<std::size_t>(l - 1 - k));
            if (j < 0) continue;
            const Matrix ap = build_Aprime(f, j).entries;
            for (int r = 0; r < l; ++r) {
                for (int c = 0; c < l; ++c) {
                    CHECK(ap(r, c) == a(r, c));
                    CHECK(ap(l + r, l + c) == a(r, c));
                    CHECK(ap(r, l + c).is_zero());
                }
            }
        }
    }
}

TEST_CASE("A and A' agree with ad(X) computed in the algebra") {
    for (int l : {3, 5}) {
        CyclotomicField f(l);
        AdjointContext ctx(f);
        for (int j = -1; j <= (l - 3) / 2; ++j) {
            CHECK(build_A(f, j).entries == machinery_A(ctx, j));
            if (j >= 0) CHECK(build_Aprime(f, j).entries == machinery_Aprime(ctx, j));
        }
    }
}

TEST_CASE("determinants d(j, k)") {
    CyclotomicField f3(3);
    CHECK(det_d(f3, 0, 0).value.is_zero());
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        const long e = special_embedding(f);
        for (int k = 0; k < l - 1; k += 2) {
            const auto v = vanishing_blocks(f, k);
            CHECK(v.size() == static_cast<std::size_t>((l - 1 - k) / 2));
            for (int j = -1; j <= (l - 3) / 2; ++j) {
                const bool vanishes = std::find(v.begin(), v.end(), j) != v.end();
                CHECK(vanishes == (j >= 0 && k <= 2 * j));
                const Determinant d = det_d(f, j, k);
                CHECK(d.even);
                CHECK(d.in_b.degree() == l - 1 - k);
                // Floating point determinant of the complex matrix as an oracle.
                const Matrix m = build_D(f, j, k).entries;
                std::vector<std::vector<std::complex<double>>> z(m.rows(), std::vector<std::complex<double>>(m.cols()));
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    for (std::size_t c = 0; c < m.cols(); ++c) z[r][c] = to_complex(m(r, c), l, e);
                }
                CHECK(std::abs(complex_det(z) - to_complex(d.value, l, e)) < 1e-6);
            }
        }
    }
}

TEST_CASE("coranks of A'(j) - b_k") {
    CyclotomicField f3(3);
    CHECK(corank_check(f3, 0, 0).corank == 3);
    CyclotomicField f5(5);
    CHECK(corank_check(f5, 0, 2).corank == 2);
    for (int l : {5, 7}) {
        CyclotomicField f(l);
        for (int j = 0; j <= (l - 3) / 2; ++j) {
            for (int k = 0; k < l - 1; k += 2) {
                const CorankResult r = corank_check(f, j, k);
                CHECK(r.corank == (k <= 2 * j ? 3 : 2));
                CHECK(r.signs.holds);
                if (k <= 2 * j) {
                    CHECK(r.normalized_d_semisimple);
                    CHECK(r.normalized_d_corank == 1);
                }
            }
        }
    }
}

TEST_CASE("real tridiagonal matrices with negative off-diagonals are semisimple") {
    CyclotomicField f(3);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + rng() % 5;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = f.from_int(static_cast<long>(rng() % 7) - 3);
            if (i + 1 < n) {
                m(i, i + 1) = f.from_int(-1 - static_cast<long>(rng() % 4));
                m(i + 1, i) = f.from_int(-1 - static_cast<long>(rng() % 4));
            }
        }
        CHECK(uqa::linalg::is_semisimple(m, f));
    }
    Matrix jordan(2, 2);
    jordan(0, 0) = f.one();
    jordan(1, 1) = f.one();
    jordan(0, 1) = f.one();
    CHECK_FALSE(uqa::linalg::is_semisimple(jordan, f));
}

TEST_CASE("certified signs") {
    for (int l : {3, 5, 7}) {
        CyclotomicField f(l);
        CHECK(special_embedding(f) == (l + 1) / 2);
        const SignCertificate c = sign_lemma(f);
        CHECK(c.holds);
        CHECK(c.precision_bits >= 64);
        std::mt19937_64 rng(static_cast<unsigned>(l));
        for (int it = 0; it < 20; ++it) {
            const Cyc a = uqa::testing::random_nonzero_cyc(f, rng);
            Cyc re = a;
            for (int i = 0; i < static_cast<int>(a.coeffs().size()); ++i) re += f.zeta_pow(-i) * a.coeffs()[i];
            if (re.is_zero()) continue;
            const double x = to_complex(re, l, special_embedding(f)).real();
            if (std::abs(x) < 1e-9) continue;
            CHECK(certified_sign(re) == (x > 0 ? 1 : -1));
        }
        CHECK_THROWS_AS(certified_sign(f.zeta_pow(1)), uqa::Error);
        CHECK_THROWS_AS(certified_sign(f.zero()), uqa::Error);
    }
    // q = zeta^2 at l = 5: the embedding must send zeta^2 to exp(6 pi i / 5).
    CyclotomicField g(5, 2);
    const long e = special_embedding(g);
    CHECK(std::abs(to_complex(g.q(), 5, e) - std::polar(1.0, std::numbers::pi * 6.0 / 5.0)) < 1e-12);
    CHECK(sign_lemma(g).holds);
}

TEST_CASE("verification report at l = 3") {
    CyclotomicField f(3);
    AdjointContext ctx(f);
    VerifyOptions opts;
    opts.certificates = true;
    std::vector<std::string> seen;
    opts.progress = [&](const std::string& n) { seen.push_back(n); };
    const Report r = run_verification(ctx, opts);
    CHECK(seen == check_names());
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name);
    REQUIRE(r.decomposition.has_value());
    CHECK(*r.decomposition == expected_multiplicities(3).entries);

    const std::string js = report_to_json(r);
    const Report back = report_from_json(js);
    CHECK(report_to_json(back) == js);
    CHECK(report_to_text(r).find("all checks passed") != std::string::npos);

    const auto parsed = nlohmann::json::parse(js);
    CHECK(parsed.at("l") == 3);
    for (const auto& c : parsed.at("checks")) {
        for (const char* key : {"name", "citation", "pass", "expected", "computed"}) CHECK(c.contains(key));
    }
    CHECK(parsed.at("decomposition").at(0).at("kind") == "P");

    VerifyOptions some;
    some.checks = {"sign_lemma", "casimir"};
    const Report part = run_verification(ctx, some);
    REQUIRE(part.checks.size() == 2);
    CHECK(part.checks[0].name == "casimir");
    some.checks = {"no_such_check"};
    CHECK_THROWS_AS(run_verification(ctx, some), uqa::Error);
    CHECK_THROWS_AS(report_from_json("{\"l\": 3}"), uqa::Error);
}

TEST_CASE("a failing check is reported, not thrown") {
    Report r;
    r.l = 3;
    r.checks.push_back({"x", "y", true, 1, 1, nullptr});
    CHECK(r.passed());
    r.checks.push_back({"z", "w", false, 1, 2, nullptr});
    CHECK_FALSE(r.passed());
    CHECK(report_to_text(r).find("FAIL z") != std::string::npos);
    CHECK(report_from_json(report_to_json(r)).checks.size() == 2);
}

TEST_CASE("block decompositions recompose at l = 5") {
    CyclotomicField f(5);
    AdjointContext ctx(f);
    Multiset total;
    for (const auto& b : ctx.casimir_blocks().blocks) {
        for (const auto& [lab, k] : uqa::decomp::decompose_block(ctx, b.j).summands) total[lab] += k;
    }
    CHECK(total == uqa::decomp::decompose_adjoint(ctx).summands);
    CHECK(total == expected_multiplicities(5).entries);
}
