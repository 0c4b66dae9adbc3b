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

// Shared helpers for the unit tests: hand-rolled generators and a floating
// point evaluation of cyclotomic numbers that does not go through the library.

#ifndef UQADJOINT_TESTS_SUPPORT_HPP
#define UQADJOINT_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "uqadjoint/cyclotomic.hpp"
#include "uqadjoint/graded.hpp"
#include "uqadjoint/linalg.hpp"

namespace uqa::testing {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using cyclotomic::Rat;
using linalg::Matrix;

inline Rat random_rat(std::mt19937_64& rng, long range = 5) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, range);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// Random element with small rational coefficients; about one in five are rational.
inline Cyc random_cyc(const CyclotomicField& f, std::mt19937_64& rng) {
    std::vector<Rat> c(static_cast<std::size_t>(f.degree()));
    const bool rational = std::uniform_int_distribution<int>(0, 4)(rng) == 0;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (rational && i > 0) ? Rat(0) : random_rat(rng);
    return Cyc(f, std::move(c));
}

inline Cyc random_nonzero_cyc(const CyclotomicField& f, std::mt19937_64& rng) {
    for (;;) {
        Cyc c = random_cyc(f, rng);
        if (!c.is_zero()) return c;
    }
}

inline Matrix random_matrix(const CyclotomicField& f, std::mt19937_64& rng, std::size_t r, std::size_t c,
                            int zero_percent = 30) {
    Matrix m(r, c);
    std::uniform_int_distribution<int> pct(0, 99);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (pct(rng) >= zero_percent) m(i, j) = random_cyc(f, rng);
        }
    }
    return m;
}

/// Unit lower triangular times unit upper triangular with random entries.
inline Matrix random_invertible(const CyclotomicField& f, std::mt19937_64& rng, std::size_t n) {
    Matrix lo = Matrix::identity(f, n);
    Matrix up = Matrix::identity(f, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            lo(i, j) = random_cyc(f, rng);
            up(j, i) = random_cyc(f, rng);
        }
    }
    return lo * up;
}

/// zeta -> exp(2 pi i e / l) in double precision.
inline std::complex<double> to_complex(const Cyc& a, int l, long e) {
    std::complex<double> z = 0.0;
    for (int i = 0; i < static_cast<int>(a.coeffs().size()); ++i) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(e * i % l) / l;
        z += a.coeffs()[static_cast<std::size_t>(i)].get_d() * std::polar(1.0, ang);
    }
    return z;
}

/// Product of 2n elementary matrices with entries +-zeta^k. Keeps coefficients
/// small, unlike a dense random base change, while still mixing coordinates.
inline Matrix random_elementary_product(const CyclotomicField& f, std::mt19937_64& rng, std::size_t n) {
    Matrix g = Matrix::identity(f, n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::size_t i = rng() % n;
        const std::size_t j = rng() % n;
        if (i == j) continue;
        Cyc c = f.zeta_pow(static_cast<long>(rng() % f.l()));
        if (rng() % 2) c = -c;
        Matrix el = Matrix::identity(f, n);
        el(i, j) = c;
        g = el * g;
    }
    return g;
}

/// Random per-weight change of basis, so summands are no longer coordinate blocks.
inline modcat::GradedModule scramble(const modcat::GradedModule& m, std::mt19937_64& rng) {
    const CyclotomicField& f = m.field();
    std::map<int, Matrix> g, gi;
    for (const auto& [w, d] : m.weight_dims()) {
        g[w] = random_elementary_product(f, rng, d);
        gi[w] = *linalg::inverse(g[w]);
    }
    modcat::GradedModule out(f);
    for (const auto& [w, d] : m.weight_dims()) out.set_dim(w, d);
    for (const auto& [w, d] : m.weight_dims()) {
        if (m.dim(w + 2)) out.set_e(w, g[w + 2] * m.e(w) * gi[w]);
        if (m.dim(w - 2)) out.set_f(w, g[w - 2] * m.f(w) * gi[w]);
    }
    return out;
}

}  // namespace uqa::testing

#endif  // UQADJOINT_TESTS_SUPPORT_HPP
