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

#ifndef UQADJOINT_VERIFY_HPP
#define UQADJOINT_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uqadjoint/decomp.hpp"

namespace uqa::verify {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using decomp::AdjointContext;
using linalg::Matrix;
using modcat::Multiset;

/// Largest l accepted: 7 by default, 9 with allow_large; UQ_ADJOINT_MAX_L
/// lowers the cap further when set.
int max_supported_l(bool allow_large);
/// Throws InvalidL unless l is odd and 3 <= l <= max_l.
void require_supported_l(int l, int max_l);

struct ExpectedTable {
    int l = 0;
    Multiset entries;
};

/// The multiplicity table of ad. Pure arithmetic; any odd l >= 3.
ExpectedTable expected_multiplicities(int l);
/// Sum of multiplicity * dimension.
std::size_t table_dimension(const ExpectedTable& t);

enum class MatrixKind { A, D, Aprime };
std::string to_string(MatrixKind k);
MatrixKind matrix_kind_from_string(const std::string& s);

struct PaperMatrix {
    MatrixKind kind = MatrixKind::A;
    int j = 0;
    std::optional<int> k;
    Matrix entries;
};

/// A(j): l x l, diagonal b_0, b_2, ..., b_(2l-2); subdiagonal (q^i-q^-i)^2 b_j;
/// second subdiagonal (i)_q (i+1)_q.
PaperMatrix build_A(const CyclotomicField& f, int j);
/// D(j, k): the (l-1-k)-sized tridiagonal window of A(j) at the repeated
/// eigenvalue b_k; k even, 0 <= k < l-1.
PaperMatrix build_D(const CyclotomicField& f, int j, int k);
/// A'(j) = [[A(j), 0], [B, A(j)]], B with subdiagonal -(q^i-q^-i)^2.
PaperMatrix build_Aprime(const CyclotomicField& f, int j);

/// ad(X) on weight 0 of ad_j computed by the algebra, in the bases
///   w_i = (-1)^i (X-b_j) pr_j K^i          (j in H)
///   w_i = (-1)^i pr_-1 K^i                 (j = -1)
/// and, for A', { (-1)^i pr_j K^i ; (-1)^(i+1) (X-b_j) pr_j K^i }.
Matrix machinery_A(const AdjointContext& ctx, int j);
Matrix machinery_Aprime(const AdjointContext& ctx, int j);

struct Determinant {
    Cyc value;
    /// det D(j, k) with b_j replaced by a variable, recovered by interpolation.
    linalg::Poly in_b;
    /// Only even powers of the variable occur.
    bool even = false;
};
Determinant det_d(const CyclotomicField& f, int j, int k);

/// j in H' with d(j, k) = 0.
std::vector<int> vanishing_blocks(const CyclotomicField& f, int k);

/// Signs decided at q = exp(pi i (l+1)/l) by interval arithmetic.
struct SignCertificate {
    bool holds = false;
    int precision_bits = 0;
    /// Largest interval radius among the certified quantities.
    double max_radius = 0;
    std::string detail;
};

/// Embedding exponent e with zeta -> exp(2 pi i e / l) sending q to exp(pi i (l+1)/l).
long special_embedding(const CyclotomicField& f);

/// Certified sign of a real element at the special embedding. Precision is
/// doubled from 64 up to 4096 bits; SignInconclusive after that. Throws
/// InvalidArgument if the element is not real.
int certified_sign(const Cyc& a, int* precision_bits = nullptr, double* radius = nullptr);

/// (t)_q > 0 iff t odd, for t in [1, l-1].
SignCertificate sign_lemma(const CyclotomicField& f);

struct CorankResult {
    int corank = 0;
    /// D(j, k) with column t divided by -(q^t-q^-t)^2: exact semisimplicity and corank.
    bool normalized_d_semisimple = false;
    int normalized_d_corank = 0;
    /// Divisors positive, off-diagonal entries real and negative.
    SignCertificate signs;
};
/// Exact corank of A'(j) - b_k, plus the hypotheses of the corank-3 argument.
CorankResult corank_check(const CyclotomicField& f, int j, int k);

struct CheckRecord {
    std::string name;
    std::string citation;
    bool pass = false;
    nlohmann::json expected;
    nlohmann::json computed;
    nlohmann::json witness;
};

struct Report {
    int l = 0;
    std::vector<CheckRecord> checks;
    std::optional<Multiset> decomposition;

    bool passed() const;
};

std::string report_to_json(const Report& r, int indent = 2);
Report report_from_json(const std::string& text);
std::string report_to_text(const Report& r);

/// Names of all checks in execution order.
const std::vector<std::string>& check_names();

struct VerifyOptions {
    /// Subset of check_names(); empty means all.
    std::vector<std::string> checks;
    /// Also verify the split certificates of the full decomposition.
    bool certificates = false;
    /// Called with the check name before it runs.
    std::function<void(const std::string&)> progress;
};

Report run_verification(const AdjointContext& ctx, const VerifyOptions& opts = {});

/// Matrix entries as nested arrays of Cyc strings.
nlohmann::json matrix_to_json(const CyclotomicField& f, const Matrix& m);
nlohmann::json multiset_to_json(const Multiset& ms);

}  // namespace uqa::verify

#endif  // UQADJOINT_VERIFY_HPP
