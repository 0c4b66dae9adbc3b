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

#ifndef UQADJOINT_SMALLQG_HPP
#define UQADJOINT_SMALLQG_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uqadjoint/graded.hpp"
#include "uqadjoint/linalg.hpp"

namespace uqa::smallqg {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using cyclotomic::Rat;
using linalg::Matrix;
using modcat::GradedMap;
using modcat::GradedModule;

/// PBW monomial E^e F^f K^k with all exponents in [0, l).
struct Monomial {
    int e = 0;
    int f = 0;
    int k = 0;

    int degree() const noexcept { return 2 * e - 2 * f; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

std::string to_string(const Monomial& m);

/// Sparse linear combination of PBW monomials; zero coefficients are never stored.
class AlgElem {
public:
    AlgElem() = default;
    AlgElem(const Monomial& m, const Cyc& c);

    const std::map<Monomial, Cyc>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Cyc coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Cyc& c);

    AlgElem& operator+=(const AlgElem& o);
    AlgElem& operator-=(const AlgElem& o);
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    friend AlgElem operator*(const Cyc& s, const AlgElem& a);
    friend bool operator==(const AlgElem& a, const AlgElem& b);

    std::string to_string() const;

private:
    std::map<Monomial, Cyc> terms_;
};

/// Sparse element of u ⊗ u.
class TensorElem {
public:
    using Key = std::pair<Monomial, Monomial>;

    const std::map<Key, Cyc>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    void add_term(const Monomial& a, const Monomial& b, const Cyc& c);
    TensorElem& operator+=(const TensorElem& o);
    friend bool operator==(const TensorElem& a, const TensorElem& b);

private:
    std::map<Key, Cyc> terms_;
};

enum class Letter : std::uint8_t { E, F, K };

enum class RewriteStrategy { Leftmost, Rightmost, Random };

/// Label j of a Casimir block with its data. For the canonical choice of
/// labels J = j, J' = l - 2 - j; the Steinberg block j = -1 has J = J' = l - 1.
struct BlockIndex {
    int j = 0;
    int J = 0;
    int J_prime = 0;
    Cyc b;
    int root_multiplicity = 2;

    bool is_steinberg() const noexcept { return j == -1; }
};

/// Canonical H' = {-1, 0, 1, ..., (l-3)/2}.
std::vector<BlockIndex> canonical_blocks(const CyclotomicField& f);
BlockIndex block_index(const CyclotomicField& f, int j);

/// The small quantum group u_q(sl2) in the PBW basis E^a F^b K^c.
class SmallQuantumGroup {
public:
    explicit SmallQuantumGroup(const CyclotomicField& field);

    const CyclotomicField& field() const noexcept { return *field_; }
    int l() const noexcept { return field_->l(); }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<Monomial>& basis() const noexcept { return basis_; }

    AlgElem one() const;
    AlgElem scalar(const Cyc& c) const;
    AlgElem E() const;
    AlgElem F() const;
    AlgElem K() const;
    AlgElem K_inv() const;
    AlgElem mono(const Monomial& m) const { return AlgElem(m, field_->one()); }
    /// K^i with i taken modulo l.
    AlgElem K_pow(long i) const;

    AlgElem multiply(const AlgElem& x, const AlgElem& y) const;
    AlgElem multiply(const Monomial& a, const Monomial& b) const;
    AlgElem power(const AlgElem& x, unsigned k) const;

    /// Normal form of a word in E, F, K by one-step rewriting:
    ///   KE -> q^2 EK, KF -> q^-2 FK, FE -> EF - (K - K^(l-1))/(q - q^-1),
    ///   E^l -> 0, F^l -> 0, K^l -> 1.
    /// The strategy only selects which redex is rewritten next.
    AlgElem normalize_word(std::span<const Letter> word, RewriteStrategy strategy,
                           std::mt19937_64* rng = nullptr) const;

    TensorElem coproduct(const AlgElem& x) const;
    AlgElem antipode(const AlgElem& x) const;
    Cyc counit(const AlgElem& x) const;
    AlgElem omega(const AlgElem& x) const;
    TensorElem tensor_multiply(const TensorElem& a, const TensorElem& b) const;

    /// EF + (q^-1 K + q K^-1)/(q - q^-1)^2.
    AlgElem casimir() const;
    /// FE + (q K + q^-1 K^-1)/(q - q^-1)^2, the second expression of the same element.
    AlgElem casimir_via_fe() const;

    AlgElem ad_E(const AlgElem& x) const;
    AlgElem ad_F(const AlgElem& x) const;
    AlgElem ad_K(const AlgElem& x) const;
    /// Casimir acting through the adjoint action.
    AlgElem ad_casimir(const AlgElem& x) const;

    /// Closed-form right-hand side for ad(X) K^i, 1 <= i <= l:
    ///   b_{2i-2} K^i - (q^i - q^-i)^2 X K^(i+1) + (i)_q (i+1)_q K^(i+2).
    AlgElem ad_casimir_on_K_powers(int i) const;

private:
    const CyclotomicField* field_;
    std::vector<Monomial> basis_;
    // fe_table_[b][a] = normal form of F^b E^a.
    std::vector<std::vector<AlgElem>> fe_table_;
};

/// ad as a graded module on the PBW basis; basis of V_w lists the monomials of
/// degree w in increasing order.
class AdjointRep {
public:
    explicit AdjointRep(const SmallQuantumGroup& u);

    const SmallQuantumGroup& algebra() const noexcept { return *u_; }
    const GradedModule& module() const noexcept { return module_; }
    const std::vector<Monomial>& basis(int w) const;
    /// Position of a monomial inside its weight space.
    std::size_t index(const Monomial& m) const;

    /// Coordinates of a homogeneous element of degree w.
    std::vector<Cyc> coordinates(const AlgElem& x, int w) const;
    AlgElem element(int w, const std::vector<Cyc>& coords) const;

    /// Left multiplication by a degree-zero element as a linear map on ad.
    /// It is a module endomorphism whenever the element is central.
    GradedMap left_multiplication(const AlgElem& z) const;

private:
    const SmallQuantumGroup* u_;
    GradedModule module_;
    std::map<int, std::vector<Monomial>> basis_;
    std::map<Monomial, std::size_t> index_;
};

/// Minimal polynomial of the Casimir, its root multiplicities, and the
/// central idempotents cutting ad into blocks.
struct CasimirBlocks {
    linalg::Poly minimal_polynomial;
    std::vector<BlockIndex> blocks;
    /// idempotents[i] = e_i(X), the partial-fraction idempotent of blocks[i].
    std::vector<AlgElem> idempotents;
    /// The polynomials e_i.
    std::vector<linalg::Poly> idempotent_polys;
};

/// Computes the minimal polynomial of X from its powers, factors it against the
/// candidate roots b_j, and builds the idempotents by partial fractions.
CasimirBlocks casimir_blocks(const SmallQuantumGroup& u);

/// pr_j as an endomorphism of ad.
GradedMap block_projector(const AdjointRep& ad, const CasimirBlocks& cb, int j);

/// JSON list of [a, b, product] structure constants for all pairs of basis
/// monomials (l^6 entries; meant for small l).
std::string structure_constants_json(const SmallQuantumGroup& u);

}  // namespace uqa::smallqg

#endif  // UQADJOINT_SMALLQG_HPP
