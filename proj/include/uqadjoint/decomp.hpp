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

#ifndef UQADJOINT_DECOMP_HPP
#define UQADJOINT_DECOMP_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uqadjoint/modcat.hpp"
#include "uqadjoint/smallqg.hpp"

namespace uqa::decomp {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using linalg::Matrix;
using modcat::GradedMap;
using modcat::GradedModule;
using modcat::ModuleLabel;
using modcat::Multiset;
using modcat::Submodule;

/// Basis of End(M) as graded intertwiners.
struct EndAlgebra {
    std::vector<GradedMap> basis;
    std::size_t dim() const noexcept { return basis.size(); }
};

EndAlgebra endomorphism_algebra(const GradedModule& m);

/// Jacobson radical as the null space of (x, y) -> trace(xy). Every returned
/// element is checked to be nilpotent.
std::vector<GradedMap> radical(const EndAlgebra& a);

/// dim End(M) - dim rad End(M) == 1.
bool is_indecomposable(const GradedModule& m);

struct FittingSplit {
    Submodule kernel_part;  // ker phi^d
    Submodule image_part;   // im phi^d
};

/// M = ker(phi^d) + im(phi^d), d = dim M; nullopt when phi is nilpotent or invertible.
std::optional<FittingSplit> fitting_split(const GradedModule& m, const GradedMap& phi);

struct Candidate {
    ModuleLabel label;
    GradedModule model;
};

/// P(lam) for even lam in [0, l-1] and L(lam) for even lam in [1-l, 2l-2],
/// projectives first, then by decreasing dimension.
std::vector<Candidate> adjoint_candidates(const CyclotomicField& f);

struct SplitCertificate {
    ModuleLabel label;
    GradedMap injection;   // model -> M
    GradedMap projection;  // M -> model, projection o injection = id
};

struct Decomposition {
    Multiset summands;
    std::vector<SplitCertificate> certificates;
};

/// A direct summand of an ambient module: its inclusion and the projection
/// onto it along the other pieces of the same split.
struct Piece {
    Submodule sub;
    GradedMap projection;
    int key = 0;
};

/// The whole module as a single piece.
Piece whole(const GradedModule& m);

/// Pieces im(e) for a complete family of orthogonal idempotent endomorphisms.
/// Empty images are dropped; keys are the indices into the family.
std::vector<Piece> split_by_idempotents(const GradedModule& m, const std::vector<GradedMap>& idempotents);

/// Refines each piece into generalized eigenspaces of the module Casimir for
/// the given eigenvalues; the key becomes key * 1000 + eigenvalue index.
/// Throws UnidentifiedSummand if some eigenvalue is missing from the list.
std::vector<Piece> split_by_casimir(const GradedModule& m, const std::vector<Piece>& pieces,
                                    const std::vector<Cyc>& eigenvalues);

/// Distinct Casimir eigenvalues of the candidate models.
std::vector<Cyc> candidate_eigenvalues(const std::vector<Candidate>& candidates);

/// Peel-off decomposition. Without a presplit the module is first cut along
/// the Casimir eigenvalues of the candidates.
Decomposition decompose(const GradedModule& m, const std::vector<Candidate>& candidates,
                        const std::vector<Piece>* presplit = nullptr);

/// projection o injection = id for every certificate, idempotents orthogonal
/// and summing to the identity of M.
bool verify_certificates(const Decomposition& d, const GradedModule& m);

/// [{"kind":"P"|"L","weight":w,"multiplicity":k}], P before L, then by weight.
std::string decomposition_json(const Multiset& ms);
Multiset decomposition_from_json(const std::string& text);

/// Isomorphism through aligned presplits: pieces with equal keys are compared
/// and the piecewise witnesses are assembled and checked globally.
modcat::IsoResult is_isomorphic_presplit(const GradedModule& m, const std::vector<Piece>& pm,
                                         const GradedModule& n, const std::vector<Piece>& pn);

// ---------------------------------------------------------------------------
// The adjoint representation

/// u, ad, the Casimir blocks and the block pieces ad_j, built once.
class AdjointContext {
public:
    explicit AdjointContext(const CyclotomicField& f);

    const CyclotomicField& field() const noexcept { return *field_; }
    const smallqg::SmallQuantumGroup& algebra() const noexcept { return *u_; }
    const smallqg::AdjointRep& ad() const noexcept { return *ad_; }
    const GradedModule& module() const noexcept { return ad_->module(); }
    const smallqg::CasimirBlocks& casimir_blocks() const noexcept { return cb_; }

    /// pr_j and left multiplication by X on ad.
    const GradedMap& projector(int j) const;
    const GradedMap& left_casimir() const;
    /// ad_j = pr_j(ad) with its projection.
    const Piece& block(int j) const;
    const smallqg::BlockIndex& block_index(int j) const;

    /// ad_j cut into Casimir generalized eigenspaces ad_j(k), lifted to ad.
    /// Without j, the pieces of all blocks. Cached per block.
    std::vector<Piece> presplit(std::optional<int> j = std::nullopt) const;
    /// The distinct Casimir eigenvalues b_j, j in H'.
    std::vector<Cyc> eigenvalues() const;

private:
    const CyclotomicField* field_;
    std::unique_ptr<smallqg::SmallQuantumGroup> u_;
    std::unique_ptr<smallqg::AdjointRep> ad_;
    smallqg::CasimirBlocks cb_;
    mutable std::map<int, GradedMap> projectors_;
    mutable std::optional<GradedMap> left_casimir_;
    mutable std::map<int, Piece> blocks_;
    mutable std::map<int, std::vector<Piece>> presplits_;
};

Decomposition decompose_adjoint(const AdjointContext& ctx);
Decomposition decompose_block(const AdjointContext& ctx, int j);

/// ad_j, M_j = ker(X - b_j) and N_j = (X - b_j) ad_j, as submodules of ad_j.
struct BlockFiltration {
    smallqg::BlockIndex j;
    Submodule block;  // ad_j inside ad
    Submodule m;      // M_j inside ad_j
    Submodule n;      // N_j inside ad_j
    bool quotient_isomorphic = false;  // ad_j / M_j = N_j
};

BlockFiltration casimir_block_filtration(const AdjointContext& ctx, int j, bool check_quotient = true);
Decomposition decompose_N_j(const AdjointContext& ctx, int j);

}  // namespace uqa::decomp

#endif  // UQADJOINT_DECOMP_HPP
