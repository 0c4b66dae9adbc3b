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

#ifndef UQADJOINT_GRADED_HPP
#define UQADJOINT_GRADED_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uqadjoint/linalg.hpp"

namespace uqa::modcat {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using cyclotomic::Rat;
using linalg::Matrix;

using WeightDims = std::map<int, std::size_t>;

/// A finite-dimensional Z-graded module: weight spaces V_w with E: V_w -> V_{w+2}
/// and F: V_w -> V_{w-2}. K is implicit, acting on V_w by q^w.
///
/// Blocks are stored only where both ends are nonzero; e(w)/f(w) hand back a
/// correctly shaped zero matrix otherwise.
class GradedModule {
public:
    explicit GradedModule(const CyclotomicField& field) : field_(&field) {}

    const CyclotomicField& field() const noexcept { return *field_; }

    void set_dim(int w, std::size_t d);
    std::size_t dim(int w) const;
    std::size_t total_dim() const;
    const WeightDims& weight_dims() const noexcept { return dims_; }
    std::vector<int> weights() const;
    bool is_zero() const noexcept { return dims_.empty(); }

    Matrix e(int w) const;
    Matrix f(int w) const;
    void set_e(int w, Matrix m);
    void set_f(int w, Matrix m);

    /// Casimir EF + (q^-1 K + q K^-1)/(q - q^-1)^2 restricted to V_w.
    Matrix casimir(int w) const;

    /// First violated invariant, or nullopt: block shapes, [E,F] = (w)_q on
    /// every V_w, and E^l = F^l = 0.
    std::optional<std::string> check_invariants() const;

private:
    const CyclotomicField* field_;
    WeightDims dims_;
    std::map<int, Matrix> e_;
    std::map<int, Matrix> f_;
};

/// A weight-preserving linear map src -> dst, one block per weight present in both.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(WeightDims src, WeightDims dst);

    static GradedMap zero(const GradedModule& src, const GradedModule& dst);
    static GradedMap identity(const GradedModule& m);

    const WeightDims& src_dims() const noexcept { return src_; }
    const WeightDims& dst_dims() const noexcept { return dst_; }

    /// dst_w x src_w block (zero when absent).
    Matrix block(int w) const;
    void set_block(int w, Matrix m);
    const std::map<int, Matrix>& blocks() const noexcept { return blocks_; }

    bool is_zero() const;
    /// Square blocks at every weight, each invertible.
    bool is_invertible() const;
    std::optional<GradedMap> inverse() const;

    GradedMap& operator+=(const GradedMap& o);
    GradedMap& operator-=(const GradedMap& o);
    friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
    friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
    friend GradedMap operator*(const Cyc& s, GradedMap a);
    friend bool operator==(const GradedMap& a, const GradedMap& b);

    /// this ∘ rhs
    GradedMap compose(const GradedMap& rhs) const;
    /// Trace, summed over weights (square maps only).
    Cyc trace() const;

private:
    WeightDims src_;
    WeightDims dst_;
    std::map<int, Matrix> blocks_;
};

/// Intertwines E and F between the two modules.
bool is_intertwiner(const GradedMap& phi, const GradedModule& src, const GradedModule& dst);

/// A graded subspace closed under E and F, with its own module structure.
/// Bases are kept in reduced echelon form, so coordinates of a vector of the
/// subspace are its entries at the pivot positions.
struct Submodule {
    GradedModule module;
    GradedMap inclusion;    // sub -> ambient
    GradedMap coordinates;  // ambient -> sub; a left inverse of inclusion
};

/// Submodule spanned by the given columns per weight; fails unless closed under E, F.
Submodule submodule(const GradedModule& m, const std::map<int, Matrix>& spanning);
/// Smallest submodule containing the given columns (iterated image-and-span).
Submodule generated_submodule(const GradedModule& m, const std::map<int, Matrix>& seeds);
/// Image of a module map phi: src -> m.
Submodule image(const GradedMap& phi, const GradedModule& m);
/// Kernel of a module map phi: m -> dst.
Submodule kernel(const GradedMap& phi, const GradedModule& m);

struct Quotient {
    GradedModule module;
    GradedMap projection;  // ambient -> quotient
};
Quotient quotient(const GradedModule& m, const Submodule& sub);

/// Endomorphism of m that preserves sub, restricted to it.
GradedMap restrict_map(const GradedMap& phi, const Submodule& sub);

GradedModule direct_sum(std::span<const GradedModule> parts);
/// All weights moved by s; s must be a multiple of l to stay in the category.
GradedModule shift(const GradedModule& m, int s);

/// Module Casimir as an endomorphism.
GradedMap casimir_endomorphism(const GradedModule& m);

}  // namespace uqa::modcat

#endif  // UQADJOINT_GRADED_HPP
