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

#ifndef UQADJOINT_MODCAT_HPP
#define UQADJOINT_MODCAT_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uqadjoint/graded.hpp"

namespace uqa::modcat {

enum class Direction { Lowering, Raising };
enum class Side { Upper, Lower };

/// M-(lam): v_0..v_(l-1) of weights lam - 2i, F v_i = v_(i+1), E v_i = (i)(lam-i+1) v_(i-1).
/// M+(lam) is the omega twist of M-(-lam), weights lam + 2i.
GradedModule verma(const CyclotomicField& f, int lambda, Direction dir);

/// L(lam): the head of M-(lam), of dimension (lam mod l) + 1.
GradedModule simple(const CyclotomicField& f, int lambda);

/// P(lam): for lam = -1 mod l this is L(lam). Otherwise a 2l-dimensional
/// extension of M-(lam0) by M-(2l-2-lam0) on which the Casimir is not
/// semisimple, shifted by lam - lam0.
GradedModule projective(const CyclotomicField& f, int lambda);

/// D(M): same weights, E acting by -q^w F^T and F by -q^(2-w) E^T.
GradedModule dual(const GradedModule& m);
/// D(phi) for phi: M -> N, a map D(N) -> D(M).
GradedMap dual_map(const GradedMap& phi);

/// A set of weight vectors generating M, chosen greedily from the standard basis
/// in order of decreasing weight.
struct Generator {
    int weight;
    std::vector<Cyc> vector;
};
std::vector<Generator> generators(const GradedModule& m);

/// Basis of the space of graded intertwiners M -> N.
std::vector<GradedMap> hom_space(const GradedModule& m, const GradedModule& n);

struct IsoResult {
    bool isomorphic = false;
    std::optional<GradedMap> witness;  // M -> N
};

/// Characters first, then a deterministic search over Hom(M, N). Throws
/// Inconclusive when the search fails although dim Hom(M,N) = dim Hom(N,M) > 0.
IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n);

/// Picks an invertible element of span(candidates), or nullopt. Tries the
/// basis, pairwise sums, then fixed small-integer combinations.
std::optional<GradedMap> find_invertible(const std::vector<GradedMap>& candidates);

/// Kernel of E (upper) or F (lower) on V_w, as columns.
Matrix singular_vectors(const GradedModule& m, int w, Side side);

WeightDims graded_character(const GradedModule& m);

struct ModuleLabel {
    enum class Kind { Projective, Simple };
    Kind kind = Kind::Simple;
    int weight = 0;

    friend auto operator<=>(const ModuleLabel&, const ModuleLabel&) = default;
};

using Multiset = std::map<ModuleLabel, int>;

ModuleLabel simple_label(int lambda);
ModuleLabel projective_label(int lambda);
/// L(lam) with lam = -1 mod l is also projective; it is reported as P(lam).
ModuleLabel canonical(const ModuleLabel& label, int l);
Multiset canonical(const Multiset& ms, int l);
std::string to_string(const ModuleLabel& label);
std::string to_string(const Multiset& ms);

GradedModule model(const CyclotomicField& f, const ModuleLabel& label);
std::size_t label_dimension(const ModuleLabel& label, int l);

/// Character of L(lam): weights lam, lam-2, ..., lam - 2 (lam mod l).
WeightDims simple_character(int lambda, int l);

/// Composition factors by peeling simple characters from the top weight down.
Multiset composition_multiplicities(const WeightDims& character, int l);
Multiset composition_multiplicities(const GradedModule& m);

std::string module_to_json(const GradedModule& m);
GradedModule module_from_json(const CyclotomicField& f, const std::string& text);

}  // namespace uqa::modcat

#endif  // UQADJOINT_MODCAT_HPP
