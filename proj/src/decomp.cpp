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

#include "uqadjoint/decomp.hpp"

#include <algorithm>

#include "json.hpp"
#include "uqadjoint/error.hpp"

namespace uqa::decomp {

using modcat::WeightDims;

namespace {

Submodule nest(const Submodule& outer, const Submodule& inner) {
    return Submodule{inner.module, outer.inclusion.compose(inner.inclusion), inner.coordinates.compose(outer.coordinates)};
}

Submodule whole_submodule(const GradedModule& m) {
    return Submodule{m, GradedMap::identity(m), GradedMap::identity(m)};
}

std::string character_string(const WeightDims& ch) {
    std::string out = "{";
    for (const auto& [w, d] : ch) {
        if (out.size() > 1) out += ", ";
        out += std::to_string(w) + ":" + std::to_string(d);
    }
    return out + "}";
}

bool character_fits(const GradedModule& small, const GradedModule& big) {
    for (const auto& [w, d] : small.weight_dims()) {
        if (big.dim(w) < d) return false;
    }
    return true;
}

// Whether b is an eigenvalue of the Casimir of m (checked at one weight of m
// that the candidate also occupies).
bool has_casimir_eigenvalue(const GradedModule& m, const GradedModule& cand, const Cyc& b) {
    for (const auto& [w, d] : cand.weight_dims()) {
        if (m.dim(w) == 0) continue;
        const Matrix shifted = m.casimir(w) - b * Matrix::identity(m.field(), m.dim(w));
        return linalg::rank(shifted) < m.dim(w);
    }
    return false;
}

Cyc model_eigenvalue(const Candidate& c) {
    return c.model.field().casimir_root(c.label.weight);
}

// Per-weight inverse of the concatenated inclusions gives the projections.
std::vector<GradedMap> complementary_projections(const GradedModule& m, const std::vector<Submodule>& parts) {
    std::vector<GradedMap> out;
    for (const auto& p : parts) out.emplace_back(m.weight_dims(), p.module.weight_dims());
    for (const auto& [w, n] : m.weight_dims()) {
        Matrix all(n, 0);
        for (const auto& p : parts) {
            if (p.module.dim(w) > 0) all = all.hcat(p.inclusion.block(w));
        }
        if (all.cols() != n) fail(ErrorCode::Internal, "pieces do not span weight " + std::to_string(w));
        auto inv = linalg::inverse(all);
        if (!inv) fail(ErrorCode::Internal, "pieces are not independent at weight " + std::to_string(w));
        std::size_t r0 = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::size_t d = parts[i].module.dim(w);
            if (d == 0) continue;
            out[i].set_block(w, inv->block(r0, 0, d, n));
            r0 += d;
        }
    }
    return out;
}

Cyc trace_of_product(const GradedMap& g, const GradedMap& f) {
    Cyc t;
    for (const auto& [w, gb] : g.blocks()) {
        const Matrix fb = f.block(w);
        for (std::size_t i = 0; i < gb.rows(); ++i) {
            for (std::size_t k = 0; k < gb.cols(); ++k) {
                if (!gb(i, k).is_zero() && !fb(k, i).is_zero()) t += gb(i, k) * fb(k, i);
            }
        }
    }
    return t;
}

Matrix generalized_kernel(const Matrix& a, const CyclotomicField& f) {
    Matrix power = a;
    Matrix ker = linalg::nullspace(power, f);
    for (std::size_t k = 1; k < a.rows(); ++k) {
        power = power * a;
        Matrix next = linalg::nullspace(power, f);
        if (next.cols() == ker.cols()) break;
        ker = std::move(next);
    }
    return ker;
}

}  // namespace

// ---------------------------------------------------------------------------
// Endomorphism algebra

EndAlgebra endomorphism_algebra(const GradedModule& m) { return EndAlgebra{modcat::hom_space(m, m)}; }

std::vector<GradedMap> radical(const EndAlgebra& a) {
    const std::size_t n = a.dim();
    if (n == 0) return {};
    const CyclotomicField* fld = nullptr;
    for (const auto& x : a.basis) {
        for (const auto& [w, b] : x.blocks()) {
            for (std::size_t i = 0; i < b.rows() && !fld; ++i) {
                for (std::size_t j = 0; j < b.cols() && !fld; ++j) fld = b(i, j).field();
            }
        }
    }
    if (!fld) return {};
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            gram(i, j) = a.basis[i].compose(a.basis[j]).trace();
            gram(j, i) = gram(i, j);
        }
    }
    const Matrix null = linalg::nullspace(gram, *fld);
    std::vector<GradedMap> out;
    for (std::size_t c = 0; c < null.cols(); ++c) {
        GradedMap x(a.basis[0].src_dims(), a.basis[0].dst_dims());
        for (std::size_t i = 0; i < n; ++i) {
            if (!null(i, c).is_zero()) x += null(i, c) * a.basis[i];
        }
        for (const auto& [w, b] : x.blocks()) {
            if (!linalg::power(b, static_cast<unsigned>(b.rows()), *fld).is_zero()) {
                fail(ErrorCode::Internal, "trace-form radical element is not nilpotent");
            }
        }
        out.push_back(std::move(x));
    }
    return out;
}

bool is_indecomposable(const GradedModule& m) {
    if (m.is_zero()) return false;
    const EndAlgebra a = endomorphism_algebra(m);
    return a.dim() - radical(a).size() == 1;
}

std::optional<FittingSplit> fitting_split(const GradedModule& m, const GradedMap& phi) {
    GradedMap p(m.weight_dims(), m.weight_dims());
    for (const auto& [w, d] : m.weight_dims()) {
        p.set_block(w, linalg::power(phi.block(w), static_cast<unsigned>(d), m.field()));
    }
    Submodule ker = modcat::kernel(p, m);
    const std::size_t kd = ker.module.total_dim();
    if (kd == 0 || kd == m.total_dim()) return std::nullopt;
    Submodule img = modcat::image(p, m);
    return FittingSplit{std::move(ker), std::move(img)};
}

// ---------------------------------------------------------------------------
// Candidates and pieces

std::vector<Candidate> adjoint_candidates(const CyclotomicField& f) {
    const int l = f.l();
    std::vector<Candidate> out;
    for (int lam = 0; lam <= l - 1; lam += 2) {
        const ModuleLabel lab = modcat::projective_label(lam);
        out.push_back({lab, modcat::model(f, lab)});
    }
    for (int lam = 2 * l - 2; lam >= 1 - l; lam -= 2) {
        // L(l-1) is P(l-1), already listed.
        if (lam == l - 1) continue;
        const ModuleLabel lab = modcat::simple_label(lam);
        out.push_back({lab, modcat::model(f, lab)});
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.label.kind != b.label.kind) return a.label.kind == ModuleLabel::Kind::Projective;
        return a.model.total_dim() > b.model.total_dim();
    });
    return out;
}

std::vector<Cyc> candidate_eigenvalues(const std::vector<Candidate>& candidates) {
    std::vector<Cyc> out;
    for (const auto& c : candidates) {
        const Cyc b = model_eigenvalue(c);
        if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    }
    return out;
}

Piece whole(const GradedModule& m) { return Piece{whole_submodule(m), GradedMap::identity(m), 0}; }

std::vector<Piece> split_by_idempotents(const GradedModule& m, const std::vector<GradedMap>& idempotents) {
    std::vector<Piece> out;
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
        Submodule sub = modcat::image(idempotents[i], m);
        if (sub.module.is_zero()) continue;
        GradedMap proj = sub.coordinates.compose(idempotents[i]);
        out.push_back(Piece{std::move(sub), std::move(proj), static_cast<int>(i)});
    }
    return out;
}

std::vector<Piece> split_by_casimir(const GradedModule& m, const std::vector<Piece>& pieces,
                                    const std::vector<Cyc>& eigenvalues) {
    (void)m;
    std::vector<Piece> out;
    for (const auto& p : pieces) {
        const GradedModule& pm = p.sub.module;
        const CyclotomicField& f = pm.field();
        std::vector<Submodule> subs;
        std::vector<int> keys;
        std::size_t total = 0;
        for (std::size_t t = 0; t < eigenvalues.size(); ++t) {
            std::map<int, Matrix> span;
            for (const auto& [w, d] : pm.weight_dims()) {
                span[w] = generalized_kernel(pm.casimir(w) - eigenvalues[t] * Matrix::identity(f, d), f);
            }
            Submodule s = modcat::submodule(pm, span);
            if (s.module.is_zero()) continue;
            total += s.module.total_dim();
            subs.push_back(std::move(s));
            keys.push_back(p.key * 1000 + static_cast<int>(t));
        }
        if (total != pm.total_dim()) {
            fail(ErrorCode::UnidentifiedSummand, "Casimir has eigenvalues outside the candidate family on a piece of dim " +
                                                     std::to_string(pm.total_dim()));
        }
        const auto projs = complementary_projections(pm, subs);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            out.push_back(Piece{nest(p.sub, subs[i]), projs[i].compose(p.projection), keys[i]});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Peel-off

Decomposition decompose(const GradedModule& m, const std::vector<Candidate>& candidates,
                        const std::vector<Piece>* presplit) {
    std::vector<const Candidate*> order;
    for (const auto& c : candidates) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(), [](const Candidate* a, const Candidate* b) {
        if (a->label.kind != b->label.kind) return a->label.kind == ModuleLabel::Kind::Projective;
        return a->model.total_dim() > b->model.total_dim();
    });

    std::vector<Piece> own;
    if (!presplit) {
        if (m.is_zero()) return {};
        own = split_by_casimir(m, {whole(m)}, candidate_eigenvalues(candidates));
        presplit = &own;
    }

    Decomposition out;
    for (const auto& piece : *presplit) {
        // Current remainder R as a submodule of the piece, with the projection
        // of the piece onto R along the summands split off so far.
        GradedModule r = piece.sub.module;
        GradedMap r_incl = GradedMap::identity(r);
        GradedMap r_proj = GradedMap::identity(r);
        for (const Candidate* cand : order) {
            const Cyc b = model_eigenvalue(*cand);
            if (!has_casimir_eigenvalue(r, cand->model, b)) continue;
            if (!character_fits(cand->model, r)) continue;
            const auto fs = modcat::hom_space(cand->model, r);
            if (fs.empty()) continue;
            const auto gs = modcat::hom_space(r, cand->model);
            if (gs.empty()) continue;
            // End(C) is local, so g o f is a unit iff its trace is nonzero, and
            // the multiplicity of C in R is the rank of this pairing.
            Matrix pairing(gs.size(), fs.size());
            for (std::size_t i = 0; i < gs.size(); ++i) {
                for (std::size_t j = 0; j < fs.size(); ++j) pairing(i, j) = trace_of_product(gs[i], fs[j]);
            }
            Matrix rows_echelon = pairing.transpose();
            const auto row_pivots = linalg::rref(rows_echelon);
            Matrix cols_echelon = pairing;
            const auto col_pivots = linalg::rref(cols_echelon);
            const std::size_t mult = col_pivots.size();
            if (mult == 0) continue;

            const std::vector<GradedModule> copies(mult, cand->model);
            const GradedModule cr = modcat::direct_sum(copies);
            GradedMap f_all(cr.weight_dims(), r.weight_dims());
            GradedMap g_all(r.weight_dims(), cr.weight_dims());
            for (const auto& [w, d] : cr.weight_dims()) {
                Matrix fb(r.dim(w), 0), gb(0, r.dim(w));
                for (std::size_t t = 0; t < mult; ++t) {
                    fb = fb.hcat(fs[col_pivots[t]].block(w));
                    gb = gb.vcat(gs[row_pivots[t]].block(w));
                }
                f_all.set_block(w, std::move(fb));
                g_all.set_block(w, std::move(gb));
            }
            const auto gf_inv = g_all.compose(f_all).inverse();
            if (!gf_inv) fail(ErrorCode::Internal, "split pairing is singular for " + modcat::to_string(cand->label));
            const GradedMap g_split = gf_inv->compose(g_all);

            const GradedMap to_ambient = piece.sub.inclusion.compose(r_incl);
            const GradedMap from_ambient = g_split.compose(r_proj.compose(piece.projection));
            for (std::size_t t = 0; t < mult; ++t) {
                GradedMap proj_t(m.weight_dims(), cand->model.weight_dims());
                for (const auto& [w, d] : cand->model.weight_dims()) {
                    proj_t.set_block(w, from_ambient.block(w).block(t * d, 0, d, m.dim(w)));
                }
                out.certificates.push_back(
                    SplitCertificate{cand->label, to_ambient.compose(fs[col_pivots[t]]), std::move(proj_t)});
            }
            out.summands[cand->label] += static_cast<int>(mult);
            const GradedMap pi = GradedMap::identity(r) - f_all.compose(g_split);
            Submodule k = modcat::kernel(g_split, r);
            r_proj = k.coordinates.compose(pi).compose(r_proj);
            r_incl = r_incl.compose(k.inclusion);
            r = std::move(k.module);
            if (r.is_zero()) break;
        }
        if (!r.is_zero()) {
            fail(ErrorCode::UnidentifiedSummand, "remainder of dim " + std::to_string(r.total_dim()) +
                                                     " with character " + character_string(r.weight_dims()));
        }
    }
    return out;
}

bool verify_certificates(const Decomposition& d, const GradedModule& m) {
    GradedMap sum(m.weight_dims(), m.weight_dims());
    std::size_t dims = 0;
    for (const auto& c : d.certificates) {
        const GradedMap pi = c.projection.compose(c.injection);
        if (!(pi == GradedMap::identity(modcat::model(m.field(), c.label)))) return false;
        if (!modcat::is_intertwiner(c.injection, modcat::model(m.field(), c.label), m)) return false;
        sum += c.injection.compose(c.projection);
        for (const auto& [w, k] : c.injection.src_dims()) dims += k;
    }
    return dims == m.total_dim() && sum == GradedMap::identity(m);
}

std::string decomposition_json(const Multiset& ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [lab, k] : ms) {
        out.push_back({{"kind", lab.kind == ModuleLabel::Kind::Projective ? "P" : "L"},
                       {"weight", lab.weight},
                       {"multiplicity", k}});
    }
    return out.dump();
}

Multiset decomposition_from_json(const std::string& text) {
    Multiset out;
    try {
        for (const auto& e : nlohmann::json::parse(text)) {
            const std::string kind = e.at("kind").get<std::string>();
            if (kind != "P" && kind != "L") fail(ErrorCode::InvalidArgument, "unknown module kind " + kind);
            const int w = e.at("weight").get<int>();
            out[kind == "P" ? modcat::projective_label(w) : modcat::simple_label(w)] += e.at("multiplicity").get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("bad decomposition JSON: ") + e.what());
    }
    return out;
}

modcat::IsoResult is_isomorphic_presplit(const GradedModule& m, const std::vector<Piece>& pm,
                                         const GradedModule& n, const std::vector<Piece>& pn) {
    if (m.weight_dims() != n.weight_dims()) return {};
    std::map<int, const Piece*> by_key;
    for (const auto& p : pn) by_key[p.key] = &p;
    if (by_key.size() != pm.size()) return {};
    GradedMap witness(m.weight_dims(), n.weight_dims());
    for (const auto& p : pm) {
        auto it = by_key.find(p.key);
        if (it == by_key.end()) return {};
        const auto res = modcat::is_isomorphic(p.sub.module, it->second->sub.module);
        if (!res.isomorphic) return {};
        witness += it->second->sub.inclusion.compose(res.witness->compose(p.projection));
    }
    if (!modcat::is_intertwiner(witness, m, n) || !witness.is_invertible()) {
        fail(ErrorCode::Internal, "assembled isomorphism failed its global check");
    }
    return {true, std::move(witness)};
}

// ---------------------------------------------------------------------------
// Adjoint representation

AdjointContext::AdjointContext(const CyclotomicField& f)
    : field_(&f),
      u_(std::make_unique<smallqg::SmallQuantumGroup>(f)),
      ad_(std::make_unique<smallqg::AdjointRep>(*u_)),
      cb_(smallqg::casimir_blocks(*u_)) {}

const smallqg::BlockIndex& AdjointContext::block_index(int j) const {
    for (const auto& b : cb_.blocks) {
        if (b.j == j) return b;
    }
    fail(ErrorCode::InvalidArgument, "no Casimir block with label " + std::to_string(j));
}

const GradedMap& AdjointContext::projector(int j) const {
    auto it = projectors_.find(j);
    if (it == projectors_.end()) it = projectors_.emplace(j, smallqg::block_projector(*ad_, cb_, j)).first;
    return it->second;
}

const GradedMap& AdjointContext::left_casimir() const {
    if (!left_casimir_) left_casimir_ = ad_->left_multiplication(u_->casimir());
    return *left_casimir_;
}

const Piece& AdjointContext::block(int j) const {
    auto it = blocks_.find(j);
    if (it == blocks_.end()) {
        const GradedMap& pr = projector(j);
        Submodule sub = modcat::image(pr, module());
        GradedMap proj = sub.coordinates.compose(pr);
        it = blocks_.emplace(j, Piece{std::move(sub), std::move(proj), j}).first;
    }
    return it->second;
}

std::vector<Cyc> AdjointContext::eigenvalues() const {
    std::vector<Cyc> out;
    for (const auto& b : cb_.blocks) out.push_back(b.b);
    return out;
}

std::vector<Piece> AdjointContext::presplit(std::optional<int> j) const {
    if (j) block_index(*j);
    std::vector<Piece> out;
    for (const auto& b : cb_.blocks) {
        if (j && *j != b.j) continue;
        auto it = presplits_.find(b.j);
        if (it == presplits_.end()) it = presplits_.emplace(b.j, split_by_casimir(module(), {block(b.j)}, eigenvalues())).first;
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

Decomposition decompose_adjoint(const AdjointContext& ctx) {
    const auto pieces = ctx.presplit();
    return decompose(ctx.module(), adjoint_candidates(ctx.field()), &pieces);
}

Decomposition decompose_block(const AdjointContext& ctx, int j) {
    const auto pieces = ctx.presplit(j);
    return decompose(ctx.module(), adjoint_candidates(ctx.field()), &pieces);
}

BlockFiltration casimir_block_filtration(const AdjointContext& ctx, int j, bool check_quotient) {
    const smallqg::BlockIndex& bi = ctx.block_index(j);
    const Submodule& blk = ctx.block(j).sub;
    const GradedModule& bm = blk.module;
    BlockFiltration out{bi, blk, whole_submodule(bm), whole_submodule(bm), true};
    if (bi.is_steinberg()) return out;
    const GradedMap x = modcat::restrict_map(ctx.left_casimir(), blk);
    const GradedMap t = x - bi.b * GradedMap::identity(bm);
    out.m = modcat::kernel(t, bm);
    out.n = modcat::image(t, bm);
    if (check_quotient) {
        const modcat::Quotient q = modcat::quotient(bm, out.m);
        const std::vector<Cyc> eig = ctx.eigenvalues();
        const auto pq = split_by_casimir(q.module, {whole(q.module)}, eig);
        const auto pn = split_by_casimir(out.n.module, {whole(out.n.module)}, eig);
        out.quotient_isomorphic = is_isomorphic_presplit(q.module, pq, out.n.module, pn).isomorphic;
    } else {
        out.quotient_isomorphic = false;
    }
    return out;
}

Decomposition decompose_N_j(const AdjointContext& ctx, int j) {
    const BlockFiltration filt = casimir_block_filtration(ctx, j, false);
    return decompose(filt.n.module, adjoint_candidates(ctx.field()));
}

}  // namespace uqa::decomp
