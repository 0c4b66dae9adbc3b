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

#include "uqadjoint/graded.hpp"

#include <utility>

#include "uqadjoint/error.hpp"

namespace uqa::modcat {

namespace {

std::size_t lookup(const WeightDims& d, int w) {
    auto it = d.find(w);
    return it == d.end() ? 0 : it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedModule

void GradedModule::set_dim(int w, std::size_t d) {
    if (d == 0) {
        dims_.erase(w);
    } else {
        dims_[w] = d;
    }
}

std::size_t GradedModule::dim(int w) const { return lookup(dims_, w); }

std::size_t GradedModule::total_dim() const {
    std::size_t n = 0;
    for (const auto& [w, d] : dims_) n += d;
    return n;
}

std::vector<int> GradedModule::weights() const {
    std::vector<int> out;
    out.reserve(dims_.size());
    for (const auto& [w, d] : dims_) out.push_back(w);
    return out;
}

Matrix GradedModule::e(int w) const {
    auto it = e_.find(w);
    if (it != e_.end()) return it->second;
    return Matrix(dim(w + 2), dim(w));
}

Matrix GradedModule::f(int w) const {
    auto it = f_.find(w);
    if (it != f_.end()) return it->second;
    return Matrix(dim(w - 2), dim(w));
}

void GradedModule::set_e(int w, Matrix m) {
    if (m.rows() != dim(w + 2) || m.cols() != dim(w)) {
        fail(ErrorCode::Internal, "E block shape mismatch at weight " + std::to_string(w));
    }
    if (m.empty()) {
        e_.erase(w);
    } else {
        e_[w] = std::move(m);
    }
}

void GradedModule::set_f(int w, Matrix m) {
    if (m.rows() != dim(w - 2) || m.cols() != dim(w)) {
        fail(ErrorCode::Internal, "F block shape mismatch at weight " + std::to_string(w));
    }
    if (m.empty()) {
        f_.erase(w);
    } else {
        f_[w] = std::move(m);
    }
}

Matrix GradedModule::casimir(int w) const {
    const std::size_t d = dim(w);
    Matrix c = e(w - 2) * f(w);
    const Cyc shift = field_->casimir_root(w - 2);
    for (std::size_t i = 0; i < d; ++i) c(i, i) += shift;
    return c;
}

std::optional<std::string> GradedModule::check_invariants() const {
    const CyclotomicField& fld = *field_;
    for (const auto& [w, m] : e_) {
        if (m.rows() != dim(w + 2) || m.cols() != dim(w)) return "E block shape at weight " + std::to_string(w);
    }
    for (const auto& [w, m] : f_) {
        if (m.rows() != dim(w - 2) || m.cols() != dim(w)) return "F block shape at weight " + std::to_string(w);
    }
    for (const auto& [w, d] : dims_) {
        Matrix comm = e(w - 2) * f(w) - f(w + 2) * e(w);
        if (!(comm == fld.qint(w) * Matrix::identity(fld, d))) {
            return "[E,F] != (w)_q on weight " + std::to_string(w);
        }
        Matrix pe = Matrix::identity(fld, d);
        Matrix pf = Matrix::identity(fld, d);
        for (int k = 0; k < fld.l(); ++k) {
            pe = e(w + 2 * k) * pe;
            pf = f(w - 2 * k) * pf;
        }
        if (!pe.is_zero()) return "E^l != 0 starting at weight " + std::to_string(w);
        if (!pf.is_zero()) return "F^l != 0 starting at weight " + std::to_string(w);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// GradedMap

GradedMap::GradedMap(WeightDims src, WeightDims dst) : src_(std::move(src)), dst_(std::move(dst)) {}

GradedMap GradedMap::zero(const GradedModule& src, const GradedModule& dst) {
    return GradedMap(src.weight_dims(), dst.weight_dims());
}

GradedMap GradedMap::identity(const GradedModule& m) {
    GradedMap id(m.weight_dims(), m.weight_dims());
    for (const auto& [w, d] : m.weight_dims()) id.blocks_[w] = Matrix::identity(m.field(), d);
    return id;
}

Matrix GradedMap::block(int w) const {
    auto it = blocks_.find(w);
    if (it != blocks_.end()) return it->second;
    return Matrix(lookup(dst_, w), lookup(src_, w));
}

void GradedMap::set_block(int w, Matrix m) {
    if (m.rows() != lookup(dst_, w) || m.cols() != lookup(src_, w)) {
        fail(ErrorCode::Internal, "map block shape mismatch at weight " + std::to_string(w));
    }
    if (m.empty()) {
        blocks_.erase(w);
    } else {
        blocks_[w] = std::move(m);
    }
}

bool GradedMap::is_zero() const {
    for (const auto& [w, b] : blocks_) {
        if (!b.is_zero()) return false;
    }
    return true;
}

bool GradedMap::is_invertible() const {
    if (src_ != dst_) return false;
    for (const auto& [w, d] : src_) {
        if (linalg::rank(block(w)) != d) return false;
    }
    return true;
}

std::optional<GradedMap> GradedMap::inverse() const {
    if (src_ != dst_) return std::nullopt;
    GradedMap inv(dst_, src_);
    for (const auto& [w, d] : src_) {
        auto b = linalg::inverse(block(w));
        if (!b) return std::nullopt;
        inv.blocks_[w] = std::move(*b);
    }
    return inv;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
    if (src_ != o.src_ || dst_ != o.dst_) fail(ErrorCode::Internal, "graded map shape mismatch in +");
    for (const auto& [w, b] : o.blocks_) {
        auto it = blocks_.find(w);
        if (it == blocks_.end()) {
            blocks_[w] = b;
        } else {
            it->second += b;
        }
    }
    return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) {
    if (src_ != o.src_ || dst_ != o.dst_) fail(ErrorCode::Internal, "graded map shape mismatch in -");
    for (const auto& [w, b] : o.blocks_) {
        auto it = blocks_.find(w);
        if (it == blocks_.end()) {
            blocks_[w] = Matrix(b.rows(), b.cols()) - b;
        } else {
            it->second -= b;
        }
    }
    return *this;
}

GradedMap operator*(const Cyc& s, GradedMap a) {
    for (auto& [w, b] : a.blocks_) b = s * b;
    return a;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
    if (a.src_ != b.src_ || a.dst_ != b.dst_) return false;
    for (const auto& [w, d] : a.src_) {
        if (!(a.block(w) == b.block(w))) return false;
    }
    return true;
}

GradedMap GradedMap::compose(const GradedMap& rhs) const {
    if (rhs.dst_ != src_) fail(ErrorCode::Internal, "graded map composition shape mismatch");
    GradedMap out(rhs.src_, dst_);
    for (const auto& [w, d] : rhs.src_) {
        if (lookup(dst_, w) == 0) continue;
        auto a = blocks_.find(w);
        auto b = rhs.blocks_.find(w);
        if (a == blocks_.end() || b == rhs.blocks_.end()) continue;
        out.blocks_[w] = a->second * b->second;
    }
    return out;
}

Cyc GradedMap::trace() const {
    Cyc t;
    for (const auto& [w, b] : blocks_) {
        for (std::size_t i = 0; i < b.rows() && i < b.cols(); ++i) t += b(i, i);
    }
    return t;
}

bool is_intertwiner(const GradedMap& phi, const GradedModule& src, const GradedModule& dst) {
    for (const auto& [w, d] : src.weight_dims()) {
        if (!(phi.block(w + 2) * src.e(w) == dst.e(w) * phi.block(w))) return false;
        if (!(phi.block(w - 2) * src.f(w) == dst.f(w) * phi.block(w))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Submodules and quotients

namespace {

struct EchelonBasis {
    Matrix rows;  // r x n, reduced echelon
    std::vector<std::size_t> pivots;
};

Submodule build_submodule(const GradedModule& m, const std::map<int, EchelonBasis>& bases, bool check_closed) {
    const CyclotomicField& fld = m.field();
    GradedModule sub(fld);
    WeightDims sub_dims;
    for (const auto& [w, b] : bases) {
        if (!b.pivots.empty()) {
            sub.set_dim(w, b.pivots.size());
            sub_dims[w] = b.pivots.size();
        }
    }
    GradedMap incl(sub_dims, m.weight_dims());
    GradedMap coord(m.weight_dims(), sub_dims);
    for (const auto& [w, b] : bases) {
        if (b.pivots.empty()) continue;
        incl.set_block(w, b.rows.transpose());
        Matrix sel(b.pivots.size(), m.dim(w));
        for (std::size_t i = 0; i < b.pivots.size(); ++i) sel(i, b.pivots[i]) = fld.one();
        coord.set_block(w, std::move(sel));
    }
    for (const auto& [w, d] : sub_dims) {
        const Matrix in = incl.block(w);
        if (sub.dim(w + 2) > 0) {
            Matrix img = m.e(w) * in;
            Matrix ew = coord.block(w + 2) * img;
            if (check_closed && !(incl.block(w + 2) * ew == img)) {
                fail(ErrorCode::Internal, "subspace not closed under E at weight " + std::to_string(w));
            }
            sub.set_e(w, std::move(ew));
        } else if (check_closed && !(m.e(w) * in).is_zero()) {
            fail(ErrorCode::Internal, "subspace not closed under E at weight " + std::to_string(w));
        }
        if (sub.dim(w - 2) > 0) {
            Matrix img = m.f(w) * in;
            Matrix fw = coord.block(w - 2) * img;
            if (check_closed && !(incl.block(w - 2) * fw == img)) {
                fail(ErrorCode::Internal, "subspace not closed under F at weight " + std::to_string(w));
            }
            sub.set_f(w, std::move(fw));
        } else if (check_closed && !(m.f(w) * in).is_zero()) {
            fail(ErrorCode::Internal, "subspace not closed under F at weight " + std::to_string(w));
        }
    }
    return Submodule{std::move(sub), std::move(incl), std::move(coord)};
}

EchelonBasis echelon(const Matrix& columns) {
    EchelonBasis b;
    b.rows = linalg::column_space_rref(columns, &b.pivots);
    return b;
}

}  // namespace

Submodule submodule(const GradedModule& m, const std::map<int, Matrix>& spanning) {
    std::map<int, EchelonBasis> bases;
    for (const auto& [w, cols] : spanning) {
        if (cols.cols() == 0 || m.dim(w) == 0) continue;
        bases[w] = echelon(cols);
    }
    return build_submodule(m, bases, true);
}

Submodule generated_submodule(const GradedModule& m, const std::map<int, Matrix>& seeds) {
    std::map<int, Matrix> span;
    for (const auto& [w, cols] : seeds) {
        if (m.dim(w) > 0 && cols.cols() > 0) span[w] = cols;
    }
    std::map<int, EchelonBasis> bases;
    bool changed = true;
    while (changed) {
        changed = false;
        bases.clear();
        for (const auto& [w, cols] : span) {
            EchelonBasis b = echelon(cols);
            if (!b.pivots.empty()) bases[w] = std::move(b);
        }
        std::map<int, Matrix> next;
        for (const auto& [w, b] : bases) next[w] = b.rows.transpose();
        for (const auto& [w, b] : bases) {
            const Matrix in = b.rows.transpose();
            for (int step : {2, -2}) {
                const int t = w + step;
                if (m.dim(t) == 0) continue;
                Matrix img = (step == 2 ? m.e(w) : m.f(w)) * in;
                if (img.is_zero()) continue;
                auto it = next.find(t);
                Matrix merged = it == next.end() ? img : it->second.hcat(img);
                const std::size_t before = bases.count(t) ? bases.at(t).pivots.size() : 0;
                if (linalg::rank(merged) > before) changed = true;
                next[t] = std::move(merged);
            }
        }
        span = std::move(next);
    }
    return build_submodule(m, bases, true);
}

Submodule image(const GradedMap& phi, const GradedModule& m) {
    std::map<int, Matrix> cols;
    for (const auto& [w, b] : phi.blocks()) cols[w] = b;
    return submodule(m, cols);
}

Submodule kernel(const GradedMap& phi, const GradedModule& m) {
    std::map<int, Matrix> cols;
    for (const auto& [w, d] : m.weight_dims()) cols[w] = linalg::nullspace(phi.block(w), m.field());
    return submodule(m, cols);
}

Quotient quotient(const GradedModule& m, const Submodule& sub) {
    const CyclotomicField& fld = m.field();
    GradedModule q(fld);
    std::map<int, Matrix> proj_blocks;
    std::map<int, Matrix> lifts;
    for (const auto& [w, n] : m.weight_dims()) {
        const Matrix sel = sub.coordinates.block(w);  // r x n, row i picks pivot i
        const Matrix basis = sub.inclusion.block(w);  // n x r
        std::vector<bool> is_pivot(n, false);
        for (std::size_t i = 0; i < sel.rows(); ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!sel(i, c).is_zero()) is_pivot[c] = true;
            }
        }
        std::vector<std::size_t> comp;
        for (std::size_t c = 0; c < n; ++c) {
            if (!is_pivot[c]) comp.push_back(c);
        }
        if (comp.empty()) continue;
        q.set_dim(w, comp.size());
        Matrix pick(comp.size(), n);
        Matrix lift(n, comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            pick(i, comp[i]) = fld.one();
            lift(comp[i], i) = fld.one();
        }
        Matrix reduce = Matrix::identity(fld, n);
        if (sel.rows() > 0) reduce -= basis * sel;
        proj_blocks[w] = pick * reduce;
        lifts[w] = std::move(lift);
    }
    GradedMap proj(m.weight_dims(), q.weight_dims());
    for (auto& [w, b] : proj_blocks) proj.set_block(w, b);
    for (const auto& [w, d] : q.weight_dims()) {
        const Matrix& lift = lifts.at(w);
        if (q.dim(w + 2) > 0) q.set_e(w, proj.block(w + 2) * m.e(w) * lift);
        if (q.dim(w - 2) > 0) q.set_f(w, proj.block(w - 2) * m.f(w) * lift);
    }
    return Quotient{std::move(q), std::move(proj)};
}

GradedMap restrict_map(const GradedMap& phi, const Submodule& sub) {
    GradedMap out(sub.module.weight_dims(), sub.module.weight_dims());
    for (const auto& [w, d] : sub.module.weight_dims()) {
        const Matrix in = sub.inclusion.block(w);
        const Matrix img = phi.block(w) * in;
        Matrix b = sub.coordinates.block(w) * img;
        if (!(in * b == img)) fail(ErrorCode::Internal, "map does not preserve the submodule");
        out.set_block(w, std::move(b));
    }
    return out;
}

GradedModule direct_sum(std::span<const GradedModule> parts) {
    if (parts.empty()) fail(ErrorCode::InvalidArgument, "direct sum of nothing");
    const CyclotomicField& fld = parts.front().field();
    GradedModule out(fld);
    std::map<int, std::vector<std::size_t>> offsets;
    for (const auto& p : parts) {
        for (const auto& [w, d] : p.weight_dims()) out.set_dim(w, out.dim(w) + d);
    }
    std::map<int, std::size_t> cursor;
    for (const auto& p : parts) {
        for (const auto& [w, d] : out.weight_dims()) {
            offsets[w].push_back(cursor[w]);
            cursor[w] += p.dim(w);
        }
    }
    for (const auto& [w, d] : out.weight_dims()) {
        Matrix e(out.dim(w + 2), d);
        Matrix f(out.dim(w - 2), d);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& p = parts[i];
            if (p.dim(w) == 0) continue;
            const Matrix pe = p.e(w);
            const Matrix pf = p.f(w);
            const std::size_t c0 = offsets[w][i];
            if (pe.rows() > 0) {
                const std::size_t r0 = offsets[w + 2][i];
                for (std::size_t r = 0; r < pe.rows(); ++r) {
                    for (std::size_t c = 0; c < pe.cols(); ++c) e(r0 + r, c0 + c) = pe(r, c);
                }
            }
            if (pf.rows() > 0) {
                const std::size_t r0 = offsets[w - 2][i];
                for (std::size_t r = 0; r < pf.rows(); ++r) {
                    for (std::size_t c = 0; c < pf.cols(); ++c) f(r0 + r, c0 + c) = pf(r, c);
                }
            }
        }
        out.set_e(w, std::move(e));
        out.set_f(w, std::move(f));
    }
    return out;
}

GradedModule shift(const GradedModule& m, int s) {
    if (s % m.field().l() != 0) fail(ErrorCode::InvalidArgument, "grading shift must be a multiple of l");
    GradedModule out(m.field());
    for (const auto& [w, d] : m.weight_dims()) out.set_dim(w + s, d);
    for (const auto& [w, d] : m.weight_dims()) {
        out.set_e(w + s, m.e(w));
        out.set_f(w + s, m.f(w));
    }
    return out;
}

GradedMap casimir_endomorphism(const GradedModule& m) {
    GradedMap c(m.weight_dims(), m.weight_dims());
    for (const auto& [w, d] : m.weight_dims()) c.set_block(w, m.casimir(w));
    return c;
}

}  // namespace uqa::modcat
