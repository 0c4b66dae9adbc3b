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

#include "uqadjoint/modcat.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "json.hpp"
#include "uqadjoint/error.hpp"

namespace uqa::modcat {

namespace {

long mod_l(long a, long l) { return ((a % l) + l) % l; }

// Incrementally maintained echelon basis of a subspace of K^n.
class Span {
public:
    explicit Span(std::size_t n) : n_(n) {}

    std::size_t size() const noexcept { return rows_.size(); }

    // Adds v if it is independent; returns whether it was added.
    bool add(std::vector<Cyc> v) {
        reduce(v);
        std::size_t p = 0;
        while (p < n_ && v[p].is_zero()) ++p;
        if (p == n_) return false;
        const Cyc inv = v[p].inv();
        for (auto& x : v) x = x * inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Cyc c = rows_[i][p];
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < n_; ++k) {
                if (!v[k].is_zero()) rows_[i][k] -= c * v[k];
            }
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool contains(std::vector<Cyc> v) const {
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](const Cyc& c) { return c.is_zero(); });
    }

private:
    void reduce(std::vector<Cyc>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Cyc c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < n_; ++k) {
                if (!rows_[i][k].is_zero()) v[k] -= c * rows_[i][k];
            }
        }
    }

    std::size_t n_;
    std::vector<std::vector<Cyc>> rows_;
    std::vector<std::size_t> pivots_;
};

// Basis of M made of words in E, F applied to generators.
struct WordBasis {
    struct Entry {
        int weight;
        std::vector<Cyc> vector;
        int parent;  // -1 for a generator
        int step;    // +2 for E, -2 for F
        int generator;
    };
    std::vector<Generator> gens;
    std::vector<Entry> entries;
    std::map<int, std::vector<std::size_t>> at_weight;
};

WordBasis word_basis(const GradedModule& m) {
    WordBasis wb;
    std::map<int, Span> spans;
    for (const auto& [w, d] : m.weight_dims()) spans.emplace(w, Span(d));
    std::map<int, Matrix> es, fs;
    for (const auto& [w, d] : m.weight_dims()) {
        es[w] = m.e(w);
        fs[w] = m.f(w);
    }
    auto close = [&](std::size_t start) {
        std::deque<std::size_t> queue;
        for (std::size_t k = start; k < wb.entries.size(); ++k) queue.push_back(k);
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            for (int step : {2, -2}) {
                const int w = wb.entries[k].weight;
                const int t = w + step;
                if (m.dim(t) == 0) continue;
                std::vector<Cyc> img = (step == 2 ? es.at(w) : fs.at(w)) * wb.entries[k].vector;
                if (!spans.at(t).add(img)) continue;
                wb.entries.push_back({t, std::move(img), static_cast<int>(k), step, wb.entries[k].generator});
                wb.at_weight[t].push_back(wb.entries.size() - 1);
                queue.push_back(wb.entries.size() - 1);
            }
        }
    };
    const auto weights = m.weights();
    for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
        const int w = *it;
        const std::size_t d = m.dim(w);
        for (std::size_t i = 0; i < d && spans.at(w).size() < d; ++i) {
            std::vector<Cyc> v(d);
            v[i] = m.field().one();
            if (!spans.at(w).add(v)) continue;
            const int g = static_cast<int>(wb.gens.size());
            wb.gens.push_back({w, v});
            wb.entries.push_back({w, std::move(v), -1, 0, g});
            wb.at_weight[w].push_back(wb.entries.size() - 1);
            close(wb.entries.size() - 1);
        }
    }
    return wb;
}

GradedModule make_module(const CyclotomicField& f, const std::map<int, std::size_t>& dims,
                         const std::map<int, Matrix>& e, const std::map<int, Matrix>& fm) {
    GradedModule m(f);
    for (const auto& [w, d] : dims) m.set_dim(w, d);
    for (const auto& [w, b] : e) m.set_e(w, b);
    for (const auto& [w, b] : fm) m.set_f(w, b);
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Constructions

GradedModule verma(const CyclotomicField& f, int lambda, Direction dir) {
    const int l = f.l();
    if (dir == Direction::Raising) {
        const GradedModule low = verma(f, -lambda, Direction::Lowering);
        GradedModule m(f);
        for (const auto& [w, d] : low.weight_dims()) m.set_dim(-w, d);
        for (const auto& [w, d] : low.weight_dims()) {
            if (m.dim(-w + 2) > 0) m.set_e(-w, low.f(w));
            if (m.dim(-w - 2) > 0) m.set_f(-w, low.e(w));
        }
        return m;
    }
    GradedModule m(f);
    for (int i = 0; i < l; ++i) m.set_dim(lambda - 2 * i, 1);
    for (int i = 0; i < l; ++i) {
        const int w = lambda - 2 * i;
        if (i + 1 < l) {
            Matrix fb(1, 1);
            fb(0, 0) = f.one();
            m.set_f(w, std::move(fb));
        }
        if (i > 0) {
            Matrix eb(1, 1);
            eb(0, 0) = f.qint(i) * f.qint(lambda - i + 1);
            m.set_e(w, std::move(eb));
        }
    }
    return m;
}

GradedModule simple(const CyclotomicField& f, int lambda) {
    const int n = static_cast<int>(mod_l(lambda, f.l()));
    GradedModule m(f);
    for (int i = 0; i <= n; ++i) m.set_dim(lambda - 2 * i, 1);
    for (int i = 0; i <= n; ++i) {
        const int w = lambda - 2 * i;
        if (i < n) {
            Matrix fb(1, 1);
            fb(0, 0) = f.one();
            m.set_f(w, std::move(fb));
        }
        if (i > 0) {
            Matrix eb(1, 1);
            eb(0, 0) = f.qint(i) * f.qint(lambda - i + 1);
            m.set_e(w, std::move(eb));
        }
    }
    return m;
}

GradedModule projective(const CyclotomicField& f, int lambda) {
    const int l = f.l();
    const int lam0 = static_cast<int>(mod_l(lambda, l));
    if (lam0 == l - 1) return simple(f, lambda);

    // V = S + Q with S = M-(2l-2-lam0) a submodule and Q = M-(lam0) the quotient.
    const GradedModule s = verma(f, 2 * l - 2 - lam0, Direction::Lowering);
    const GradedModule q = verma(f, lam0, Direction::Lowering);
    std::map<int, std::size_t> dims;
    for (const auto& [w, d] : s.weight_dims()) dims[w] += d;
    for (const auto& [w, d] : q.weight_dims()) dims[w] += d;
    // Position of S (first) and Q (second) inside V_w.
    auto s_off = [&](int) { return std::size_t{0}; };
    auto q_off = [&](int w) { return s.dim(w); };

    struct Unknown {
        bool is_e;
        int w;  // source weight in Q
    };
    std::vector<Unknown> unknowns;
    for (const auto& [w, d] : q.weight_dims()) {
        if (s.dim(w + 2) > 0) unknowns.push_back({true, w});
        if (s.dim(w - 2) > 0) unknowns.push_back({false, w});
    }

    auto build = [&](const std::vector<Cyc>& x) {
        std::map<int, Matrix> e, fm;
        for (const auto& [w, d] : dims) {
            if (dims.count(w + 2)) e[w] = Matrix(dims.at(w + 2), d);
            if (dims.count(w - 2)) fm[w] = Matrix(dims.at(w - 2), d);
        }
        auto put = [&](std::map<int, Matrix>& blocks, int w, std::size_t r0, std::size_t c0, const Matrix& b) {
            if (b.empty()) return;
            Matrix& dst = blocks.at(w);
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) dst(r0 + r, c0 + c) = b(r, c);
            }
        };
        for (const auto& [w, d] : s.weight_dims()) {
            if (s.dim(w + 2) > 0) put(e, w, s_off(w + 2), s_off(w), s.e(w));
            if (s.dim(w - 2) > 0) put(fm, w, s_off(w - 2), s_off(w), s.f(w));
        }
        for (const auto& [w, d] : q.weight_dims()) {
            if (q.dim(w + 2) > 0) put(e, w, q_off(w + 2), q_off(w), q.e(w));
            if (q.dim(w - 2) > 0) put(fm, w, q_off(w - 2), q_off(w), q.f(w));
        }
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            if (x[i].is_zero()) continue;
            const Unknown& u = unknowns[i];
            const int t = u.is_e ? u.w + 2 : u.w - 2;
            (u.is_e ? e : fm).at(u.w)(s_off(t), q_off(u.w)) = x[i];
        }
        return make_module(f, dims, e, fm);
    };

    // Off-diagonal (S <- Q) parts of [E,F] - (w) and of E^l, F^l; linear in x.
    auto defect = [&](const GradedModule& v) {
        std::vector<Cyc> out;
        for (const auto& [w, d] : q.weight_dims()) {
            const Matrix c = v.e(w - 2) * v.f(w) - v.f(w + 2) * v.e(w);
            for (std::size_t r = 0; r < s.dim(w); ++r) out.push_back(c(s_off(w) + r, q_off(w)));
            if (s.dim(w + 2 * l) > 0) {
                Matrix pe = Matrix::identity(f, v.dim(w));
                for (int k = 0; k < l; ++k) pe = v.e(w + 2 * k) * pe;
                out.push_back(pe(s_off(w + 2 * l), q_off(w)));
            }
            if (s.dim(w - 2 * l) > 0) {
                Matrix pf = Matrix::identity(f, v.dim(w));
                for (int k = 0; k < l; ++k) pf = v.f(w - 2 * k) * pf;
                out.push_back(pf(s_off(w - 2 * l), q_off(w)));
            }
        }
        return out;
    };

    const std::size_t n = unknowns.size();
    const std::vector<Cyc> base = defect(build(std::vector<Cyc>(n)));
    Matrix lin(base.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cyc> x(n);
        x[i] = f.one();
        const auto d = defect(build(x));
        for (std::size_t r = 0; r < d.size(); ++r) lin(r, i) = d[r] - base[r];
    }
    const Matrix sol = linalg::nullspace(lin, f);

    const Cyc b = f.casimir_root(lam0);
    auto non_semisimple = [&](const GradedModule& v) {
        for (const auto& [w, d] : v.weight_dims()) {
            if (!(v.casimir(w) - b * Matrix::identity(f, d)).is_zero()) return true;
        }
        return false;
    };
    std::vector<std::vector<Cyc>> tries;
    for (std::size_t c = 0; c < sol.cols(); ++c) tries.push_back(sol.col(c));
    if (sol.cols() > 1) {
        std::vector<Cyc> sum(n);
        for (std::size_t c = 0; c < sol.cols(); ++c) {
            for (std::size_t r = 0; r < n; ++r) sum[r] += f.from_int(static_cast<long>(c + 1)) * sol(r, c);
        }
        tries.push_back(std::move(sum));
    }
    for (const auto& x : tries) {
        GradedModule v = build(x);
        if (v.check_invariants() || !non_semisimple(v)) continue;
        return lambda == lam0 ? v : shift(v, lambda - lam0);
    }
    fail(ErrorCode::ConstructionFailed, "no extension with non-semisimple Casimir for P(" + std::to_string(lambda) + ")");
}

GradedModule dual(const GradedModule& m) {
    const CyclotomicField& f = m.field();
    GradedModule d(f);
    for (const auto& [w, n] : m.weight_dims()) d.set_dim(w, n);
    for (const auto& [w, n] : m.weight_dims()) {
        if (m.dim(w + 2) > 0) d.set_e(w, -f.q_pow(w) * m.f(w + 2).transpose());
        if (m.dim(w - 2) > 0) d.set_f(w, -f.q_pow(2 - w) * m.e(w - 2).transpose());
    }
    return d;
}

GradedMap dual_map(const GradedMap& phi) {
    GradedMap out(phi.dst_dims(), phi.src_dims());
    for (const auto& [w, b] : phi.blocks()) out.set_block(w, b.transpose());
    return out;
}

// ---------------------------------------------------------------------------
// Hom spaces

std::vector<Generator> generators(const GradedModule& m) { return word_basis(m).gens; }

std::vector<GradedMap> hom_space(const GradedModule& m, const GradedModule& n) {
    const CyclotomicField& f = m.field();
    const WordBasis wb = word_basis(m);

    // Unknowns: the images of the generators.
    std::vector<std::size_t> offset;
    std::size_t unknowns = 0;
    for (const auto& g : wb.gens) {
        offset.push_back(unknowns);
        unknowns += n.dim(g.weight);
    }
    if (unknowns == 0) return {};

    std::map<int, Matrix> ne, nf;
    for (const auto& [w, d] : n.weight_dims()) {
        ne[w] = n.e(w);
        nf[w] = n.f(w);
    }
    // phi(entry k) = images[k] * u
    std::vector<Matrix> images(wb.entries.size());
    for (std::size_t k = 0; k < wb.entries.size(); ++k) {
        const auto& en = wb.entries[k];
        if (n.dim(en.weight) == 0) continue;
        if (en.parent < 0) {
            Matrix sel(n.dim(en.weight), unknowns);
            for (std::size_t i = 0; i < sel.rows(); ++i) sel(i, offset[static_cast<std::size_t>(en.generator)] + i) = f.one();
            images[k] = std::move(sel);
        } else {
            const auto& par = wb.entries[static_cast<std::size_t>(en.parent)];
            const Matrix& pimg = images[static_cast<std::size_t>(en.parent)];
            if (pimg.empty()) {
                images[k] = Matrix(n.dim(en.weight), unknowns);
            } else {
                images[k] = (en.step == 2 ? ne.at(par.weight) : nf.at(par.weight)) * pimg;
            }
        }
    }

    // Basis matrices of M per weight and their inverses.
    std::map<int, Matrix> basis_inv;
    for (const auto& [w, ks] : wb.at_weight) {
        Matrix b(m.dim(w), ks.size());
        for (std::size_t c = 0; c < ks.size(); ++c) b.set_col(c, wb.entries[ks[c]].vector);
        auto inv = linalg::inverse(b);
        if (!inv) fail(ErrorCode::Internal, "word basis is not a basis");
        basis_inv[w] = std::move(*inv);
    }

    std::vector<std::vector<Cyc>> rows;
    for (std::size_t k = 0; k < wb.entries.size(); ++k) {
        const auto& en = wb.entries[k];
        for (int step : {2, -2}) {
            const int t = en.weight + step;
            if (n.dim(t) == 0) continue;
            Matrix lhs = images[k].empty() ? Matrix(n.dim(t), unknowns)
                                           : (step == 2 ? ne.at(en.weight) : nf.at(en.weight)) * images[k];
            if (m.dim(t) > 0) {
                const std::vector<Cyc> img = (step == 2 ? m.e(en.weight) : m.f(en.weight)) * en.vector;
                const std::vector<Cyc> c = basis_inv.at(t) * img;
                const auto& ks = wb.at_weight.at(t);
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    if (!c[i].is_zero()) lhs -= c[i] * images[ks[i]];
                }
            }
            for (std::size_t r = 0; r < lhs.rows(); ++r) {
                std::vector<Cyc> row = lhs.row(r);
                if (std::any_of(row.begin(), row.end(), [](const Cyc& x) { return !x.is_zero(); })) {
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    Matrix system(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
    }
    const Matrix sol = rows.empty() ? Matrix::identity(f, unknowns) : linalg::nullspace(system, f);

    std::vector<GradedMap> out;
    for (std::size_t s = 0; s < sol.cols(); ++s) {
        const Matrix u = Matrix::column(sol.col(s));
        GradedMap phi(m.weight_dims(), n.weight_dims());
        for (const auto& [w, ks] : wb.at_weight) {
            if (n.dim(w) == 0) continue;
            Matrix cols(n.dim(w), ks.size());
            for (std::size_t c = 0; c < ks.size(); ++c) cols.set_col(c, (images[ks[c]] * u).col(0));
            phi.set_block(w, cols * basis_inv.at(w));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

std::optional<GradedMap> find_invertible(const std::vector<GradedMap>& candidates) {
    if (candidates.empty()) return std::nullopt;
    const GradedMap& first = candidates.front();
    if (first.src_dims() != first.dst_dims()) return std::nullopt;
    for (const auto& c : candidates) {
        if (c.is_invertible()) return c;
    }
    // Find a field through any nonzero block.
    const CyclotomicField* fld = nullptr;
    for (const auto& c : candidates) {
        for (const auto& [w, b] : c.blocks()) {
            for (std::size_t i = 0; i < b.rows() && !fld; ++i) {
                for (std::size_t j = 0; j < b.cols() && !fld; ++j) fld = b(i, j).field();
            }
        }
    }
    if (!fld) return std::nullopt;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        for (std::size_t b = a + 1; b < candidates.size(); ++b) {
            GradedMap s = candidates[a] + candidates[b];
            if (s.is_invertible()) return s;
        }
    }
    std::mt19937_64 rng(0x75712d61);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int attempt = 0; attempt < 24; ++attempt) {
        GradedMap s(first.src_dims(), first.dst_dims());
        bool any = false;
        for (const auto& c : candidates) {
            const long k = attempt < 8 ? (attempt + static_cast<long>(&c - candidates.data())) % 5 - 2 : coef(rng);
            if (k == 0) continue;
            s += fld->from_int(k) * c;
            any = true;
        }
        if (any && s.is_invertible()) return s;
    }
    return std::nullopt;
}

IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n) {
    if (graded_character(m) != graded_character(n)) return {};
    if (m.is_zero()) return {true, GradedMap(m.weight_dims(), n.weight_dims())};
    const auto homs = hom_space(m, n);
    if (auto w = find_invertible(homs)) return {true, std::move(w)};
    // M ~ N forces dim Hom(M,N) = dim End(M) = dim End(N) = dim Hom(N,M).
    const auto back = hom_space(n, m);
    if (homs.empty() || homs.size() != back.size()) return {};
    if (hom_space(m, m).size() != homs.size() || hom_space(n, n).size() != homs.size()) return {};
    fail(ErrorCode::Inconclusive, "no invertible map found in a " + std::to_string(homs.size()) +
                                      "-dimensional Hom space");
}

Matrix singular_vectors(const GradedModule& m, int w, Side side) {
    const std::size_t d = m.dim(w);
    if (d == 0) return Matrix(0, 0);
    const Matrix op = side == Side::Upper ? m.e(w) : m.f(w);
    if (op.rows() == 0) return Matrix::identity(m.field(), d);
    return linalg::nullspace(op, m.field());
}

// ---------------------------------------------------------------------------
// Characters and labels

WeightDims graded_character(const GradedModule& m) { return m.weight_dims(); }

ModuleLabel simple_label(int lambda) { return {ModuleLabel::Kind::Simple, lambda}; }
ModuleLabel projective_label(int lambda) { return {ModuleLabel::Kind::Projective, lambda}; }

ModuleLabel canonical(const ModuleLabel& label, int l) {
    if (label.kind == ModuleLabel::Kind::Simple && mod_l(label.weight, l) == l - 1) {
        return projective_label(label.weight);
    }
    return label;
}

Multiset canonical(const Multiset& ms, int l) {
    Multiset out;
    for (const auto& [lab, k] : ms) out[canonical(lab, l)] += k;
    return out;
}

std::string to_string(const ModuleLabel& label) {
    return std::string(label.kind == ModuleLabel::Kind::Projective ? "P(" : "L(") + std::to_string(label.weight) + ")";
}

std::string to_string(const Multiset& ms) {
    std::string out = "{";
    for (const auto& [lab, k] : ms) {
        if (out.size() > 1) out += ", ";
        out += to_string(lab) + ":" + std::to_string(k);
    }
    return out + "}";
}

GradedModule model(const CyclotomicField& f, const ModuleLabel& label) {
    return label.kind == ModuleLabel::Kind::Projective ? projective(f, label.weight) : simple(f, label.weight);
}

std::size_t label_dimension(const ModuleLabel& label, int l) {
    const long r = mod_l(label.weight, l);
    if (label.kind == ModuleLabel::Kind::Simple) return static_cast<std::size_t>(r + 1);
    return static_cast<std::size_t>(r == l - 1 ? l : 2 * l);
}

WeightDims simple_character(int lambda, int l) {
    WeightDims ch;
    const long n = mod_l(lambda, l);
    for (long i = 0; i <= n; ++i) ch[static_cast<int>(lambda - 2 * i)] = 1;
    return ch;
}

Multiset composition_multiplicities(const WeightDims& character, int l) {
    std::map<int, long> rest(character.begin(), character.end());
    Multiset out;
    for (;;) {
        while (!rest.empty() && rest.rbegin()->second == 0) rest.erase(std::prev(rest.end()));
        if (rest.empty()) break;
        const int top = rest.rbegin()->first;
        const long k = rest.rbegin()->second;
        if (k < 0) fail(ErrorCode::NegativeMultiplicity, "negative multiplicity at weight " + std::to_string(top));
        for (const auto& [w, d] : simple_character(top, l)) {
            rest[w] -= k * static_cast<long>(d);
            if (rest[w] < 0) {
                fail(ErrorCode::NegativeMultiplicity, "peeling L(" + std::to_string(top) + ") leaves weight " +
                                                          std::to_string(w) + " negative");
            }
        }
        out[simple_label(top)] += static_cast<int>(k);
    }
    return out;
}

Multiset composition_multiplicities(const GradedModule& m) {
    return composition_multiplicities(graded_character(m), m.field().l());
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json matrix_json(const CyclotomicField& f, const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(f.to_strings(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const CyclotomicField& f, const nlohmann::json& j, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    if (j.empty()) return m;
    if (j.size() != rows) fail(ErrorCode::InvalidArgument, "block has the wrong number of rows");
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) fail(ErrorCode::InvalidArgument, "block has the wrong number of columns");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto strs = j[r][c].get<std::vector<std::string>>();
            if (!strs.empty()) m(r, c) = f.from_strings(strs);
        }
    }
    return m;
}

}  // namespace

std::string module_to_json(const GradedModule& m) {
    nlohmann::json out;
    out["weights"] = nlohmann::json::array();
    out["dims"] = nlohmann::json::array();
    out["E_blocks"] = nlohmann::json::array();
    out["F_blocks"] = nlohmann::json::array();
    for (const auto& [w, d] : m.weight_dims()) {
        out["weights"].push_back(w);
        out["dims"].push_back(d);
        out["E_blocks"].push_back(matrix_json(m.field(), m.e(w)));
        out["F_blocks"].push_back(matrix_json(m.field(), m.f(w)));
    }
    return out.dump();
}

GradedModule module_from_json(const CyclotomicField& f, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        const auto weights = j.at("weights").get<std::vector<int>>();
        const auto dims = j.at("dims").get<std::vector<std::size_t>>();
        const auto& eb = j.at("E_blocks");
        const auto& fb = j.at("F_blocks");
        if (dims.size() != weights.size() || eb.size() != weights.size() || fb.size() != weights.size()) {
            fail(ErrorCode::InvalidArgument, "module JSON arrays have different lengths");
        }
        GradedModule m(f);
        for (std::size_t i = 0; i < weights.size(); ++i) m.set_dim(weights[i], dims[i]);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const int w = weights[i];
            if (m.dim(w) == 0) continue;
            if (m.dim(w + 2) > 0) m.set_e(w, matrix_from_json(f, eb[i], m.dim(w + 2), m.dim(w)));
            if (m.dim(w - 2) > 0) m.set_f(w, matrix_from_json(f, fb[i], m.dim(w - 2), m.dim(w)));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("bad module JSON: ") + e.what());
    }
}

}  // namespace uqa::modcat
