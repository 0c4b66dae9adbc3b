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

#include "uqadjoint/smallqg.hpp"

#include "json.hpp"

#include <algorithm>

#include "uqadjoint/error.hpp"

namespace uqa::smallqg {

std::string to_string(const Monomial& m) {
    return "E^" + std::to_string(m.e) + " F^" + std::to_string(m.f) + " K^" + std::to_string(m.k);
}

// ---------------------------------------------------------------------------
// AlgElem / TensorElem

AlgElem::AlgElem(const Monomial& m, const Cyc& c) { add_term(m, c); }

Cyc AlgElem::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Cyc() : it->second;
}

void AlgElem::add_term(const Monomial& m, const Cyc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

AlgElem operator*(const Cyc& s, const AlgElem& a) {
    AlgElem out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
}

bool operator==(const AlgElem& a, const AlgElem& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
        if (!(m == it->first) || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

std::string AlgElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "[" + c.to_string() + "] " + smallqg::to_string(m);
    }
    return out;
}

void TensorElem::add_term(const Monomial& a, const Monomial& b, const Cyc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

bool operator==(const TensorElem& a, const TensorElem& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [k, c] : a.terms_) {
        if (!(k == it->first) || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Blocks

BlockIndex block_index(const CyclotomicField& f, int j) {
    const int l = f.l();
    BlockIndex b;
    b.j = j;
    b.b = f.casimir_root(j);
    if (j == -1) {
        b.J = b.J_prime = l - 1;
        b.root_multiplicity = 1;
    } else {
        if (j < 0 || j > (l - 3) / 2) fail(ErrorCode::InvalidArgument, "block label out of range: " + std::to_string(j));
        b.J = j;
        b.J_prime = l - 2 - j;
        b.root_multiplicity = 2;
    }
    return b;
}

std::vector<BlockIndex> canonical_blocks(const CyclotomicField& f) {
    std::vector<BlockIndex> out;
    out.push_back(block_index(f, -1));
    for (int j = 0; j <= (f.l() - 3) / 2; ++j) out.push_back(block_index(f, j));
    return out;
}

// ---------------------------------------------------------------------------
// SmallQuantumGroup

namespace {

using Word = std::vector<Letter>;

struct Redex {
    std::size_t pos;
    int kind;  // 0: FE, 1: KE, 2: KF, 3: E^l, 4: F^l, 5: K^l
};

std::vector<Redex> find_redexes(const Word& w, int l) {
    std::vector<Redex> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == Letter::F && w[i + 1] == Letter::E) out.push_back({i, 0});
        if (w[i] == Letter::K && w[i + 1] == Letter::E) out.push_back({i, 1});
        if (w[i] == Letter::K && w[i + 1] == Letter::F) out.push_back({i, 2});
    }
    const auto n = static_cast<std::size_t>(l);
    for (std::size_t i = 0; i + n <= w.size(); ++i) {
        const bool all_same = std::all_of(w.begin() + static_cast<std::ptrdiff_t>(i),
                                          w.begin() + static_cast<std::ptrdiff_t>(i + n),
                                          [&](Letter x) { return x == w[i]; });
        if (!all_same) continue;
        out.push_back({i, w[i] == Letter::E ? 3 : (w[i] == Letter::F ? 4 : 5)});
    }
    std::sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) { return a.pos < b.pos; });
    return out;
}

Word splice(const Word& w, std::size_t pos, std::size_t len, std::initializer_list<Letter> repl,
            std::size_t extra_k = 0) {
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), extra_k, Letter::K);
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len), w.end());
    return out;
}

Monomial read_normal(const Word& w) {
    Monomial m;
    for (Letter x : w) {
        if (x == Letter::E) ++m.e;
        if (x == Letter::F) ++m.f;
        if (x == Letter::K) ++m.k;
    }
    return m;
}

Word word_of(const Monomial& m) {
    Word w;
    w.insert(w.end(), static_cast<std::size_t>(m.e), Letter::E);
    w.insert(w.end(), static_cast<std::size_t>(m.f), Letter::F);
    w.insert(w.end(), static_cast<std::size_t>(m.k), Letter::K);
    return w;
}

}  // namespace

SmallQuantumGroup::SmallQuantumGroup(const CyclotomicField& field) : field_(&field) {
    const int l = field.l();
    basis_.reserve(static_cast<std::size_t>(l * l * l));
    for (int a = 0; a < l; ++a) {
        for (int b = 0; b < l; ++b) {
            for (int c = 0; c < l; ++c) basis_.push_back({a, b, c});
        }
    }
    // F^b E^a, built one F at a time: F * (E^x F^y K^z) is a short word.
    const auto n = static_cast<std::size_t>(l);
    fe_table_.assign(n, std::vector<AlgElem>(n));
    for (int a = 0; a < l; ++a) fe_table_[0][static_cast<std::size_t>(a)] = mono({a, 0, 0});
    for (int b = 1; b < l; ++b) {
        for (int a = 0; a < l; ++a) {
            AlgElem acc;
            for (const auto& [m, c] : fe_table_[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a)].terms()) {
                Word w{Letter::F};
                const Word rest = word_of(m);
                w.insert(w.end(), rest.begin(), rest.end());
                acc += c * normalize_word(w, RewriteStrategy::Leftmost);
            }
            fe_table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = std::move(acc);
        }
    }
}

AlgElem SmallQuantumGroup::one() const { return mono({0, 0, 0}); }
AlgElem SmallQuantumGroup::scalar(const Cyc& c) const { return AlgElem({0, 0, 0}, c); }
AlgElem SmallQuantumGroup::E() const { return mono({1, 0, 0}); }
AlgElem SmallQuantumGroup::F() const { return mono({0, 1, 0}); }
AlgElem SmallQuantumGroup::K() const { return mono({0, 0, 1}); }
AlgElem SmallQuantumGroup::K_inv() const { return mono({0, 0, l() - 1}); }

AlgElem SmallQuantumGroup::K_pow(long i) const {
    const long m = ((i % l()) + l()) % l();
    return mono({0, 0, static_cast<int>(m)});
}

AlgElem SmallQuantumGroup::normalize_word(std::span<const Letter> word, RewriteStrategy strategy,
                                          std::mt19937_64* rng) const {
    const int l = this->l();
    const CyclotomicField& f = *field_;
    const Cyc q2 = f.q_pow(2);
    const Cyc qm2 = f.q_pow(-2);
    const Cyc c = (f.q() - f.q_inv()).inv();
    std::mt19937_64 local_rng(0x5eed);
    if (!rng) rng = &local_rng;

    std::map<Word, Cyc> pending;
    pending.emplace(Word(word.begin(), word.end()), f.one());
    AlgElem out;
    auto push = [&](Word w, const Cyc& coef) {
        if (coef.is_zero()) return;
        auto [it, inserted] = pending.try_emplace(std::move(w), coef);
        if (!inserted) {
            it->second += coef;
            if (it->second.is_zero()) pending.erase(it);
        }
    };
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const Word& w = node.key();
        const Cyc coef = node.mapped();
        const auto redexes = find_redexes(w, l);
        if (redexes.empty()) {
            out.add_term(read_normal(w), coef);
            continue;
        }
        std::size_t pick = 0;
        switch (strategy) {
            case RewriteStrategy::Leftmost: pick = 0; break;
            case RewriteStrategy::Rightmost: pick = redexes.size() - 1; break;
            case RewriteStrategy::Random:
                pick = std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng);
                break;
        }
        const Redex r = redexes[pick];
        switch (r.kind) {
            case 0:  // FE -> EF - c K + c K^(l-1)
                push(splice(w, r.pos, 2, {Letter::E, Letter::F}), coef);
                push(splice(w, r.pos, 2, {Letter::K}), -(c * coef));
                push(splice(w, r.pos, 2, {}, static_cast<std::size_t>(l - 1)), c * coef);
                break;
            case 1: push(splice(w, r.pos, 2, {Letter::E, Letter::K}), q2 * coef); break;
            case 2: push(splice(w, r.pos, 2, {Letter::F, Letter::K}), qm2 * coef); break;
            case 3:
            case 4: break;
            case 5: push(splice(w, r.pos, static_cast<std::size_t>(l), {}), coef); break;
            default: break;
        }
    }
    return out;
}

AlgElem SmallQuantumGroup::multiply(const Monomial& x, const Monomial& y) const {
    // E^a F^b K^c E^a' F^b' K^c' = q^(2c(a'-b')) E^a (F^b E^a') F^b' K^(c+c')
    const int l = this->l();
    const CyclotomicField& f = *field_;
    AlgElem out;
    const Cyc lead = f.q_pow(2L * x.k * (y.e - y.f));
    for (const auto& [m, coef] : fe_table_[static_cast<std::size_t>(x.f)][static_cast<std::size_t>(y.e)].terms()) {
        const int e = x.e + m.e;
        const int fexp = m.f + y.f;
        if (e >= l || fexp >= l) continue;
        // K^z F^b' = q^(-2 z b') F^b' K^z
        const Cyc c = lead * coef * f.q_pow(-2L * m.k * y.f);
        out.add_term({e, fexp, (m.k + x.k + y.k) % l}, c);
    }
    return out;
}

AlgElem SmallQuantumGroup::multiply(const AlgElem& x, const AlgElem& y) const {
    std::map<Monomial, Cyc> acc;
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            const Cyc cxy = cx * cy;
            const AlgElem prod = multiply(mx, my);
            for (const auto& [m, c] : prod.terms()) acc[m] += cxy * c;
        }
    }
    AlgElem out;
    for (const auto& [m, c] : acc) out.add_term(m, c);
    return out;
}

AlgElem SmallQuantumGroup::power(const AlgElem& x, unsigned k) const {
    AlgElem out = one();
    for (unsigned i = 0; i < k; ++i) out = multiply(out, x);
    return out;
}

TensorElem SmallQuantumGroup::tensor_multiply(const TensorElem& a, const TensorElem& b) const {
    TensorElem out;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const AlgElem left = multiply(ka.first, kb.first);
            if (left.is_zero()) continue;
            const AlgElem right = multiply(ka.second, kb.second);
            const Cyc cab = ca * cb;
            for (const auto& [ml, cl] : left.terms()) {
                for (const auto& [mr, cr] : right.terms()) out.add_term(ml, mr, cab * cl * cr);
            }
        }
    }
    return out;
}

TensorElem SmallQuantumGroup::coproduct(const AlgElem& x) const {
    const CyclotomicField& f = *field_;
    const Cyc one = f.one();
    const Monomial unit{0, 0, 0}, e{1, 0, 0}, fm{0, 1, 0}, k{0, 0, 1}, kinv{0, 0, l() - 1};
    TensorElem dE, dF, dK, unit_t;
    dE.add_term(e, unit, one);
    dE.add_term(k, e, one);
    dF.add_term(fm, kinv, one);
    dF.add_term(unit, fm, one);
    dK.add_term(k, k, one);
    unit_t.add_term(unit, unit, one);

    TensorElem out;
    for (const auto& [m, c] : x.terms()) {
        TensorElem t = unit_t;
        for (int i = 0; i < m.e; ++i) t = tensor_multiply(t, dE);
        for (int i = 0; i < m.f; ++i) t = tensor_multiply(t, dF);
        for (int i = 0; i < m.k; ++i) t = tensor_multiply(t, dK);
        for (const auto& [key, tc] : t.terms()) out.add_term(key.first, key.second, c * tc);
    }
    return out;
}

AlgElem SmallQuantumGroup::antipode(const AlgElem& x) const {
    const Cyc minus_one = field_->from_int(-1);
    const AlgElem sE = minus_one * multiply(K_inv(), E());
    const AlgElem sF = minus_one * multiply(F(), K());
    const AlgElem sK = K_inv();
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        // S(E^a F^b K^c) = S(K)^c S(F)^b S(E)^a
        AlgElem t = one();
        for (int i = 0; i < m.k; ++i) t = multiply(t, sK);
        for (int i = 0; i < m.f; ++i) t = multiply(t, sF);
        for (int i = 0; i < m.e; ++i) t = multiply(t, sE);
        out += c * t;
    }
    return out;
}

Cyc SmallQuantumGroup::counit(const AlgElem& x) const {
    Cyc out = field_->zero();
    for (const auto& [m, c] : x.terms()) {
        if (m.e == 0 && m.f == 0) out += c;
    }
    return out;
}

AlgElem SmallQuantumGroup::omega(const AlgElem& x) const {
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        // omega(E^a F^b K^c) = F^a E^b K^-c
        AlgElem t = multiply(mono({0, m.e, 0}), mono({m.f, 0, 0}));
        t = multiply(t, K_pow(-m.k));
        out += c * t;
    }
    return out;
}

AlgElem SmallQuantumGroup::casimir() const {
    const CyclotomicField& f = *field_;
    AlgElem x = mono({1, 1, 0});
    x += (f.q_inv() * f.q_minus_qinv_sq_inv()) * K();
    x += (f.q() * f.q_minus_qinv_sq_inv()) * K_inv();
    return x;
}

AlgElem SmallQuantumGroup::casimir_via_fe() const {
    const CyclotomicField& f = *field_;
    AlgElem x = multiply(F(), E());
    x += (f.q() * f.q_minus_qinv_sq_inv()) * K();
    x += (f.q_inv() * f.q_minus_qinv_sq_inv()) * K_inv();
    return x;
}

AlgElem SmallQuantumGroup::ad_E(const AlgElem& x) const {
    // Ex - K x K^-1 E
    return multiply(E(), x) - multiply(multiply(K(), x), multiply(K_inv(), E()));
}

AlgElem SmallQuantumGroup::ad_F(const AlgElem& x) const {
    // F x K - x F K
    return multiply(multiply(F(), x), K()) - multiply(x, mono({0, 1, 1}));
}

AlgElem SmallQuantumGroup::ad_K(const AlgElem& x) const { return multiply(multiply(K(), x), K_inv()); }

AlgElem SmallQuantumGroup::ad_casimir(const AlgElem& x) const {
    const CyclotomicField& f = *field_;
    const AlgElem kx = ad_K(x);
    const AlgElem kinvx = multiply(multiply(K_inv(), x), K());
    AlgElem out = ad_E(ad_F(x));
    out += (f.q_inv() * f.q_minus_qinv_sq_inv()) * kx;
    out += (f.q() * f.q_minus_qinv_sq_inv()) * kinvx;
    return out;
}

AlgElem SmallQuantumGroup::ad_casimir_on_K_powers(int i) const {
    if (i < 1 || i > l()) fail(ErrorCode::InvalidArgument, "K power index must lie in [1, l]");
    const CyclotomicField& f = *field_;
    const Cyc d = f.q_pow(i) - f.q_pow(-i);
    AlgElem out = f.casimir_root(2L * i - 2) * K_pow(i);
    out -= (d * d) * multiply(casimir(), K_pow(i + 1));
    out += (f.qint(i) * f.qint(i + 1)) * K_pow(i + 2);
    return out;
}

// ---------------------------------------------------------------------------
// AdjointRep

AdjointRep::AdjointRep(const SmallQuantumGroup& u) : u_(&u), module_(u.field()) {
    for (const auto& m : u.basis()) basis_[m.degree()].push_back(m);
    for (auto& [w, ms] : basis_) {
        std::sort(ms.begin(), ms.end());
        for (std::size_t i = 0; i < ms.size(); ++i) index_[ms[i]] = i;
        module_.set_dim(w, ms.size());
    }
    for (const auto& [w, ms] : basis_) {
        if (module_.dim(w + 2) > 0) {
            Matrix e(module_.dim(w + 2), ms.size());
            for (std::size_t c = 0; c < ms.size(); ++c) e.set_col(c, coordinates(u.ad_E(u.mono(ms[c])), w + 2));
            module_.set_e(w, std::move(e));
        }
        if (module_.dim(w - 2) > 0) {
            Matrix f(module_.dim(w - 2), ms.size());
            for (std::size_t c = 0; c < ms.size(); ++c) f.set_col(c, coordinates(u.ad_F(u.mono(ms[c])), w - 2));
            module_.set_f(w, std::move(f));
        }
    }
}

const std::vector<Monomial>& AdjointRep::basis(int w) const {
    static const std::vector<Monomial> empty;
    auto it = basis_.find(w);
    return it == basis_.end() ? empty : it->second;
}

std::size_t AdjointRep::index(const Monomial& m) const { return index_.at(m); }

std::vector<Cyc> AdjointRep::coordinates(const AlgElem& x, int w) const {
    std::vector<Cyc> v(module_.dim(w));
    for (const auto& [m, c] : x.terms()) {
        if (m.degree() != w) fail(ErrorCode::Internal, "element is not homogeneous of degree " + std::to_string(w));
        v[index_.at(m)] = c;
    }
    return v;
}

AlgElem AdjointRep::element(int w, const std::vector<Cyc>& coords) const {
    AlgElem out;
    const auto& ms = basis(w);
    for (std::size_t i = 0; i < coords.size(); ++i) out.add_term(ms[i], coords[i]);
    return out;
}

GradedMap AdjointRep::left_multiplication(const AlgElem& z) const {
    for (const auto& [m, c] : z.terms()) {
        if (m.degree() != 0) fail(ErrorCode::InvalidArgument, "left multiplication needs a degree-zero element");
    }
    GradedMap out(module_.weight_dims(), module_.weight_dims());
    for (const auto& [w, ms] : basis_) {
        Matrix b(ms.size(), ms.size());
        for (std::size_t c = 0; c < ms.size(); ++c) b.set_col(c, coordinates(u_->multiply(z, u_->mono(ms[c])), w));
        out.set_block(w, std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Casimir blocks

CasimirBlocks casimir_blocks(const SmallQuantumGroup& u) {
    const CyclotomicField& f = u.field();
    AdjointRep coords_only(u);
    const AlgElem x = u.casimir();

    // Powers of X live in the weight-zero subalgebra; find the first dependency.
    std::vector<AlgElem> powers{u.one()};
    Matrix cols = Matrix::column(coords_only.coordinates(powers[0], 0));
    linalg::Poly mu;
    for (unsigned n = 1;; ++n) {
        powers.push_back(u.multiply(powers.back(), x));
        const auto target = Matrix::column(coords_only.coordinates(powers.back(), 0));
        if (auto sol = linalg::solve(cols, target)) {
            std::vector<Cyc> c(n + 1);
            for (unsigned i = 0; i < n; ++i) c[i] = -(*sol)(i, 0);
            c[n] = f.one();
            mu = linalg::Poly(std::move(c));
            break;
        }
        cols = cols.hcat(target);
        if (n > 4U * static_cast<unsigned>(f.l())) fail(ErrorCode::Internal, "Casimir minimal polynomial not found");
    }

    CasimirBlocks out;
    out.minimal_polynomial = mu;
    linalg::Poly rest = mu;
    for (BlockIndex b : canonical_blocks(f)) {
        const linalg::Poly lin = linalg::Poly::linear(f, b.b);
        int mult = 0;
        for (;;) {
            auto [quot, rem] = divmod(rest, lin);
            if (!rem.is_zero()) break;
            rest = quot;
            ++mult;
        }
        if (mult == 0) fail(ErrorCode::Internal, "b_" + std::to_string(b.j) + " is not a root of the Casimir");
        b.root_multiplicity = mult;
        out.blocks.push_back(b);
    }
    if (rest.degree() != 0) fail(ErrorCode::Internal, "Casimir minimal polynomial has roots outside {b_j}");

    for (const auto& b : out.blocks) {
        const linalg::Poly local = linalg::pow(linalg::Poly::linear(f, b.b), static_cast<unsigned>(b.root_multiplicity));
        const linalg::Poly cofactor = divmod(mu, local).first;
        const linalg::Poly s = linalg::inverse_mod(cofactor, local);
        const linalg::Poly e = divmod(s * cofactor, mu).second;
        AlgElem idem;
        for (std::size_t i = 0; i < e.coeffs().size(); ++i) idem += e.coeffs()[i] * powers[i];
        out.idempotent_polys.push_back(e);
        out.idempotents.push_back(std::move(idem));
    }
    return out;
}

GradedMap block_projector(const AdjointRep& ad, const CasimirBlocks& cb, int j) {
    for (std::size_t i = 0; i < cb.blocks.size(); ++i) {
        if (cb.blocks[i].j == j) return ad.left_multiplication(cb.idempotents[i]);
    }
    fail(ErrorCode::InvalidArgument, "no Casimir block with label " + std::to_string(j));
}

std::string structure_constants_json(const SmallQuantumGroup& u) {
    auto mono_json = [](const Monomial& m) { return nlohmann::json::array({m.e, m.f, m.k}); };
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : u.basis()) {
        for (const auto& b : u.basis()) {
            nlohmann::json prod = nlohmann::json::array();
            const AlgElem ab = u.multiply(a, b);
            for (const auto& [m, c] : ab.terms()) {
                prod.push_back({{"monomial", mono_json(m)}, {"coeff", c.to_strings()}});
            }
            out.push_back(nlohmann::json::array({mono_json(a), mono_json(b), prod}));
        }
    }
    return out.dump();
}

}  // namespace uqa::smallqg
