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

#include "uqadjoint/linalg.hpp"

#include <utility>

#include "uqadjoint/error.hpp"

namespace uqa::linalg {

Matrix Matrix::identity(const CyclotomicField& f, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix Matrix::column(const std::vector<Cyc>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

std::vector<Cyc> Matrix::col(std::size_t c) const {
    std::vector<Cyc> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Cyc> Matrix::row(std::size_t r) const {
    return std::vector<Cyc>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_col(std::size_t c, const std::vector<Cyc>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::Internal, "matrix shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::Internal, "matrix shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
    }
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::Internal, "matrix shape mismatch in *");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Cyc& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Cyc& bkj = b(k, j);
                if (bkj.is_zero()) continue;
                out(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

Matrix operator*(const Cyc& s, Matrix a) {
    for (auto& x : a.data_) {
        if (!x.is_zero()) x = s * x;
    }
    return a;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        if (!(a.data_[i] == b.data_[i])) return false;
    }
    return true;
}

std::vector<Cyc> operator*(const Matrix& a, const std::vector<Cyc>& v) {
    if (a.cols() != v.size()) fail(ErrorCode::Internal, "matrix-vector shape mismatch");
    std::vector<Cyc> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero() || v[k].is_zero()) continue;
            out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

Matrix Matrix::hcat(const Matrix& o) const {
    if (rows_ != o.rows_ && !(cols_ == 0 || o.cols_ == 0)) fail(ErrorCode::Internal, "hcat row mismatch");
    const std::size_t r = cols_ == 0 ? o.rows_ : rows_;
    Matrix out(r, cols_ + o.cols_);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, cols_ + j) = o(i, j);
    }
    return out;
}

Matrix Matrix::vcat(const Matrix& o) const {
    if (cols_ != o.cols_ && !(rows_ == 0 || o.rows_ == 0)) fail(ErrorCode::Internal, "vcat column mismatch");
    const std::size_t c = rows_ == 0 ? o.cols_ : cols_;
    Matrix out(rows_ + o.rows_, c);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i, j);
    }
    for (std::size_t i = 0; i < o.rows_; ++i) {
        for (std::size_t j = 0; j < c; ++j) out(rows_ + i, j) = o(i, j);
    }
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    }
    return out;
}

std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = m.rows();
        // Prefer a rational pivot: cheaper inverse and slower coefficient growth.
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            if (sel == m.rows()) sel = r;
            if (m(r, col).is_rational()) {
                sel = r;
                break;
            }
        }
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        }
        const Cyc inv = m(row, col).inv();
        for (std::size_t c = col; c < m.cols(); ++c) {
            if (!m(row, c).is_zero()) m(row, c) = m(row, c) * inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Cyc factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (m(row, c).is_zero()) continue;
                m(r, c) -= factor * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

Matrix nullspace(const Matrix& m, const CyclotomicField& f) {
    Matrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) free.push_back(c);
    }
    Matrix basis(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        const std::size_t fc = free[k];
        basis(fc, k) = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, fc);
    }
    return basis;
}

Matrix column_space_rref(const Matrix& m, std::vector<std::size_t>* pivots) {
    Matrix t = m.transpose();
    auto piv = rref(t);
    Matrix out = t.block(0, 0, piv.size(), t.cols());
    if (pivots) *pivots = std::move(piv);
    return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    if (n == 0) return Matrix();
    const CyclotomicField* f = nullptr;
    for (std::size_t i = 0; i < n && !f; ++i) {
        for (std::size_t j = 0; j < n && !f; ++j) f = m(i, j).field();
    }
    if (!f) return std::nullopt;
    Matrix aug = m.hcat(Matrix::identity(*f, n));
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    Matrix aug = a.hcat(b);
    auto piv = rref(aug);
    Matrix x(a.cols(), b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, a.cols() + j);
    }
    return x;
}

Matrix power(const Matrix& m, unsigned k, const CyclotomicField& f) {
    Matrix out = Matrix::identity(f, m.rows());
    for (unsigned i = 0; i < k; ++i) out = out * m;
    return out;
}

Cyc determinant(Matrix m, const CyclotomicField& f) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    Cyc det = f.one();
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t r = col; r < n; ++r) {
            if (!m(r, col).is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel == n) return f.zero();
        if (sel != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(sel, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        const Cyc inv = m(col, col).inv();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            const Cyc factor = m(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) {
                if (!m(col, c).is_zero()) m(r, c) -= factor * m(col, c);
            }
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Cyc> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::monomial(const Cyc& c, std::size_t deg) {
    std::vector<Cyc> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const CyclotomicField& f, const Cyc& root) { return Poly({-root + f.zero(), f.one()}); }

Cyc Poly::operator()(const Cyc& x) const {
    Cyc acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Cyc> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Cyc> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Cyc> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    }
    return true;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<Cyc> rem = a.coeffs_;
    if (rem.size() < b.coeffs_.size()) return {Poly(), a};
    std::vector<Cyc> quot(rem.size() - b.coeffs_.size() + 1);
    const Cyc lead_inv = b.leading().inv();
    const std::size_t db = b.coeffs_.size() - 1;
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k].is_zero()) continue;
        const Cyc c = rem[k] * lead_inv;
        quot[k - db] = c;
        for (std::size_t t = 0; t <= db; ++t) rem[k - db + t] -= c * b.coeffs_[t];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Cyc> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    const Cyc inv = leading().inv();
    std::vector<Cyc> c = coeffs_;
    for (auto& x : c) x = x * inv;
    return Poly(std::move(c));
}

Poly pow(const Poly& p, unsigned k) {
    if (k == 0) {
        if (p.is_zero()) fail(ErrorCode::InvalidArgument, "0^0 for polynomials");
        const CyclotomicField* f = p.leading().field();
        return Poly({f->one()});
    }
    Poly out = p;
    for (unsigned i = 1; i < k; ++i) out = out * p;
    return out;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly inverse_mod(const Poly& a, const Poly& m) {
    // Invariant: s_i * a == r_i (mod m).
    Poly r0 = m, r1 = divmod(a, m).second;
    const CyclotomicField* f = m.leading().field();
    Poly s0, s1({f->one()});
    while (r1.degree() > 0) {
        auto [quot, rem] = divmod(r0, r1);
        Poly s2 = s0 - quot * s1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.is_zero()) fail(ErrorCode::InvalidArgument, "inverse_mod: arguments are not coprime");
    const Cyc c = r1.coeff(0).inv();
    return divmod(Poly({c}) * s1, m).second;
}


Poly minimal_polynomial(const Matrix& m, const CyclotomicField& f) {
    const std::size_t n = m.rows();
    if (n != m.cols()) fail(ErrorCode::InvalidArgument, "minimal polynomial of a non-square matrix");
    // Columns are vec(m^0), vec(m^1), ...
    Matrix powers(n * n, 0);
    Matrix cur = Matrix::identity(f, n);
    for (std::size_t d = 0; d <= n; ++d) {
        Matrix v(n * n, 1);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) v(r * n + c, 0) = cur(r, c);
        }
        Matrix next = powers.hcat(v);
        const Matrix null = nullspace(next, f);
        if (null.cols() > 0) {
            std::vector<Cyc> coeffs(d + 1);
            for (std::size_t i = 0; i <= d; ++i) coeffs[i] = null(i, 0);
            return Poly(std::move(coeffs)).monic();
        }
        powers = std::move(next);
        cur = cur * m;
    }
    fail(ErrorCode::Internal, "no polynomial relation up to the matrix size");
}

bool is_semisimple(const Matrix& m, const CyclotomicField& f) {
    const Poly mu = minimal_polynomial(m, f);
    return gcd(mu, mu.derivative()).degree() == 0;
}

}  // namespace uqa::linalg
