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

#ifndef UQADJOINT_LINALG_HPP
#define UQADJOINT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "uqadjoint/cyclotomic.hpp"

namespace uqa::linalg {

using cyclotomic::Cyc;
using cyclotomic::CyclotomicField;
using cyclotomic::Rat;

/// Dense row-major matrix over Q(zeta). Vectors are columns.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const CyclotomicField& f, std::size_t n);
    static Matrix column(const std::vector<Cyc>& v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Cyc& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Cyc& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    Matrix transpose() const;
    std::vector<Cyc> col(std::size_t c) const;
    std::vector<Cyc> row(std::size_t r) const;
    void set_col(std::size_t c, const std::vector<Cyc>& v);

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Cyc& s, Matrix a);
    friend bool operator==(const Matrix& a, const Matrix& b);

    /// Appends the columns of o.
    Matrix hcat(const Matrix& o) const;
    Matrix vcat(const Matrix& o) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cyc> data_;
};

std::vector<Cyc> operator*(const Matrix& a, const std::vector<Cyc>& v);

/// Gauss-Jordan elimination in place; returns pivot columns. Each pivot is
/// normalised to 1 and cleared above and below.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Columns form a basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m, const CyclotomicField& f);

/// Rows of the reduced echelon form of the column span, i.e. a canonical basis
/// of span(columns of m) stored as rows. Pivots are returned in *pivots.
Matrix column_space_rref(const Matrix& m, std::vector<std::size_t>* pivots);

std::optional<Matrix> inverse(const Matrix& m);

/// Some x with a x = b (b may have several columns), or nullopt.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

Matrix power(const Matrix& m, unsigned k, const CyclotomicField& f);

/// Determinant by Gaussian elimination; square matrices only.
Cyc determinant(Matrix m, const CyclotomicField& f);

/// Polynomial over Q(zeta), coefficients low degree first, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Cyc> coeffs);
    static Poly monomial(const Cyc& c, std::size_t deg);
    /// x - a
    static Poly linear(const CyclotomicField& f, const Cyc& root);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Cyc>& coeffs() const noexcept { return coeffs_; }
    Cyc coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Cyc(); }
    const Cyc& leading() const { return coeffs_.back(); }

    Cyc operator()(const Cyc& x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    /// Quotient and remainder.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    Poly derivative() const;
    Poly monic() const;

private:
    void trim();
    std::vector<Cyc> coeffs_;
};

Poly pow(const Poly& p, unsigned k);
Poly gcd(Poly a, Poly b);

/// s with s*a == 1 mod m; a and m must be coprime.
Poly inverse_mod(const Poly& a, const Poly& m);

/// Monic minimal polynomial of a square matrix, from the first linear
/// dependency among I, m, m^2, ...
Poly minimal_polynomial(const Matrix& m, const CyclotomicField& f);

/// Diagonalizable over the algebraic closure: the minimal polynomial is squarefree.
bool is_semisimple(const Matrix& m, const CyclotomicField& f);

}  // namespace uqa::linalg

#endif  // UQADJOINT_LINALG_HPP
