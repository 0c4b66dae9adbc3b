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

#ifndef UQADJOINT_CYCLOTOMIC_HPP
#define UQADJOINT_CYCLOTOMIC_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uqa::cyclotomic {

/// Arbitrary precision rational, always canonical (gmp keeps mpq reduced
/// with a positive denominator as long as every value passes through the
/// arithmetic operators).
using Rat = mpq_class;

std::string rat_to_string(const Rat& r);
Rat rat_from_string(std::string_view s);

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
std::vector<long> cyclotomic_polynomial(int n);

/// Euler phi.
int totient(int n);

class CyclotomicField;

/// An element of Q(zeta_l), stored as coefficients of 1, zeta, ..., zeta^(phi(l)-1)
/// reduced modulo Phi_l.
///
/// A default constructed Cyc is an "unbound" zero: it carries no field and no
/// coefficients. It behaves as 0 in every operation and picks up the field of
/// the other operand, which lets dense matrices hold cheap zeros.
class Cyc {
public:
    Cyc() = default;
    Cyc(const CyclotomicField& field, std::vector<Rat> coeffs);

    const CyclotomicField* field() const noexcept { return field_; }
    bool is_zero() const noexcept;
    bool is_one() const;
    /// Coefficient of zeta^i; zero for unbound values.
    Rat coeff(int i) const;
    std::span<const Rat> coeffs() const noexcept { return coeffs_; }

    /// True when the value lies in Q; sets *out to it.
    bool is_rational(Rat* out = nullptr) const;

    Cyc inv() const;

    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);
    Cyc& operator*=(const Cyc& o);
    Cyc& operator*=(const Rat& r);

    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    friend Cyc operator*(Cyc a, const Rat& r) { return a *= r; }
    friend Cyc operator*(const Rat& r, Cyc a) { return a *= r; }
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }
    Cyc operator-() const;

    friend bool operator==(const Cyc& a, const Cyc& b);

    /// "num/den" strings, index i = coefficient of zeta^i.
    std::vector<std::string> to_strings() const;
    std::string to_string() const;

private:
    const CyclotomicField* field_ = nullptr;
    std::vector<Rat> coeffs_;

    friend class CyclotomicField;
};

/// Q(zeta_l) for odd l >= 3 with the distinguished root q = zeta^root_exponent.
///
/// The field is immutable once built; Cyc values keep a raw pointer to it, so a
/// field must outlive every value created from it.
class CyclotomicField {
public:
    explicit CyclotomicField(int l, int root_exponent = 1);

    CyclotomicField(const CyclotomicField&) = delete;
    CyclotomicField& operator=(const CyclotomicField&) = delete;

    int l() const noexcept { return l_; }
    int root_exponent() const noexcept { return root_exponent_; }
    int degree() const noexcept { return degree_; }
    std::span<const long> modulus() const noexcept { return modulus_; }

    Cyc zero() const;
    Cyc one() const;
    Cyc from_rat(const Rat& r) const;
    Cyc from_int(long v) const { return from_rat(Rat(v)); }
    Cyc from_strings(std::span<const std::string> coeffs) const;
    /// phi(l) coefficient strings, also for unbound zeros.
    std::vector<std::string> to_strings(const Cyc& a) const;
    Cyc zeta_pow(long k) const;
    Cyc q_pow(long k) const;
    Cyc q() const { return q_pow(1); }
    Cyc q_inv() const { return q_pow(-1); }

    /// (i)_q = (q^i - q^-i) / (q - q^-1).
    Cyc qint(long i) const;
    /// (q - q^-1)^2 and its inverse, used all over the Casimir formulas.
    const Cyc& q_minus_qinv_sq() const noexcept { return qdiff_sq_; }
    const Cyc& q_minus_qinv_sq_inv() const noexcept { return qdiff_sq_inv_; }
    /// b_j = (q^(j+1) + q^(-j-1)) / (q - q^-1)^2, j read modulo l.
    Cyc casimir_root(long j) const;

    // Internal: reduces a coefficient vector of arbitrary length in place.
    void reduce(std::vector<Rat>& poly) const;

private:
    int l_;
    int root_exponent_;
    int degree_;
    std::vector<long> modulus_;
    std::vector<Cyc> zeta_pows_;
    Cyc qdiff_sq_;
    Cyc qdiff_sq_inv_;
};

/// Closed real interval with MPFR endpoints. Endpoints are rounded outward
/// by every operation so the enclosed set is never lost.
class RealInterval {
public:
    explicit RealInterval(int precision_bits);
    RealInterval(const RealInterval& o);
    RealInterval& operator=(const RealInterval& o);
    ~RealInterval();

    static RealInterval from_rat(const Rat& r, int precision_bits);

    int precision() const noexcept { return prec_; }
    double lower() const;
    double upper() const;
    double midpoint() const;
    /// Upper bound on half the width.
    double radius() const;
    /// log2 of the width, -inf for a point interval.
    double log2_width() const;
    bool contains_zero() const;
    /// -1, +1, or nullopt when zero is not excluded.
    std::optional<int> sign() const;

    RealInterval operator+(const RealInterval& o) const;
    RealInterval operator*(const RealInterval& o) const;

    mpfr_ptr lo() noexcept { return lo_; }
    mpfr_ptr hi() noexcept { return hi_; }
    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }

private:
    int prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

struct ComplexEnclosure {
    RealInterval re;
    RealInterval im;
};

/// Image of a under zeta -> exp(2 pi i * embedding_exponent / l), enclosed by
/// intervals computed at the given working precision.
ComplexEnclosure embed(const Cyc& a, long embedding_exponent, int precision_bits);

}  // namespace uqa::cyclotomic

#endif  // UQADJOINT_CYCLOTOMIC_HPP
