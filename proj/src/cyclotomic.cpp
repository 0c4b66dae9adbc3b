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

#include "uqadjoint/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "uqadjoint/error.hpp"

namespace uqa::cyclotomic {

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(std::string_view s) {
    Rat r;
    if (s.empty() || r.set_str(std::string(s), 10) != 0) {
        fail(ErrorCode::InvalidArgument, "not a rational: '" + std::string(s) + "'");
    }
    if (r.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

int totient(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

using IntPoly = std::vector<long>;

// Exact division of integer polynomials; the divisor is monic.
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) return {0};
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
        const long c = num[k];
        quot[k - dd] = c;
        if (c == 0) continue;
        for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * den[t];
    }
    return quot;
}

using QPoly = std::vector<Rat>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    QPoly quot(a.size() - b.size() + 1);
    const Rat& lead = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (a[k] == 0) continue;
        Rat c = a[k] / lead;
        quot[k - (b.size() - 1)] = c;
        for (std::size_t t = 0; t < b.size(); ++t) a[k - (b.size() - 1) + t] -= c * b[t];
    }
    trim(a);
    trim(quot);
    return {quot, a};
}

}  // namespace

std::vector<long> cyclotomic_polynomial(int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
    // x^n - 1 = prod_{d | n} Phi_d
    IntPoly num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) num = divide_monic(num, cyclotomic_polynomial(d));
    }
    return num;
}

// ---------------------------------------------------------------------------
// Cyc

Cyc::Cyc(const CyclotomicField& field, std::vector<Rat> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
    field.reduce(coeffs_);
}

bool Cyc::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyc::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rat& r) { return r == 0; });
}

Rat Cyc::coeff(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size()) return Rat(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

bool Cyc::is_rational(Rat* out) const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return false;
    }
    if (out) *out = coeffs_.empty() ? Rat(0) : coeffs_[0];
    return true;
}

Cyc& Cyc::operator+=(const Cyc& o) {
    if (!o.field_) return *this;
    if (!field_) {
        *this = o;
        return *this;
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (o.coeffs_[i] != 0) coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
    if (!o.field_) return *this;
    if (!field_) {
        *this = -o;
        return *this;
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (o.coeffs_[i] != 0) coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (!a.field_ || !b.field_ || a.is_zero() || b.is_zero()) return Cyc();
    const CyclotomicField& f = *a.field_;
    const std::size_t n = a.coeffs_.size();
    std::vector<Rat> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeffs_[j] == 0) continue;
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    Cyc r;
    r.field_ = &f;
    f.reduce(prod);
    r.coeffs_ = std::move(prod);
    return r;
}

Cyc& Cyc::operator*=(const Cyc& o) {
    *this = *this * o;
    return *this;
}

Cyc& Cyc::operator*=(const Rat& r) {
    if (r == 0) {
        *this = Cyc();
        return *this;
    }
    for (auto& c : coeffs_) {
        if (c != 0) c *= r;
    }
    return *this;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const Cyc& a, const Cyc& b) {
    if (!a.field_) return b.is_zero();
    if (!b.field_) return a.is_zero();
    return a.coeffs_ == b.coeffs_;
}

Cyc Cyc::inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in Q(zeta)");
    const CyclotomicField& f = *field_;
    Rat scalar;
    if (is_rational(&scalar)) return f.from_rat(1 / scalar);

    // Extended Euclid against Phi_l, keeping s_i * a == r_i (mod Phi_l).
    QPoly r0(f.modulus().begin(), f.modulus().end());
    QPoly r1(coeffs_.begin(), coeffs_.end());
    trim(r1);
    QPoly s0;
    QPoly s1{Rat(1)};
    while (r1.size() > 1) {
        auto [quot, rem] = poly_divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(quot, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) fail(ErrorCode::Internal, "cyclotomic polynomial is not irreducible?");
    const Rat c = r1[0];
    for (auto& x : s1) x /= c;
    return Cyc(f, std::move(s1));
}

std::vector<std::string> Cyc::to_strings() const {
    const std::size_t n = field_ ? static_cast<std::size_t>(field_->degree()) : 1;
    std::vector<std::string> out(n, "0");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = rat_to_string(coeffs_[i]);
    return out;
}

std::vector<std::string> CyclotomicField::to_strings(const Cyc& a) const {
    std::vector<std::string> out(static_cast<std::size_t>(degree_), "0");
    const auto c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = rat_to_string(c[i]);
    return out;
}

std::string Cyc::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + rat_to_string(coeffs_[i]) + ")";
        if (i > 0) out += "*z^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// CyclotomicField

CyclotomicField::CyclotomicField(int l, int root_exponent) : l_(l), root_exponent_(root_exponent) {
    if (l < 3 || l % 2 == 0) fail(ErrorCode::InvalidL, "l must be odd and >= 3, got " + std::to_string(l));
    root_exponent_ = ((root_exponent % l) + l) % l;
    if (std::gcd(root_exponent_, l) != 1) {
        fail(ErrorCode::InvalidArgument,
             "root exponent " + std::to_string(root_exponent) + " is not coprime to " + std::to_string(l));
    }
    modulus_ = cyclotomic_polynomial(l);
    degree_ = static_cast<int>(modulus_.size()) - 1;

    zeta_pows_.reserve(static_cast<std::size_t>(l));
    for (int k = 0; k < l; ++k) {
        std::vector<Rat> c(static_cast<std::size_t>(k) + 1);
        c[static_cast<std::size_t>(k)] = 1;
        zeta_pows_.emplace_back(*this, std::move(c));
    }
    const Cyc d = q() - q_inv();
    qdiff_sq_ = d * d;
    qdiff_sq_inv_ = qdiff_sq_.inv();
}

void CyclotomicField::reduce(std::vector<Rat>& poly) const {
    const std::size_t n = static_cast<std::size_t>(degree_);
    // x^n = -sum_{t<n} m_t x^t, applied from the top down.
    for (std::size_t k = poly.size(); k-- > n;) {
        if (poly[k] == 0) continue;
        const Rat c = poly[k];
        for (std::size_t t = 0; t < n; ++t) {
            if (modulus_[t] != 0) poly[k - n + t] -= c * modulus_[t];
        }
        poly[k] = 0;
    }
    poly.resize(n);
}

Cyc CyclotomicField::zero() const { return Cyc(*this, {}); }

Cyc CyclotomicField::one() const { return from_rat(Rat(1)); }

Cyc CyclotomicField::from_rat(const Rat& r) const { return Cyc(*this, {r}); }

Cyc CyclotomicField::from_strings(std::span<const std::string> coeffs) const {
    if (coeffs.size() != static_cast<std::size_t>(degree_)) {
        fail(ErrorCode::InvalidArgument, "expected " + std::to_string(degree_) + " coefficients, got " +
                                             std::to_string(coeffs.size()));
    }
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(rat_from_string(s));
    return Cyc(*this, std::move(c));
}

Cyc CyclotomicField::zeta_pow(long k) const {
    const long m = ((k % l_) + l_) % l_;
    return zeta_pows_[static_cast<std::size_t>(m)];
}

Cyc CyclotomicField::q_pow(long k) const { return zeta_pow((k % l_) * root_exponent_); }

Cyc CyclotomicField::qint(long i) const {
    long m = ((i % l_) + l_) % l_;
    // (i)_q = q^(i-1) + q^(i-3) + ... + q^(1-i) for i >= 0
    Cyc acc = zero();
    for (long t = 0; t < m; ++t) acc += q_pow(m - 1 - 2 * t);
    return acc;
}

Cyc CyclotomicField::casimir_root(long j) const { return (q_pow(j + 1) + q_pow(-j - 1)) * qdiff_sq_inv_; }

// ---------------------------------------------------------------------------
// RealInterval

RealInterval::RealInterval(int precision_bits) : prec_(precision_bits) {
    mpfr_init2(lo_, precision_bits);
    mpfr_init2(hi_, precision_bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RealInterval::~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RealInterval RealInterval::from_rat(const Rat& r, int precision_bits) {
    RealInterval out(precision_bits);
    mpfr_set_q(out.lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, r.get_mpq_t(), MPFR_RNDU);
    return out;
}

double RealInterval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RealInterval::midpoint() const {
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double RealInterval::radius() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double RealInterval::log2_width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double out = -std::numeric_limits<double>::infinity();
    if (!mpfr_zero_p(w)) {
        mpfr_log2(w, w, MPFR_RNDU);
        out = mpfr_get_d(w, MPFR_RNDU);
    }
    mpfr_clear(w);
    return out;
}

bool RealInterval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

std::optional<int> RealInterval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return std::nullopt;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
    RealInterval out(std::max(prec_, o.prec_));
    mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
    const int p = std::max(prec_, o.prec_);
    RealInterval out(p);
    mpfr_t t;
    mpfr_init2(t, p);
    bool first = true;
    for (mpfr_srcptr a : {lo(), hi()}) {
        for (mpfr_srcptr b : {o.lo(), o.hi()}) {
            mpfr_mul(t, a, b, MPFR_RNDD);
            if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a, b, MPFR_RNDU);
            if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

namespace {

// Encloses cos and sin of 2*pi*k/l. The angle is enclosed first; both
// functions are 1-Lipschitz, so widening the rounded value at the lower end
// by the angle width plus one ulp keeps the true value inside.
std::pair<RealInterval, RealInterval> unit_root(long k, long l, int prec) {
    RealInterval theta(prec);
    mpfr_const_pi(theta.lo(), MPFR_RNDD);
    mpfr_const_pi(theta.hi(), MPFR_RNDU);
    const Rat factor(2 * k, l);
    theta = theta * RealInterval::from_rat(factor, prec);

    mpfr_t slack, val;
    mpfr_init2(slack, prec);
    mpfr_init2(val, prec);
    mpfr_sub(slack, theta.hi(), theta.lo(), MPFR_RNDU);
    mpfr_t ulp;
    mpfr_init2(ulp, prec);
    mpfr_set_ui_2exp(ulp, 1, -(prec - 1), MPFR_RNDU);
    mpfr_add(slack, slack, ulp, MPFR_RNDU);

    auto enclose = [&](int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
        RealInterval out(prec);
        fn(val, theta.lo(), MPFR_RNDN);
        mpfr_sub(out.lo(), val, slack, MPFR_RNDD);
        mpfr_add(out.hi(), val, slack, MPFR_RNDU);
        return out;
    };
    RealInterval c = enclose(mpfr_cos);
    RealInterval s = enclose(mpfr_sin);
    mpfr_clear(slack);
    mpfr_clear(val);
    mpfr_clear(ulp);
    return {c, s};
}

}  // namespace

ComplexEnclosure embed(const Cyc& a, long embedding_exponent, int precision_bits) {
    if (precision_bits < 64) fail(ErrorCode::InvalidArgument, "embedding precision must be at least 64 bits");
    ComplexEnclosure out{RealInterval(precision_bits), RealInterval(precision_bits)};
    const CyclotomicField* f = a.field();
    if (!f) return out;
    const long l = f->l();
    if (std::gcd(((embedding_exponent % l) + l) % l, l) != 1) {
        fail(ErrorCode::InvalidArgument, "embedding exponent must be coprime to l");
    }
    // A few guard bits cover the accumulated outward rounding of the sum.
    const int prec = precision_bits + 16;
    RealInterval re(prec), im(prec);
    const auto coeffs = a.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        const long k = ((static_cast<long>(i) * embedding_exponent) % l + l) % l;
        auto [c, s] = unit_root(k, l, prec);
        const RealInterval r = RealInterval::from_rat(coeffs[i], prec);
        re = re + r * c;
        im = im + r * s;
    }
    out.re = re;
    out.im = im;
    return out;
}

}  // namespace uqa::cyclotomic
