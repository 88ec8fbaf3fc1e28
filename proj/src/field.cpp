#include "toric/field.hpp"

#include <cctype>

namespace toric {

Characteristic::Characteristic(std::uint64_t p) : p_(p) {
    if (p == 0) return;
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
}

namespace {

Integer modulus_of(Characteristic ch) {
    std::uint64_t p = ch.value();
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    return z;
}

}  // namespace

Scalar::Scalar(Characteristic ch, const Rational& value) : ch_(ch), v_(value) {
    v_.canonicalize();
    normalize();
}

void Scalar::normalize() {
    if (ch_.is_zero()) return;
    Integer p = modulus_of(ch_);
    Integer num = v_.get_num();
    Integer den = v_.get_den();
    mpz_mod(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    if (den != 1) {
        mpz_mod(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        if (den == 0) throw std::domain_error("denominator vanishes in characteristic " + std::to_string(ch_.value()));
        mpz_invert(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num *= den;
        mpz_mod(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    }
    v_ = Rational(num);
}

Scalar Scalar::parse(Characteristic ch, std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed exact scalar '" + std::string(text) + "'");
    std::string ns(num);
    if (ns[0] == '+') ns.erase(0, 1);
    Integer n(ns), d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Scalar(ch, Rational(n, d));
}

void Scalar::check(const Scalar& o) const {
    if (!(ch_ == o.ch_))
        throw CharacteristicMismatch("mixing characteristics " + std::to_string(ch_.value()) + " and " +
                                     std::to_string(o.ch_.value()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check(o);
    v_ += o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check(o);
    v_ -= o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check(o);
    v_ *= o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const { return Scalar(ch_, Rational(-v_)); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return Scalar(ch_, Rational(1) / v_);
}

std::string Scalar::to_string() const { return v_.get_str(); }

ScalarMatrix identity_matrix(Characteristic ch, std::size_t n) {
    ScalarMatrix m(n, Row(n, Scalar(ch, 0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar(ch, 1);
    return m;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = a[0].size();
    if (b.size() != inner) throw std::invalid_argument("matrix product dimension mismatch");
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    const Characteristic ch = a[0].empty() ? Characteristic() : a[0][0].characteristic();
    ScalarMatrix out(a.size(), Row(cols, Scalar(ch, 0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Scalar determinant(Characteristic ch, const ScalarMatrix& m) {
    const std::size_t n = m.size();
    ScalarMatrix a = m;
    Scalar det(ch, 1);
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c].size() != n) throw std::invalid_argument("determinant of a non-square matrix");
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return Scalar(ch, 0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Scalar inv = a[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            Scalar f = a[r][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

ScalarMatrix inverse(Characteristic ch, const ScalarMatrix& m) {
    const std::size_t n = m.size();
    ScalarMatrix a = m;
    ScalarMatrix inv = identity_matrix(ch, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Scalar s = a[c][c].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Scalar f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace toric
