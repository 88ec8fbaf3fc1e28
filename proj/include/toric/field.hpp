#pragma once

// Exact scalars over Q or a prime field F_p.

#include "toric/lattice.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

class CharacteristicMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Field characteristic: 0 for Q, otherwise a prime p.
class Characteristic {
public:
    Characteristic() = default;
    /// Throws std::invalid_argument if p is neither 0 nor prime.
    explicit Characteristic(std::uint64_t p);
    static Characteristic rationals() { return Characteristic(); }

    std::uint64_t value() const { return p_; }
    bool is_zero() const { return p_ == 0; }

    friend bool operator==(Characteristic, Characteristic) = default;

private:
    std::uint64_t p_ = 0;
};

/// Element of Q (exact rational) or of F_p (canonical residue in [0, p)).
class Scalar {
public:
    Scalar() = default;
    Scalar(Characteristic ch, const Rational& value);
    Scalar(Characteristic ch, long value) : Scalar(ch, Rational(value)) {}
    static Scalar from_integer(Characteristic ch, const Integer& value) { return Scalar(ch, Rational(value)); }
    /// Parses "17", "-3", "5/7". Floats and malformed text are rejected with
    /// std::invalid_argument; a zero denominator in characteristic p is an
    /// error as well.
    static Scalar parse(Characteristic ch, std::string_view text);

    Characteristic characteristic() const { return ch_; }
    /// Rational value; for F_p the residue as an integer.
    const Rational& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;
    Scalar inverse() const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.ch_ == b.ch_ && a.v_ == b.v_; }

    /// "n" or "n/d" in lowest terms.
    std::string to_string() const;

private:
    void check(const Scalar& o) const;
    void normalize();
    Characteristic ch_;
    Rational v_ = 0;
};

using Row = std::vector<Scalar>;

/// Dense matrix of scalars, rows of equal length.
using ScalarMatrix = std::vector<Row>;

ScalarMatrix identity_matrix(Characteristic ch, std::size_t n);
ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b);
/// Exact determinant by Gaussian elimination over the field.
Scalar determinant(Characteristic ch, const ScalarMatrix& m);
/// Inverse of a square matrix; std::domain_error if singular.
ScalarMatrix inverse(Characteristic ch, const ScalarMatrix& m);

}  // namespace toric
