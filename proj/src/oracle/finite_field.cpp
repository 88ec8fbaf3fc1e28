#include "toric/oracle.hpp"

#include <algorithm>

namespace toric::oracle {

namespace {

using u64 = std::uint64_t;
using Coeffs = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

bool is_small_prime(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Polynomials over F_p, used only to build and check extension moduli.
Coeffs fp_mul(const Coeffs& a, const Coeffs& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

Coeffs fp_rem(Coeffs a, const Coeffs& g, u64 p) {
    trim(a);
    const u64 lead_inv = powmod(g.back(), p - 2, p);
    while (a.size() >= g.size()) {
        u64 f = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(f, g[i], p)) % p;
        trim(a);
    }
    return a;
}

Coeffs fp_gcd(Coeffs a, Coeffs b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

FiniteField::FiniteField(std::uint64_t p) : p_(p), k_(1), g_{0, 1} {
    if (p >= (u64{1} << 31) || !is_small_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
}

FiniteField::FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus) : FiniteField(p) {
    for (auto& c : modulus) c %= p;
    trim(modulus);
    if (modulus.size() < 2) throw std::invalid_argument("extension modulus must have degree >= 1");
    u64 lead_inv = powmod(modulus.back(), p - 2, p);
    for (auto& c : modulus) c = mulmod(c, lead_inv, p);
    // Ben-Or: g of degree k is irreducible iff gcd(g, t^(p^i) - t) = 1 for
    // all i <= k/2.
    const std::size_t k = modulus.size() - 1;
    Coeffs h{0, 1};
    for (std::size_t i = 1; i <= k / 2; ++i) {
        Coeffs acc{1};
        Coeffs base = h;
        for (u64 e = p; e; e >>= 1) {
            if (e & 1) acc = fp_rem(fp_mul(acc, base, p), modulus, p);
            base = fp_rem(fp_mul(base, base, p), modulus, p);
        }
        h = acc;
        Coeffs diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if (fp_gcd(modulus, diff, p).size() > 1)
            throw std::invalid_argument("extension modulus is reducible over F_" + std::to_string(p));
    }
    k_ = k;
    g_ = std::move(modulus);
}

FiniteField::Elem FiniteField::one() const {
    Elem e(k_, 0);
    e[0] = 1;
    return e;
}

FiniteField::Elem FiniteField::from_int(long v) const {
    Elem e(k_, 0);
    long r = v % static_cast<long>(p_);
    e[0] = static_cast<u64>(r < 0 ? r + static_cast<long>(p_) : r);
    return e;
}

FiniteField::Elem FiniteField::from_coords(std::vector<std::uint64_t> coords) const {
    for (auto& c : coords) c %= p_;
    Elem e = fp_rem(std::move(coords), g_, p_);
    e.resize(k_, 0);
    return e;
}

bool FiniteField::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](u64 c) { return c == 0; });
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
    return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const { return sub(zero(), a); }

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
    if (k_ == 1) return {mulmod(a[0], b[0], p_)};
    Elem r = fp_rem(fp_mul(a, b, p_), g_, p_);
    r.resize(k_, 0);
    return r;
}

FiniteField::Elem FiniteField::pow(Elem a, Integer e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem r = one();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero in a finite field");
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
    return pow(a, q - 2);
}

FiniteField::Elem FiniteField::pth_root(const Elem& a) const {
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), p_, k_ - 1);
    return pow(a, e);
}

PrimeFieldPoly::PrimeFieldPoly(FiniteField field, std::vector<Elem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (e.size() != field_.degree()) throw std::invalid_argument("coefficient from another field");
    trim();
}

PrimeFieldPoly PrimeFieldPoly::from_ints(const FiniteField& field, const std::vector<long>& coeffs) {
    std::vector<Elem> c;
    for (long v : coeffs) c.push_back(field.from_int(v));
    return PrimeFieldPoly(field, std::move(c));
}

void PrimeFieldPoly::trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
}

std::size_t PrimeFieldPoly::valuation() const {
    if (is_zero()) throw std::invalid_argument("valuation of the zero polynomial");
    std::size_t v = 0;
    while (field_.is_zero(c_[v])) ++v;
    return v;
}

PrimeFieldPoly PrimeFieldPoly::derivative() const {
    std::vector<Elem> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(field_.mul(field_.from_int(static_cast<long>(i % field_.characteristic())), c_[i]));
    return PrimeFieldPoly(field_, std::move(d));
}

PrimeFieldPoly PrimeFieldPoly::monic() const {
    if (is_zero()) return *this;
    Elem s = field_.inv(c_.back());
    std::vector<Elem> out;
    for (const auto& e : c_) out.push_back(field_.mul(e, s));
    return PrimeFieldPoly(field_, std::move(out));
}

PrimeFieldPoly::Elem PrimeFieldPoly::evaluate(const Elem& x) const {
    Elem acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
}

PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
    const auto& F = a.field_;
    std::vector<PrimeFieldPoly::Elem> r(std::max(a.c_.size(), b.c_.size()), F.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = F.add(r[i], a.c_[i]);
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = F.add(r[i], b.c_[i]);
    return PrimeFieldPoly(F, std::move(r));
}

PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
    const auto& F = a.field_;
    std::vector<PrimeFieldPoly::Elem> r(std::max(a.c_.size(), b.c_.size()), F.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = F.add(r[i], a.c_[i]);
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = F.sub(r[i], b.c_[i]);
    return PrimeFieldPoly(F, std::move(r));
}

PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
    const auto& F = a.field_;
    if (a.is_zero() || b.is_zero()) return PrimeFieldPoly(F, {});
    std::vector<PrimeFieldPoly::Elem> r(a.c_.size() + b.c_.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    return PrimeFieldPoly(F, std::move(r));
}

void PrimeFieldPoly::divmod(const PrimeFieldPoly& a, const PrimeFieldPoly& b, PrimeFieldPoly& q, PrimeFieldPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& F = a.field_;
    std::vector<Elem> rem = a.c_;
    std::vector<Elem> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, F.zero());
    const Elem lead_inv = F.inv(b.c_.back());
    for (std::size_t top = rem.size(); top >= b.c_.size(); --top) {
        const Elem f = F.mul(rem[top - 1], lead_inv);
        if (F.is_zero(f)) continue;
        const std::size_t shift = top - b.c_.size();
        quo[shift] = f;
        for (std::size_t i = 0; i < b.c_.size(); ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(f, b.c_[i]));
    }
    q = PrimeFieldPoly(F, std::move(quo));
    r = PrimeFieldPoly(F, std::move(rem));
}

PrimeFieldPoly PrimeFieldPoly::gcd(PrimeFieldPoly a, PrimeFieldPoly b) {
    while (!b.is_zero()) {
        PrimeFieldPoly q(a.field_, {}), r(a.field_, {});
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

// Degree of the radical of f, f(0) != 0 not required.
std::size_t radical_degree(const PrimeFieldPoly& f) {
    if (f.degree() <= 0) return 0;
    const auto& F = f.field();
    PrimeFieldPoly d = f.derivative();
    if (d.is_zero()) {
        // f(x) = g(x^p) = (g~(x))^p with coefficients replaced by p-th roots.
        const std::size_t p = F.characteristic();
        std::vector<FiniteField::Elem> root;
        for (std::size_t i = 0; i < f.coeffs().size(); i += p) root.push_back(F.pth_root(f.coeff(i)));
        return radical_degree(PrimeFieldPoly(F, std::move(root)));
    }
    PrimeFieldPoly q(F, {}), r(F, {});
    PrimeFieldPoly g = PrimeFieldPoly::gcd(f, d);
    PrimeFieldPoly::divmod(f, g, q, r);
    PrimeFieldPoly w = q.monic();  // product of the primes whose multiplicity is prime to p
    PrimeFieldPoly h = g;
    for (;;) {
        PrimeFieldPoly y = PrimeFieldPoly::gcd(h, w);
        if (y.degree() <= 0) break;
        PrimeFieldPoly::divmod(h, y, q, r);
        h = q;
    }
    return static_cast<std::size_t>(w.degree()) + radical_degree(h);
}

}  // namespace

std::size_t count_distinct_roots_closure(const PrimeFieldPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    std::size_t v = f.valuation();
    std::vector<FiniteField::Elem> shifted(f.coeffs().begin() + static_cast<long>(v), f.coeffs().end());
    return radical_degree(PrimeFieldPoly(f.field(), std::move(shifted)));
}

}  // namespace toric::oracle
