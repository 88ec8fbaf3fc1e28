#include "toric/oracle.hpp"

#include <algorithm>
#include <random>

namespace toric::oracle {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 inv(u64 a, u64 p) { return powmod(a, p - 2, p); }

std::mt19937_64 trial_rng(u64 seed, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(u64{trial} >> 32)};
    return std::mt19937_64(seq);
}

long to_long(const Integer& v) {
    if (!v.fits_slong_p()) throw std::invalid_argument("exponent too large for the oracle");
    return v.get_si();
}

u64 det_mod(std::vector<std::vector<u64>> m, u64 p) {
    const std::size_t n = m.size();
    u64 det = 1 % p;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = (p - det) % p;
        }
        det = mulmod(det, m[c][c], p);
        u64 s = inv(m[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            u64 f = mulmod(m[r][c], s, p);
            for (std::size_t k = c; k < n; ++k) m[r][k] = (m[r][k] + p - mulmod(f, m[c][k], p)) % p;
        }
    }
    return det;
}

// Coefficients of the polynomial of degree < xs.size() through (xs[i], ys[i]).
std::vector<u64> interpolate(const std::vector<u64>& xs, std::vector<u64> ys, u64 p) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            u64 num = (ys[i] + p - ys[i - 1]) % p;
            u64 den = (xs[i] + p - xs[i - j]) % p;
            ys[i] = mulmod(num, inv(den, p), p);
        }
    std::vector<u64> coeffs(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        // coeffs <- coeffs * (x - xs[i]) + ys[i]
        std::vector<u64> next(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (k + 1 < n) next[k + 1] = (next[k + 1] + coeffs[k]) % p;
            next[k] = (next[k] + p - mulmod(coeffs[k], xs[i], p)) % p;
        }
        next[0] = (next[0] + ys[i]) % p;
        coeffs = std::move(next);
    }
    return coeffs;
}

struct Bivariate {
    std::size_t deg_x = 0, deg_y = 0;
    std::vector<std::vector<u64>> c;  // c[j][i]: coefficient of x^i y^j
};

Bivariate random_bivariate(const PointSet& s, u64 p, std::mt19937_64& rng) {
    long mx = 0, my = 0;
    bool first = true;
    for (const auto& pt : s) {
        long a = to_long(pt[0]), b = to_long(pt[1]);
        mx = first ? a : std::min(mx, a);
        my = first ? b : std::min(my, b);
        first = false;
    }
    Bivariate f;
    for (const auto& pt : s) {
        f.deg_x = std::max<std::size_t>(f.deg_x, static_cast<std::size_t>(to_long(pt[0]) - mx));
        f.deg_y = std::max<std::size_t>(f.deg_y, static_cast<std::size_t>(to_long(pt[1]) - my));
    }
    f.c.assign(f.deg_y + 1, std::vector<u64>(f.deg_x + 1, 0));
    std::uniform_int_distribution<u64> coef(1, p - 1);
    for (const auto& pt : s) f.c[to_long(pt[1]) - my][to_long(pt[0]) - mx] = coef(rng);
    return f;
}

u64 eval_x(const std::vector<u64>& c, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (mulmod(acc, x, p) + c[i]) % p;
    return acc;
}

}  // namespace

std::vector<std::size_t> root_count_1d(const PointSet& a, std::uint64_t p, std::size_t trials, std::uint64_t seed) {
    if (a.ambient_rank() != 1) throw std::invalid_argument("root count needs a support in Z^1");
    FiniteField field(p);
    long lo = to_long(a[0][0]), hi = lo;
    for (const auto& pt : a) {
        lo = std::min(lo, to_long(pt[0]));
        hi = std::max(hi, to_long(pt[0]));
    }
    std::vector<std::size_t> out;
    std::uniform_int_distribution<u64> coef(1, p - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        std::vector<long> c(static_cast<std::size_t>(hi - lo + 1), 0);
        for (const auto& pt : a) c[static_cast<std::size_t>(to_long(pt[0]) - lo)] = static_cast<long>(coef(rng));
        out.push_back(count_distinct_roots_closure(PrimeFieldPoly::from_ints(field, c)));
    }
    return out;
}

std::size_t SampleStats::trials_with_zero_count() const {
    return static_cast<std::size_t>(std::count(counts.begin(), counts.end(), std::size_t{0}));
}

SampleStats sample_common_solutions(std::span<const PointSet> supports, std::uint64_t p, std::size_t trials,
                                    std::uint64_t seed) {
    if (supports.empty()) throw std::invalid_argument("sampler needs at least one support");
    FiniteField field(p);  // validates p
    const std::size_t n = supports[0].ambient_rank();
    u64 size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > sampler_cap / p) throw std::invalid_argument("p^n exceeds the sampler cap of 10^7");
        size *= p;
    }
    // Exponents reduced mod p - 1, since x^(p-1) = 1 on the torus.
    std::vector<std::vector<std::vector<u64>>> exps;
    for (const auto& s : supports) {
        if (s.ambient_rank() != n) throw std::invalid_argument("supports of different ambient rank");
        auto& e = exps.emplace_back();
        for (const auto& pt : s) {
            auto& row = e.emplace_back();
            for (std::size_t j = 0; j < n; ++j) {
                long v = to_long(pt[j]) % static_cast<long>(p - 1);
                row.push_back(static_cast<u64>(v < 0 ? v + static_cast<long>(p - 1) : v));
            }
        }
    }

    SampleStats stats;
    std::uniform_int_distribution<u64> coef(1, p - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        std::vector<std::vector<u64>> coeffs;
        for (const auto& e : exps) {
            auto& c = coeffs.emplace_back();
            for (std::size_t k = 0; k < e.size(); ++k) c.push_back(coef(rng));
        }
        std::size_t count = 0;
        std::vector<u64> x(n, 1);
        for (bool more = true; more;) {
            bool all_zero = true;
            for (std::size_t i = 0; i < exps.size() && all_zero; ++i) {
                u64 sum = 0;
                for (std::size_t k = 0; k < exps[i].size(); ++k) {
                    u64 term = coeffs[i][k];
                    for (std::size_t j = 0; j < n; ++j) term = mulmod(term, powmod(x[j], exps[i][k][j], p), p);
                    sum = (sum + term) % p;
                }
                all_zero = sum == 0;
            }
            if (all_zero) ++count;
            more = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (++x[j] < p) {
                    more = true;
                    break;
                }
                x[j] = 1;
            }
        }
        stats.counts.push_back(count);
    }
    return stats;
}

std::size_t ResultantStats::degenerate() const {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](const auto& c) { return !c.has_value(); }));
}

ResultantStats resultant_count_2d(const PointSet& a, const PointSet& b, std::uint64_t p, std::size_t trials,
                                  std::uint64_t seed) {
    if (a.ambient_rank() != 2 || b.ambient_rank() != 2)
        throw std::invalid_argument("resultant count needs two supports in Z^2");
    FiniteField field(p);
    ResultantStats stats;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        Bivariate f = random_bivariate(a, p, rng);
        Bivariate g = random_bivariate(b, p, rng);
        const std::size_t m = f.deg_y, k = g.deg_y, size = m + k;
        const std::size_t bound = k * f.deg_x + m * g.deg_x;
        if (bound + 1 > p) throw std::invalid_argument("prime too small to interpolate the resultant");

        std::vector<u64> xs, ys;
        for (u64 x0 = 0; x0 <= bound; ++x0) {
            // Sylvester matrix in y with the formal degrees m and k.
            std::vector<std::vector<u64>> syl(size, std::vector<u64>(size, 0));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t j = 0; j <= m; ++j) syl[r][r + (m - j)] = eval_x(f.c[j], x0, p);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t j = 0; j <= k; ++j) syl[k + r][r + (k - j)] = eval_x(g.c[j], x0, p);
            xs.push_back(x0);
            ys.push_back(det_mod(std::move(syl), p));
        }
        std::vector<long> coeffs;
        for (u64 c : interpolate(xs, ys, p)) coeffs.push_back(static_cast<long>(c));
        auto res = PrimeFieldPoly::from_ints(field, coeffs);
        if (res.is_zero())
            stats.counts.push_back(std::nullopt);
        else
            stats.counts.push_back(count_distinct_roots_closure(res));
    }
    return stats;
}

}  // namespace toric::oracle
