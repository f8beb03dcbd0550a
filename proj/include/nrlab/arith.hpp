#pragma once

/// @file arith.hpp
/// @brief Exact integer kernels: modular arithmetic, deterministic primality,
/// segmented prime iteration and the quadratic character modulo a prime.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// =============================================================================
// Modular arithmetic
// =============================================================================

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

/// b^e mod m by square-and-multiply. Returns 0 when m == 1.
constexpr u64 pow_mod(u64 b, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

/// Floor of the square root, exact over the whole 64-bit range.
constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 r = 0;
    // Seed below the true root, then correct in both directions.
    for (u64 bit = u64{1} << ((std::bit_width(n) - 1) & ~1u); bit != 0; bit >>= 2) {
        if (n >= r + bit) {
            n -= r + bit;
            r = (r >> 1) + bit;
        } else {
            r >>= 1;
        }
    }
    return r;
}

/// Largest r with r^k <= n.
constexpr u64 iroot(u64 n, unsigned k) {
    if (k == 1 || n < 2) return n;
    if (k == 2) return isqrt(n);
    u64 lo = 1, hi = u64{1} << ((std::bit_width(n) + k - 1) / k);
    auto pow_le = [n, k](u64 r) {
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= r;
            if (acc > n) return false;
        }
        return true;
    };
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (pow_le(mid)) lo = mid; else hi = mid - 1;
    }
    return lo;
}

constexpr u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// =============================================================================
// Deterministic Miller-Rabin
// =============================================================================

namespace detail {

constexpr bool strong_probable_prime(u64 n, u64 a) {
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for every 64-bit input: the first twelve prime bases are a
/// complete witness set below 3.3e24.
constexpr bool is_prime(u64 n) {
    constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 p : bases) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    for (u64 a : bases) {
        if (!detail::strong_probable_prime(n, a)) return false;
    }
    return true;
}

/// Smallest prime >= n.
constexpr u64 next_prime(u64 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime(n)) n += 2;
    return n;
}

// =============================================================================
// Segmented sieve
// =============================================================================

/// Odd entries per sieve segment (each covers 2^17 consecutive integers).
inline constexpr std::size_t kSieveSegment = std::size_t{1} << 16;

namespace detail {

/// Odd primes up to `limit` by a plain sieve; used as sieving primes.
inline std::vector<std::uint32_t> odd_primes_upto(u64 limit) {
    std::vector<std::uint32_t> out;
    if (limit < 3) return out;
    std::vector<bool> composite(limit / 2 + 1, false);  // index i <-> 2i+1
    for (u64 i = 1; 2 * i + 1 <= limit; ++i) {
        if (composite[i]) continue;
        u64 p = 2 * i + 1;
        out.push_back(static_cast<std::uint32_t>(p));
        for (u64 m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
    }
    return out;
}

} // namespace detail

/// Calls fn(q) for every prime lo <= q <= hi in ascending order. Memory is
/// bounded by the segment size plus the sieving primes up to sqrt(hi).
template <class Fn>
void for_each_prime(u64 lo, u64 hi, Fn&& fn) {
    if (hi < 2 || lo > hi) return;
    if (lo <= 2) {
        fn(u64{2});
        lo = 3;
    }
    if (lo > hi) return;
    if ((lo & 1) == 0) ++lo;
    if (lo > hi) return;

    const auto base = detail::odd_primes_upto(isqrt(hi));
    std::vector<char> composite(kSieveSegment);
    std::vector<u64> next(base.size(), 0);  // next odd multiple to strike, per base prime

    for (std::size_t i = 0; i < base.size(); ++i) {
        u64 p = base[i];
        u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        if ((start & 1) == 0) start += p;
        next[i] = start;
    }

    for (u64 seg_lo = lo; seg_lo <= hi;) {
        // seg_lo is odd; entry j stands for seg_lo + 2j.
        const u64 span = std::min<u64>(kSieveSegment, (hi - seg_lo) / 2 + 1);
        const u64 seg_hi = seg_lo + 2 * (span - 1);
        std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(span), 0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const u64 p = base[i];
            u64 m = next[i];
            for (; m <= seg_hi; m += 2 * p) composite[(m - seg_lo) / 2] = 1;
            next[i] = m;
        }
        for (u64 j = 0; j < span; ++j) {
            if (!composite[j]) {
                const u64 q = seg_lo + 2 * j;
                if (q > 1) fn(q);
            }
        }
        if (seg_hi >= hi || seg_hi > UINT64_MAX - 2) break;
        seg_lo = seg_hi + 2;
    }
}

/// The primes q with lo <= q <= hi, ascending.
inline std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for_each_prime(lo, hi, [&out](u64 q) { out.push_back(q); });
    return out;
}

inline u64 prime_count(u64 lo, u64 hi) {
    u64 c = 0;
    for_each_prime(lo, hi, [&c](u64) { ++c; });
    return c;
}

// =============================================================================
// Quadratic character
// =============================================================================

/// A validated odd prime modulus. Immutable once constructed.
class PrimeModulus {
public:
    explicit PrimeModulus(u64 p) : p_(p) {
        if (p < 3 || (p & 1) == 0 || !is_prime(p)) {
            throw std::invalid_argument("not an odd prime modulus: " + std::to_string(p));
        }
    }

    constexpr u64 value() const { return p_; }
    constexpr u64 half() const { return (p_ - 1) / 2; }
    constexpr unsigned residue_mod8() const { return static_cast<unsigned>(p_ & 7); }

    friend constexpr bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    u64 p_;
};

/// A value of the quadratic character: -1, 0 or +1.
class CharValue {
public:
    constexpr CharValue() = default;
    constexpr explicit CharValue(int v) : v_(static_cast<signed char>(v)) {
        if (v < -1 || v > 1) throw std::invalid_argument("character value outside {-1,0,1}");
    }

    constexpr int value() const { return v_; }
    constexpr bool is_residue() const { return v_ == 1; }
    constexpr bool is_nonresidue() const { return v_ == -1; }

    friend constexpr CharValue operator*(CharValue a, CharValue b) {
        return CharValue(a.v_ * b.v_);
    }
    friend constexpr bool operator==(CharValue, CharValue) = default;

private:
    signed char v_ = 0;
};

/// Jacobi symbol (a|n) for odd n, by the binary (subtractive) reciprocity walk.
constexpr int jacobi_odd(u64 a, u64 n) {
    a %= n;
    int t = 1;
    const auto flip_two = [](u64 m) { return (m & 7) == 3 || (m & 7) == 5; };
    while (a != 0) {
        const int z = std::countr_zero(a);
        a >>= z;
        if ((z & 1) && flip_two(n)) t = -t;
        if (a < n) {
            std::swap(a, n);
            if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        }
        a -= n;
    }
    return n == 1 ? t : 0;
}

/// Legendre symbol (n|p). Returns 0 for multiples of p.
constexpr CharValue legendre(u64 n, const PrimeModulus& p) {
    return CharValue(jacobi_odd(n, p.value()));
}

inline CharValue legendre(i64 n, const PrimeModulus& p) {
    const auto m = static_cast<i64>(p.value());
    i64 r = n % m;
    if (r < 0) r += m;
    return legendre(static_cast<u64>(r), p);
}

inline CharValue legendre(int n, const PrimeModulus& p) { return legendre(static_cast<i64>(n), p); }

} // namespace nrlab
