#pragma once

/// @file numeric.hpp
/// @brief Floating-point helpers shared by the sum evaluators: constants,
/// compensated accumulation, root-of-unity tables and fractional parts.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace nrlab {

inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kE = std::numbers::e;
inline constexpr double kPi = std::numbers::pi;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    void add(std::complex<double> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    ComplexCompensatedSum& operator+=(std::complex<double> v) {
        add(v);
        return *this;
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// e^{2 pi i k / n} for 0 <= k < n. Entries are computed from the reduced
/// angle in the first octant so that symmetric entries are exact mirrors.
class RootTable {
public:
    explicit RootTable(std::uint64_t n) : n_(n), roots_(n) {
        for (std::uint64_t k = 0; k < n; ++k) roots_[k] = unit(k, n);
    }

    std::uint64_t modulus() const { return n_; }

    /// e^{2 pi i k / n}, k taken mod n.
    std::complex<double> operator()(std::uint64_t k) const { return roots_[k % n_]; }

    /// e^{2 pi i (a*b) / n} with the product reduced exactly.
    std::complex<double> at_product(std::uint64_t a, std::uint64_t b) const {
        return roots_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(a % n_) * (b % n_)) % n_)];
    }

    /// e^{2 pi i k / n} without a table.
    static std::complex<double> unit(std::uint64_t k, std::uint64_t n) {
        k %= n;
        // Work with 8k/n in [0, 8) to fold onto [0, pi/4].
        const auto k8 = static_cast<unsigned __int128>(k) * 8;
        const auto oct = static_cast<unsigned>(k8 / n);
        const auto rem = static_cast<std::uint64_t>(k8 % n);  // angle = (oct + rem/n) * pi/4
        double c = 0.0, s = 0.0;
        auto eval = [n](std::uint64_t num) {
            const double theta = (kPi / 4.0) * (static_cast<double>(num) / static_cast<double>(n));
            return std::pair{std::cos(theta), std::sin(theta)};
        };
        // phi = angle within the quadrant; odd octants use phi = pi/2 - psi.
        if (oct % 2 == 0) {
            auto [cc, ss] = eval(rem);
            c = cc;
            s = ss;
        } else {
            auto [cc, ss] = eval(n - rem);
            c = ss;
            s = cc;
        }
        switch (oct / 2) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
        }
    }

private:
    std::uint64_t n_;
    std::vector<std::complex<double>> roots_;
};

inline bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x; }

/// Fractional part {x/n}. Exact rational reduction when x is an integer
/// representable in 53 bits.
inline double frac_ratio(double x, std::uint64_t n) {
    if (is_integral(x) && x >= 0.0 && x < 9007199254740992.0) {
        const auto xi = static_cast<std::uint64_t>(x);
        return static_cast<double>(xi % n) / static_cast<double>(n);
    }
    const double r = x / static_cast<double>(n);
    return r - std::floor(r);
}

/// [x/n] for x >= 0, equal to [[x]/n].
inline std::uint64_t floor_ratio(double x, std::uint64_t n) {
    return static_cast<std::uint64_t>(std::floor(x)) / n;
}

inline std::uint64_t floor_u64(double x) { return x <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(x)); }

inline std::uint64_t ceil_u64(double x) { return x <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(x)); }

} // namespace nrlab
