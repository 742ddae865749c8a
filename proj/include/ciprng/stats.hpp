#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ciprng/bits.hpp"

namespace ciprng {

// Upper-tail probability of the chi-square distribution, i.e. the
// regularized incomplete gamma Q(dof/2, x/2). Series expansion below the
// shape parameter, Lentz continued fraction above; absolute error is well
// under 1e-8 over the tested range.
inline double chi_square_p(double statistic, int dof) {
    if (!(statistic >= 0.0) || !std::isfinite(statistic))
        throw std::invalid_argument("chi_square_p: statistic must be finite and >= 0");
    if (dof < 1)
        throw std::invalid_argument("chi_square_p: dof must be >= 1");
    const double a = 0.5 * dof;
    const double x = 0.5 * statistic;
    if (x == 0.0) return 1.0;

    constexpr int max_iter = 2000;
    constexpr double eps = 3e-15;
    const double log_scale = -x + a * std::log(x) - std::lgamma(a);

    if (x < a + 1.0) {
        // P(a,x) by series, then Q = 1 - P
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n <= max_iter; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * eps) break;
        }
        return 1.0 - sum * std::exp(log_scale);
    }
    // Q(a,x) by continued fraction
    constexpr double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return std::exp(log_scale) * f;
}

// Two-sided p-value of a standard normal statistic.
inline double normal_two_sided_p(double z) {
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

struct test_report {
    std::string name;
    double statistic = 0.0;
    int dof = 0; // 0 means standard normal, two-sided
    double p_value = 0.0;
    bool pass = false;
    bool asymptotic_ok = true; // sample-size guidance satisfied

    static test_report make(std::string name, double statistic, int dof,
                            double p, double alpha, bool asymptotic_ok) {
        return {std::move(name), statistic, dof, p, p >= alpha, asymptotic_ok};
    }
};

// --- raw counts (exposed so tests can check them against oracles) ---

struct bit_counts_t {
    std::uint64_t zeros = 0;
    std::uint64_t ones = 0;
};

inline bit_counts_t bit_counts(const bit_sequence& s) {
    bit_counts_t c;
    for (auto b : s) (b ? c.ones : c.zeros)++;
    return c;
}

// Overlapping 2-bit patterns, indexed 00, 01, 10, 11.
inline std::array<std::uint64_t, 4> pair_counts(const bit_sequence& s) {
    std::array<std::uint64_t, 4> c{};
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        c[static_cast<std::size_t>((s[i] << 1) | s[i + 1])]++;
    return c;
}

// Numbers of maximal runs by exact length; blocks are runs of ones, gaps
// runs of zeros. Index 0 of each vector is unused.
struct run_counts_t {
    std::vector<std::uint64_t> blocks;
    std::vector<std::uint64_t> gaps;
    std::uint64_t total_runs = 0;
};

inline run_counts_t run_counts(const bit_sequence& s, std::size_t max_length) {
    run_counts_t rc;
    rc.blocks.assign(max_length + 1, 0);
    rc.gaps.assign(max_length + 1, 0);
    std::size_t i = 0;
    while (i < s.size()) {
        const std::uint8_t v = s[i];
        std::size_t len = 1;
        while (i + len < s.size() && s[i + len] == v) ++len;
        if (len <= max_length) (v ? rc.blocks : rc.gaps)[len]++;
        rc.total_runs++;
        i += len;
    }
    return rc;
}

// Number of positions where the sequence differs from its d-shifted copy.
inline std::uint64_t autocorr_count(const bit_sequence& s, std::size_t d) {
    std::uint64_t a = 0;
    for (std::size_t i = 0; i + d < s.size(); ++i) a += s[i] ^ s[i + d];
    return a;
}

// --- the five tests ---

inline test_report monobit(const bit_sequence& s, double alpha = 0.01) {
    if (s.empty())
        throw std::invalid_argument("monobit: empty sequence");
    const auto c = bit_counts(s);
    const std::int64_t diff =
        static_cast<std::int64_t>(c.zeros) - static_cast<std::int64_t>(c.ones);
    const double x1 = static_cast<double>(diff) * static_cast<double>(diff)
                      / static_cast<double>(s.size());
    return test_report::make("monobit", x1, 1, chi_square_p(x1, 1), alpha,
                             s.size() >= 100);
}

inline test_report serial(const bit_sequence& s, double alpha = 0.01) {
    const std::size_t n = s.size();
    if (n < 2)
        throw std::invalid_argument("serial: need at least 2 bits");
    const auto c = bit_counts(s);
    const auto pc = pair_counts(s);
    if (pc[0] + pc[1] + pc[2] + pc[3] != n - 1)
        throw std::logic_error("serial: pair counts do not sum to n-1");
    double sum_pairs = 0.0;
    for (auto v : pc) sum_pairs += static_cast<double>(v) * static_cast<double>(v);
    const double sum_bits = static_cast<double>(c.zeros) * static_cast<double>(c.zeros)
                            + static_cast<double>(c.ones) * static_cast<double>(c.ones);
    const double x2 = 4.0 / static_cast<double>(n - 1) * sum_pairs
                      - 2.0 / static_cast<double>(n) * sum_bits + 1.0;
    // the statistic is only asymptotically chi-square and can dip just
    // below zero on small balanced samples; the tail probability is 1 there
    const double p = x2 <= 0.0 ? 1.0 : chi_square_p(x2, 2);
    return test_report::make("serial", x2, 2, p, alpha, n >= 21);
}

// The size guidance floor(n/m) >= 5*2^m is reported through asymptotic_ok
// rather than rejected, mirroring monobit; what must hold is at least one
// complete block.
inline test_report poker(const bit_sequence& s, int m, double alpha = 0.01) {
    if (m < 1 || m > 24)
        throw std::invalid_argument("poker: pattern length out of range");
    const std::size_t k = s.size() / static_cast<std::size_t>(m);
    const std::size_t patterns = std::size_t{1} << m;
    if (k < 1)
        throw std::invalid_argument("poker: no complete block");
    std::vector<std::uint64_t> counts(patterns, 0);
    std::size_t pos = 0;
    for (std::size_t block = 0; block < k; ++block) {
        std::size_t idx = 0;
        for (int j = 0; j < m; ++j) idx = (idx << 1) | s[pos++];
        counts[idx]++;
    }
    std::uint64_t total = 0;
    unsigned __int128 sum_sq = 0;
    for (auto v : counts) {
        total += v;
        sum_sq += static_cast<unsigned __int128>(v) * v;
    }
    if (total != k)
        throw std::logic_error("poker: block counts do not sum to k");
    // exact integer numerator, so poker(m=1) reproduces monobit bit for bit
    const __int128 num = static_cast<__int128>(patterns * sum_sq)
                         - static_cast<__int128>(k) * static_cast<__int128>(k);
    const double x3 = static_cast<double>(num) / static_cast<double>(k);
    return test_report::make("poker", x3, static_cast<int>(patterns) - 1,
                             chi_square_p(x3, static_cast<int>(patterns) - 1), alpha,
                             k >= 5 * patterns);
}

// Largest pattern length the poker precondition allows for n bits.
inline int default_poker_m(std::size_t n) {
    int m = 1;
    while (m < 24) {
        const std::size_t k = n / static_cast<std::size_t>(m + 1);
        if (k < 5 * (std::size_t{1} << (m + 1))) break;
        ++m;
    }
    return m;
}

// Expected count of runs of exact length i in n random bits.
inline double expected_runs(std::size_t n, int i) {
    return (static_cast<double>(n) - i + 3) / std::pow(2.0, i + 2);
}

inline int runs_max_length(std::size_t n) {
    int k = 0;
    while (static_cast<std::size_t>(k) + 1 <= n && expected_runs(n, k + 1) >= 5.0) ++k;
    return k;
}

inline test_report runs(const bit_sequence& s, double alpha = 0.01) {
    const std::size_t n = s.size();
    const int k = runs_max_length(n);
    if (k < 2)
        throw std::invalid_argument("runs: sequence too short (need e_2 >= 5)");
    const auto rc = run_counts(s, static_cast<std::size_t>(k));
    double x4 = 0.0;
    for (int i = 1; i <= k; ++i) {
        const double e = expected_runs(n, i);
        const double db = static_cast<double>(rc.blocks[static_cast<std::size_t>(i)]) - e;
        const double dg = static_cast<double>(rc.gaps[static_cast<std::size_t>(i)]) - e;
        x4 += db * db / e + dg * dg / e;
    }
    const int dof = 2 * k - 2;
    return test_report::make("runs", x4, dof, chi_square_p(x4, dof), alpha, true);
}

inline test_report autocorrelation(const bit_sequence& s, std::size_t d,
                                   double alpha = 0.01) {
    const std::size_t n = s.size();
    if (d < 1 || d > n / 2)
        throw std::invalid_argument("autocorrelation: shift must be in [1, n/2]");
    if (n - d < 10)
        throw std::invalid_argument("autocorrelation: need n-d >= 10");
    const std::uint64_t a = autocorr_count(s, d);
    const double nd = static_cast<double>(n - d);
    const double x5 = 2.0 * (static_cast<double>(a) - nd / 2.0) / std::sqrt(nd);
    return test_report::make("autocorrelation", x5, 0, normal_two_sided_p(x5),
                             alpha, true);
}

} // namespace ciprng
