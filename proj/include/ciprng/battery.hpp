#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ciprng/bits.hpp"
#include "ciprng/stats.hpp"

namespace ciprng {

struct battery_params {
    double alpha = 0.01;
    int poker_m = 0;          // 0 = largest m the precondition allows
    std::size_t autocorr_d = 8;
};

// The five-test battery in fixed order: monobit, serial, poker, runs,
// autocorrelation.
inline std::vector<test_report> run_battery(const bit_sequence& s,
                                            const battery_params& params = {}) {
    const int m = params.poker_m > 0 ? params.poker_m : default_poker_m(s.size());
    return {
        monobit(s, params.alpha),
        serial(s, params.alpha),
        poker(s, m, params.alpha),
        runs(s, params.alpha),
        autocorrelation(s, params.autocorr_d, params.alpha),
    };
}

// Variance ratio P = H / n between two equal-length bit streams: the
// fraction of positions at which they disagree. Values near 0.5 indicate
// that the underlying parameterizations decorrelate completely.
inline double variance_ratio(const bit_sequence& a, const bit_sequence& b) {
    if (a.empty())
        throw std::invalid_argument("variance_ratio: empty sequences");
    return static_cast<double>(hamming_distance(a, b)) / static_cast<double>(a.size());
}

template <class GenA, class GenB>
double key_sensitivity(GenA& gen_a, GenB& gen_b, std::size_t n_bits) {
    const bit_sequence a = collect_bits(gen_a, n_bits);
    const bit_sequence b = collect_bits(gen_b, n_bits);
    return variance_ratio(a, b);
}

// A generator entry for the comparison harness: `generate` must fill the
// vector with exactly `n` bits and do nothing else, since it runs under
// the timer.
struct generator_spec {
    std::string name;
    std::function<void(bit_sequence&, std::size_t)> generate;
};

struct comparison_row {
    std::string name;
    double monobit = 0.0;
    double serial = 0.0;
    double poker = 0.0;
    double runs = 0.0;
    double autocorrelation = 0.0;
    double time_s = 0.0;
};

// Median-of-`runs` wall-clock time of generating n bits into memory.
template <class F>
double time_generation(F&& generate_once, int runs = 5) {
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        generate_once();
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

inline comparison_row compare_one(const generator_spec& spec, std::size_t n_bits,
                                  const battery_params& params = {},
                                  int timing_runs = 5) {
    bit_sequence bits;
    spec.generate(bits, n_bits);
    const auto reports = run_battery(bits, params);

    comparison_row row;
    row.name = spec.name;
    row.monobit = reports[0].statistic;
    row.serial = reports[1].statistic;
    row.poker = reports[2].statistic;
    row.runs = reports[3].statistic;
    row.autocorrelation = reports[4].statistic;
    row.time_s = time_generation(
        [&] {
            bit_sequence scratch;
            spec.generate(scratch, n_bits);
        },
        timing_runs);
    return row;
}

inline std::vector<comparison_row> compare_generators(
    const std::vector<generator_spec>& specs, std::size_t n_bits,
    const battery_params& params = {}, int timing_runs = 5) {
    std::vector<comparison_row> rows;
    rows.reserve(specs.size());
    for (const auto& spec : specs)
        rows.push_back(compare_one(spec, n_bits, params, timing_runs));
    return rows;
}

// --- report formatting ---

inline void write_reports_table(std::ostream& os,
                                const std::vector<test_report>& reports) {
    os << std::left << std::setw(18) << "test" << std::right << std::setw(14)
       << "statistic" << std::setw(8) << "dof" << std::setw(12) << "p-value"
       << std::setw(8) << "result" << '\n';
    for (const auto& r : reports) {
        os << std::left << std::setw(18) << r.name << std::right << std::fixed
           << std::setprecision(4) << std::setw(14) << r.statistic << std::setw(8);
        if (r.dof > 0)
            os << r.dof;
        else
            os << "normal";
        os << std::setw(12) << std::setprecision(6) << r.p_value << std::setw(8)
           << (r.pass ? "pass" : "FAIL");
        if (!r.asymptotic_ok) os << "  (n below asymptotic guidance)";
        os << '\n';
        os.unsetf(std::ios::fixed);
    }
}

inline void write_comparison_csv(std::ostream& os,
                                 const std::vector<comparison_row>& rows) {
    os << "method,monobit,serial,poker,runs,autocorrelation,time_s\n";
    for (const auto& r : rows) {
        std::ostringstream line;
        line << r.name << ',' << std::setprecision(10) << r.monobit << ','
             << r.serial << ',' << r.poker << ',' << r.runs << ','
             << r.autocorrelation << ',' << r.time_s;
        os << line.str() << '\n';
    }
}

inline void write_comparison_table(std::ostream& os,
                                   const std::vector<comparison_row>& rows) {
    os << std::left << std::setw(28) << "method" << std::right << std::setw(11)
       << "monobit" << std::setw(11) << "serial" << std::setw(12) << "poker"
       << std::setw(11) << "runs" << std::setw(14) << "autocorr" << std::setw(11)
       << "time" << '\n';
    for (const auto& r : rows) {
        os << std::left << std::setw(28) << r.name << std::right << std::fixed
           << std::setprecision(4) << std::setw(11) << r.monobit << std::setw(11)
           << r.serial << std::setw(12) << r.poker << std::setw(11) << r.runs
           << std::setw(14) << r.autocorrelation << std::setprecision(3)
           << std::setw(10) << r.time_s << "s\n";
        os.unsetf(std::ios::fixed);
    }
}

} // namespace ciprng
