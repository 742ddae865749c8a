#pragma once

#include <cstdint>
#include <stdexcept>

namespace ciprng {

// Logistic recurrence x <- r*x*(1-x) in double precision. The default
// control parameter stays just below 4 so orbits started inside (0,1)
// cannot reach the absorbing endpoints; exact hits of 0, 1 or the fixed
// point are treated as degenerate.
class logistic_map {
public:
    static constexpr double default_r = 3.999999;

    explicit logistic_map(double x0, double r = default_r) : x_(x0), r_(r) {
        if (!(x0 > 0.0 && x0 < 1.0))
            throw std::invalid_argument("logistic_map: seed must lie in (0,1)");
        if (!(r > 0.0 && r <= 4.0))
            throw std::invalid_argument("logistic_map: r must lie in (0,4]");
    }

    double value() const { return x_; }
    double r() const { return r_; }

    double step() {
        if (!(x_ > 0.0 && x_ < 1.0))
            throw std::domain_error("logistic_map: degenerate orbit");
        x_ = r_ * x_ * (1.0 - x_);
        return x_;
    }

    // bit-source interface: one threshold bit per iteration
    int block_bits() const { return 1; }
    std::uint64_t next_block() { return step() > 0.5 ? 1u : 0u; }

private:
    double x_;
    double r_;
};

// Seeds that sit on short cycles of the r = 4 map; rejected for generator
// use since they produce constant bit streams.
inline bool logistic_seed_degenerate(double x0) {
    return !(x0 > 0.0 && x0 < 1.0) || x0 == 0.5 || x0 == 0.75;
}

} // namespace ciprng
