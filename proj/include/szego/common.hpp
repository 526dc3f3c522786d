#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace szego {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};
struct SingularPrediction : Error {
    using Error::Error;
};
struct NonPowerLaw : Error {
    using Error::Error;
};

// Portable random source. The standard distributions are implementation
// defined, so uniform and normal variates are derived from raw engine bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace szego
