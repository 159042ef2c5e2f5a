// Seeded random gate-array states. The generator is hand-rolled on top of
// mt19937_64 so the same seed reproduces the same states on every platform.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pqft/field.hpp"

namespace pqft {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }

    Complex entry() {
        const double re = symmetric();
        const double im = symmetric();
        return Complex(re, im);
    }

    /// 2x2 gate with independent complex entries in [-1,1]^2; no unitarity
    /// requirement, the pipeline is linear.
    Mat2 gate() {
        const Complex m00 = entry();
        const Complex m01 = entry();
        const Complex m10 = entry();
        const Complex m11 = entry();
        return Mat2{m00, m01, m10, m11};
    }

private:
    std::mt19937_64 engine_;
};

/// One random gate applied to each of n uniform fields.
inline std::vector<FieldState> random_gate_fields(int n, SeededRng& rng) {
    std::vector<FieldState> fields;
    fields.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) fields.push_back(apply_gate(prepare_uniform(n, i), rng.gate()));
    return fields;
}

}  // namespace pqft
