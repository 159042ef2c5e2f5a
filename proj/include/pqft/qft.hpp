// The per-coefficient extraction pipeline (controlled phase, Hadamard, mode
// selection, detection) and the full-transform driver with gate counting.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pqft/ensemble.hpp"

namespace pqft {

enum class Engine { symbolic, sampled };

inline std::string to_string(Engine engine) { return engine == Engine::symbolic ? "symbolic" : "sampled"; }

struct GateCounts {
    std::int64_t controlled_phase = 0;
    std::int64_t hadamard = 0;
    std::int64_t mode_select = 0;
    std::int64_t correlation = 0;

    GateCounts& operator+=(const GateCounts& other) {
        controlled_phase += other.controlled_phase;
        hadamard += other.hadamard;
        mode_select += other.mode_select;
        correlation += other.correlation;
        return *this;
    }

    friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Cost of one coefficient: n controlled-phase gates, n Hadamard gates, n
/// mode selections and n^2 correlation detections.
inline GateCounts per_coefficient_gate_count(int n) {
    if (n < 1) throw std::invalid_argument("gate_count: n must be positive");
    const auto nn = static_cast<std::int64_t>(n);
    return GateCounts{nn, nn, nn, nn * nn};
}

/// Full transform cost: 2^n coefficients.
inline GateCounts full_transform_gate_count(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("gate_count: n must lie in [1, 16]");
    GateCounts per = per_coefficient_gate_count(n);
    const std::int64_t reps = std::int64_t{1} << n;
    return GateCounts{per.controlled_phase * reps, per.hadamard * reps, per.mode_select * reps,
                      per.correlation * reps};
}

/// Result of a full transform. Coefficients are indexed by
/// k = j1 + 2 j2 + ... + 2^{n-1} jn, i.e. selection bits land bit-reversed.
struct TransformReport {
    int n = 0;
    Engine engine = Engine::symbolic;
    std::vector<Complex> coefficients;               // reduced D values
    std::vector<SequencePolynomial> polynomials;     // pre-reduction (symbolic engine)
    GateCounts gate_counts;                          // accumulated over all 2^n extractions
    std::optional<double> oracle_residual;

    GateCounts per_coefficient() const {
        const std::int64_t reps = std::int64_t{1} << n;
        return GateCounts{gate_counts.controlled_phase / reps, gate_counts.hadamard / reps,
                          gate_counts.mode_select / reps, gate_counts.correlation / reps};
    }
};

/// Output index the selection j lands on: sum_t j_t 2^{t-1}.
inline int output_index(const std::vector<int>& j_bits) {
    int k = 0;
    for (std::size_t t = 0; t < j_bits.size(); ++t) k |= (j_bits[t] & 1) << t;
    return k;
}

namespace detail {

inline void check_fields(std::span<const FieldState> fields) {
    const int n = static_cast<int>(fields.size());
    if (n < 1 || n > 16) throw std::invalid_argument("transform: field count must lie in [1, 16]");
    for (const auto& field : fields) {
        const int len = field_vector_length(field);
        if (len >= 0 && len != n)
            throw std::invalid_argument("transform: field multiplicity length does not match field count");
    }
}

/// Steps 2-4 for one selection: controlled phase, Hadamard, mode selection
/// on every field. Returns the n selected amplitudes.
inline std::vector<SequencePolynomial> selected_amplitudes(std::span<const FieldState> fields,
                                                           const std::vector<int>& j_bits,
                                                           GateCounts& counts) {
    const int n = static_cast<int>(fields.size());
    const int order = 1 << n;
    std::vector<SequencePolynomial> selected;
    selected.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const OmegaPower m(order, phase_exponent(k, j_bits, n));
        FieldState f = controlled_phase(fields[static_cast<std::size_t>(k - 1)], m);
        ++counts.controlled_phase;
        f = hadamard(f);
        ++counts.hadamard;
        selected.push_back(mode_select(f, j_bits[static_cast<std::size_t>(k - 1)]));
        ++counts.mode_select;
    }
    return selected;
}

inline std::vector<int> selection_bits(int index, int n) {
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) bits[static_cast<std::size_t>(t)] = (index >> t) & 1;
    return bits;
}

}  // namespace detail

/// One coefficient of the transform: the product of the selected amplitudes
/// after the per-field gate sequence. Stored at output_index(j_bits) by the
/// full transform.
inline SequencePolynomial extract_coefficient(std::span<const FieldState> fields, const std::vector<int>& j_bits,
                                              GateCounts* counts = nullptr) {
    detail::check_fields(fields);
    const int n = static_cast<int>(fields.size());
    if (j_bits.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("extract_coefficient: selection needs one bit per field");
    GateCounts local;
    auto selected = detail::selected_amplitudes(fields, j_bits, local);
    SequencePolynomial product = SequencePolynomial::one(n);
    for (const auto& amplitude : selected) product = product * amplitude;
    local.correlation += static_cast<std::int64_t>(n) * n;  // detection cost
    if (counts) *counts += local;
    return product;
}

/// Worker threads for the transform driver: PQFT_THREADS clamps the count,
/// defaulting to the hardware concurrency.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("PQFT_THREADS")) {
        char* end = nullptr;
        const long requested = std::strtol(env, &end, 10);
        if (end != env && requested >= 1) return static_cast<int>(requested < hw ? requested : hw);
        return 1;
    }
    return hw;
}

/// Runs the extraction loop over all 2^n selections. The sampled engine
/// evaluates each selected amplitude to its M-slot waveform and demodulates
/// against the reference sequence; it needs a collision-free family.
inline TransformReport transform(std::span<const FieldState> fields, Engine engine,
                                 const SequenceFamily* family = nullptr) {
    detail::check_fields(fields);
    const int n = static_cast<int>(fields.size());
    if (engine == Engine::sampled) {
        if (family == nullptr) throw std::invalid_argument("transform: sampled engine needs a sequence family");
        if (family->field_count() != n)
            throw std::invalid_argument("transform: family base ids do not match field count");
        family->require_collision_free(n);
    }

    const int n_sel = 1 << n;
    TransformReport report;
    report.n = n;
    report.engine = engine;
    report.coefficients.resize(static_cast<std::size_t>(n_sel));
    if (engine == Engine::symbolic) report.polynomials.resize(static_cast<std::size_t>(n_sel));

    const MultiplicityVector ref = reference_sequence(n);
    auto run_range = [&](int lo, int hi, GateCounts& counts) {
        for (int k = lo; k < hi; ++k) {
            const auto j_bits = detail::selection_bits(k, n);
            if (engine == Engine::symbolic) {
                SequencePolynomial poly = extract_coefficient(fields, j_bits, &counts);
                report.coefficients[static_cast<std::size_t>(k)] = poly.coefficient(ref);
                report.polynomials[static_cast<std::size_t>(k)] = std::move(poly);
            } else {
                auto selected = detail::selected_amplitudes(fields, j_bits, counts);
                std::vector<std::vector<Complex>> signals;
                signals.reserve(selected.size());
                for (const auto& amplitude : selected) signals.push_back(sampled_waveform(amplitude, *family));
                report.coefficients[static_cast<std::size_t>(k)] = reduce_sampled(signals, *family);
                counts.correlation += static_cast<std::int64_t>(n) * n;
            }
        }
    };

    const int workers = std::min(thread_budget(), n_sel);
    if (workers <= 1 || n_sel < 128) {
        run_range(0, n_sel, report.gate_counts);
    } else {
        std::vector<GateCounts> partial(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const int chunk = (n_sel + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(n_sel, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, w] { run_range(lo, hi, partial[static_cast<std::size_t>(w)]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& counts : partial) report.gate_counts += counts;
    }
    return report;
}

/// Reduced coefficients of the symbolic transform; by the commutation of
/// transform and reduction this equals the dense DFT of the reduced input.
inline ReducedState reduced_transform(std::span<const FieldState> fields) {
    TransformReport report = transform(fields, Engine::symbolic);
    return ReducedState{report.n, std::move(report.coefficients)};
}

}  // namespace pqft
