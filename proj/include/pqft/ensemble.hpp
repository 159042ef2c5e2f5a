// Formal product states over n fields, expansion into per-basis-index
// polynomials, and ensemble-averaged reduction (symbolic and sampled).

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "pqft/field.hpp"

namespace pqft {

/// Per-basis-index coefficient polynomials of an n-field product state.
/// Index bit order is MSB-first: index = i1*2^{n-1} + ... + in*2^0, field 1
/// owning the most significant bit. Every term has total degree exactly n.
struct ExpandedState {
    int n = 0;
    std::vector<SequencePolynomial> coeffs;
};

/// Length-2^n complex vector left after ensemble reduction.
struct ReducedState {
    int n = 0;
    std::vector<Complex> amps;
};

/// The demodulation reference: multiplicity vector (1,...,1), the sum of all
/// n base sequences.
inline MultiplicityVector reference_sequence(int n) { return MultiplicityVector::ones(n); }

namespace detail {

inline int field_vector_length(const FieldState& field) {
    const int a = field.alpha.vector_length();
    const int b = field.beta.vector_length();
    if (a >= 0 && b >= 0 && a != b)
        throw std::invalid_argument("FieldState: mode amplitudes disagree on multiplicity length");
    return a >= 0 ? a : b;
}

}  // namespace detail

/// Direct product of the fields: coeffs[i1...in] multiplies each field's
/// alpha (bit 0) or beta (bit 1) amplitude.
inline ExpandedState tensor_product(std::span<const FieldState> fields) {
    const int n = static_cast<int>(fields.size());
    if (n < 1) throw std::invalid_argument("tensor_product: need at least one field");
    for (const auto& field : fields) {
        const int len = detail::field_vector_length(field);
        if (len >= 0 && len != n)
            throw std::invalid_argument("tensor_product: field multiplicity length does not match field count");
    }

    std::vector<SequencePolynomial> coeffs{SequencePolynomial::one(n)};
    for (const auto& field : fields) {
        std::vector<SequencePolynomial> next(coeffs.size() * 2);
        for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
            next[idx * 2] = coeffs[idx] * field.alpha;
            next[idx * 2 + 1] = coeffs[idx] * field.beta;
        }
        coeffs = std::move(next);
    }
    return ExpandedState{n, std::move(coeffs)};
}

/// Ensemble-averaged reduction: keeps only each coefficient at the all-ones
/// reference vector. The balance property removes every other term under
/// slot averaging, so exact term selection and the physical average agree.
inline ReducedState reduce(const ExpandedState& state) {
    const MultiplicityVector ref = reference_sequence(state.n);
    ReducedState out{state.n, {}};
    out.amps.reserve(state.coeffs.size());
    for (const auto& poly : state.coeffs) out.amps.push_back(poly.coefficient(ref));
    return out;
}

/// Slot-wise demodulation of n selected-mode signals against the reference
/// sequence: (1/M) sum_k [prod_j signal_j(k)] e^{-i lambda^(S)_k}. Matches
/// the symbolic reduction of the product polynomial for collision-free
/// families.
inline Complex reduce_sampled(const std::vector<std::vector<Complex>>& signals, const SequenceFamily& family) {
    const int n = family.field_count();
    if (static_cast<int>(signals.size()) != n)
        throw std::invalid_argument("reduce_sampled: need one signal per base sequence");
    family.require_collision_free(n);
    const int M = family.slot_count();
    for (const auto& signal : signals)
        if (static_cast<int>(signal.size()) != M)
            throw std::invalid_argument("reduce_sampled: signal length does not match slot count");

    const auto ref = family.combine(reference_sequence(n));
    Complex acc{0.0, 0.0};
    for (int k = 0; k < M; ++k) {
        Complex prod{1.0, 0.0};
        for (const auto& signal : signals) prod *= signal[static_cast<std::size_t>(k)];
        acc += prod * std::conj(family.phase_factor(ref[static_cast<std::size_t>(k)]));
    }
    return acc / static_cast<double>(M);
}

/// Field inner product on sampled signals:
/// (1/M) sum_k [conj(a0_k) b0_k + conj(a1_k) b1_k].
inline Complex inner_product(const FieldState& a, const FieldState& b, const SequenceFamily& family) {
    const auto a0 = sampled_waveform(a.alpha, family);
    const auto a1 = sampled_waveform(a.beta, family);
    const auto b0 = sampled_waveform(b.alpha, family);
    const auto b1 = sampled_waveform(b.beta, family);
    const int M = family.slot_count();
    Complex acc{0.0, 0.0};
    for (int k = 0; k < M; ++k) {
        const auto i = static_cast<std::size_t>(k);
        acc += std::conj(a0[i]) * b0[i] + std::conj(a1[i]) * b1[i];
    }
    return acc / static_cast<double>(M);
}

}  // namespace pqft
