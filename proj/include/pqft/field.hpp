// Single classical fields: two mode amplitudes held as sparse sequence
// polynomials, the gates that act on them, and evaluation to M-slot signals.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pqft/pps.hpp"

namespace pqft {

/// Formal sum of complex coefficients over phase products, keyed by
/// multiplicity vector. Terms with modulus at or below the prune threshold
/// are dropped after every operation; the zero polynomial is the empty map.
class SequencePolynomial {
public:
    static constexpr double prune_threshold = 1e-12;
    using TermMap = std::map<MultiplicityVector, Complex>;

    SequencePolynomial() = default;

    static SequencePolynomial term(MultiplicityVector v, Complex c) {
        SequencePolynomial p;
        p.terms_[std::move(v)] = c;
        p.prune();
        return p;
    }

    /// Multiplicative identity over n base sequences (the empty product).
    static SequencePolynomial one(int n) { return term(MultiplicityVector::zeros(n), Complex(1.0, 0.0)); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Complex coefficient(const MultiplicityVector& v) const {
        auto it = terms_.find(v);
        return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
    }

    /// Length of the multiplicity vectors, or -1 for the zero polynomial.
    int vector_length() const {
        return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size());
    }

    SequencePolynomial& operator+=(const SequencePolynomial& other) {
        check_compatible(other);
        for (const auto& [v, c] : other.terms_) terms_[v] += c;
        prune();
        return *this;
    }

    friend SequencePolynomial operator+(SequencePolynomial lhs, const SequencePolynomial& rhs) {
        lhs += rhs;
        return lhs;
    }

    SequencePolynomial operator-() const { return scaled(Complex(-1.0, 0.0)); }

    friend SequencePolynomial operator-(const SequencePolynomial& lhs, const SequencePolynomial& rhs) {
        return lhs + (-rhs);
    }

    SequencePolynomial scaled(const Complex& factor) const {
        SequencePolynomial out;
        for (const auto& [v, c] : terms_) out.terms_[v] = c * factor;
        out.prune();
        return out;
    }

    /// Polynomial product: coefficients multiply, multiplicity vectors add.
    friend SequencePolynomial operator*(const SequencePolynomial& lhs, const SequencePolynomial& rhs) {
        lhs.check_compatible(rhs);
        SequencePolynomial out;
        for (const auto& [va, ca] : lhs.terms_) {
            for (const auto& [vb, cb] : rhs.terms_) {
                MultiplicityVector v = va;
                for (std::size_t i = 0; i < v.size(); ++i) v.counts[i] += vb.counts[i];
                out.terms_[std::move(v)] += ca * cb;
            }
        }
        out.prune();
        return out;
    }

    friend bool operator==(const SequencePolynomial&, const SequencePolynomial&) = default;

private:
    void check_compatible(const SequencePolynomial& other) const {
        if (!terms_.empty() && !other.terms_.empty() && vector_length() != other.vector_length())
            throw std::invalid_argument("SequencePolynomial: multiplicity vector length mismatch");
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = std::abs(it->second) <= prune_threshold ? terms_.erase(it) : std::next(it);
    }

    TermMap terms_;
};

/// One classical field: amplitudes of the two orthogonal modes.
struct FieldState {
    SequencePolynomial alpha;  // mode |0> amplitude
    SequencePolynomial beta;   // mode |1> amplitude

    friend bool operator==(const FieldState&, const FieldState&) = default;
};

/// omega^e with omega = e^{2*pi*i/order}; order is 2^n. Exponents stay
/// integers mod the order until evaluation, so products of omega powers
/// never touch floating point.
class OmegaPower {
public:
    OmegaPower(int order, std::int64_t exponent) : order_(order) {
        if (order < 2 || (order & (order - 1)) != 0)
            throw std::invalid_argument("OmegaPower: order must be a power of two, at least 2");
        exponent_ = static_cast<int>(((exponent % order) + order) % order);
    }

    int order() const { return order_; }
    int exponent() const { return exponent_; }

    OmegaPower operator*(const OmegaPower& other) const {
        if (order_ != other.order_) throw std::invalid_argument("OmegaPower: mismatched orders");
        return OmegaPower(order_, static_cast<std::int64_t>(exponent_) + other.exponent_);
    }

    Complex value() const { return unit_phase(exponent_, order_); }

    friend bool operator==(const OmegaPower&, const OmegaPower&) = default;

private:
    int order_;
    int exponent_;
};

/// 2x2 complex gate acting on (alpha, beta).
struct Mat2 {
    Complex m00, m01, m10, m11;

    static Mat2 identity() { return {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)}; }
    static Mat2 swap_modes() { return {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)}; }
    /// Unnormalized Hadamard [[1,1],[1,-1]]; squares to 2*identity.
    static Mat2 hadamard() { return {Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(-1, 0)}; }
};

/// e^{i lambda^(i)} (|0> + |1>): both amplitudes carry the unit term at the
/// field's own base sequence. field_index is 1-based.
inline FieldState prepare_uniform(int n, int field_index) {
    if (field_index < 1 || field_index > n)
        throw std::out_of_range("prepare_uniform: field index out of range");
    auto unit = SequencePolynomial::term(MultiplicityVector::unit(n, field_index), Complex(1.0, 0.0));
    return FieldState{unit, unit};
}

/// Three fields whose product reduces to |000> + |111>: each field pairs one
/// base sequence on mode |0> with the cyclically next one on mode |1>.
inline std::array<FieldState, 3> prepare_ghz_fields() {
    auto e = [](int i) { return SequencePolynomial::term(MultiplicityVector::unit(3, i), Complex(1.0, 0.0)); };
    return {FieldState{e(1), e(2)}, FieldState{e(2), e(3)}, FieldState{e(3), e(1)}};
}

/// Three identical fields whose product reduces to |001> + |010> + |100>
/// (scaled by 2): mode |0> carries the second and third base sequences, mode
/// |1> the first.
inline std::array<FieldState, 3> prepare_w_fields() {
    auto e = [](int i) { return SequencePolynomial::term(MultiplicityVector::unit(3, i), Complex(1.0, 0.0)); };
    FieldState f{e(2) + e(3), e(1)};
    return {f, f, f};
}

inline FieldState apply_gate(const FieldState& field, const Mat2& gate) {
    return FieldState{field.alpha.scaled(gate.m00) + field.beta.scaled(gate.m01),
                      field.alpha.scaled(gate.m10) + field.beta.scaled(gate.m11)};
}

/// Unnormalized Hadamard: (alpha, beta) -> (alpha + beta, alpha - beta).
inline FieldState hadamard(const FieldState& field) {
    return FieldState{field.alpha + field.beta, field.alpha - field.beta};
}

/// Controlled-phase exponent for field k given the selected output bits:
/// e_k = sum_{t=1}^{k-1} j_t * 2^{n-1-k+t}, reduced mod 2^n. Field 1 always
/// gets exponent 0.
inline int phase_exponent(int field_index, const std::vector<int>& j_bits, int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("phase_exponent: n must lie in [1, 16]");
    if (field_index < 1 || field_index > n)
        throw std::out_of_range("phase_exponent: field index out of range");
    if (j_bits.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("phase_exponent: selection needs n bits");
    std::int64_t e = 0;
    for (int t = 1; t < field_index; ++t) {
        const int bit = j_bits[static_cast<std::size_t>(t - 1)];
        if (bit != 0 && bit != 1) throw std::invalid_argument("phase_exponent: selection bits must be 0 or 1");
        e += static_cast<std::int64_t>(bit) << (n - 1 - field_index + t);
    }
    return static_cast<int>(e % (std::int64_t{1} << n));
}

/// Multiplies the |1> amplitude by omega^m; the |0> amplitude is untouched.
inline FieldState controlled_phase(const FieldState& field, const OmegaPower& m) {
    if (m.exponent() == 0) return field;
    return FieldState{field.alpha, field.beta.scaled(m.value())};
}

/// Projects the field onto the mode matching the selected bit.
inline SequencePolynomial mode_select(const FieldState& field, int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("mode_select: bit must be 0 or 1");
    return bit == 0 ? field.alpha : field.beta;
}

namespace detail {

inline int max_term_degree(const SequencePolynomial& poly) {
    int deg = 0;
    for (const auto& [v, c] : poly.terms()) deg = std::max(deg, v.degree());
    return deg;
}

inline void check_family_match(const SequencePolynomial& poly, const SequenceFamily& family) {
    if (!poly.is_zero() && poly.vector_length() != family.field_count())
        throw std::invalid_argument("sampled evaluation: polynomial length does not match family base ids");
}

}  // namespace detail

/// Evaluates a polynomial amplitude to its physical M-slot waveform: slot k
/// carries the sum over terms of coeff * e^{i Lambda(v)_k}.
inline std::vector<Complex> sampled_waveform(const SequencePolynomial& poly, const SequenceFamily& family) {
    detail::check_family_match(poly, family);
    const int M = family.slot_count();
    std::vector<Complex> signal(static_cast<std::size_t>(M), Complex(0.0, 0.0));
    for (const auto& [v, c] : poly.terms()) {
        const auto nums = family.combine(v);
        for (int k = 0; k < M; ++k) signal[static_cast<std::size_t>(k)] += c * family.phase_factor(nums[static_cast<std::size_t>(k)]);
    }
    return signal;
}

/// Both mode waveforms of one field.
struct SampledField {
    std::vector<Complex> mode0;
    std::vector<Complex> mode1;
};

/// Evaluates both modes after running the collision preflight at the degree
/// the field's terms actually reach; ambiguous combined sequences would make
/// any later reduction of these signals unsound.
inline SampledField evaluate_sampled(const FieldState& field, const SequenceFamily& family) {
    detail::check_family_match(field.alpha, family);
    detail::check_family_match(field.beta, family);
    const int degree = std::max({1, detail::max_term_degree(field.alpha), detail::max_term_degree(field.beta)});
    family.require_collision_free(degree);
    return SampledField{sampled_waveform(field.alpha, family), sampled_waveform(field.beta, family)};
}

}  // namespace pqft
