// Pseudorandom phase sequence (PPS) families: exact-rational phase tables,
// correlation / balance checks, and the collision preflight that guards
// sampled-signal reduction.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqft {

using Complex = std::complex<double>;

/// e^{2*pi*i*num/den} for integer num/den. The numerator is reduced mod den
/// and the angle is folded through exact quarter-turn rotations, so values
/// like -1 and i are exact and conjugate slot pairs cancel without rounding.
inline Complex unit_phase(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("unit_phase: denominator must be positive");
    std::int64_t r = num % den;
    if (r < 0) r += den;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (den % 4 == 0) {
        const std::int64_t quarter = den / 4;
        const std::int64_t q = r / quarter;
        const std::int64_t rem = r % quarter;
        Complex z = rem == 0 ? Complex(1.0, 0.0)
                             : std::polar(1.0, two_pi * static_cast<double>(rem) / static_cast<double>(den));
        switch (q) {
            case 0: return z;
            case 1: return Complex(-z.imag(), z.real());   // i*z
            case 2: return -z;
            default: return Complex(z.imag(), -z.real());  // -i*z
        }
    }
    if (den % 2 == 0) {
        const std::int64_t half = den / 2;
        Complex z = (r % half) == 0 ? Complex(1.0, 0.0)
                                    : std::polar(1.0, two_pi * static_cast<double>(r % half) / static_cast<double>(den));
        return r >= half ? -z : z;
    }
    if (r == 0) return Complex(1.0, 0.0);
    return std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(den));
}

/// How many times each base sequence enters a phase product. One factor per
/// field, so pipeline-produced vectors have total degree at most the field
/// count.
struct MultiplicityVector {
    std::vector<int> counts;

    MultiplicityVector() = default;
    explicit MultiplicityVector(std::vector<int> c) : counts(std::move(c)) {}

    std::size_t size() const { return counts.size(); }

    int degree() const {
        int d = 0;
        for (int c : counts) d += c;
        return d;
    }

    static MultiplicityVector zeros(int n) { return MultiplicityVector(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    static MultiplicityVector ones(int n) { return MultiplicityVector(std::vector<int>(static_cast<std::size_t>(n), 1)); }

    /// Unit vector for 1-based field index i.
    static MultiplicityVector unit(int n, int field_index) {
        if (field_index < 1 || field_index > n)
            throw std::out_of_range("MultiplicityVector::unit: field index out of range");
        MultiplicityVector v = zeros(n);
        v.counts[static_cast<std::size_t>(field_index - 1)] = 1;
        return v;
    }

    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
    friend auto operator<=>(const MultiplicityVector&, const MultiplicityVector&) = default;
};

enum class FamilyKind { fourier, mseq };

inline std::string to_string(FamilyKind kind) { return kind == FamilyKind::fourier ? "fourier" : "mseq"; }

namespace detail {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<std::int64_t>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Runs the degree-m linear recurrence s_{k+m} = -(c_{m-1} s_{k+m-1} + ... +
/// c_0 s_k) mod p from seed (0,...,0,1) and returns one full period of
/// symbols. Throws unless the state cycle has length exactly p^m - 1, the
/// maximal period that characterizes a primitive polynomial.
inline std::vector<int> mseq_symbols(int p, int degree, const std::vector<int>& poly) {
    if (!is_prime(p)) throw std::invalid_argument("mseq: p must be prime");
    if (degree < 1) throw std::invalid_argument("mseq: degree must be positive");
    if (poly.size() != static_cast<std::size_t>(degree) + 1)
        throw std::invalid_argument("mseq: polynomial needs degree+1 coefficients");
    if (poly.front() != 1) throw std::invalid_argument("mseq: polynomial must be monic");
    for (int c : poly)
        if (c < 0 || c >= p) throw std::invalid_argument("mseq: coefficients must lie in [0, p)");

    std::int64_t period = 1;
    for (int i = 0; i < degree; ++i) {
        period *= p;
        if (period - 1 > (1 << 20)) throw std::invalid_argument("mseq: period exceeds 2^20 slots");
    }
    const std::int64_t M = period - 1;

    // poly = x^m + c_{m-1} x^{m-1} + ... + c_0; poly[1] = c_{m-1}, poly[m] = c_0.
    std::vector<int> recurrence(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i)
        recurrence[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(degree - i)];  // c_i

    std::vector<int> seed(static_cast<std::size_t>(degree), 0);
    seed.back() = 1;
    std::vector<int> state = seed;
    std::vector<int> symbols;
    symbols.reserve(static_cast<std::size_t>(M));
    for (std::int64_t k = 0; k < M; ++k) {
        symbols.push_back(state.front());
        int acc = 0;
        for (int i = 0; i < degree; ++i)
            acc = (acc + recurrence[static_cast<std::size_t>(i)] * state[static_cast<std::size_t>(i)]) % p;
        int next = (p - acc % p) % p;
        state.erase(state.begin());
        state.push_back(next);
        if (state == seed && k + 1 < M)
            throw std::invalid_argument("mseq: polynomial is not primitive (period " + std::to_string(k + 1) +
                                        " < " + std::to_string(M) + ")");
    }
    if (state != seed)
        throw std::invalid_argument("mseq: polynomial is not primitive (state cycle exceeds maximal period)");
    return symbols;
}

/// A maximal-period symbol stream over GF(p) has p^{m-1} occurrences of every
/// nonzero symbol and p^{m-1} - 1 zeros; used to validate imported families.
inline void validate_mseq_symbols(int p, const std::vector<int>& symbols) {
    if (!is_prime(p)) throw std::invalid_argument("mseq: p must be prime");
    const std::int64_t M = static_cast<std::int64_t>(symbols.size());
    std::int64_t power = 1;
    while (power < M + 1) power *= p;
    if (power != M + 1) throw std::invalid_argument("mseq: slot count is not p^degree - 1");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
    for (int s : symbols) {
        if (s < 0 || s >= p) throw std::invalid_argument("mseq: symbol out of range");
        ++counts[static_cast<std::size_t>(s)];
    }
    const std::int64_t block = (M + 1) / p;
    if (counts[0] != block - 1) throw std::invalid_argument("mseq: symbol counts are not balanced");
    for (int s = 1; s < p; ++s)
        if (counts[static_cast<std::size_t>(s)] != block)
            throw std::invalid_argument("mseq: symbol counts are not balanced");
}

}  // namespace detail

/// A family of M-slot phase sequences with group structure. Every phase is
/// the exact rational 2*pi*numerator/denominator; re-deriving a table is
/// bit-identical. Immutable after construction and safe to share across
/// threads.
///
/// Two constructions are provided:
///  - fourier: sequence id j has numerators (j*k mod M) over denominator M.
///    Balance and orthogonality hold exactly.
///  - mseq: ids are cyclic shifts of one maximal-period LFSR stream over
///    GF(p), numerators are the shifted symbols over denominator p. Balance
///    holds with residual exactly 1/M.
class SequenceFamily {
public:
    FamilyKind kind() const { return kind_; }
    int slot_count() const { return M_; }
    int alphabet_modulus() const { return p_; }
    int denominator() const { return den_; }
    const std::vector<int>& base_ids() const { return base_ids_; }
    int field_count() const { return static_cast<int>(base_ids_.size()); }

    /// mseq only: the unshifted symbol stream. Empty for fourier families.
    const std::vector<int>& symbols() const { return symbols_; }

    bool valid_id(int id) const { return id >= 0 && id < M_; }

    /// True when sequence `id` is the all-zero sequence (excluded from the
    /// balance property).
    bool is_zero_sequence(int id) const { return kind_ == FamilyKind::fourier && id % M_ == 0; }

    /// Phase numerators of sequence `id`, one per slot, each in [0, den).
    std::vector<int> numerators(int id) const {
        if (!valid_id(id)) throw std::invalid_argument("SequenceFamily: sequence id out of range");
        std::vector<int> nums(static_cast<std::size_t>(M_));
        if (kind_ == FamilyKind::fourier) {
            for (int k = 0; k < M_; ++k)
                nums[static_cast<std::size_t>(k)] = static_cast<int>((static_cast<std::int64_t>(id) * k) % M_);
        } else {
            for (int k = 0; k < M_; ++k)
                nums[static_cast<std::size_t>(k)] = symbols_[static_cast<std::size_t>((k + id) % M_)];
        }
        return nums;
    }

    /// Pointwise sum (mod the denominator) of the base sequences, each taken
    /// with the multiplicity the vector assigns to it. The all-zero vector
    /// yields the all-zero sequence.
    std::vector<int> combine(const MultiplicityVector& v) const {
        if (v.size() != base_ids_.size())
            throw std::invalid_argument("SequenceFamily::combine: multiplicity vector length mismatch");
        for (int c : v.counts)
            if (c < 0) throw std::invalid_argument("SequenceFamily::combine: negative multiplicity");
        if (kind_ == FamilyKind::fourier) {
            std::int64_t id = 0;
            for (std::size_t i = 0; i < base_ids_.size(); ++i)
                id += static_cast<std::int64_t>(v.counts[i]) * base_ids_[i];
            return numerators(static_cast<int>(id % M_));
        }
        std::vector<int> nums(static_cast<std::size_t>(M_), 0);
        for (std::size_t i = 0; i < base_ids_.size(); ++i) {
            if (v.counts[i] == 0) continue;
            const int shift = base_ids_[i];
            for (int k = 0; k < M_; ++k) {
                auto& slot = nums[static_cast<std::size_t>(k)];
                slot = (slot + v.counts[i] * symbols_[static_cast<std::size_t>((k + shift) % M_)]) % den_;
            }
        }
        return nums;
    }

    Complex phase_factor(int numerator) const { return unit_phase(numerator, den_); }

    /// (1/M) sum_k e^{i(lambda^(b)_k - lambda^(a)_k)}. Equals 1 when a == b;
    /// for fourier families it vanishes otherwise, for mseq families the
    /// modulus is 1/M.
    Complex correlation(int a, int b) const {
        const auto na = numerators(a);
        const auto nb = numerators(b);
        Complex sum{0.0, 0.0};
        for (int k = 0; k < M_; ++k)
            sum += unit_phase(nb[static_cast<std::size_t>(k)] - na[static_cast<std::size_t>(k)], den_);
        return sum / static_cast<double>(M_);
    }

    /// sum_k e^{i(theta + lambda^(id)_k)}. The all-zero sequence is excluded:
    /// it sums to M e^{i theta} and carries no cancellation.
    Complex balance_sum(int id, double theta) const {
        if (is_zero_sequence(id))
            throw std::invalid_argument("SequenceFamily::balance_sum: the all-zero sequence is excluded");
        const auto nums = numerators(id);
        Complex sum{0.0, 0.0};
        for (int num : nums) sum += unit_phase(num, den_);
        if (theta == 0.0) return sum;
        return std::polar(1.0, theta) * sum;
    }

    /// True when every multiplicity vector of total degree <= degree maps to
    /// a distinct combined sequence. Reduction against the all-ones reference
    /// is only sound when this holds for the pipeline's product degree.
    bool collision_free(int degree) const {
        if (degree == field_count()) {
            int cached = collision_cache_->load(std::memory_order_relaxed);
            if (cached >= 0) return cached != 0;
            bool ok = compute_collision_free(degree);
            collision_cache_->store(ok ? 1 : 0, std::memory_order_relaxed);
            return ok;
        }
        return compute_collision_free(degree);
    }

    bool collision_free() const { return collision_free(field_count()); }

    void require_collision_free(int degree) const {
        if (!collision_free(degree))
            throw std::domain_error("SequenceFamily: base ids fail the collision preflight for degree " +
                                    std::to_string(degree) + "; reduction would be unsound");
    }

    void require_collision_free() const { require_collision_free(field_count()); }

    friend SequenceFamily make_fourier_family(int M, std::vector<int> base_ids);
    friend SequenceFamily make_mseq_family(int p, int degree, const std::vector<int>& primitive_poly,
                                           std::vector<int> base_ids);
    friend SequenceFamily make_mseq_family_from_symbols(int p, std::vector<int> symbols, std::vector<int> base_ids);

private:
    SequenceFamily(FamilyKind kind, int M, int p, int den, std::vector<int> base_ids, std::vector<int> symbols)
        : kind_(kind),
          M_(M),
          p_(p),
          den_(den),
          base_ids_(std::move(base_ids)),
          symbols_(std::move(symbols)),
          collision_cache_(std::make_shared<std::atomic<int>>(-1)) {}

    bool compute_collision_free(int degree) const {
        const int n = field_count();
        if (n == 0) return true;
        if (kind_ == FamilyKind::fourier) {
            std::set<std::int64_t> seen;
            std::vector<int> counts(static_cast<std::size_t>(n), 0);
            return enumerate_ids(counts, 0, degree, 0, seen);
        }
        std::set<std::vector<int>> seen;
        MultiplicityVector v = MultiplicityVector::zeros(n);
        return enumerate_sequences(v, 0, degree, seen);
    }

    bool enumerate_ids(std::vector<int>& counts, std::size_t pos, int remaining, std::int64_t id_sum,
                       std::set<std::int64_t>& seen) const {
        if (pos == counts.size()) return seen.insert(id_sum % M_).second;
        for (int c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            if (!enumerate_ids(counts, pos + 1, remaining - c,
                               id_sum + static_cast<std::int64_t>(c) * base_ids_[pos], seen))
                return false;
        }
        counts[pos] = 0;
        return true;
    }

    bool enumerate_sequences(MultiplicityVector& v, std::size_t pos, int remaining,
                             std::set<std::vector<int>>& seen) const {
        if (pos == v.size()) return seen.insert(combine(v)).second;
        for (int c = 0; c <= remaining; ++c) {
            v.counts[pos] = c;
            if (!enumerate_sequences(v, pos + 1, remaining - c, seen)) return false;
        }
        v.counts[pos] = 0;
        return true;
    }

    FamilyKind kind_;
    int M_;
    int p_;
    int den_;
    std::vector<int> base_ids_;
    std::vector<int> symbols_;
    std::shared_ptr<std::atomic<int>> collision_cache_;
};

/// Fourier construction: lambda^(j)_k = 2*pi*j*k/M. Base ids must be
/// distinct, nonzero and below M (id 0 is the all-zero sequence).
inline SequenceFamily make_fourier_family(int M, std::vector<int> base_ids) {
    if (M < 2) throw std::invalid_argument("fourier family: M must be at least 2");
    if (M > (1 << 20)) throw std::invalid_argument("fourier family: M exceeds 2^20 slots");
    std::set<int> seen;
    for (int id : base_ids) {
        if (id <= 0 || id >= M) throw std::invalid_argument("fourier family: base ids must lie in (0, M)");
        if (!seen.insert(id).second) throw std::invalid_argument("fourier family: duplicate base id");
    }
    return SequenceFamily(FamilyKind::fourier, M, M, M, std::move(base_ids), {});
}

/// GF(p) m-sequence construction. Ids are cyclic shifts of the generated
/// stream; shift 0 is the stream itself, never the all-zero sequence, so any
/// distinct shifts are acceptable base ids.
inline SequenceFamily make_mseq_family(int p, int degree, const std::vector<int>& primitive_poly,
                                       std::vector<int> base_ids) {
    std::vector<int> symbols = detail::mseq_symbols(p, degree, primitive_poly);
    const int M = static_cast<int>(symbols.size());
    std::set<int> seen;
    for (int id : base_ids) {
        if (id < 0 || id >= M) throw std::invalid_argument("mseq family: shift ids must lie in [0, M)");
        if (!seen.insert(id).second) throw std::invalid_argument("mseq family: duplicate shift id");
    }
    return SequenceFamily(FamilyKind::mseq, M, p, p, std::move(base_ids), std::move(symbols));
}

/// Rebuilds an mseq family from a stored symbol stream (deserialization).
inline SequenceFamily make_mseq_family_from_symbols(int p, std::vector<int> symbols, std::vector<int> base_ids) {
    detail::validate_mseq_symbols(p, symbols);
    const int M = static_cast<int>(symbols.size());
    std::set<int> seen;
    for (int id : base_ids) {
        if (id < 0 || id >= M) throw std::invalid_argument("mseq family: shift ids must lie in [0, M)");
        if (!seen.insert(id).second) throw std::invalid_argument("mseq family: duplicate shift id");
    }
    return SequenceFamily(FamilyKind::mseq, M, p, p, std::move(base_ids), std::move(symbols));
}

/// Base ids (n+1)^0, (n+1)^1, ..., (n+1)^{n-1} within Z_M, M >= (n+1)^n: id
/// sums of degree <= n vectors are base-(n+1) digit strings and never
/// collide. The smallest such M is (n+1)^n, which stays within the 2^20 slot
/// cap up to n = 6.
inline std::vector<int> collision_free_ids(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("collision_free_ids: n must lie in [1, 6]");
    std::vector<int> ids(static_cast<std::size_t>(n));
    int power = 1;
    for (int i = 0; i < n; ++i) {
        ids[static_cast<std::size_t>(i)] = power;
        power *= n + 1;
    }
    return ids;
}

inline int collision_free_slot_count(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("collision_free_slot_count: n must lie in [1, 6]");
    int M = 1;
    for (int i = 0; i < n; ++i) M *= n + 1;
    return M;
}

}  // namespace pqft
