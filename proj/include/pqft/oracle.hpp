// Brute-force DFT reference. Deliberately the dumbest correct thing: dense
// O(N^2) summation with integer exponent arithmetic, used as ground truth
// for every analogy-pipeline output.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pqft/pps.hpp"

namespace pqft {

/// Unnormalized 2^n x 2^n transform matrix with entry(j,k) = omega^{jk},
/// omega = e^{2*pi*i/2^n}. Exponents are reduced mod 2^n in integer
/// arithmetic; only the 2^n roots are ever evaluated.
class DftMatrix {
public:
    explicit DftMatrix(int n) : n_(n) {
        if (n < 1 || n > 16) throw std::invalid_argument("DftMatrix: n must lie in [1, 16]");
        size_ = 1 << n;
        roots_.reserve(static_cast<std::size_t>(size_));
        for (int t = 0; t < size_; ++t) roots_.push_back(unit_phase(t, size_));
    }

    int n() const { return n_; }
    int size() const { return size_; }
    const std::vector<Complex>& roots() const { return roots_; }

    Complex entry(int row, int col) const {
        if (row < 0 || row >= size_ || col < 0 || col >= size_)
            throw std::out_of_range("DftMatrix::entry: index out of range");
        return roots_[static_cast<std::size_t>((static_cast<std::int64_t>(row) * col) % size_)];
    }

    std::vector<Complex> row(int r) const {
        std::vector<Complex> out(static_cast<std::size_t>(size_));
        for (int c = 0; c < size_; ++c) out[static_cast<std::size_t>(c)] = entry(r, c);
        return out;
    }

private:
    int n_;
    int size_;
    std::vector<Complex> roots_;
};

/// Dense unnormalized DFT: D[k] = sum_j omega^{jk} C[j]. Input length must
/// be a power of two between 2 and 2^16.
inline std::vector<Complex> reference_dft(const std::vector<Complex>& input) {
    const std::size_t N = input.size();
    if (N < 2 || (N & (N - 1)) != 0 || N > (1u << 16))
        throw std::invalid_argument("reference_dft: length must be a power of two in [2, 2^16]");
    int n = 0;
    while ((std::size_t{1} << n) < N) ++n;
    const DftMatrix dft(n);
    std::vector<Complex> out(N, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < N; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < N; ++j)
            acc += dft.roots()[(j * k) % N] * input[j];
        out[k] = acc;
    }
    return out;
}

struct MaxDiff {
    double value = 0.0;
    std::size_t index = 0;
};

/// Entry-wise max |a_i - b_i| and where it occurs.
inline MaxDiff max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
    MaxDiff out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d > out.value) {
            out.value = d;
            out.index = i;
        }
    }
    return out;
}

struct TableMismatch {
    int row = 0;
    int col = 0;
    Complex transcribed;
    Complex computed;
};

/// Fixed transcription of the published three-field coefficient matrix,
/// entry (r, c) stored as the omega exponent of the printed value (a sign
/// flip is an exponent offset of 4). Row 2, column 7 is reproduced exactly
/// as printed even though it disagrees with omega^{r*c}.
inline const std::array<std::array<int, 8>, 8>& transcribed_three_field_table() {
    static const std::array<std::array<int, 8>, 8> table = {{
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 2, 3, 4, 5, 6, 7},
        {0, 2, 4, 6, 0, 2, 4, 2},
        {0, 3, 6, 1, 4, 7, 2, 5},
        {0, 4, 0, 4, 0, 4, 0, 4},
        {0, 5, 2, 7, 4, 1, 6, 3},
        {0, 6, 4, 2, 0, 6, 4, 2},
        {0, 7, 6, 5, 4, 3, 2, 1},
    }};
    return table;
}

/// Diffs the transcription against the computed n = 3 matrix and returns
/// every entry whose deviation exceeds the tolerance.
inline std::vector<TableMismatch> transcribed_matrix_mismatches(double tolerance) {
    const DftMatrix dft(3);
    const auto& table = transcribed_three_field_table();
    std::vector<TableMismatch> mismatches;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            const Complex printed = dft.roots()[static_cast<std::size_t>(table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])];
            const Complex computed = dft.entry(r, c);
            if (std::abs(printed - computed) > tolerance)
                mismatches.push_back(TableMismatch{r, c, printed, computed});
        }
    }
    return mismatches;
}

}  // namespace pqft
