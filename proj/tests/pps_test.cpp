#include "pqft/pps.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace pqft;

namespace {

// Independent slot-wise sum of base sequences: repeats each base table
// `counts` times and adds numerators modulo the denominator, without going
// through SequenceFamily::combine.
std::vector<int> pointwise_combine(const SequenceFamily& family, const MultiplicityVector& v) {
    std::vector<int> out(static_cast<std::size_t>(family.slot_count()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto base = family.numerators(family.base_ids()[i]);
        for (int rep = 0; rep < v.counts[i]; ++rep)
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = (out[k] + base[k]) % family.denominator();
    }
    return out;
}

// Brute-force collision scan over every multiplicity vector of total degree
// at most `degree`, comparing full combined tables.
bool brute_force_collision_free(const SequenceFamily& family, int degree) {
    const int n = family.field_count();
    std::set<std::vector<int>> seen;
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    bool ok = true;
    auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (!ok) return;
        if (pos == counts.size()) {
            if (!seen.insert(pointwise_combine(family, MultiplicityVector(counts))).second) ok = false;
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
        counts[pos] = 0;
    };
    recurse(recurse, 0, degree);
    return ok;
}

}  // namespace

TEST(UnitPhase, QuarterTurnsAreExact) {
    EXPECT_EQ(unit_phase(0, 8), Complex(1, 0));
    EXPECT_EQ(unit_phase(2, 8), Complex(0, 1));
    EXPECT_EQ(unit_phase(4, 8), Complex(-1, 0));
    EXPECT_EQ(unit_phase(6, 8), Complex(0, -1));
    EXPECT_EQ(unit_phase(-2, 8), Complex(0, -1));
    EXPECT_EQ(unit_phase(1, 2), Complex(-1, 0));
}

TEST(UnitPhase, OppositeSlotsCancelExactly) {
    for (int den : {8, 12, 64}) {
        for (int r = 0; r < den; ++r)
            EXPECT_EQ(unit_phase(r, den) + unit_phase(r + den / 2, den), Complex(0, 0)) << "den=" << den << " r=" << r;
    }
}

TEST(FourierFamily, PhaseTableIsExactRational) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_EQ(family.denominator(), 8);
    EXPECT_EQ(family.alphabet_modulus(), 8);
    EXPECT_EQ(family.numerators(1), (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(family.numerators(2), (std::vector<int>{0, 2, 4, 6, 0, 2, 4, 6}));
    // Re-deriving a table is bit-identical.
    EXPECT_EQ(family.numerators(3), family.numerators(3));
}

TEST(FourierFamily, RejectsInvalidInput) {
    EXPECT_THROW(make_fourier_family(8, {1, 1, 2}), std::invalid_argument);
    EXPECT_THROW(make_fourier_family(8, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(make_fourier_family(8, {1, 2, 8}), std::invalid_argument);
    EXPECT_THROW(make_fourier_family(1, {0}), std::invalid_argument);
}

TEST(FourierFamily, CollisionPreflight) {
    const auto good = make_fourier_family(64, {1, 4, 16});
    EXPECT_TRUE(good.collision_free());
    EXPECT_EQ(good.collision_free(3), brute_force_collision_free(good, 3));
    EXPECT_NO_THROW(good.require_collision_free());

    // 3 * id 2 lands on id 6, the same as 1 + 2 + 3.
    const auto bad = make_fourier_family(8, {1, 2, 3});
    EXPECT_FALSE(bad.collision_free());
    EXPECT_EQ(bad.collision_free(3), brute_force_collision_free(bad, 3));
    EXPECT_THROW(bad.require_collision_free(), std::domain_error);
    EXPECT_TRUE(bad.collision_free(1));
}

TEST(FourierFamily, CollisionFreeIdHelper) {
    for (int n = 1; n <= 5; ++n) {
        const auto family = make_fourier_family(collision_free_slot_count(n), collision_free_ids(n));
        EXPECT_TRUE(family.collision_free()) << "n=" << n;
    }
    EXPECT_EQ(collision_free_ids(3), (std::vector<int>{1, 4, 16}));
    EXPECT_EQ(collision_free_slot_count(3), 64);
}

TEST(MseqFamily, BinaryConstruction) {
    const auto family = make_mseq_family(2, 3, {1, 0, 1, 1}, {0, 1, 2});
    EXPECT_EQ(family.slot_count(), 7);
    EXPECT_EQ(family.denominator(), 2);
    const auto nums = family.numerators(0);
    EXPECT_EQ(std::count(nums.begin(), nums.end(), 1), 4);
    EXPECT_EQ(std::count(nums.begin(), nums.end(), 0), 3);
    // Shifts rotate the same stream.
    const auto shifted = family.numerators(2);
    for (int k = 0; k < 7; ++k)
        EXPECT_EQ(shifted[static_cast<std::size_t>(k)], nums[static_cast<std::size_t>((k + 2) % 7)]);
}

TEST(MseqFamily, TernaryConstruction) {
    const auto family = make_mseq_family(3, 2, {1, 1, 2}, {0, 1, 2});
    EXPECT_EQ(family.slot_count(), 8);
    const auto nums = family.numerators(0);
    EXPECT_EQ(std::count(nums.begin(), nums.end(), 0), 2);
    EXPECT_EQ(std::count(nums.begin(), nums.end(), 1), 3);
    EXPECT_EQ(std::count(nums.begin(), nums.end(), 2), 3);
}

TEST(MseqFamily, RejectsNonPrimitivePolynomial) {
    // x^3 + 1 factors, period 3 < 7.
    EXPECT_THROW(make_mseq_family(2, 3, {1, 0, 0, 1}, {0}), std::invalid_argument);
    // x^2 + 1 is irreducible over GF(3) but its root has order 4 < 8.
    EXPECT_THROW(make_mseq_family(3, 2, {1, 0, 1}, {0}), std::invalid_argument);
    EXPECT_THROW(make_mseq_family(4, 2, {1, 0, 1}, {0}), std::invalid_argument);  // p not prime
    EXPECT_THROW(make_mseq_family(2, 3, {1, 0, 1}, {0}), std::invalid_argument);  // wrong length
}

TEST(Combine, ZeroVectorGivesZeroSequence) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    const auto nums = family.combine(MultiplicityVector::zeros(3));
    EXPECT_EQ(nums, std::vector<int>(8, 0));
}

TEST(Combine, MatchesIdSum) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_EQ(family.combine(MultiplicityVector::ones(3)), family.numerators(6));
}

TEST(Combine, MatchesPointwiseAdditionOracle) {
    const auto family = make_fourier_family(64, {1, 4, 16});
    const MultiplicityVector v(std::vector<int>{2, 1, 0});
    const auto combined = family.combine(v);
    EXPECT_EQ(combined, pointwise_combine(family, v));
    EXPECT_EQ(combined, family.numerators(6));

    const auto mseq = make_mseq_family(3, 2, {1, 1, 2}, {0, 1, 2});
    for (const auto& counts : {std::vector<int>{1, 1, 1}, std::vector<int>{2, 0, 1}, std::vector<int>{0, 3, 0}}) {
        const MultiplicityVector mv(counts);
        EXPECT_EQ(mseq.combine(mv), pointwise_combine(mseq, mv));
    }
}

TEST(Combine, RejectsLengthMismatch) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_THROW(family.combine(MultiplicityVector::zeros(2)), std::invalid_argument);
    EXPECT_THROW(family.combine(MultiplicityVector(std::vector<int>{1, -1, 0})), std::invalid_argument);
}

TEST(Combine, ClosureUnderAddition) {
    std::mt19937 rng(42);
    for (const auto& family :
         {make_fourier_family(64, {1, 4, 16}), make_mseq_family(3, 2, {1, 1, 2}, {0, 1, 2})}) {
        const int n = family.field_count();
        for (int trial = 0; trial < 20; ++trial) {
            MultiplicityVector u = MultiplicityVector::zeros(n);
            MultiplicityVector v = MultiplicityVector::zeros(n);
            MultiplicityVector sum = MultiplicityVector::zeros(n);
            for (int i = 0; i < n; ++i) {
                u.counts[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 2);
                v.counts[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 2);
                sum.counts[static_cast<std::size_t>(i)] =
                    u.counts[static_cast<std::size_t>(i)] + v.counts[static_cast<std::size_t>(i)];
            }
            const auto cu = family.combine(u);
            const auto cv = family.combine(v);
            const auto cs = family.combine(sum);
            for (int k = 0; k < family.slot_count(); ++k) {
                const auto i = static_cast<std::size_t>(k);
                EXPECT_EQ((cu[i] + cv[i]) % family.denominator(), cs[i]);
            }
        }
    }
}

TEST(Orthogonality, FourierIsKroneckerDelta) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_EQ(family.correlation(1, 1), Complex(1, 0));
    EXPECT_LE(std::abs(family.correlation(1, 2)), 1e-12);
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const Complex target = a == b ? Complex(1, 0) : Complex(0, 0);
            EXPECT_LE(std::abs(family.correlation(a, b) - target), 1e-12) << "a=" << a << " b=" << b;
        }
    }
    EXPECT_THROW(family.correlation(0, 8), std::invalid_argument);
}

TEST(Orthogonality, MseqCrossCorrelationIsOneOverM) {
    const auto family = make_mseq_family(2, 3, {1, 0, 1, 1}, {0, 1, 2});
    EXPECT_EQ(family.correlation(0, 0), Complex(1, 0));
    EXPECT_LE(std::abs(family.correlation(0, 1)), 1.0 / 7.0 + 1e-12);
    EXPECT_NEAR(std::abs(family.correlation(0, 1)), 1.0 / 7.0, 1e-12);
}

TEST(Balance, FourierVanishesForAnyTheta) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_LE(std::abs(family.balance_sum(1, 0.0)), 1e-12);
    EXPECT_LE(std::abs(family.balance_sum(1, std::numbers::pi / 3.0)), 1e-12);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> theta(0.0, 2.0 * std::numbers::pi);
    for (int j = 1; j < 8; ++j)
        for (int trial = 0; trial < 10; ++trial)
            EXPECT_LE(std::abs(family.balance_sum(j, theta(rng))), 1e-12) << "j=" << j;
}

TEST(Balance, ZeroSequenceIsExcluded) {
    const auto family = make_fourier_family(8, {1, 2, 3});
    EXPECT_THROW(family.balance_sum(0, 0.0), std::invalid_argument);
}

TEST(Balance, MseqResidualIsExactlyOne) {
    const auto binary = make_mseq_family(2, 3, {1, 0, 1, 1}, {0, 1, 2});
    const Complex sum = binary.balance_sum(0, 0.0);
    EXPECT_EQ(sum, Complex(-1, 0));  // 3 zeros and 4 ones: 3 - 4
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> theta(0.0, 2.0 * std::numbers::pi);
    for (int j = 0; j < 7; ++j)
        for (int trial = 0; trial < 3; ++trial)
            EXPECT_NEAR(std::abs(binary.balance_sum(j, theta(rng))), 1.0, 1e-9);

    const auto ternary = make_mseq_family(3, 2, {1, 1, 2}, {0, 1, 2});
    EXPECT_NEAR(std::abs(ternary.balance_sum(0, 0.0)), 1.0, 1e-9);
}

TEST(MultiplicityVectorType, Helpers) {
    EXPECT_EQ(MultiplicityVector::unit(3, 1).counts, (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(MultiplicityVector::ones(3).degree(), 3);
    EXPECT_THROW(MultiplicityVector::unit(3, 4), std::out_of_range);
    EXPECT_LT(MultiplicityVector::zeros(2), MultiplicityVector::ones(2));
}
