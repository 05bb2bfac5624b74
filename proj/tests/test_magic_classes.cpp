#include "fibercone/magic_classes.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fibercone;

namespace {

IntegralClass xyz(long x, long y, long z) { return {x, y, z}; }

} // namespace

TEST(MagicClasses, PlusToXyzExamples)
{
    EXPECT_EQ(plus_to_xyz(PlusClass(1, 2, 1)), xyz(2, 4, 1));
    EXPECT_EQ(plus_to_xyz(PlusClass(1, 8, 4)), xyz(5, 13, 1));
    EXPECT_EQ(plus_to_xyz(PlusClass(0, 1, 0)), xyz(0, 1, 0));
    EXPECT_THROW(PlusClass(-1, 0, 1), DomainError);
}

TEST(MagicClasses, ConeMembership)
{
    EXPECT_TRUE(in_fibered_cone(xyz(2, 4, 1)));
    EXPECT_TRUE(in_fibered_cone(xyz(1, 1, 0)));
    EXPECT_FALSE(in_fibered_cone(xyz(1, 1, 1)));
    EXPECT_FALSE(in_fibered_cone(xyz(0, 1, 0)));
}

TEST(MagicClasses, NormExamples)
{
    EXPECT_EQ(thurston_norm(xyz(2, 4, 1)), 5);
    EXPECT_EQ(thurston_norm(xyz(5, 13, 1)), 17);
    EXPECT_EQ(thurston_norm(xyz(1, 1, 0)), 2);
    EXPECT_THROW(thurston_norm(xyz(0, 1, 0)), DomainError);
    EXPECT_THROW(thurston_norm(xyz(1, 1, 1)), DomainError);
}

TEST(MagicClasses, FiberInvariantExamples)
{
    auto a = fiber_invariants(xyz(2, 4, 1));
    EXPECT_EQ(a.norm, 5);
    EXPECT_EQ(a.boundary_count, 3);
    EXPECT_EQ(a.genus, 2);
    EXPECT_EQ(a.per_torus, (std::array<Integer, 3>{1, 1, 1}));

    auto b = fiber_invariants(xyz(5, 13, 1));
    EXPECT_EQ(b.norm, 17);
    EXPECT_EQ(b.per_torus, (std::array<Integer, 3>{1, 1, 1}));
    EXPECT_EQ(b.genus, 8);

    auto c = fiber_invariants(xyz(1, 1, 0));
    EXPECT_EQ(c.norm, 2);
    EXPECT_EQ(c.per_torus, (std::array<Integer, 3>{1, 1, 2}));
    EXPECT_EQ(c.boundary_count, 4);
    EXPECT_EQ(c.genus, 0);

    EXPECT_THROW(fiber_invariants(xyz(2, 4, 2)), DomainError);
    EXPECT_THROW(fiber_invariants(xyz(0, 1, 0)), DomainError);
}

TEST(MagicClasses, Primitivity)
{
    EXPECT_TRUE(is_primitive(xyz(2, 4, 1)));
    EXPECT_FALSE(is_primitive(xyz(2, 4, 2)));
    EXPECT_FALSE(is_primitive(xyz(0, 0, 0)));
}

TEST(MagicClasses, ProjectivizeExamples)
{
    EXPECT_EQ(projectivize(xyz(2, 4, 1)), (ProjectiveClass{Rational(2, 5), Rational(4, 5), Rational(1, 5)}));
    EXPECT_EQ(projectivize(xyz(1, 1, 0)), (ProjectiveClass{Rational(1, 2), Rational(1, 2), Rational(0)}));
    EXPECT_THROW(projectivize(xyz(0, 1, 0)), DomainError);
}

TEST(MagicClasses, FamilyLimits)
{
    EXPECT_EQ(projective_limit_family(3, 2), (ProjectiveClass{0, 1, 0}));
    EXPECT_EQ(projective_limit_family(1, 2), (ProjectiveClass{Rational(1, 2), Rational(1, 2), 0}));
    EXPECT_EQ(projective_limit_family(2, 2), (ProjectiveClass{Rational(1, 3), Rational(2, 3), 0}));
    EXPECT_THROW(projective_limit_family(0, 2), DomainError);
}

TEST(MagicClassesProperty, NormIsHomogeneous)
{
    for (long x = 1; x <= 9; ++x)
        for (long y = 1; y <= 9; ++y)
            for (long z = -9; z < std::min(x, y); ++z)
                for (long m = 1; m <= 5; ++m)
                    EXPECT_EQ(thurston_norm(Integer(m) * xyz(x, y, z)), m * thurston_norm(xyz(x, y, z)));
}

TEST(MagicClassesProperty, PlusImageInConeIffKPositive)
{
    for (long i = 0; i <= 6; ++i)
        for (long j = 0; j <= 6; ++j)
            for (long k = 0; k <= 6; ++k)
                EXPECT_EQ(in_fibered_cone(plus_to_xyz(PlusClass(i, j, k))), k >= 1) << i << ' ' << j << ' ' << k;
}

TEST(MagicClassesProperty, ParityOnExhaustiveGrid)
{
    std::size_t checked = 0;
    for (long x = -20; x <= 20; ++x)
        for (long y = -20; y <= 20; ++y)
            for (long z = -20; z <= 20; ++z) {
                const IntegralClass c = xyz(x, y, z);
                if (!in_fibered_cone(c) || !is_primitive(c))
                    continue;
                const auto inv = fiber_invariants(c);
                ASSERT_EQ((inv.norm - inv.boundary_count) % 2, 0) << c;
                ASSERT_EQ(inv.norm, 2 * inv.genus - 2 + inv.boundary_count) << c;
                ++checked;
            }
    EXPECT_GT(checked, 1000u);
}

TEST(MagicClassesProperty, ProjectiveClassLiesOnNormOnePlane)
{
    for (long x = 1; x <= 12; ++x)
        for (long y = 1; y <= 12; ++y)
            for (long z = -12; z < std::min(x, y); ++z) {
                const auto p = projectivize(xyz(x, y, z));
                EXPECT_EQ(p.x + p.y - p.z, 1);
            }
}

TEST(MagicClassesProperty, FamiliesConvergeToTheirLimits)
{
    const std::pair<unsigned, unsigned> families[] = {{1, 2}, {2, 1}, {2, 2}, {3, 2}, {2, 3}, {1, 3}, {3, 1}};
    for (auto [p, q] : families) {
        const auto limit = projective_limit_family(p, q);
        const unsigned gap = p == q ? 1 : std::min({p, q, p > q ? p - q : q - p});
        for (long n : {10L, 100L, 1000L, 10000L}) {
            const auto pc = projectivize(plus_to_xyz(family_member(n, p, q)));
            const double bound = 10.0 / std::pow(static_cast<double>(n), gap);
            EXPECT_LT(std::abs(to_double(pc.x - limit.x)), bound) << p << ',' << q << " n=" << n;
            EXPECT_LT(std::abs(to_double(pc.y - limit.y)), bound) << p << ',' << q << " n=" << n;
            EXPECT_LT(std::abs(to_double(pc.z - limit.z)), bound) << p << ',' << q << " n=" << n;
        }
    }
}

TEST(MagicClassesProperty, LargeFamilyMembersStayExact)
{
    // n = 10^4, q = 4: coordinates near 10^16 and products well past 64 bits.
    const auto c = plus_to_xyz(family_member(10000, 4, 4));
    const auto inv = fiber_invariants(c);
    EXPECT_EQ(inv.norm, 3 * pow(Integer(10000), 4) + 1);
    EXPECT_EQ((inv.norm - inv.boundary_count) % 2, 0);
}
