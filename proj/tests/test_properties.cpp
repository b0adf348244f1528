#include <gtest/gtest.h>

#include "support/properties.hpp"

using namespace fracrev::testing;

namespace {
constexpr int kCases = 100;
}

class PropertySuite : public ::testing::TestWithParam<std::size_t> {};

TEST_P(PropertySuite, TransformUnitarity) { EXPECT_EQ(check_transform_unitarity(GetParam(), kCases, 1), 0); }
TEST_P(PropertySuite, NormConservation) { EXPECT_EQ(check_norm_conservation(GetParam(), kCases, 2), 0); }
TEST_P(PropertySuite, MirrorCommutesWithHamiltonian) { EXPECT_EQ(check_mirror_commutation(GetParam(), kCases, 3), 0); }
TEST_P(PropertySuite, GaussianReflectCovariance) { EXPECT_EQ(check_gwp_reflect_covariance(GetParam(), kCases, 4), 0); }
TEST_P(PropertySuite, FidelityBounds) { EXPECT_EQ(check_fidelity_bounds(GetParam(), kCases, 5), 0); }

INSTANTIATE_TEST_SUITE_P(Sizes, PropertySuite, ::testing::ValuesIn(property_sizes()),
                         [](const auto& info) { return "N" + std::to_string(info.param); });
