#pragma once

// Population values frozen from an independent numerical evaluation of the
// closed forms (block algebra done with a separate linear-algebra stack).
// Unit: nats.

#include <array>

namespace gausspid::testing {

// Five-source benchmark.
inline constexpr double kFiveSourceSe2 = 3.7272219786711975;
inline constexpr double kFiveSourceSe3 = 3.2678378554825338;
inline constexpr double kFiveSourceSe4 = 0.34403402212999001;
inline constexpr double kFiveSourceSe5 = -0.89598270026000559;
inline constexpr double kFiveSourceTse = 6.4431111560237158;
inline constexpr double kFiveSourceSynPair12 = 3.1403020319218204;
inline constexpr double kFiveSourceSynPair35 = 0.24585837493209434;
inline constexpr double kFiveSourceSynTriple345 = 2.8528540507160334;
inline constexpr double kFiveSourceSynTriple123 = -0.091430948484157337;
inline constexpr std::array<double, 5> kFiveSourceUnique = {
    0.091119130818826388, 0.091119130818826388, 0.052694104861470414,
    0.052694104861470414, 0.040017345325813469};

// Two-source configurations: {red, un1, un2, syn}.
inline constexpr std::array<double, 4> kPureRedundancyDecomposition = {
    0.14384103622589045, 0.20273255405408219, 0.20273255405408219, 0.0};
inline constexpr std::array<double, 4> kPureUniqueDecomposition = {
    0.0, 0.34657359027997264, 0.0, 0.0};
inline constexpr std::array<double, 4> kPureSynergyDecomposition = {
    0.058891517828191756, 0.14384103622589045, 0.14384103622589045, 0.20273255405408219};
inline constexpr std::array<double, 4> kMixedCorrelatedDecomposition = {
    0.12447310149769106, 0.19244220020407177, 0.19244220020407177, 0.13110942082519744};
inline constexpr std::array<double, 4> kMixedAsymmetricDecomposition = {
    0.058891517828191756, 0.49041462650586309, 0.032269260568785596, 0.31430432971118705};

}  // namespace gausspid::testing
