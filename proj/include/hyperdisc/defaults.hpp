#pragma once

#include <cstdint>

namespace hyperdisc::defaults {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr double kAlpha = 1.0;
inline constexpr std::uint64_t kNumWalks = 250000;
inline constexpr int kWalkLength = 20;
inline constexpr int kWindow = 8;
inline constexpr int kDimension = 200;
inline constexpr int kEpochs = 5;
inline constexpr int kNegatives = 5;
inline constexpr double kLearningRate = 0.025;
inline constexpr int kMinCount = 1;
inline constexpr int kTopK = 50;
inline constexpr int kMemory = 5;

}  // namespace hyperdisc::defaults
