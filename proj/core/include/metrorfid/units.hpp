#pragma once

#include <cstdint>

namespace metrorfid {

// Positions and lengths in meters, speeds in m/s, accelerations in m/s^2,
// grades in signed per-mille (positive = uphill), wheel speeds in rpm.

using TagCode = std::uint32_t;
using Tick = std::int64_t;

inline constexpr double kGravity = 9.81;
inline constexpr double kMaxLineSpeed = 55.56;  // 200 km/h
inline constexpr double kStandardGauge = 1.435;
inline constexpr double kMinCurveRadius = 30.0;
inline constexpr double kMaxGradePerMille = 60.0;

}  // namespace metrorfid
