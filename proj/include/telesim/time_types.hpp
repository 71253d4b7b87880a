#pragma once

#include <cstdint>

namespace telesim {

// Simulation time in integer nanoseconds. All scheduling is integral so
// that runs are bit-reproducible across platforms.
using SimTime = std::int64_t;

constexpr SimTime kNanosecond = 1;
constexpr SimTime kMicrosecond = 1000;
constexpr SimTime kMillisecond = 1000 * kMicrosecond;
constexpr SimTime kSecond = 1000 * kMillisecond;

constexpr SimTime microseconds(std::int64_t n) { return n * kMicrosecond; }
constexpr SimTime milliseconds(std::int64_t n) { return n * kMillisecond; }
constexpr SimTime seconds(std::int64_t n) { return n * kSecond; }

}  // namespace telesim
