#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace agora {

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  bool operator==(const Hash128&) const = default;
};

// MurmurHash3 x64 128-bit. Stable across platforms and runs, which is what
// run ids and derived seeds rely on.
Hash128 murmur3_x64_128(std::string_view data, std::uint64_t seed = 0);

// 32 lowercase hex characters.
std::string to_hex(const Hash128& h);

// SplitMix64 scrambler, used to decorrelate nearby integer seeds before
// feeding them to an mt19937_64.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace agora
