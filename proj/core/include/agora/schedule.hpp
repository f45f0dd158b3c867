#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agora/types.hpp"

namespace agora {

struct SpeakingSlot {
  std::string agent_id;
  Side side = Side::Proponent;

  bool operator==(const SpeakingSlot&) const = default;
};

// Per-turn slot order for a whole debate. Within a turn each side owns
// exactly slots_per_side slots and the two sides strictly alternate;
// which side leads is a fair coin from the seeded generator and stays
// fixed for the debate. Within a side the slots rotate round-robin over
// that side's agents, carrying the rotation across turns.
struct SpeakingSchedule {
  std::vector<std::vector<SpeakingSlot>> turns;
};

SpeakingSchedule randomize_speaking_order(const std::vector<std::string>& proponent_ids,
                                          const std::vector<std::string>& opponent_ids,
                                          int turns, int slots_per_side, std::uint64_t seed);

}  // namespace agora
