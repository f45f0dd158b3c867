#include "agora/schedule.hpp"

#include <random>

#include "agora/errors.hpp"
#include "agora/hash.hpp"

namespace agora {

SpeakingSchedule randomize_speaking_order(const std::vector<std::string>& proponent_ids,
                                          const std::vector<std::string>& opponent_ids,
                                          int turns, int slots_per_side, std::uint64_t seed) {
  if (proponent_ids.empty() || opponent_ids.empty()) {
    throw ConfigError("speaking order requires at least one agent per side");
  }
  if (turns < 1 || slots_per_side < 1) {
    throw ConfigError("speaking order requires positive turn and slot counts");
  }

  std::mt19937_64 rng(splitmix64(seed));
  const bool proponent_first = (rng() >> 32 & 1) == 0;

  std::size_t pro_next = 0;
  std::size_t opp_next = 0;
  auto take_pro = [&] {
    SpeakingSlot s{proponent_ids[pro_next], Side::Proponent};
    pro_next = (pro_next + 1) % proponent_ids.size();
    return s;
  };
  auto take_opp = [&] {
    SpeakingSlot s{opponent_ids[opp_next], Side::Opponent};
    opp_next = (opp_next + 1) % opponent_ids.size();
    return s;
  };

  SpeakingSchedule schedule;
  schedule.turns.resize(turns);
  for (int t = 0; t < turns; t++) {
    auto& slots = schedule.turns[t];
    slots.reserve(2 * slots_per_side);
    for (int s = 0; s < slots_per_side; s++) {
      if (proponent_first) {
        slots.push_back(take_pro());
        slots.push_back(take_opp());
      } else {
        slots.push_back(take_opp());
        slots.push_back(take_pro());
      }
    }
  }
  return schedule;
}

}  // namespace agora
