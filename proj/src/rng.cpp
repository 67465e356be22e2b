#include "amplest/rng.hpp"

namespace amplest {

std::uint64_t derive_key(std::uint64_t base, std::initializer_list<std::uint64_t> words) {
  std::uint64_t k = mix64(base);
  for (std::uint64_t w : words) k = mix64(k ^ mix64(w + CounterRng::kGolden));
  return k;
}

}  // namespace amplest
