#include "linkcap/rng.hpp"

#include <array>

namespace linkcap {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng make_stream(std::uint64_t base, std::uint64_t index) {
    const std::uint64_t s = derive_seed(base, index);
    std::array<std::uint32_t, 4> words{
        static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

}  // namespace linkcap
