#pragma once

#include <cstdint>
#include <random>

namespace persort {

// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
	return splitmix64(master ^ splitmix64(trial));
}

// Thin wrapper over mt19937_64. Bounded draws use Lemire's method instead of
// std::uniform_int_distribution so that streams are identical across
// standard libraries.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : engine_(seed) {}

	std::uint64_t next() { return engine_(); }

	// Uniform in [0, bound), bound > 0.
	std::uint64_t below(std::uint64_t bound) {
		unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
		auto low = static_cast<std::uint64_t>(m);
		if (low < bound) {
			const std::uint64_t threshold = -bound % bound;
			while (low < threshold) {
				m = static_cast<unsigned __int128>(engine_()) * bound;
				low = static_cast<std::uint64_t>(m);
			}
		}
		return static_cast<std::uint64_t>(m >> 64);
	}

	bool coin() { return (engine_() >> 63) != 0; }

private:
	std::mt19937_64 engine_;
};

} // namespace persort
