/*******************************************************
 * Signed permutations, reversals and scenarios.
 *
 * A signed permutation of size n is a sequence of nonzero
 * integers whose absolute values are exactly {1..n}.
 * Positions are 1-based throughout the library.
 *
 * A common interval is a set of values that occupies
 * consecutive positions and is itself a run of consecutive
 * integers. Since every common interval is a value range,
 * it is stored as both a position window and a value window.
 *******************************************************/

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persort/rng.hpp"

namespace persort {

class SignedPermutation {
public:
	// Throws ParseError when the values are not a signed permutation.
	explicit SignedPermutation(std::vector<int> values);

	static SignedPermutation identity(int n);
	static SignedPermutation reversed_identity(int n);

	int size() const { return static_cast<int>(values_.size()); }
	// 1-based access.
	int at(int pos) const { return values_[static_cast<std::size_t>(pos - 1)]; }
	std::span<const int> values() const { return values_; }

	// Absolute values, i.e. the underlying unsigned permutation.
	std::vector<int> unsigned_values() const;

	bool operator==(const SignedPermutation&) const = default;

private:
	std::vector<int> values_;
};

// Reversal of the positions lo..hi (inclusive) at the time of application.
struct Reversal {
	int lo = 1;
	int hi = 1;
	int length() const { return hi - lo + 1; }
	bool operator==(const Reversal&) const = default;
};

struct Scenario {
	std::vector<Reversal> steps;
	int length() const { return static_cast<int>(steps.size()); }
	bool operator==(const Scenario&) const = default;
};

enum class SortedState { Identity, ReversedIdentity, Neither };

// A common interval: positions lo..hi hold exactly the values vmin..vmax.
struct CommonInterval {
	int lo;
	int hi;
	int vmin;
	int vmax;
	int length() const { return hi - lo + 1; }
	bool operator==(const CommonInterval&) const = default;
};

// Sorted set of absolute values.
using ValueSet = std::vector<int>;

// Throws std::out_of_range when r is outside 1..n.
SignedPermutation apply_reversal(const SignedPermutation& sigma, Reversal r);
SignedPermutation apply_scenario(const SignedPermutation& sigma, const Scenario& s);

// Content (sorted absolute values) of positions lo..hi.
ValueSet content(const SignedPermutation& sigma, Reversal r);

// All common intervals, singletons and the full set included. Ordered by
// right end, then by decreasing length. O(n^2).
std::vector<CommonInterval> common_intervals(const SignedPermutation& sigma);
std::vector<CommonInterval> common_intervals(std::span<const int> values);

ValueSet to_value_set(const CommonInterval& ci);

// True iff one set contains the other or they are disjoint.
bool intervals_commute(const ValueSet& a, const ValueSet& b);

// Unsigned permutation given as values 1..k in any order.
bool is_simple(std::span<const int> pi);

SortedState classify_sorted(const SignedPermutation& sigma);

SignedPermutation random_signed_permutation(int n, Rng& rng);
SignedPermutation random_signed_permutation(int n, std::uint64_t seed);

// Whitespace-separated signed integers; "+3" is accepted.
SignedPermutation parse_permutation(std::string_view text);
std::string format_permutation(const SignedPermutation& sigma);

} // namespace persort
