#include "doctest.h"

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "persort/errors.hpp"
#include "persort/permutation.hpp"

using namespace persort;

namespace {

SignedPermutation P(std::vector<int> v) { return SignedPermutation(std::move(v)); }

std::set<oracle::Set> as_sets(const std::vector<CommonInterval>& cis) {
	std::set<oracle::Set> out;
	for (const CommonInterval& ci : cis) {
		const ValueSet v = to_value_set(ci);
		out.insert(oracle::Set(v.begin(), v.end()));
	}
	return out;
}

} // namespace

TEST_CASE("signed permutation construction and parsing") {
	CHECK(P({1, -3, -2}).size() == 3);
	CHECK_THROWS_AS(P({}), ParseError);
	CHECK_THROWS_AS(P({1, 1}), ParseError);
	CHECK_THROWS_AS(P({1, 3}), ParseError);
	CHECK_THROWS_AS(P({0, 1}), ParseError);
	CHECK(parse_permutation("1 -3 -2 5 4 6") == P({1, -3, -2, 5, 4, 6}));
	CHECK(parse_permutation("+2, -1") == P({2, -1}));
	CHECK_THROWS_AS(parse_permutation("1 2 2"), ParseError);
	CHECK_THROWS_AS(parse_permutation("1 x"), ParseError);
	CHECK_THROWS_AS(parse_permutation(""), ParseError);
	CHECK(format_permutation(P({1, -3, -2})) == "1 -3 -2");
	CHECK(parse_permutation(format_permutation(P({-4, 2, -1, 3}))) == P({-4, 2, -1, 3}));
}

TEST_CASE("apply_reversal") {
	CHECK(apply_reversal(P({1, -4, -5, 2, -3, 6}), {3, 5}) == P({1, -4, 3, -2, 5, 6}));
	CHECK(apply_reversal(P({3, 1, -4, -2}), {1, 2}) == P({-1, -3, -4, -2}));
	CHECK_THROWS_AS(apply_reversal(P({1, 2}), {2, 3}), std::out_of_range);
	CHECK_THROWS_AS(apply_reversal(P({1, 2}), {2, 1}), std::out_of_range);
	CHECK_THROWS_AS(apply_reversal(P({1, 2}), {0, 1}), std::out_of_range);

	Rng rng(11);
	for (int trial = 0; trial < 200; ++trial) {
		const int n = 1 + static_cast<int>(rng.below(12));
		const SignedPermutation s = random_signed_permutation(n, rng);
		const int lo = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
		const int hi = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - lo + 1)));
		CHECK(apply_reversal(apply_reversal(s, {lo, hi}), {lo, hi}) == s);
		CHECK(apply_reversal(s, {lo, hi}).values().size() == static_cast<std::size_t>(n));
		const std::vector<int> expect = oracle::reverse_range({s.values().begin(), s.values().end()}, lo, hi);
		CHECK(apply_reversal(s, {lo, hi}) == P(expect));
	}
}

TEST_CASE("apply_scenario") {
	CHECK(apply_scenario(P({1, -4, -5, 2, -3, 6}), Scenario{{{3, 5}, {2, 4}, {3, 3}}}) == SignedPermutation::identity(6));
	CHECK(apply_scenario(P({2, -1}), Scenario{}) == P({2, -1}));
	// Example 3: content sets {2,3},{4,5},{4},{5}.
	CHECK(apply_scenario(P({1, -3, -2, 5, 4, 6}), Scenario{{{2, 3}, {4, 5}, {4, 4}, {5, 5}}}) ==
	      SignedPermutation::identity(6));
	CHECK_THROWS_AS(apply_scenario(P({1, 2}), Scenario{{{1, 1}, {1, 5}}}), std::out_of_range);
}

TEST_CASE("common intervals") {
	const auto ex2 = as_sets(common_intervals(P({1, -3, -2, 5, 4, 6})));
	const std::set<oracle::Set> expect{{2, 3},          {1, 2, 3},          {4, 5},
	                                   {4, 5, 6},       {2, 3, 4, 5},       {2, 3, 4, 5, 6},
	                                   {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6}, {1},
	                                   {2},             {3},                {4},
	                                   {5},             {6}};
	CHECK(ex2 == expect);
	CHECK(common_intervals(SignedPermutation::identity(7)).size() == 28);
	CHECK(common_intervals(P({2, 4, 1, 3})).size() == 5);
}

TEST_CASE("common intervals agree with the window oracle") {
	for (int n = 1; n <= 7; ++n) {
		oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
			const auto got = common_intervals(p);
			REQUIRE(as_sets(got) == oracle::common_intervals(p));
			for (const CommonInterval& ci : got) {
				CHECK(ci.vmax - ci.vmin == ci.hi - ci.lo);
			}
		});
	}
	Rng rng(5);
	for (int trial = 0; trial < 50; ++trial) {
		const SignedPermutation s = random_signed_permutation(30, rng);
		CHECK(as_sets(common_intervals(s)) == oracle::common_intervals(oracle::magnitudes(s)));
	}
}

TEST_CASE("intervals_commute") {
	CHECK(intervals_commute({2, 3}, {1, 2, 3}));
	CHECK_FALSE(intervals_commute({1, 2, 3}, {2, 3, 4, 5}));
	CHECK(intervals_commute({2, 3}, {4, 5}));
	CHECK(intervals_commute({4}, {4}));
}

TEST_CASE("simple permutations") {
	CHECK(is_simple(std::vector<int>{3, 1, 4, 2}));
	CHECK(is_simple(std::vector<int>{2, 4, 1, 3}));
	CHECK_FALSE(is_simple(std::vector<int>{1, 2, 3}));
	std::map<int, int> count;
	for (int n = 2; n <= 7; ++n) {
		oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
			const bool simple = is_simple(p);
			CHECK(simple == oracle::is_simple(p));
			CHECK(simple == (common_intervals(p).size() == p.size() + 1));
			count[n] += simple;
		});
	}
	CHECK(count[3] == 0);
	CHECK(count[4] == 2);
	CHECK(count[5] == 6);
}

TEST_CASE("classify_sorted") {
	CHECK(classify_sorted(SignedPermutation::identity(6)) == SortedState::Identity);
	CHECK(classify_sorted(P({-6, -5, -4, -3, -2, -1})) == SortedState::ReversedIdentity);
	CHECK(classify_sorted(P({1, -3, -2, 5, 4, 6})) == SortedState::Neither);
	CHECK(SignedPermutation::reversed_identity(6) == P({-6, -5, -4, -3, -2, -1}));
}

TEST_CASE("random signed permutations are uniform and deterministic") {
	CHECK_THROWS_AS(random_signed_permutation(0, 1), std::invalid_argument);
	CHECK(random_signed_permutation(40, 99) == random_signed_permutation(40, 99));
	CHECK_FALSE(random_signed_permutation(40, 99) == random_signed_permutation(40, 100));

	// n = 2: chi-square over the 8 outcomes, 10^5 draws, 7 degrees of freedom.
	{
		std::map<std::vector<int>, int> freq;
		Rng rng(2024);
		const int draws = 100000;
		for (int i = 0; i < draws; ++i) {
			const SignedPermutation s = random_signed_permutation(2, rng);
			++freq[{s.values().begin(), s.values().end()}];
		}
		CHECK(freq.size() == 8);
		double chi = 0;
		for (const auto& [k, c] : freq) chi += std::pow(c - draws / 8.0, 2) / (draws / 8.0);
		CHECK(chi < 24.3);  // p = 0.001
	}
	// n <= 3: every outcome within 3 standard deviations over 10^6 draws.
	for (int n = 1; n <= 3; ++n) {
		std::map<std::vector<int>, int> freq;
		Rng rng(77 + static_cast<std::uint64_t>(n));
		const int draws = 1000000;
		for (int i = 0; i < draws; ++i) {
			const SignedPermutation s = random_signed_permutation(n, rng);
			++freq[{s.values().begin(), s.values().end()}];
		}
		const int outcomes = n == 1 ? 2 : n == 2 ? 8 : 48;
		CHECK(freq.size() == static_cast<std::size_t>(outcomes));
		const double p = 1.0 / outcomes;
		const double sd = std::sqrt(draws * p * (1 - p));
		for (const auto& [k, c] : freq) CHECK(std::abs(c - draws * p) < 3.0 * sd);
	}
}
