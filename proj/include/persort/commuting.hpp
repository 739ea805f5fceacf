/*******************************************************
 * Commuting permutations: those whose strong interval tree
 * has no prime vertex. Their parsimonious perfect scenario
 * is unique as a set: one reversal for every vertex whose
 * sign differs from its parent's sign.
 *
 * Uniform generation goes through the tree bijection: a
 * uniform Schroder tree with n leaves, a uniform root sign
 * (which fixes the alternating linear kinds) and uniform
 * leaf signs give a uniform commuting signed permutation.
 *******************************************************/

#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "persort/permutation.hpp"
#include "persort/rng.hpp"
#include "persort/sit.hpp"

namespace persort {

using BigInt = boost::multiprecision::cpp_int;

struct ReversalProfile {
	int count = 0;
	// Lengths in scenario order.
	std::vector<int> lengths;
	int length_one_count = 0;
	int internal_vertices = 0;
	long long pathlength = 0;
	long long total_length() const;
};

bool is_commuting(const SignedPermutation& sigma);

// Reversals ordered by decreasing interval size (ties by smallest value).
// Throws DomainError when sigma is not commuting.
Scenario commuting_scenario(const SignedPermutation& sigma);
ReversalProfile reversal_profile(const SignedPermutation& sigma);

// Uniform integer in [0, bound), bound > 0.
BigInt uniform_below(const BigInt& bound, Rng& rng);

enum class SamplerMethod {
	// Internal-vertex count drawn from exact counts, then a uniform
	// Lukasiewicz word rotated by the cycle lemma. O(n) per draw.
	CycleLemma,
	// Root arity and subtree sizes drawn sequentially from exact forest
	// counts. O(n^3) table; intended for small n.
	Recursive,
};

// Uniform sampler for commuting signed permutations of one size. Count
// tables are built once by the constructor; sample() is const and may be
// called concurrently with distinct Rng objects.
class CommutingSampler {
public:
	explicit CommutingSampler(int n, SamplerMethod method = SamplerMethod::CycleLemma);

	int size() const { return n_; }
	SamplerMethod method() const { return method_; }

	// Unsigned Schroder tree shape: only children structure is meaningful.
	SitVertex sample_shape(Rng& rng) const;
	SitTree sample_tree(Rng& rng) const;
	SignedPermutation sample(Rng& rng) const;

private:
	SitVertex recursive_shape(int m, Rng& rng) const;

	int n_;
	SamplerMethod method_;
	// CycleLemma: weight_[m] = trees with m internal vertices, m = 0..n-1.
	std::vector<BigInt> weight_;
	BigInt total_;
	// Recursive: forest_[k][m] = ordered forests of k trees with m leaves.
	std::vector<std::vector<BigInt>> forest_;
};

SignedPermutation random_commuting_permutation(int n, std::uint64_t seed,
                                               SamplerMethod method = SamplerMethod::CycleLemma);

// Decorates an unsigned Schroder shape: alternating linear kinds starting
// from the root sign, given leaf signs (pre-order), normalized positions.
SitTree decorate_shape(SitVertex shape, int root_sign, const std::vector<int>& leaf_signs);

// Every Schroder tree shape with n leaves (n <= 11), each encoded as the
// pre-order list of child counts.
std::vector<std::vector<int>> schroder_shape_codes(int n);
SitVertex shape_from_code(const std::vector<int>& code);

} // namespace persort
