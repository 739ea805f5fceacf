/*******************************************************
 * Sorting a signed permutation by reversals (no
 * perfectness constraint).
 *
 * The distance follows the Hannenhalli-Pevzner formula on
 * the breakpoint graph of the permutation framed by 0 and
 * n+1:
 *
 *     d(pi) = n + 1 - c(pi) + h(pi) + f(pi)
 *
 * with c the number of cycles, h the number of hurdles and
 * f = 1 when the hurdles form a fortress. A scenario is
 * built greedily: at each step a reversal lowering d by one
 * is found by search (oriented-edge reversals first, then
 * all ranges). This is polynomial but not the fastest known
 * method; it is used on the quotient permutations of prime
 * vertices, which are small in practice.
 *
 * Sorting towards the reversed identity reduces to sorting
 * towards the identity through the relabeling
 *     e -> -sign(e) * (n + 1 - |e|),
 * which commutes with every reversal.
 *
 * The BFS routines are exact oracles for small n.
 *******************************************************/

#pragma once

#include <cstdint>
#include <vector>

#include "persort/permutation.hpp"

namespace persort {

enum class SortTarget { Identity, ReversedIdentity };

struct BreakpointSummary {
	int cycles = 0;
	int hurdles = 0;
	int super_hurdles = 0;
	bool fortress = false;
	int distance = 0;
};

BreakpointSummary breakpoint_summary(const SignedPermutation& sigma);

int reversal_distance(const SignedPermutation& sigma);
int reversal_distance(const SignedPermutation& sigma, SortTarget target);

// The relabeling used to reduce the reversed-identity target to the identity.
SignedPermutation relabel_for_reversed_target(const SignedPermutation& sigma);

Scenario sort_to_target(const SignedPermutation& sigma, SortTarget target);

// Breadth-first search from sigma over all reversals. Throws
// std::invalid_argument when n > cap.
Scenario bfs_oracle_sort(const SignedPermutation& sigma, SortTarget target, int cap = 8);

// Exact distances from every signed permutation of size n (n <= 9) to the
// target, computed by one BFS from the target over the whole group.
class DistanceTable {
public:
	DistanceTable(int n, SortTarget target);

	int size() const { return n_; }
	int distance(const SignedPermutation& sigma) const;
	std::uint64_t state_count() const { return dist_.size(); }

private:
	int n_;
	std::vector<std::uint8_t> dist_;
};

// Bijective rank of a signed permutation of size n <= 12 in [0, 2^n n!).
std::uint64_t signed_rank(std::span<const int> values);
std::vector<int> signed_unrank(std::uint64_t rank, int n);

} // namespace persort
