/*******************************************************
 * Strong interval trees.
 *
 * The strong intervals of a permutation (common intervals
 * that commute with every other common interval) ordered by
 * inclusion form a plane tree whose leaves are the elements
 * of the permutation from left to right. Each internal
 * vertex carries its quotient permutation, which is either
 * the identity (increasing linear vertex), the mirrored
 * identity (decreasing linear vertex), or a simple
 * permutation of size >= 4 (prime vertex).
 *
 * build_sit is the default O(n log n) construction: a single
 * left-to-right scan that keeps a stack of finished strong
 * intervals and a segment tree over
 *     (max(l..i) - min(l..i)) - (i - l)
 * whose zeros are exactly the common intervals ending at i.
 * build_sit_direct is the O(n^3) reference: enumerate common
 * intervals, keep those commuting with all others, and nest
 * them. Both must produce identical trees.
 *
 * The tree is in bijection with signed permutations:
 * tree_to_permutation rebuilds the permutation top-down
 * from the quotients, child sizes and leaf signs.
 *******************************************************/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "persort/permutation.hpp"

namespace persort {

enum class VertexKind { Leaf, LinearIncreasing, LinearDecreasing, Prime };

struct SitVertex {
	VertexKind kind = VertexKind::Leaf;
	// Position span and value span; the strong interval is vmin..vmax.
	int lo = 1;
	int hi = 1;
	int vmin = 1;
	int vmax = 1;
	// Leaves only: +1 or -1.
	int leaf_sign = 1;
	// Internal vertices only: quotient permutation over the children.
	std::vector<int> quotient;
	std::vector<SitVertex> children;

	bool is_leaf() const { return kind == VertexKind::Leaf; }
	bool is_linear() const {
		return kind == VertexKind::LinearIncreasing || kind == VertexKind::LinearDecreasing;
	}
	int size() const { return hi - lo + 1; }

	bool operator==(const SitVertex&) const = default;
};

struct SitTree {
	SitVertex root;
	int n = 0;

	bool operator==(const SitTree&) const = default;
};

struct TreeViolation {
	std::string rule;     // "P1" .. "P6"
	std::string message;
};

// Thrown by tree_to_permutation for trees outside the valid family.
class TreeValidationError : public std::invalid_argument {
public:
	TreeValidationError(const std::string& what, std::vector<TreeViolation> v)
	    : std::invalid_argument(what), violations(std::move(v)) {}
	std::vector<TreeViolation> violations;
};

SitTree build_sit(const SignedPermutation& sigma);
SitTree build_sit_direct(const SignedPermutation& sigma);

// Common intervals that commute with every common interval, by brute force.
std::vector<CommonInterval> strong_intervals_direct(const SignedPermutation& sigma);

std::vector<TreeViolation> validate_tree(const SitTree& t);
SignedPermutation tree_to_permutation(const SitTree& t);

// Recomputes lo/hi/vmin/vmax of every vertex from the structure, the
// quotients and the leaf signs (top-down value assignment). Leaves receive
// their signed position in the resulting permutation. Requires a valid tree.
void normalize_tree(SitTree& t);

int count_twins(const SitTree& t);
int count_prime_vertices(const SitTree& t);
int count_internal_vertices(const SitTree& t);
// Sum over internal vertices of their leaf counts.
long long pathlength(const SitTree& t);
bool shape_is_prime_with_twins(const SitTree& t);

// Shape equality ignoring leaf signs.
bool same_shape(const SitVertex& a, const SitVertex& b);

// Identity and mirrored-identity tests on unsigned quotients.
bool is_identity(const std::vector<int>& q);
bool is_mirrored_identity(const std::vector<int>& q);

// Text form: leaves are signed integers (or a bare '+'/'-'), linear vertices
// "L+(...)"/"L-(...)", prime vertices "P[q1 q2 ...](...)", children separated
// by commas. Parsing normalizes the tree; leaf magnitudes are recomputed.
std::string tree_to_text(const SitTree& t);
SitTree tree_from_text(std::string_view text);

nlohmann::json tree_to_json(const SitTree& t);
SitTree tree_from_json(const nlohmann::json& j);

const char* kind_name(VertexKind k);

} // namespace persort
