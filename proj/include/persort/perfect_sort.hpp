/*******************************************************
 * Parsimonious perfect sorting by reversals, driven by the
 * strong interval tree.
 *
 * Every internal vertex gets a sign: increasing linear
 * vertices are +, decreasing linear vertices are -, and a
 * prime vertex whose parent is linear takes its parent's
 * sign. The remaining prime vertices are free; each of the
 * 2^u assignments of their signs yields a perfect scenario:
 *
 *   - every prime vertex sorts its signed quotient (the
 *     quotient with each child's sign lifted onto it) to the
 *     identity when signed +, or to the reversed identity
 *     when signed -, using a parsimonious sorter; a
 *     quotient-level reversal acts on the union of the
 *     covered children;
 *   - every vertex whose parent is linear and whose sign
 *     differs from the parent's is reversed once.
 *
 * The shortest of these scenarios is a parsimonious perfect
 * scenario. Reversals are emitted bottom-up: a vertex is
 * processed after all of its children, so each quotient
 * step sees its children already sorted and the vertex's
 * own span is still at its original positions.
 *******************************************************/

#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "persort/permutation.hpp"
#include "persort/sit.hpp"

namespace persort {

struct SignedTree {
	SitTree tree;
	// Indexed by pre-order vertex id: +1, -1, or 0 for a free prime vertex.
	std::vector<int> sign;
	std::vector<bool> forced;
	// Pre-order ids of the free prime vertices.
	std::vector<int> unassigned;
};

struct PerfectResult {
	Scenario scenario;
	int length = 0;
	int prime_count = 0;
	// One entry per free prime vertex in pre-order; true means sign -.
	std::vector<bool> chosen_assignment;
	std::uint64_t assignments_explored = 0;
	SortedState end_state = SortedState::Identity;
};

struct PerfectOptions {
	// Largest number of free prime vertices explored (2^max_free assignments).
	int max_free_primes = 20;
	int threads = 1;
};

// Vertices of the tree in pre-order; ids used by SignedTree index this list.
std::vector<const SitVertex*> preorder(const SitTree& t);

SignedTree assign_forced_signs(const SitTree& t);

// Length of the scenario for an assignment without materializing it.
int scenario_length_for_assignment(const SignedTree& st, const std::vector<bool>& assignment);

// Throws std::invalid_argument when the assignment does not cover every
// free prime vertex.
Scenario scenario_for_assignment(const SignedTree& st, const std::vector<bool>& assignment);

// Throws BudgetExceeded when the tree has more than max_free_primes free
// prime vertices.
PerfectResult parsimonious_perfect_scenario(const SignedPermutation& sigma, const PerfectOptions& opts = {});

// True iff the scenario ends at Id or Id-bar and every step's content
// commutes with every common interval of sigma.
bool validate_perfect(const SignedPermutation& sigma, const Scenario& s);

// Exact minimum perfect-scenario length by BFS over reversals that commute
// with every common interval of sigma. Throws std::invalid_argument for n > cap.
int brute_force_perfect_oracle(const SignedPermutation& sigma, int cap = 6);

// Scenario JSON: {"schema","source","target","steps":[{"lo","hi","set"}],"length","p"}.
nlohmann::json scenario_to_json(const SignedPermutation& source, const Scenario& s, int prime_count);

struct ScenarioDocument {
	SignedPermutation source;
	Scenario scenario;
	std::string target;
	int prime_count = 0;
};
ScenarioDocument scenario_from_json(const nlohmann::json& j);

} // namespace persort
