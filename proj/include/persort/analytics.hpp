/*******************************************************
 * Exact enumeration and Monte Carlo statistics.
 *
 * Exact sequences are computed with arbitrary-precision
 * integers; floating point only appears where a sequence is
 * compared with an asymptotic formula.
 *
 *   S(z)   = z + S^2/(1-S)                   Schroder trees
 *   S(z,u) = z + u S^2/(1-S)                 u marks internal vertices
 *   S_v(z) = z S (2-S)(1-S)^2/(1-4S+2S^2)^2  total pathlength
 *
 * Monte Carlo runs derive one seed per trial from the master
 * seed and aggregate in trial order, so reports do not
 * depend on the thread count.
 *******************************************************/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace persort {

using BigInt = boost::multiprecision::cpp_int;

struct CountRow {
	int n = 0;
	// Secondary index (p or k) when the table has one.
	int k = 0;
	BigInt value;
};

struct CountTable {
	std::string name;
	std::string index = "n";
	std::string secondary;  // empty, "p" or "k"
	std::vector<CountRow> rows;

	// Throws std::out_of_range when absent.
	const BigInt& at(int n) const;
	const BigInt& at(int n, int k) const;
	std::vector<BigInt> values() const;

	nlohmann::json to_json() const;
	std::string to_csv() const;
};

CountTable schroder_numbers(int N);
// 2^(n+1) S_n; DomainError for n < 2.
BigInt commuting_count(int n);
// Simple permutations of sizes 1..N by brute force; BudgetExceeded for N > 10.
CountTable simple_counts_bruteforce(int N);
double simple_asymptotic(int n);
double schroder_constant();
double schroder_asymptotic(int n);
double twin_distribution_expected(int k);

// Total number of internal vertices over all trees with n leaves.
CountTable internal_vertex_series(int N);
// Coefficients of S_n(u), indexed [n][j] = trees with n leaves and j
// internal vertices. Quartic cost; intended for N <= 40.
std::vector<std::vector<BigInt>> internal_vertex_polynomials(int N);
// Total pathlength over all trees with n leaves.
CountTable pathlength_series(int N);

struct Predictions {
	double internal_vertices = 0;
	double reversals = 0;
	double length_one = 0;
	double reversal_length = 0;
	double pathlength = 0;
};
// Constants of the leading terms; pathlength ~ c n^{3/2},
// reversal_length ~ c' n^{1/2}.
double pathlength_constant();
double reversal_length_constant();
Predictions theoretical_predictions(int n);

// Twin-count distribution over all n! unsigned permutations (n <= 10).
std::vector<std::uint64_t> exhaustive_twin_distribution(int n);
// U_{n,p}: unsigned permutations whose tree has p prime vertices (n <= 8).
CountTable count_by_prime_vertices(int n);
// p_{n,k}: unsigned permutations with a common interval of length exactly k (n <= 8).
CountTable common_interval_length_counts(int n);

BigInt factorial(int n);
// 48 (n-1)! / 2^p, the upper bound on U_{n,p} for p >= 2.
double prime_count_bound(int n, int p);
// (n-k+1) k! (n-k+1)!, the upper bound on p_{n,k}.
BigInt common_interval_bound(int n, int k);
// 3 + 48 (1 - 1/n), the upper bound on the mean of 2^p.
double expected_exponential_bound(int n);

// Total variation between an empirical histogram and Poisson(2) over
// k = 0..15, with everything above 15 lumped into one cell.
double tv_to_poisson2(const std::vector<std::uint64_t>& histogram);

struct Statistic {
	std::string name;
	double empirical = 0;
	std::optional<double> predicted;
	double abs_dev() const;
	double rel_dev() const;
};

struct Distribution {
	std::string name;
	std::vector<std::uint64_t> counts;  // counts[k]
};

struct StatsReport {
	std::string model;
	int n = 0;
	std::uint64_t trials = 0;
	std::uint64_t seed = 0;
	std::string build;
	std::vector<Statistic> stats;
	std::vector<Distribution> distributions;

	const Statistic& stat(const std::string& name) const;
	const Distribution& distribution(const std::string& name) const;
	nlohmann::json to_json() const;
	std::string to_csv() const;
};

std::string build_describe();

StatsReport monte_carlo_random_perm_stats(int n, std::uint64_t trials, std::uint64_t seed, int threads = 1);
StatsReport monte_carlo_commuting_stats(int n, std::uint64_t trials, std::uint64_t seed, int threads = 1);

} // namespace persort
