/*****************************************************************
 * Acceptance suite: one PASS/FAIL line per criterion.
 * Exit status 1 if any criterion fails.
 *****************************************************************/

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "persort/analytics.hpp"
#include "persort/commuting.hpp"
#include "persort/config.hpp"
#include "persort/perfect_sort.hpp"
#include "persort/reversal_sort.hpp"
#include "persort/sit.hpp"

using namespace persort;

namespace {

struct Outcome {
	bool pass = true;
	std::ostringstream detail;

	void require(bool ok, const std::string& what) {
		if (!ok) {
			pass = false;
			detail << " FAILED[" << what << "]";
		}
	}
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
	Outcome o;
	const auto t0 = std::chrono::steady_clock::now();
	try {
		body(o);
	} catch (const std::exception& e) {
		o.pass = false;
		o.detail << " exception: " << e.what();
	}
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	if (limit_seconds > 0 && secs >= limit_seconds) {
		o.pass = false;
		o.detail << " FAILED[runtime limit " << limit_seconds << "s]";
	}
	if (!o.pass) ++failures;
	std::printf("[%s] criterion %d: %s |%s | %.2fs\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
	            o.detail.str().c_str(), secs);
	std::fflush(stdout);
}

template <class F>
void for_each_signed(int n, F body) {
	std::vector<int> p(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
	do {
		for (int mask = 0; mask < (1 << n); ++mask) {
			std::vector<int> s = p;
			for (int i = 0; i < n; ++i) {
				if (mask & (1 << i)) s[static_cast<std::size_t>(i)] = -s[static_cast<std::size_t>(i)];
			}
			body(SignedPermutation(s));
		}
	} while (std::next_permutation(p.begin(), p.end()));
}

std::string capture(const std::string& cmd) {
	FILE* pipe = popen(cmd.c_str(), "r");
	if (!pipe) throw std::runtime_error("popen failed: " + cmd);
	std::string out;
	std::array<char, 4096> buf{};
	while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
	if (pclose(pipe) != 0) throw std::runtime_error("command failed: " + cmd);
	return out;
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

int worker_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

} // namespace

int main() {
	const Tolerances tol = default_tolerances();
	const int threads = worker_threads();
	const std::vector<int> worked{1, -8, 4, 2, -5, 3, 9, -6, 7, 12, 10, -14, 13, -11, 15, -17, 16, 18};

	criterion(1, "worked example: parsimonious perfect scenario", 1.0, [&](Outcome& o) {
		const SignedPermutation s(worked);
		const SignedTree st = assign_forced_signs(build_sit(s));
		const int plus = scenario_for_assignment(st, {false}).length();
		const int minus = scenario_for_assignment(st, {true}).length();
		const PerfectResult r = parsimonious_perfect_scenario(s);
		o.detail << " length=" << r.length << " plus=" << plus << " minus=" << minus;
		o.require(r.length == 14, "length 14");
		o.require(plus == 15, "+ gives 15");
		o.require(minus == 14, "- gives 14");
		o.require(validate_perfect(s, r.scenario), "perfect");
	});

	criterion(2, "perfect sorter length equals brute-force perfect oracle", 300.0, [&](Outcome& o) {
		int checked = 0, mismatches = 0;
		for_each_signed(4, [&](const SignedPermutation& s) {
			++checked;
			const PerfectResult r = parsimonious_perfect_scenario(s);
			if (r.length != brute_force_perfect_oracle(s) || !validate_perfect(s, r.scenario)) ++mismatches;
		});
		o.require(checked == 384, "384 permutations of size 4");
		for (int n = 5; n <= 6; ++n) {
			for (int i = 0; i < 500; ++i) {
				const SignedPermutation s = random_signed_permutation(n, trial_seed(2000 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)));
				const PerfectResult r = parsimonious_perfect_scenario(s);
				++checked;
				if (r.length != brute_force_perfect_oracle(s) || !validate_perfect(s, r.scenario)) ++mismatches;
			}
		}
		o.detail << " checked=" << checked << " mismatches=" << mismatches;
		o.require(mismatches == 0, "no mismatches");
	});

	criterion(3, "sorter length equals BFS length, both targets", 0, [&](Outcome& o) {
		o.require(reversal_distance(SignedPermutation({3, 1, -4, -2})) == 3, "[3 1 -4 -2] -> 3");
		o.require(reversal_distance(SignedPermutation({-3, 1, 4, 2})) == 4, "[-3 1 4 2] -> 4");
		int checked = 0, mismatches = 0;
		for (const SortTarget t : {SortTarget::Identity, SortTarget::ReversedIdentity}) {
			for (int n = 1; n <= 8; ++n) {
				const DistanceTable table(n, t);
				const SignedPermutation goal =
				    t == SortTarget::Identity ? SignedPermutation::identity(n) : SignedPermutation::reversed_identity(n);
				auto check = [&](const SignedPermutation& s) {
					++checked;
					const Scenario sc = sort_to_target(s, t);
					if (sc.length() != table.distance(s) || !(apply_scenario(s, sc) == goal)) ++mismatches;
				};
				if (n <= 5) {
					for_each_signed(n, check);
				} else {
					for (int i = 0; i < 200; ++i) {
						check(random_signed_permutation(n, trial_seed(3000 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i))));
					}
				}
			}
		}
		o.detail << " checked=" << checked << " mismatches=" << mismatches;
		o.require(mismatches == 0, "no mismatches");
	});

	criterion(4, "tree bijection round trip", 0, [&](Outcome& o) {
		int checked = 0, failures4 = 0;
		for (int n = 1; n <= 5; ++n) {
			for_each_signed(n, [&](const SignedPermutation& s) {
				++checked;
				const SitTree t = build_sit(s);
				if (!(tree_to_permutation(t) == s)) ++failures4;
			});
		}
		for (int i = 0; i < 10000; ++i) {
			const SignedPermutation s = random_signed_permutation(200, trial_seed(4000, static_cast<std::uint64_t>(i)));
			const SitTree t = build_sit(s);
			++checked;
			if (!(tree_to_permutation(t) == s) || !(build_sit(tree_to_permutation(t)) == t)) ++failures4;
		}
		o.detail << " checked=" << checked << " failures=" << failures4;
		o.require(failures4 == 0, "exact round trip");
	});

	criterion(5, "exact enumeration", 0, [&](Outcome& o) {
		const CountTable s = schroder_numbers(10);
		o.require(s.at(1) == 1 && s.at(2) == 1 && s.at(3) == 3 && s.at(4) == 11, "S_1..S_4");
		const CountTable v = pathlength_series(4);
		o.require(v.at(2) == 2 && v.at(3) == 13 && v.at(4) == 80, "S_v 2,13,80");
		const CountTable d = internal_vertex_series(3);
		o.require(d.at(2) == 1 && d.at(3) == 5, "internal vertices 1,5");
		for (int n = 1; n <= 10; ++n) {
			o.require(BigInt(schroder_shape_codes(n).size()) == s.at(n), "S_" + std::to_string(n) + " by tree generation");
		}
		o.detail << " S_10=" << s.at(10);
	});

	criterion(6, "Schroder asymptotic constant", 0, [&](Outcome& o) {
		const CountTable s = schroder_numbers(100);
		const double exact = to_double(s.at(100));
		const double ratio = exact / schroder_asymptotic(100);
		const double rounded = 0.12 * std::pow(5.88, 100) * std::pow(100.0, -1.5);
		const double sqrtpi_free = schroder_asymptotic(100) * std::sqrt(std::acos(-1.0));
		o.detail << " c=" << schroder_constant() << " S_100/asym=" << ratio
		         << " (0.12*5.88^n ratio=" << exact / rounded << ", without 1/sqrt(pi) ratio=" << exact / sqrtpi_free << ")";
		o.require(std::abs(ratio - 1.0) < tol.schroder_rel, "within 3%");
		o.require(std::abs(ratio - 1.0) < std::abs(exact / rounded - 1.0), "sqrt(pi) constant beats 0.12");
		o.require(std::abs(ratio - 1.0) < std::abs(exact / sqrtpi_free - 1.0), "sqrt(pi) factor needed");
	});

	StatsReport random_report;
	criterion(7, "twin law and tree shape, n=1000, 10^4 random permutations", 600.0, [&](Outcome& o) {
		random_report = monte_carlo_random_perm_stats(1000, 10000, 7, threads);
		const double shape = random_report.stat("shape_fraction").empirical;
		const double twins = random_report.stat("mean_twins").empirical;
		const double tv = random_report.stat("tv_twins_poisson2").empirical;
		o.detail << " shape=" << shape << " mean_twins=" << twins << " tv=" << tv;
		o.require(shape >= tol.shape_fraction_min, "shape fraction");
		o.require(twins >= tol.mean_twins_lo && twins <= tol.mean_twins_hi, "mean twins");
		o.require(tv <= tol.twin_tv_max, "TV to Poisson(2)");
	});

	criterion(8, "mean 2^p bound and prime-vertex count bound", 0, [&](Outcome& o) {
		if (random_report.trials == 0) random_report = monte_carlo_random_perm_stats(1000, 10000, 7, threads);
		const double mean2p = random_report.stat("mean_2_pow_p").empirical;
		o.detail << " mean_2^p=" << mean2p << " bound=" << expected_exponential_bound(1000);
		o.require(mean2p <= tol.mean_2p_max, "mean 2^p <= 51");
		o.require(mean2p <= expected_exponential_bound(1000), "mean 2^p <= 3+48(1-1/n)");
		for (int n = 7; n <= 8; ++n) {
			const CountTable u = count_by_prime_vertices(n);
			for (const CountRow& r : u.rows) {
				if (r.k < 2) continue;
				o.detail << " U_{" << n << "," << r.k << "}=" << r.value;
				o.require(to_double(r.value) <= prime_count_bound(n, r.k), "prime-vertex bound at n=" + std::to_string(n));
			}
		}
	});

	criterion(9, "commuting scenario statistics, n=1000, 10^4 commuting permutations", 600.0, [&](Outcome& o) {
		const StatsReport r = monte_carlo_commuting_stats(1000, 10000, 9, threads);
		for (const char* name : {"reversals_per_n", "reversal_length_per_sqrt_n", "length_one_per_n", "internal_vertices_per_n"}) {
			const Statistic& s = r.stat(name);
			o.detail << " " << name << "=" << s.empirical << " (pred " << *s.predicted << ", rel " << s.rel_dev() << ")";
			o.require(s.rel_dev() <= tol.commuting_rel, name);
		}
	});

	criterion(10, "stats reports are byte-identical per seed, any thread count", 0, [&](Outcome& o) {
		const std::string cli = PERSORT_CLI_PATH;
		for (const std::string model : {"random", "commuting"}) {
			for (const std::string format : {"json", "csv"}) {
				const std::string base = cli + " stats --model " + model + " --n 300 --trials 2000 --seed 11 --format " + format;
				const std::string a = capture(base + " --threads 1");
				const std::string b = capture(base + " --threads 1");
				const std::string c = capture(base + " --threads 4");
				o.require(!a.empty() && a == b, model + "/" + format + " repeat");
				o.require(a == c, model + "/" + format + " threads");
			}
		}
		const StatsReport x = monte_carlo_commuting_stats(200, 500, 3, 1);
		const StatsReport y = monte_carlo_commuting_stats(200, 500, 3, 3);
		o.require(x.to_json().dump() == y.to_json().dump(), "library report");
		o.detail << " compared 4 CLI report pairs and 1 library pair";
	});

	std::printf("%d criteria failed\n", failures);
	return failures == 0 ? 0 : 1;
}
