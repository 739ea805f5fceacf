#include "persort/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "persort/commuting.hpp"
#include "persort/errors.hpp"
#include "persort/permutation.hpp"
#include "persort/rng.hpp"
#include "persort/sit.hpp"

#ifndef PERSORT_GIT_DESCRIBE
#define PERSORT_GIT_DESCRIBE "unknown"
#endif

namespace persort {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

std::string format_double(double x) {
	char buf[64];
	const auto res = std::to_chars(buf, buf + sizeof buf, x);
	return std::string(buf, res.ptr);
}

using Series = std::vector<BigInt>;

Series series_mul(const Series& a, const Series& b, std::size_t len) {
	Series c(len, 0);
	for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
		if (a[i] == 0) continue;
		for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
	}
	return c;
}

// 1/a for a series with constant term 1.
Series series_inverse(const Series& a, std::size_t len) {
	if (a.empty() || a[0] != 1) throw std::logic_error("series_inverse: constant term must be 1");
	Series b(len, 0);
	b[0] = 1;
	for (std::size_t n = 1; n < len; ++n) {
		BigInt s = 0;
		for (std::size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * b[n - i];
		b[n] = -s;
	}
	return b;
}

// Coefficients S_0..S_N of S(z) (S_0 = 0).
Series schroder_series(int N) {
	Series s(static_cast<std::size_t>(N) + 1, 0);
	if (N >= 1) s[1] = 1;
	for (int n = 2; n <= N; ++n) {
		BigInt conv = 0;
		for (int i = 1; i < n; ++i) conv += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(n - i)];
		s[static_cast<std::size_t>(n)] = 2 * conv - s[static_cast<std::size_t>(n - 1)];
	}
	return s;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::uint64_t count, int threads, F body) {
	const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
	if (workers == 1 || count < 2) {
		for (std::uint64_t i = 0; i < count; ++i) body(i);
		return;
	}
	std::vector<std::thread> pool;
	for (std::uint64_t w = 0; w < workers; ++w) {
		pool.emplace_back([&, w] {
			for (std::uint64_t i = w; i < count; i += workers) body(i);
		});
	}
	for (std::thread& t : pool) t.join();
}

template <class F>
void for_each_permutation(int n, F body) {
	std::vector<int> p(static_cast<std::size_t>(n));
	std::iota(p.begin(), p.end(), 1);
	do {
		body(p);
	} while (std::next_permutation(p.begin(), p.end()));
}

void add_count(std::vector<std::uint64_t>& h, std::size_t k) {
	if (h.size() <= k) h.resize(k + 1, 0);
	++h[k];
}

double histogram_mean(const std::vector<std::uint64_t>& h) {
	double total = 0, weighted = 0;
	for (std::size_t k = 0; k < h.size(); ++k) {
		total += static_cast<double>(h[k]);
		weighted += static_cast<double>(k) * static_cast<double>(h[k]);
	}
	return total > 0 ? weighted / total : 0;
}

} // namespace

const BigInt& CountTable::at(int n) const {
	for (const CountRow& r : rows) {
		if (r.n == n) return r.value;
	}
	throw std::out_of_range(name + ": no entry for n=" + std::to_string(n));
}

const BigInt& CountTable::at(int n, int k) const {
	for (const CountRow& r : rows) {
		if (r.n == n && r.k == k) return r.value;
	}
	throw std::out_of_range(name + ": no entry for n=" + std::to_string(n) + " " + secondary + "=" + std::to_string(k));
}

std::vector<BigInt> CountTable::values() const {
	std::vector<BigInt> v;
	for (const CountRow& r : rows) v.push_back(r.value);
	return v;
}

nlohmann::json CountTable::to_json() const {
	nlohmann::json rs = nlohmann::json::array();
	for (const CountRow& r : rows) {
		nlohmann::json row{{index, r.n}};
		if (!secondary.empty()) row[secondary] = r.k;
		row["value"] = r.value.str();
		rs.push_back(std::move(row));
	}
	nlohmann::json j{{"schema", "persort/1"}, {"name", name}, {"index", index}, {"rows", std::move(rs)},
	                 {"build", build_describe()}};
	if (!secondary.empty()) j["secondary"] = secondary;
	return j;
}

std::string CountTable::to_csv() const {
	std::ostringstream out;
	out << index << ',';
	if (!secondary.empty()) out << secondary << ',';
	out << "value\n";
	for (const CountRow& r : rows) {
		out << r.n << ',';
		if (!secondary.empty()) out << r.k << ',';
		out << r.value.str() << '\n';
	}
	return out.str();
}

CountTable schroder_numbers(int N) {
	if (N < 1) throw std::invalid_argument("schroder_numbers: N must be >= 1");
	const Series s = schroder_series(N);
	CountTable t{"schroder", "n", "", {}};
	for (int n = 1; n <= N; ++n) t.rows.push_back({n, 0, s[static_cast<std::size_t>(n)]});
	return t;
}

BigInt commuting_count(int n) {
	if (n < 2) throw DomainError("commuting_count: defined for n >= 2");
	return (BigInt(1) << (n + 1)) * schroder_series(n)[static_cast<std::size_t>(n)];
}

CountTable simple_counts_bruteforce(int N) {
	if (N > 10) throw BudgetExceeded("simple_counts_bruteforce: N=" + std::to_string(N) + " exceeds 10");
	if (N < 1) throw std::invalid_argument("simple_counts_bruteforce: N must be >= 1");
	CountTable t{"simple", "n", "", {}};
	for (int n = 1; n <= N; ++n) {
		std::uint64_t count = 0;
		for_each_permutation(n, [&](const std::vector<int>& p) {
			if (is_simple(p)) ++count;
		});
		t.rows.push_back({n, 0, count});
	}
	return t;
}

double simple_asymptotic(int n) {
	const double nn = n;
	return std::exp(std::lgamma(nn + 1) - 2.0) * (1.0 - 4.0 / nn + 2.0 / (nn * (nn - 1.0)));
}

double schroder_constant() { return std::sqrt(std::sqrt(18.0) - 4.0) / (4.0 * std::sqrt(kPi)); }

double schroder_asymptotic(int n) {
	const double nn = n;
	return schroder_constant() * std::exp(nn * std::log(3.0 + 2.0 * kSqrt2) - 1.5 * std::log(nn));
}

double twin_distribution_expected(int k) {
	if (k < 0) return 0;
	return std::exp(k * std::log(2.0) - 2.0 - std::lgamma(k + 1.0));
}

CountTable internal_vertex_series(int N) {
	if (N < 1) throw std::invalid_argument("internal_vertex_series: N must be >= 1");
	const Series s = schroder_series(N);
	// Derivative in u at u = 1 of S = z - zS + (1+u) S^2.
	Series d(static_cast<std::size_t>(N) + 1, 0);
	for (int n = 2; n <= N; ++n) {
		BigInt v = -d[static_cast<std::size_t>(n - 1)];
		for (int i = 1; i < n; ++i) {
			v += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(n - i)];
			v += 4 * d[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(n - i)];
		}
		d[static_cast<std::size_t>(n)] = v;
	}
	CountTable t{"internal_vertices", "n", "", {}};
	for (int n = 1; n <= N; ++n) t.rows.push_back({n, 0, d[static_cast<std::size_t>(n)]});
	return t;
}

std::vector<std::vector<BigInt>> internal_vertex_polynomials(int N) {
	if (N < 1) throw std::invalid_argument("internal_vertex_polynomials: N must be >= 1");
	std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(N) + 1);
	s[1] = {1};
	for (int n = 2; n <= N; ++n) {
		std::vector<BigInt> conv(static_cast<std::size_t>(n), 0);
		for (int i = 1; i < n; ++i) {
			const auto& a = s[static_cast<std::size_t>(i)];
			const auto& b = s[static_cast<std::size_t>(n - i)];
			for (std::size_t x = 0; x < a.size(); ++x) {
				for (std::size_t y = 0; y < b.size(); ++y) conv[x + y] += a[x] * b[y];
			}
		}
		std::vector<BigInt> p(static_cast<std::size_t>(n), 0);
		// (1+u) * conv - S_{n-1}(u)
		for (std::size_t j = 0; j < conv.size(); ++j) {
			if (j < p.size()) p[j] += conv[j];
			if (j + 1 < p.size()) p[j + 1] += conv[j];
		}
		const auto& prev = s[static_cast<std::size_t>(n - 1)];
		for (std::size_t j = 0; j < prev.size(); ++j) p[j] -= prev[j];
		s[static_cast<std::size_t>(n)] = std::move(p);
	}
	return s;
}

CountTable pathlength_series(int N) {
	if (N < 1) throw std::invalid_argument("pathlength_series: N must be >= 1");
	const std::size_t len = static_cast<std::size_t>(N) + 1;
	const Series s = schroder_series(N);
	Series one_minus_s = s;
	for (BigInt& c : one_minus_s) c = -c;
	one_minus_s[0] += 1;
	Series two_minus_s = one_minus_s;
	two_minus_s[0] += 1;
	const Series s2 = series_mul(s, s, len);
	Series den(len, 0);
	for (std::size_t i = 0; i < len; ++i) den[i] = -4 * s[i] + 2 * s2[i];
	den[0] += 1;
	const Series den_inv = series_inverse(series_mul(den, den, len), len);

	Series num = series_mul(s, two_minus_s, len);
	num = series_mul(num, series_mul(one_minus_s, one_minus_s, len), len);
	// Multiply by z.
	num.insert(num.begin(), BigInt(0));
	num.resize(len);
	const Series sv = series_mul(num, den_inv, len);

	CountTable t{"pathlength", "n", "", {}};
	for (int n = 1; n <= N; ++n) t.rows.push_back({n, 0, sv[static_cast<std::size_t>(n)]});
	return t;
}

double pathlength_constant() { return std::sqrt(2.0 * kPi) / (4.0 * std::sqrt(std::sqrt(18.0) - 4.0)); }

double reversal_length_constant() { return pathlength_constant() / ((1.0 + kSqrt2) / 2.0); }

Predictions theoretical_predictions(int n) {
	const double nn = n;
	Predictions p;
	p.internal_vertices = nn / kSqrt2;
	p.reversals = (1.0 + kSqrt2) * nn / 2.0;
	p.length_one = nn / 2.0;
	p.reversal_length = reversal_length_constant() * std::sqrt(nn);
	p.pathlength = pathlength_constant() * std::pow(nn, 1.5);
	return p;
}

std::vector<std::uint64_t> exhaustive_twin_distribution(int n) {
	if (n < 1 || n > 10) throw BudgetExceeded("exhaustive_twin_distribution: n must be in 1..10");
	std::vector<std::uint64_t> h;
	for_each_permutation(n, [&](const std::vector<int>& p) {
		add_count(h, static_cast<std::size_t>(count_twins(build_sit(SignedPermutation(p)))));
	});
	return h;
}

CountTable count_by_prime_vertices(int n) {
	if (n < 1 || n > 8) throw BudgetExceeded("count_by_prime_vertices: n must be in 1..8");
	std::vector<std::uint64_t> h;
	for_each_permutation(n, [&](const std::vector<int>& p) {
		add_count(h, static_cast<std::size_t>(count_prime_vertices(build_sit(SignedPermutation(p)))));
	});
	CountTable t{"prime_vertex_counts", "n", "p", {}};
	for (std::size_t p = 0; p < h.size(); ++p) t.rows.push_back({n, static_cast<int>(p), h[p]});
	return t;
}

CountTable common_interval_length_counts(int n) {
	if (n < 1 || n > 8) throw BudgetExceeded("common_interval_length_counts: n must be in 1..8");
	std::vector<std::uint64_t> h(static_cast<std::size_t>(n) + 1, 0);
	std::vector<char> seen(static_cast<std::size_t>(n) + 1);
	for_each_permutation(n, [&](const std::vector<int>& p) {
		std::fill(seen.begin(), seen.end(), 0);
		for (const CommonInterval& ci : common_intervals(p)) seen[static_cast<std::size_t>(ci.length())] = 1;
		for (int k = 1; k <= n; ++k) h[static_cast<std::size_t>(k)] += seen[static_cast<std::size_t>(k)];
	});
	CountTable t{"common_interval_lengths", "n", "k", {}};
	for (int k = 1; k <= n; ++k) t.rows.push_back({n, k, h[static_cast<std::size_t>(k)]});
	return t;
}

BigInt factorial(int n) {
	BigInt f = 1;
	for (int i = 2; i <= n; ++i) f *= i;
	return f;
}

double prime_count_bound(int n, int p) {
	return 48.0 * std::exp(std::lgamma(static_cast<double>(n)) - p * std::log(2.0));
}

BigInt common_interval_bound(int n, int k) { return (n - k + 1) * factorial(k) * factorial(n - k + 1); }

double expected_exponential_bound(int n) { return 3.0 + 48.0 * (1.0 - 1.0 / n); }

double tv_to_poisson2(const std::vector<std::uint64_t>& histogram) {
	constexpr int cells = 16;
	const double total = std::accumulate(histogram.begin(), histogram.end(), 0.0,
	                                     [](double a, std::uint64_t b) { return a + static_cast<double>(b); });
	if (total == 0) throw std::invalid_argument("tv_to_poisson2: empty histogram");
	double tv = 0, emp_tail = 1, exp_tail = 1;
	for (int k = 0; k < cells; ++k) {
		const double e = k < static_cast<int>(histogram.size()) ? static_cast<double>(histogram[static_cast<std::size_t>(k)]) / total : 0.0;
		const double p = twin_distribution_expected(k);
		tv += std::abs(e - p);
		emp_tail -= e;
		exp_tail -= p;
	}
	tv += std::abs(std::max(emp_tail, 0.0) - std::max(exp_tail, 0.0));
	return tv / 2.0;
}

double Statistic::abs_dev() const { return predicted ? std::abs(empirical - *predicted) : 0.0; }

double Statistic::rel_dev() const {
	if (!predicted || *predicted == 0) return 0.0;
	return std::abs(empirical - *predicted) / std::abs(*predicted);
}

const Statistic& StatsReport::stat(const std::string& name) const {
	for (const Statistic& s : stats) {
		if (s.name == name) return s;
	}
	throw std::out_of_range("stats report: no statistic " + name);
}

const Distribution& StatsReport::distribution(const std::string& name) const {
	for (const Distribution& d : distributions) {
		if (d.name == name) return d;
	}
	throw std::out_of_range("stats report: no distribution " + name);
}

nlohmann::json StatsReport::to_json() const {
	nlohmann::json st = nlohmann::json::array();
	for (const Statistic& s : stats) {
		nlohmann::json j{{"name", s.name}, {"empirical", s.empirical}};
		if (s.predicted) {
			j["predicted"] = *s.predicted;
			j["abs_dev"] = s.abs_dev();
			j["rel_dev"] = s.rel_dev();
		}
		st.push_back(std::move(j));
	}
	nlohmann::json ds = nlohmann::json::object();
	for (const Distribution& d : distributions) ds[d.name] = d.counts;
	return {{"schema", "persort/1"}, {"model", model}, {"n", n},         {"trials", trials},
	        {"seed", seed},          {"build", build}, {"stats", std::move(st)}, {"distributions", std::move(ds)}};
}

std::string StatsReport::to_csv() const {
	std::ostringstream out;
	out << "# schema=persort/1 model=" << model << " n=" << n << " trials=" << trials << " seed=" << seed
	    << " build=" << build << '\n';
	out << "statistic,empirical,predicted,abs_dev,rel_dev\n";
	for (const Statistic& s : stats) {
		out << s.name << ',' << format_double(s.empirical) << ',';
		if (s.predicted) {
			out << format_double(*s.predicted) << ',' << format_double(s.abs_dev()) << ',' << format_double(s.rel_dev());
		} else {
			out << ",,";
		}
		out << '\n';
	}
	for (const Distribution& d : distributions) {
		out << "distribution,k,count\n";
		for (std::size_t k = 0; k < d.counts.size(); ++k) out << d.name << ',' << k << ',' << d.counts[k] << '\n';
	}
	return out.str();
}

std::string build_describe() { return PERSORT_GIT_DESCRIBE; }

StatsReport monte_carlo_random_perm_stats(int n, std::uint64_t trials, std::uint64_t seed, int threads) {
	if (n < 4) throw std::invalid_argument("monte_carlo_random_perm_stats: n must be >= 4");
	if (trials < 1) throw std::invalid_argument("monte_carlo_random_perm_stats: trials must be >= 1");
	struct Trial {
		int twins = 0;
		int primes = 0;
		bool shape = false;
	};
	std::vector<Trial> results(trials);
	parallel_for(trials, threads, [&](std::uint64_t i) {
		const SitTree t = build_sit(random_signed_permutation(n, trial_seed(seed, i)));
		results[i] = {count_twins(t), count_prime_vertices(t), shape_is_prime_with_twins(t)};
	});

	std::vector<std::uint64_t> twins, primes;
	std::uint64_t shape = 0;
	double pow_sum = 0;
	for (const Trial& r : results) {
		add_count(twins, static_cast<std::size_t>(r.twins));
		add_count(primes, static_cast<std::size_t>(r.primes));
		shape += r.shape ? 1 : 0;
		pow_sum += std::ldexp(1.0, r.primes);
	}
	const double tr = static_cast<double>(trials);
	StatsReport rep;
	rep.model = "random";
	rep.n = n;
	rep.trials = trials;
	rep.seed = seed;
	rep.build = build_describe();
	rep.stats = {
	    {"mean_twins", histogram_mean(twins), 2.0},
	    {"shape_fraction", static_cast<double>(shape) / tr, 1.0},
	    {"tv_twins_poisson2", tv_to_poisson2(twins), 0.0},
	    {"mean_prime_vertices", histogram_mean(primes), std::nullopt},
	    {"mean_2_pow_p", pow_sum / tr, std::nullopt},
	    {"bound_2_pow_p", expected_exponential_bound(n), std::nullopt},
	};
	rep.distributions = {{"twins", twins}, {"prime_vertices", primes}};
	return rep;
}

StatsReport monte_carlo_commuting_stats(int n, std::uint64_t trials, std::uint64_t seed, int threads) {
	if (n < 2) throw std::invalid_argument("monte_carlo_commuting_stats: n must be >= 2");
	if (trials < 1) throw std::invalid_argument("monte_carlo_commuting_stats: trials must be >= 1");
	const CommutingSampler sampler(n);
	struct Trial {
		long long reversals = 0;
		long long total_length = 0;
		long long length_one = 0;
		long long internal = 0;
		long long pathlength = 0;
	};
	std::vector<Trial> results(trials);
	parallel_for(trials, threads, [&](std::uint64_t i) {
		Rng rng(trial_seed(seed, i));
		const ReversalProfile p = reversal_profile(sampler.sample(rng));
		results[i] = {p.count, p.total_length(), p.length_one_count, p.internal_vertices, p.pathlength};
	});

	Trial sum;
	std::vector<std::uint64_t> reversals;
	for (const Trial& r : results) {
		sum.reversals += r.reversals;
		sum.total_length += r.total_length;
		sum.length_one += r.length_one;
		sum.internal += r.internal;
		sum.pathlength += r.pathlength;
		add_count(reversals, static_cast<std::size_t>(r.reversals));
	}
	const double tr = static_cast<double>(trials);
	const double nn = n;
	const Predictions pr = theoretical_predictions(n);
	const double mean_len = sum.reversals > 0 ? static_cast<double>(sum.total_length) / static_cast<double>(sum.reversals) : 0.0;

	StatsReport rep;
	rep.model = "commuting";
	rep.n = n;
	rep.trials = trials;
	rep.seed = seed;
	rep.build = build_describe();
	rep.stats = {
	    {"mean_reversals", static_cast<double>(sum.reversals) / tr, pr.reversals},
	    {"reversals_per_n", static_cast<double>(sum.reversals) / tr / nn, (1.0 + kSqrt2) / 2.0},
	    {"mean_reversal_length", mean_len, pr.reversal_length},
	    {"reversal_length_per_sqrt_n", mean_len / std::sqrt(nn), reversal_length_constant()},
	    {"length_one_per_n", static_cast<double>(sum.length_one) / tr / nn, 0.5},
	    {"internal_vertices_per_n", static_cast<double>(sum.internal) / tr / nn, 1.0 / kSqrt2},
	    {"pathlength_per_n32", static_cast<double>(sum.pathlength) / tr / std::pow(nn, 1.5), pathlength_constant()},
	};
	rep.distributions = {{"reversals", reversals}};
	return rep;
}

} // namespace persort
