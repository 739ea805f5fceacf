/*****************************************************************
 * _persort: Python bindings for the persort library.
 *
 * Permutations cross the boundary as lists of nonzero ints,
 * reversals as (lo, hi) tuples, reports and trees as JSON text.
 *****************************************************************/

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "persort/analytics.hpp"
#include "persort/commuting.hpp"
#include "persort/errors.hpp"
#include "persort/perfect_sort.hpp"
#include "persort/reversal_sort.hpp"
#include "persort/sit.hpp"

namespace py = pybind11;
using namespace persort;

namespace {

using Steps = std::vector<std::pair<int, int>>;

Steps to_steps(const Scenario& s) {
	Steps out;
	for (const Reversal& r : s.steps) out.emplace_back(r.lo, r.hi);
	return out;
}

Scenario from_steps(const Steps& steps) {
	Scenario s;
	for (const auto& [lo, hi] : steps) s.steps.push_back({lo, hi});
	return s;
}

std::vector<int> to_list(const SignedPermutation& s) { return {s.values().begin(), s.values().end()}; }

SortTarget parse_target(const std::string& t) {
	if (t == "id") return SortTarget::Identity;
	if (t == "idbar") return SortTarget::ReversedIdentity;
	throw ParseError("target must be 'id' or 'idbar'");
}

SamplerMethod parse_method(const std::string& m) {
	if (m == "cycle") return SamplerMethod::CycleLemma;
	if (m == "recursive") return SamplerMethod::Recursive;
	throw ParseError("method must be 'cycle' or 'recursive'");
}

CountTable enumerate_table(const std::string& what, int n) {
	if (what == "schroder") return schroder_numbers(n);
	if (what == "simple") return simple_counts_bruteforce(n);
	if (what == "pathlength") return pathlength_series(n);
	if (what == "internal") return internal_vertex_series(n);
	if (what == "primecounts") return count_by_prime_vertices(n);
	throw ParseError("unknown table: " + what);
}

} // namespace

PYBIND11_MODULE(_persort, m) {
	m.doc() = "Perfect sorting by reversals via strong interval trees";

	py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
	py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
	py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

	m.def("parse", [](const std::string& text) { return to_list(parse_permutation(text)); }, py::arg("text"));
	m.def("apply", [](const std::vector<int>& p, const Steps& steps) {
		return to_list(apply_scenario(SignedPermutation(p), from_steps(steps)));
	}, py::arg("perm"), py::arg("steps"));

	m.def("tree_text", [](const std::vector<int>& p) { return tree_to_text(build_sit(SignedPermutation(p))); },
	      py::arg("perm"));
	m.def("tree_json", [](const std::vector<int>& p) { return tree_to_json(build_sit(SignedPermutation(p))).dump(); },
	      py::arg("perm"));
	m.def("tree_to_perm", [](const std::string& text) { return to_list(tree_to_permutation(tree_from_text(text))); },
	      py::arg("text"));
	m.def("tree_summary", [](const std::vector<int>& p) {
		const SitTree t = build_sit(SignedPermutation(p));
		py::dict d;
		d["n"] = t.n;
		d["p"] = count_prime_vertices(t);
		d["twins"] = count_twins(t);
		d["internal"] = count_internal_vertices(t);
		d["pathlength"] = pathlength(t);
		return d;
	}, py::arg("perm"));

	m.def("reversal_distance", [](const std::vector<int>& p, const std::string& target) {
		return reversal_distance(SignedPermutation(p), parse_target(target));
	}, py::arg("perm"), py::arg("target") = "id");
	m.def("sort", [](const std::vector<int>& p, const std::string& target) {
		return to_steps(sort_to_target(SignedPermutation(p), parse_target(target)));
	}, py::arg("perm"), py::arg("target") = "id");

	m.def("perfect_sort", [](const std::vector<int>& p, int max_free_primes, int threads) {
		PerfectOptions opts;
		opts.max_free_primes = max_free_primes;
		opts.threads = threads;
		const PerfectResult r = parsimonious_perfect_scenario(SignedPermutation(p), opts);
		py::dict d;
		d["steps"] = to_steps(r.scenario);
		d["length"] = r.length;
		d["p"] = r.prime_count;
		d["assignment"] = r.chosen_assignment;
		d["explored"] = r.assignments_explored;
		return d;
	}, py::arg("perm"), py::arg("max_free_primes") = 20, py::arg("threads") = 1);
	m.def("is_perfect", [](const std::vector<int>& p, const Steps& steps) {
		return validate_perfect(SignedPermutation(p), from_steps(steps));
	}, py::arg("perm"), py::arg("steps"));

	m.def("is_commuting", [](const std::vector<int>& p) { return is_commuting(SignedPermutation(p)); },
	      py::arg("perm"));
	m.def("commuting_scenario", [](const std::vector<int>& p) {
		return to_steps(commuting_scenario(SignedPermutation(p)));
	}, py::arg("perm"));
	m.def("random_permutation", [](int n, std::uint64_t seed) { return to_list(random_signed_permutation(n, seed)); },
	      py::arg("n"), py::arg("seed"));
	m.def("random_commuting", [](int n, std::uint64_t seed, const std::string& method) {
		return to_list(random_commuting_permutation(n, seed, parse_method(method)));
	}, py::arg("n"), py::arg("seed"), py::arg("method") = "cycle");

	m.def("enumerate", [](const std::string& what, int n) { return enumerate_table(what, n).to_json().dump(); },
	      py::arg("what"), py::arg("n"));
	m.def("stats", [](const std::string& model, int n, std::uint64_t trials, std::uint64_t seed, int threads) {
		if (model == "random") return monte_carlo_random_perm_stats(n, trials, seed, threads).to_json().dump();
		if (model == "commuting") return monte_carlo_commuting_stats(n, trials, seed, threads).to_json().dump();
		throw ParseError("model must be 'random' or 'commuting'");
	}, py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);
}
