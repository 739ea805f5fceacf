/*****************************************************************
 * persort: command-line front end.
 *
 *   persort tree      1 -3 -2 5 4 6 [--json]
 *   persort sort      1 -3 -2 5 4 6 [--perfect|--plain] [--max-p P] [--json]
 *   persort check     1 -3 -2 5 4 6 --scenario s.json [--plain]
 *   persort commuting 1 -3 -2 5 4 6
 *   persort random    --n N --seed S [--commuting] [--count C]
 *   persort stats     --model random|commuting --n N --trials T --seed S
 *   persort enumerate --what schroder|simple|primecounts|pathlength --n N
 *
 * Exit codes: 0 success, 1 domain error, 2 usage or parse error.
 *****************************************************************/

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "persort/analytics.hpp"
#include "persort/commuting.hpp"
#include "persort/errors.hpp"
#include "persort/perfect_sort.hpp"
#include "persort/permutation.hpp"
#include "persort/reversal_sort.hpp"
#include "persort/sit.hpp"

using namespace persort;

namespace {

class UsageError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct PermInput {
	std::vector<std::string> tokens;
	std::string file;

	void attach(CLI::App* cmd) {
		cmd->add_option("perm", tokens, "Signed permutation, e.g. 1 -3 -2 5 4 6");
		cmd->add_option("--file", file, "Read the permutation from a file");
	}

	SignedPermutation read() const {
		std::string text;
		if (!file.empty()) {
			std::ifstream in(file);
			if (!in) throw UsageError("cannot open " + file);
			std::stringstream ss;
			ss << in.rdbuf();
			text = ss.str();
		} else {
			for (const std::string& t : tokens) text += t + " ";
		}
		if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("no permutation given");
		return parse_permutation(text);
	}
};

bool ci_mode() {
	const char* ci = std::getenv("CI");
	return ci != nullptr && std::string(ci) == "1";
}

void require_seed(const CLI::Option* seed_opt) {
	if (ci_mode() && seed_opt->count() == 0) throw UsageError("CI=1: randomized commands require --seed");
}

std::string summary(const SitTree& t) {
	return "n=" + std::to_string(t.n) + " p=" + std::to_string(count_prime_vertices(t)) +
	       " twins=" + std::to_string(count_twins(t));
}

nlohmann::json plain_json(const SignedPermutation& sigma, const Scenario& s) {
	nlohmann::json j = scenario_to_json(sigma, s, count_prime_vertices(build_sit(sigma)));
	j["mode"] = "plain";
	return j;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Perfect sorting by reversals via strong interval trees"};
	app.require_subcommand(1);

	PermInput tree_in;
	bool tree_json = false;
	auto* tree = app.add_subcommand("tree", "Print the strong interval tree");
	tree_in.attach(tree);
	tree->add_flag("--json", tree_json, "JSON output");

	PermInput sort_in;
	bool sort_plain = false, sort_json = false;
	int max_p = 20, sort_threads = 1;
	auto* sort = app.add_subcommand("sort", "Parsimonious (perfect) sorting scenario");
	sort_in.attach(sort);
	auto* perfect_flag = sort->add_flag("--perfect", "Perfect scenario (default)");
	sort->add_flag("--plain", sort_plain, "Parsimonious scenario without the perfectness constraint")->excludes(perfect_flag);
	sort->add_option("--max-p", max_p, "Largest number of free prime vertices explored")->check(CLI::Range(0, 40));
	sort->add_option("--threads", sort_threads, "Worker threads")->check(CLI::Range(1, 256));
	sort->add_flag("--json", sort_json, "JSON output");

	PermInput check_in;
	std::string check_file;
	bool check_plain = false;
	auto* check = app.add_subcommand("check", "Validate a scenario JSON against a permutation");
	check_in.attach(check);
	check->add_option("--scenario", check_file, "Scenario JSON file")->required();
	check->add_flag("--plain", check_plain, "Only require the end state");

	PermInput comm_in;
	auto* comm = app.add_subcommand("commuting", "Commuting test and unique commuting scenario");
	comm_in.attach(comm);

	int rnd_n = 0, rnd_count = 1;
	std::uint64_t rnd_seed = 0;
	bool rnd_commuting = false;
	auto* rnd = app.add_subcommand("random", "Random signed permutations");
	rnd->add_option("--n", rnd_n, "Size")->required()->check(CLI::PositiveNumber);
	auto* rnd_seed_opt = rnd->add_option("--seed", rnd_seed, "Seed");
	rnd->add_option("--count", rnd_count, "Number of permutations")->check(CLI::PositiveNumber);
	rnd->add_flag("--commuting", rnd_commuting, "Uniform commuting permutations");

	std::string st_model, st_format = "json";
	int st_n = 0, st_threads = 1;
	std::uint64_t st_trials = 0, st_seed = 0;
	auto* stats = app.add_subcommand("stats", "Monte Carlo statistics report");
	stats->add_option("--model", st_model, "random or commuting")->required()->check(CLI::IsMember({"random", "commuting"}));
	stats->add_option("--n", st_n, "Size")->required()->check(CLI::PositiveNumber);
	stats->add_option("--trials", st_trials, "Number of trials")->required()->check(CLI::PositiveNumber);
	auto* st_seed_opt = stats->add_option("--seed", st_seed, "Master seed");
	stats->add_option("--threads", st_threads, "Worker threads")->check(CLI::Range(1, 256));
	stats->add_option("--format", st_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

	std::string en_what, en_format = "json";
	int en_n = 0;
	auto* en = app.add_subcommand("enumerate", "Exact count tables");
	en->add_option("--what", en_what, "schroder, simple, primecounts, pathlength, internal, commuting")
	    ->required()
	    ->check(CLI::IsMember({"schroder", "simple", "primecounts", "pathlength", "internal", "commuting"}));
	en->add_option("--n", en_n, "Largest size")->required()->check(CLI::PositiveNumber);
	en->add_option("--format", en_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int rc = app.exit(e);
		return rc == 0 ? 0 : 2;
	}

	try {
		if (tree->parsed()) {
			const SitTree t = build_sit(tree_in.read());
			if (tree_json) {
				nlohmann::json j = tree_to_json(t);
				j["summary"] = {{"n", t.n}, {"p", count_prime_vertices(t)}, {"twins", count_twins(t)}};
				std::cout << j.dump(2) << '\n';
			} else {
				std::cout << tree_to_text(t) << '\n' << summary(t) << '\n';
			}
		} else if (sort->parsed()) {
			const SignedPermutation sigma = sort_in.read();
			nlohmann::json j;
			Scenario s;
			if (sort_plain) {
				s = sort_to_target(sigma, SortTarget::Identity);
				if (classify_sorted(apply_scenario(sigma, s)) == SortedState::Neither) {
					throw std::logic_error("internal error: plain scenario does not sort");
				}
				j = plain_json(sigma, s);
			} else {
				PerfectOptions opts;
				opts.max_free_primes = max_p;
				opts.threads = sort_threads;
				const PerfectResult r = parsimonious_perfect_scenario(sigma, opts);
				s = r.scenario;
				if (!validate_perfect(sigma, s)) throw std::logic_error("internal error: scenario is not perfect");
				j = scenario_to_json(sigma, s, r.prime_count);
				j["mode"] = "perfect";
				j["assignments_explored"] = r.assignments_explored;
			}
			if (sort_json) {
				std::cout << j.dump(2) << '\n';
			} else {
				for (const auto& step : j["steps"]) {
					std::cout << "reverse " << step["lo"].get<int>() << ".." << step["hi"].get<int>() << " "
					          << step["set"].dump() << '\n';
				}
				std::cout << "length=" << s.length() << " target=" << j["target"].get<std::string>() << '\n';
			}
		} else if (check->parsed()) {
			const SignedPermutation sigma = check_in.read();
			std::ifstream in(check_file);
			if (!in) throw UsageError("cannot open " + check_file);
			nlohmann::json j;
			try {
				j = nlohmann::json::parse(in);
			} catch (const nlohmann::json::exception& e) {
				throw ParseError(std::string("scenario json: ") + e.what());
			}
			const ScenarioDocument doc = scenario_from_json(j);
			if (!(doc.source == sigma)) throw DomainError("scenario source differs from the given permutation");
			bool ok = false;
			try {
				ok = check_plain ? classify_sorted(apply_scenario(sigma, doc.scenario)) != SortedState::Neither
				                 : validate_perfect(sigma, doc.scenario);
			} catch (const std::out_of_range&) {
				ok = false;
			}
			std::cout << (ok ? "valid" : "invalid") << " length=" << doc.scenario.length() << '\n';
			return ok ? 0 : 1;
		} else if (comm->parsed()) {
			const SignedPermutation sigma = comm_in.read();
			if (!is_commuting(sigma)) {
				std::cout << "commuting=false\n";
				return 1;
			}
			const Scenario s = commuting_scenario(sigma);
			std::cout << "commuting=true\n" << scenario_to_json(sigma, s, 0).dump(2) << '\n';
		} else if (rnd->parsed()) {
			require_seed(rnd_seed_opt);
			const CommutingSampler sampler(rnd_n);
			for (int i = 0; i < rnd_count; ++i) {
				const std::uint64_t seed = trial_seed(rnd_seed, static_cast<std::uint64_t>(i));
				Rng rng(seed);
				std::cout << format_permutation(rnd_commuting ? sampler.sample(rng) : random_signed_permutation(rnd_n, rng))
				          << '\n';
			}
		} else if (stats->parsed()) {
			require_seed(st_seed_opt);
			const StatsReport rep = st_model == "random" ? monte_carlo_random_perm_stats(st_n, st_trials, st_seed, st_threads)
			                                             : monte_carlo_commuting_stats(st_n, st_trials, st_seed, st_threads);
			std::cout << (st_format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv());
		} else if (en->parsed()) {
			CountTable t;
			if (en_what == "schroder") {
				t = schroder_numbers(en_n);
			} else if (en_what == "simple") {
				t = simple_counts_bruteforce(en_n);
			} else if (en_what == "primecounts") {
				t = count_by_prime_vertices(en_n);
			} else if (en_what == "pathlength") {
				t = pathlength_series(en_n);
			} else if (en_what == "internal") {
				t = internal_vertex_series(en_n);
			} else {
				t.name = "commuting";
				for (int n = 2; n <= en_n; ++n) t.rows.push_back({n, 0, commuting_count(n)});
			}
			std::cout << (en_format == "json" ? t.to_json().dump(2) + "\n" : t.to_csv());
		}
	} catch (const UsageError& e) {
		std::cerr << "usage error: " << e.what() << '\n';
		return 2;
	} catch (const ParseError& e) {
		std::cerr << "parse error: " << e.what() << '\n';
		return 2;
	} catch (const BudgetExceeded& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const DomainError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
