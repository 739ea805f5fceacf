#include "persort/perfect_sort.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "persort/errors.hpp"
#include "persort/reversal_sort.hpp"

namespace persort {

namespace {

struct Indexed {
	std::vector<const SitVertex*> order;
	std::unordered_map<const SitVertex*, int> id;
	std::vector<int> parent;

	explicit Indexed(const SitTree& t) {
		std::function<void(const SitVertex&, int)> walk = [&](const SitVertex& v, int par) {
			const int me = static_cast<int>(order.size());
			order.push_back(&v);
			id.emplace(&v, me);
			parent.push_back(par);
			for (const SitVertex& c : v.children) walk(c, me);
		};
		walk(t.root, -1);
	}
};

std::vector<int> full_signs(const SignedTree& st, const std::vector<bool>& assignment) {
	if (assignment.size() != st.unassigned.size()) {
		throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " entries, expected " +
		                            std::to_string(st.unassigned.size()));
	}
	std::vector<int> sign = st.sign;
	for (std::size_t j = 0; j < assignment.size(); ++j) {
		sign[static_cast<std::size_t>(st.unassigned[j])] = assignment[j] ? -1 : 1;
	}
	return sign;
}

SignedPermutation lifted_quotient(const SitVertex& v, const Indexed& ix, const std::vector<int>& sign) {
	std::vector<int> tau(v.quotient.size());
	for (std::size_t c = 0; c < v.children.size(); ++c) {
		tau[c] = v.quotient[c] * sign[static_cast<std::size_t>(ix.id.at(&v.children[c]))];
	}
	return SignedPermutation(std::move(tau));
}

SortTarget target_of(int sign) { return sign > 0 ? SortTarget::Identity : SortTarget::ReversedIdentity; }

int length_with_signs(const Indexed& ix, const std::vector<int>& sign) {
	int total = 0;
	for (std::size_t i = 0; i < ix.order.size(); ++i) {
		const SitVertex& v = *ix.order[i];
		if (v.kind == VertexKind::Prime) {
			total += reversal_distance(lifted_quotient(v, ix, sign), target_of(sign[i]));
		}
		const int par = ix.parent[i];
		if (par >= 0 && ix.order[static_cast<std::size_t>(par)]->is_linear() &&
		    sign[i] != sign[static_cast<std::size_t>(par)]) {
			++total;
		}
	}
	return total;
}

std::vector<bool> bits_of(std::uint64_t mask, std::size_t u) {
	std::vector<bool> bits(u);
	// Bit 0 of the mask is the last free vertex, so numeric order is lexicographic order.
	for (std::size_t j = 0; j < u; ++j) bits[j] = (mask >> (u - 1 - j)) & 1;
	return bits;
}

} // namespace

std::vector<const SitVertex*> preorder(const SitTree& t) { return Indexed(t).order; }

SignedTree assign_forced_signs(const SitTree& t) {
	const Indexed ix(t);
	SignedTree st;
	st.tree = t;
	const std::size_t count = ix.order.size();
	st.sign.assign(count, 0);
	st.forced.assign(count, false);
	for (std::size_t i = 0; i < count; ++i) {
		const SitVertex& v = *ix.order[i];
		const int par = ix.parent[i];
		switch (v.kind) {
		case VertexKind::Leaf:
			st.sign[i] = v.leaf_sign;
			st.forced[i] = true;
			break;
		case VertexKind::LinearIncreasing:
			st.sign[i] = 1;
			st.forced[i] = true;
			break;
		case VertexKind::LinearDecreasing:
			st.sign[i] = -1;
			st.forced[i] = true;
			break;
		case VertexKind::Prime:
			if (par >= 0 && ix.order[static_cast<std::size_t>(par)]->is_linear()) {
				st.sign[i] = st.sign[static_cast<std::size_t>(par)];
				st.forced[i] = true;
			} else {
				st.unassigned.push_back(static_cast<int>(i));
			}
			break;
		}
	}
	return st;
}

int scenario_length_for_assignment(const SignedTree& st, const std::vector<bool>& assignment) {
	const Indexed ix(st.tree);
	return length_with_signs(ix, full_signs(st, assignment));
}

Scenario scenario_for_assignment(const SignedTree& st, const std::vector<bool>& assignment) {
	const Indexed ix(st.tree);
	const std::vector<int> sign = full_signs(st, assignment);
	Scenario s;

	std::function<void(const SitVertex&)> emit = [&](const SitVertex& v) {
		for (const SitVertex& c : v.children) emit(c);
		if (v.is_leaf()) return;
		const int vs = sign[static_cast<std::size_t>(ix.id.at(&v))];
		if (v.is_linear()) {
			for (const SitVertex& c : v.children) {
				if (sign[static_cast<std::size_t>(ix.id.at(&c))] != vs) s.steps.push_back({c.lo, c.hi});
			}
			return;
		}
		// Prime: replay the quotient scenario on blocks of children.
		std::vector<int> width;
		for (const SitVertex& c : v.children) width.push_back(c.size());
		const Scenario q = sort_to_target(lifted_quotient(v, ix, sign), target_of(vs));
		for (const Reversal& r : q.steps) {
			int start = v.lo;
			for (int c = 0; c < r.lo - 1; ++c) start += width[static_cast<std::size_t>(c)];
			int span = 0;
			for (int c = r.lo - 1; c < r.hi; ++c) span += width[static_cast<std::size_t>(c)];
			s.steps.push_back({start, start + span - 1});
			std::reverse(width.begin() + (r.lo - 1), width.begin() + r.hi);
		}
	};
	emit(st.tree.root);
	return s;
}

PerfectResult parsimonious_perfect_scenario(const SignedPermutation& sigma, const PerfectOptions& opts) {
	const SitTree t = build_sit(sigma);
	const SignedTree st = assign_forced_signs(t);
	const Indexed ix(st.tree);
	const std::size_t u = st.unassigned.size();
	if (static_cast<int>(u) > opts.max_free_primes || u >= 63) {
		throw BudgetExceeded("exponential budget exceeded: " + std::to_string(u) + " free prime vertices (cap " +
		                     std::to_string(opts.max_free_primes) + ")");
	}
	const std::uint64_t total = std::uint64_t{1} << u;

	// Each worker keeps the smallest (length, mask) it sees; masks compare in
	// the same order as the bit vectors they encode.
	struct Best {
		int length = -1;
		std::uint64_t mask = 0;
	};
	auto better = [](const Best& a, const Best& b) {
		if (b.length < 0) return true;
		if (a.length < 0) return false;
		return a.length != b.length ? a.length < b.length : a.mask < b.mask;
	};
	auto scan = [&](std::uint64_t begin, std::uint64_t end) {
		Best best;
		for (std::uint64_t mask = begin; mask < end; ++mask) {
			std::vector<int> sign = st.sign;
			const std::vector<bool> bits = bits_of(mask, u);
			for (std::size_t j = 0; j < u; ++j) sign[static_cast<std::size_t>(st.unassigned[j])] = bits[j] ? -1 : 1;
			const Best cand{length_with_signs(ix, sign), mask};
			if (better(cand, best)) best = cand;
		}
		return best;
	};

	const int workers = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(opts.threads, 1)), 1, total));
	std::vector<Best> partial(static_cast<std::size_t>(workers));
	if (workers == 1) {
		partial[0] = scan(0, total);
	} else {
		std::vector<std::thread> pool;
		const std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
		for (int w = 0; w < workers; ++w) {
			const std::uint64_t b = std::min(total, chunk * static_cast<std::uint64_t>(w));
			const std::uint64_t e = std::min(total, b + chunk);
			pool.emplace_back([&, w, b, e] { partial[static_cast<std::size_t>(w)] = scan(b, e); });
		}
		for (std::thread& th : pool) th.join();
	}
	Best best;
	for (const Best& b : partial) {
		if (b.length >= 0 && better(b, best)) best = b;
	}

	PerfectResult out;
	out.prime_count = count_prime_vertices(t);
	out.assignments_explored = total;
	out.chosen_assignment = bits_of(best.mask, u);
	out.scenario = scenario_for_assignment(st, out.chosen_assignment);
	out.length = out.scenario.length();
	if (out.length != best.length) throw std::logic_error("perfect sort: materialized scenario length mismatch");
	out.end_state = classify_sorted(apply_scenario(sigma, out.scenario));
	if (out.end_state == SortedState::Neither) throw std::logic_error("perfect sort: scenario does not sort");
	return out;
}

bool validate_perfect(const SignedPermutation& sigma, const Scenario& s) {
	const int n = sigma.size();
	const std::vector<CommonInterval> cis = common_intervals(sigma);
	SignedPermutation cur = sigma;
	std::vector<int> prefix(static_cast<std::size_t>(n) + 1);
	for (const Reversal& r : s.steps) {
		if (r.lo < 1 || r.hi > n || r.lo > r.hi) return false;
		std::fill(prefix.begin(), prefix.end(), 0);
		for (int p = r.lo; p <= r.hi; ++p) prefix[static_cast<std::size_t>(std::abs(cur.at(p)))] = 1;
		for (std::size_t v = 1; v < prefix.size(); ++v) prefix[v] += prefix[v - 1];
		const int len = r.length();
		for (const CommonInterval& ci : cis) {
			const int shared = prefix[static_cast<std::size_t>(ci.vmax)] - prefix[static_cast<std::size_t>(ci.vmin - 1)];
			if (shared != 0 && shared != len && shared != ci.length()) return false;
		}
		cur = apply_reversal(cur, r);
	}
	return classify_sorted(cur) != SortedState::Neither;
}

int brute_force_perfect_oracle(const SignedPermutation& sigma, int cap) {
	const int n = sigma.size();
	if (n > cap || n > 8) throw std::invalid_argument("brute_force_perfect_oracle: n=" + std::to_string(n) + " exceeds cap");
	std::vector<std::uint64_t> ci_masks;
	for (const CommonInterval& ci : common_intervals(sigma)) {
		std::uint64_t m = 0;
		for (int v = ci.vmin; v <= ci.vmax; ++v) m |= std::uint64_t{1} << (v - 1);
		ci_masks.push_back(m);
	}
	const std::uint64_t id_rank = signed_rank(SignedPermutation::identity(n).values());
	const std::uint64_t bar_rank = signed_rank(SignedPermutation::reversed_identity(n).values());
	std::uint64_t states = std::uint64_t{1} << n;
	for (int i = 2; i <= n; ++i) states *= static_cast<std::uint64_t>(i);
	std::vector<char> seen(states, 0);

	const std::uint64_t start = signed_rank(sigma.values());
	if (start == id_rank || start == bar_rank) return 0;
	seen[start] = 1;
	std::vector<std::uint64_t> frontier{start};
	std::vector<int> buf;
	for (int depth = 1; !frontier.empty(); ++depth) {
		std::vector<std::uint64_t> next;
		for (std::uint64_t state : frontier) {
			const std::vector<int> v = signed_unrank(state, n);
			for (int lo = 1; lo <= n; ++lo) {
				std::uint64_t m = 0;
				for (int hi = lo; hi <= n; ++hi) {
					m |= std::uint64_t{1} << (std::abs(v[static_cast<std::size_t>(hi - 1)]) - 1);
					const bool perfect = std::all_of(ci_masks.begin(), ci_masks.end(), [m](std::uint64_t c) {
						const std::uint64_t x = m & c;
						return x == 0 || x == m || x == c;
					});
					if (!perfect) continue;
					buf = v;
					std::reverse(buf.begin() + (lo - 1), buf.begin() + hi);
					for (int p = lo; p <= hi; ++p) buf[static_cast<std::size_t>(p - 1)] = -buf[static_cast<std::size_t>(p - 1)];
					const std::uint64_t r = signed_rank(buf);
					if (r == id_rank || r == bar_rank) return depth;
					if (!seen[r]) {
						seen[r] = 1;
						next.push_back(r);
					}
				}
			}
		}
		frontier = std::move(next);
	}
	throw std::logic_error("brute_force_perfect_oracle: no perfect scenario found");
}

nlohmann::json scenario_to_json(const SignedPermutation& source, const Scenario& s, int prime_count) {
	nlohmann::json steps = nlohmann::json::array();
	SignedPermutation cur = source;
	for (const Reversal& r : s.steps) {
		steps.push_back({{"lo", r.lo}, {"hi", r.hi}, {"set", content(cur, r)}});
		cur = apply_reversal(cur, r);
	}
	const SortedState end = classify_sorted(cur);
	return {{"schema", "persort/1"},
	        {"source", format_permutation(source)},
	        {"target", end == SortedState::Identity ? "Id" : end == SortedState::ReversedIdentity ? "IdBar" : "none"},
	        {"steps", std::move(steps)},
	        {"length", s.length()},
	        {"p", prime_count}};
}

ScenarioDocument scenario_from_json(const nlohmann::json& j) {
	try {
		ScenarioDocument doc{parse_permutation(j.at("source").get<std::string>()), {}, j.value("target", ""),
		                     j.value("p", 0)};
		for (const auto& step : j.at("steps")) {
			doc.scenario.steps.push_back({step.at("lo").get<int>(), step.at("hi").get<int>()});
		}
		if (j.contains("length") && j.at("length").get<int>() != doc.scenario.length()) {
			throw ParseError("scenario json: length field disagrees with steps");
		}
		return doc;
	} catch (const nlohmann::json::exception& e) {
		throw ParseError(std::string("scenario json: ") + e.what());
	}
}

} // namespace persort
