#include "persort/reversal_sort.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace persort {

namespace {

class DisjointSets {
public:
	explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
	int find(int x) {
		while (parent_[static_cast<std::size_t>(x)] != x) {
			parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
			x = parent_[static_cast<std::size_t>(x)];
		}
		return x;
	}
	void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

private:
	std::vector<int> parent_;
};

// Framed node sequence of the breakpoint graph: element +x is (2x-1, 2x),
// element -x is (2x, 2x-1), framed by 0 and 2n+1.
struct BreakpointGraph {
	int n;
	std::vector<int> node_at;   // position -> node
	std::vector<int> pos_of;    // node -> position

	explicit BreakpointGraph(std::span<const int> values) : n(static_cast<int>(values.size())) {
		const auto size = static_cast<std::size_t>(2 * n + 2);
		node_at.assign(size, 0);
		pos_of.assign(size, 0);
		node_at[0] = 0;
		for (int i = 1; i <= n; ++i) {
			const int x = values[static_cast<std::size_t>(i - 1)];
			const int a = std::abs(x);
			node_at[static_cast<std::size_t>(2 * i - 1)] = x > 0 ? 2 * a - 1 : 2 * a;
			node_at[static_cast<std::size_t>(2 * i)] = x > 0 ? 2 * a : 2 * a - 1;
		}
		node_at[size - 1] = 2 * n + 1;
		for (std::size_t p = 0; p < size; ++p) pos_of[static_cast<std::size_t>(node_at[p])] = static_cast<int>(p);
	}

	// Gray edge k joins nodes 2k and 2k+1; returns its position interval.
	std::pair<int, int> gray(int k) const {
		const int a = pos_of[static_cast<std::size_t>(2 * k)];
		const int b = pos_of[static_cast<std::size_t>(2 * k + 1)];
		return {std::min(a, b), std::max(a, b)};
	}
};

BreakpointSummary summarize(std::span<const int> values) {
	const BreakpointGraph g(values);
	const int n = g.n;
	const int positions = 2 * n + 2;
	const int edges = n + 1;
	BreakpointSummary out;

	DisjointSets comps(edges);
	std::vector<char> seen(static_cast<std::size_t>(positions), 0);
	for (int start = 0; start < positions; ++start) {
		if (seen[static_cast<std::size_t>(start)]) continue;
		++out.cycles;
		int p = start;
		int first_edge = -1;
		do {
			seen[static_cast<std::size_t>(p)] = 1;
			const int q = p ^ 1;  // black edge partner
			seen[static_cast<std::size_t>(q)] = 1;
			const int node = g.node_at[static_cast<std::size_t>(q)];
			const int edge = node >> 1;
			if (first_edge == -1) first_edge = edge;
			comps.unite(edge, first_edge);
			p = g.pos_of[static_cast<std::size_t>(node ^ 1)];  // gray edge partner
		} while (p != start);
	}

	std::vector<std::pair<int, int>> span(static_cast<std::size_t>(edges));
	for (int k = 0; k < edges; ++k) span[static_cast<std::size_t>(k)] = g.gray(k);
	for (int a = 0; a < edges; ++a) {
		const auto [la, ra] = span[static_cast<std::size_t>(a)];
		for (int b = a + 1; b < edges; ++b) {
			const auto [lb, rb] = span[static_cast<std::size_t>(b)];
			if ((la < lb && lb < ra && ra < rb) || (lb < la && la < rb && rb < ra)) comps.unite(a, b);
		}
	}

	std::vector<int> edge_count(static_cast<std::size_t>(edges), 0);
	std::vector<char> oriented(static_cast<std::size_t>(edges), 0);
	std::vector<char> adjacency(static_cast<std::size_t>(edges), 0);
	for (int k = 0; k < edges; ++k) {
		const int c = comps.find(k);
		++edge_count[static_cast<std::size_t>(c)];
		const auto [l, r] = span[static_cast<std::size_t>(k)];
		if ((l & 1) == (r & 1)) oriented[static_cast<std::size_t>(c)] = 1;
		if (r == l + 1) adjacency[static_cast<std::size_t>(c)] = 1;
	}
	auto unoriented = [&](int c) {
		return !oriented[static_cast<std::size_t>(c)] &&
		       !(edge_count[static_cast<std::size_t>(c)] == 1 && adjacency[static_cast<std::size_t>(c)]);
	};

	// Circular sequence of unoriented components, consecutive repeats merged.
	std::vector<int> ring;
	for (int p = 0; p < positions; ++p) {
		const int c = comps.find(g.node_at[static_cast<std::size_t>(p)] >> 1);
		if (!unoriented(c)) continue;
		if (ring.empty() || ring.back() != c) ring.push_back(c);
	}
	while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

	std::vector<int> runs(static_cast<std::size_t>(edges), 0);
	for (int c : ring) ++runs[static_cast<std::size_t>(c)];
	const std::size_t m = ring.size();
	for (std::size_t i = 0; i < m; ++i) {
		const int c = ring[i];
		if (runs[static_cast<std::size_t>(c)] != 1) continue;
		++out.hurdles;
		// Super hurdle: deleting it would glue the two runs of a neighbour.
		if (m >= 3) {
			const int left = ring[(i + m - 1) % m];
			const int right = ring[(i + 1) % m];
			if (left == right && runs[static_cast<std::size_t>(left)] == 2) ++out.super_hurdles;
		}
	}
	out.fortress = out.hurdles % 2 == 1 && out.hurdles >= 3 && out.super_hurdles == out.hurdles;
	out.distance = n + 1 - out.cycles + out.hurdles + (out.fortress ? 1 : 0);
	return out;
}

// Reversals that turn an oriented gray edge into an adjacency.
std::vector<Reversal> oriented_candidates(std::span<const int> values) {
	const BreakpointGraph g(values);
	std::vector<Reversal> out;
	for (int k = 0; k <= g.n; ++k) {
		const auto [p, q] = g.gray(k);
		if ((p & 1) != (q & 1)) continue;
		if (p & 1) {
			out.push_back({(p + 1) / 2, (q + 1) / 2 - 1});
		} else {
			out.push_back({p / 2 + 1, q / 2});
		}
	}
	return out;
}

Scenario sort_to_identity(const SignedPermutation& sigma) {
	Scenario s;
	SignedPermutation cur = sigma;
	int d = summarize(cur.values()).distance;
	const int n = cur.size();
	while (d > 0) {
		bool found = false;
		auto try_step = [&](Reversal r) {
			SignedPermutation next = apply_reversal(cur, r);
			if (summarize(next.values()).distance == d - 1) {
				cur = std::move(next);
				s.steps.push_back(r);
				--d;
				found = true;
			}
		};
		for (Reversal r : oriented_candidates(cur.values())) {
			try_step(r);
			if (found) break;
		}
		for (int lo = 1; lo <= n && !found; ++lo) {
			for (int hi = lo; hi <= n && !found; ++hi) try_step({lo, hi});
		}
		if (!found) throw std::logic_error("sort_to_target: no distance-decreasing reversal found");
	}
	return s;
}

std::uint64_t factorial(int n) {
	std::uint64_t f = 1;
	for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
	return f;
}

} // namespace

BreakpointSummary breakpoint_summary(const SignedPermutation& sigma) { return summarize(sigma.values()); }

int reversal_distance(const SignedPermutation& sigma) { return summarize(sigma.values()).distance; }

SignedPermutation relabel_for_reversed_target(const SignedPermutation& sigma) {
	const int n = sigma.size();
	std::vector<int> v(static_cast<std::size_t>(n));
	for (int p = 1; p <= n; ++p) {
		const int e = sigma.at(p);
		v[static_cast<std::size_t>(p - 1)] = (e > 0 ? -1 : 1) * (n + 1 - std::abs(e));
	}
	return SignedPermutation(std::move(v));
}

int reversal_distance(const SignedPermutation& sigma, SortTarget target) {
	return target == SortTarget::Identity ? reversal_distance(sigma)
	                                      : reversal_distance(relabel_for_reversed_target(sigma));
}

Scenario sort_to_target(const SignedPermutation& sigma, SortTarget target) {
	return target == SortTarget::Identity ? sort_to_identity(sigma)
	                                      : sort_to_identity(relabel_for_reversed_target(sigma));
}

std::uint64_t signed_rank(std::span<const int> values) {
	const int n = static_cast<int>(values.size());
	std::uint64_t rank = 0;
	std::uint32_t used = 0;
	std::uint64_t signs = 0;
	for (int i = 0; i < n; ++i) {
		const int x = values[static_cast<std::size_t>(i)];
		const int a = std::abs(x);
		const auto below = static_cast<std::uint32_t>((1u << (a - 1)) - 1u);
		const int smaller_unused = (a - 1) - std::popcount(used & below);
		rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller_unused);
		used |= 1u << (a - 1);
		if (x < 0) signs |= std::uint64_t{1} << i;
	}
	return (rank << n) | signs;
}

std::vector<int> signed_unrank(std::uint64_t rank, int n) {
	const std::uint64_t signs = rank & ((std::uint64_t{1} << n) - 1);
	rank >>= n;
	std::vector<int> digits(static_cast<std::size_t>(n));
	for (int i = n - 1; i >= 0; --i) {
		const auto base = static_cast<std::uint64_t>(n - i);
		digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
		rank /= base;
	}
	std::vector<int> out(static_cast<std::size_t>(n));
	std::uint32_t used = 0;
	for (int i = 0; i < n; ++i) {
		int skip = digits[static_cast<std::size_t>(i)];
		int a = 1;
		while (true) {
			if (!(used & (1u << (a - 1)))) {
				if (skip == 0) break;
				--skip;
			}
			++a;
		}
		used |= 1u << (a - 1);
		out[static_cast<std::size_t>(i)] = (signs >> i) & 1 ? -a : a;
	}
	return out;
}

Scenario bfs_oracle_sort(const SignedPermutation& sigma, SortTarget target, int cap) {
	const int n = sigma.size();
	if (n > cap || n > 12) throw std::invalid_argument("bfs_oracle_sort: n=" + std::to_string(n) + " exceeds cap");
	const SignedPermutation goal =
	    target == SortTarget::Identity ? SignedPermutation::identity(n) : SignedPermutation::reversed_identity(n);
	const std::uint64_t goal_rank = signed_rank(goal.values());
	const std::uint64_t start = signed_rank(sigma.values());

	struct Parent {
		std::uint64_t from;
		Reversal step;
	};
	std::unordered_map<std::uint64_t, Parent> parent;
	parent.emplace(start, Parent{start, {}});
	std::vector<std::uint64_t> frontier{start};
	bool reached = start == goal_rank;
	std::vector<int> buf(static_cast<std::size_t>(n));
	while (!reached && !frontier.empty()) {
		std::vector<std::uint64_t> next;
		for (std::uint64_t state : frontier) {
			const std::vector<int> v = signed_unrank(state, n);
			for (int lo = 1; lo <= n && !reached; ++lo) {
				for (int hi = lo; hi <= n && !reached; ++hi) {
					buf = v;
					std::reverse(buf.begin() + (lo - 1), buf.begin() + hi);
					for (int p = lo; p <= hi; ++p) buf[static_cast<std::size_t>(p - 1)] = -buf[static_cast<std::size_t>(p - 1)];
					const std::uint64_t r = signed_rank(buf);
					if (parent.emplace(r, Parent{state, {lo, hi}}).second) {
						next.push_back(r);
						if (r == goal_rank) reached = true;
					}
				}
			}
			if (reached) break;
		}
		frontier = std::move(next);
	}
	Scenario s;
	for (std::uint64_t r = goal_rank; r != start;) {
		const Parent& p = parent.at(r);
		s.steps.push_back(p.step);
		r = p.from;
	}
	std::reverse(s.steps.begin(), s.steps.end());
	return s;
}

DistanceTable::DistanceTable(int n, SortTarget target) : n_(n) {
	if (n < 1 || n > 9) throw std::invalid_argument("DistanceTable: n must be in 1..9");
	const std::uint64_t states = factorial(n) << n;
	dist_.assign(states, 0xFF);
	const SignedPermutation goal =
	    target == SortTarget::Identity ? SignedPermutation::identity(n) : SignedPermutation::reversed_identity(n);
	std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(signed_rank(goal.values()))};
	dist_[frontier.front()] = 0;
	std::vector<int> buf(static_cast<std::size_t>(n));
	for (std::uint8_t level = 0; !frontier.empty(); ++level) {
		std::vector<std::uint32_t> next;
		for (std::uint32_t state : frontier) {
			const std::vector<int> v = signed_unrank(state, n);
			for (int lo = 1; lo <= n; ++lo) {
				for (int hi = lo; hi <= n; ++hi) {
					buf = v;
					std::reverse(buf.begin() + (lo - 1), buf.begin() + hi);
					for (int p = lo; p <= hi; ++p) buf[static_cast<std::size_t>(p - 1)] = -buf[static_cast<std::size_t>(p - 1)];
					const std::uint64_t r = signed_rank(buf);
					if (dist_[r] == 0xFF) {
						dist_[r] = static_cast<std::uint8_t>(level + 1);
						next.push_back(static_cast<std::uint32_t>(r));
					}
				}
			}
		}
		frontier = std::move(next);
	}
}

int DistanceTable::distance(const SignedPermutation& sigma) const {
	if (sigma.size() != n_) throw std::invalid_argument("DistanceTable: size mismatch");
	return dist_[signed_rank(sigma.values())];
}

} // namespace persort
