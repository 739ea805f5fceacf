// Independent reference implementations used only by the tests. They share
// no code with the library beyond the SignedPermutation container.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "persort/permutation.hpp"

namespace oracle {

using Set = std::set<int>;

inline std::vector<int> magnitudes(const persort::SignedPermutation& s) {
	std::vector<int> a;
	for (int v : s.values()) a.push_back(std::abs(v));
	return a;
}

// Every window whose value set is a run of consecutive integers.
inline std::set<Set> common_intervals(const std::vector<int>& a) {
	std::set<Set> out;
	const int n = static_cast<int>(a.size());
	for (int lo = 0; lo < n; ++lo) {
		for (int hi = lo; hi < n; ++hi) {
			Set s(a.begin() + lo, a.begin() + hi + 1);
			if (*s.rbegin() - *s.begin() == hi - lo) out.insert(s);
		}
	}
	return out;
}

inline bool commute(const Set& a, const Set& b) {
	std::vector<int> both;
	std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
	return both.empty() || both.size() == a.size() || both.size() == b.size();
}

inline std::set<Set> strong_intervals(const std::vector<int>& a) {
	const std::set<Set> all = common_intervals(a);
	std::set<Set> out;
	for (const Set& s : all) {
		bool ok = true;
		for (const Set& t : all) ok = ok && commute(s, t);
		if (ok) out.insert(s);
	}
	return out;
}

inline bool is_simple(const std::vector<int>& a) {
	return common_intervals(a).size() == a.size() + 1;
}

template <class F>
void for_each_permutation(int n, F body) {
	std::vector<int> p(static_cast<std::size_t>(n));
	std::iota(p.begin(), p.end(), 1);
	do {
		body(p);
	} while (std::next_permutation(p.begin(), p.end()));
}

template <class F>
void for_each_signed_permutation(int n, F body) {
	for_each_permutation(n, [&](const std::vector<int>& p) {
		for (int mask = 0; mask < (1 << n); ++mask) {
			std::vector<int> s = p;
			for (int i = 0; i < n; ++i) {
				if (mask & (1 << i)) s[static_cast<std::size_t>(i)] = -s[static_cast<std::size_t>(i)];
			}
			body(persort::SignedPermutation(s));
		}
	});
}

inline std::vector<int> reverse_range(std::vector<int> v, int lo, int hi) {
	std::reverse(v.begin() + (lo - 1), v.begin() + hi);
	for (int p = lo; p <= hi; ++p) v[static_cast<std::size_t>(p - 1)] = -v[static_cast<std::size_t>(p - 1)];
	return v;
}

// Unrestricted BFS distance from v to `goal` (map-based, tiny n only).
inline int bfs_distance(const std::vector<int>& v, const std::vector<int>& goal,
                        const std::function<bool(const std::vector<int>&, int, int)>& allowed = {}) {
	const int n = static_cast<int>(v.size());
	std::map<std::vector<int>, int> dist{{v, 0}};
	std::vector<std::vector<int>> frontier{v};
	if (v == goal) return 0;
	for (int d = 1; !frontier.empty(); ++d) {
		std::vector<std::vector<int>> next;
		for (const auto& cur : frontier) {
			for (int lo = 1; lo <= n; ++lo) {
				for (int hi = lo; hi <= n; ++hi) {
					if (allowed && !allowed(cur, lo, hi)) continue;
					auto w = reverse_range(cur, lo, hi);
					if (w == goal) return d;
					if (dist.emplace(w, d).second) next.push_back(std::move(w));
				}
			}
		}
		frontier = std::move(next);
	}
	return -1;
}

// Unsigned plane trees with every internal vertex of arity >= 2, each
// described by its list of leaf counts of internal vertices (pathlength =
// sum) and the number of twins. Enumerated directly by recursion.
struct ShapeStats {
	int internal = 0;
	long long pathlength = 0;
};

inline std::vector<ShapeStats> enumerate_shapes(int n) {
	std::vector<std::vector<ShapeStats>> trees(static_cast<std::size_t>(n) + 1);
	trees[1].push_back({0, 0});
	for (int m = 2; m <= n; ++m) {
		// Ordered forests of >= 2 trees with m leaves: choose sizes then trees.
		std::function<void(int, int, ShapeStats)> extend = [&](int left, int count, ShapeStats acc) {
			if (left == 0) {
				if (count >= 2) trees[static_cast<std::size_t>(m)].push_back({acc.internal + 1, acc.pathlength + m});
				return;
			}
			for (int j = 1; j <= left; ++j) {
				if (j == m) continue;
				for (const ShapeStats& t : trees[static_cast<std::size_t>(j)]) {
					extend(left - j, count + 1, {acc.internal + t.internal, acc.pathlength + t.pathlength});
				}
			}
		};
		extend(m, 0, {});
	}
	return trees[static_cast<std::size_t>(n)];
}

} // namespace oracle
