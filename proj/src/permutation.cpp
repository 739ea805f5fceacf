#include "persort/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "persort/errors.hpp"

namespace persort {

SignedPermutation::SignedPermutation(std::vector<int> values) : values_(std::move(values)) {
	const int n = size();
	if (n < 1) throw ParseError("permutation must have at least one element");
	std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
	for (int v : values_) {
		if (v == 0) throw ParseError("permutation contains 0");
		const int a = std::abs(v);
		if (a > n) throw ParseError("value " + std::to_string(v) + " out of range for size " + std::to_string(n));
		if (seen[static_cast<std::size_t>(a)]) throw ParseError("duplicate value " + std::to_string(a));
		seen[static_cast<std::size_t>(a)] = 1;
	}
}

SignedPermutation SignedPermutation::identity(int n) {
	std::vector<int> v(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
	return SignedPermutation(std::move(v));
}

SignedPermutation SignedPermutation::reversed_identity(int n) {
	std::vector<int> v(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = -(n - i);
	return SignedPermutation(std::move(v));
}

std::vector<int> SignedPermutation::unsigned_values() const {
	std::vector<int> out(values_.size());
	std::transform(values_.begin(), values_.end(), out.begin(), [](int v) { return std::abs(v); });
	return out;
}

SignedPermutation apply_reversal(const SignedPermutation& sigma, Reversal r) {
	if (r.lo < 1 || r.hi > sigma.size() || r.lo > r.hi) {
		throw std::out_of_range("reversal " + std::to_string(r.lo) + ".." + std::to_string(r.hi) +
		                        " outside 1.." + std::to_string(sigma.size()));
	}
	std::vector<int> v(sigma.values().begin(), sigma.values().end());
	auto first = v.begin() + (r.lo - 1);
	auto last = v.begin() + r.hi;
	std::reverse(first, last);
	std::for_each(first, last, [](int& x) { x = -x; });
	return SignedPermutation(std::move(v));
}

SignedPermutation apply_scenario(const SignedPermutation& sigma, const Scenario& s) {
	SignedPermutation cur = sigma;
	for (const Reversal& r : s.steps) cur = apply_reversal(cur, r);
	return cur;
}

ValueSet content(const SignedPermutation& sigma, Reversal r) {
	if (r.lo < 1 || r.hi > sigma.size() || r.lo > r.hi) throw std::out_of_range("content range out of bounds");
	ValueSet out;
	out.reserve(static_cast<std::size_t>(r.length()));
	for (int p = r.lo; p <= r.hi; ++p) out.push_back(std::abs(sigma.at(p)));
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<CommonInterval> common_intervals(std::span<const int> values) {
	const int n = static_cast<int>(values.size());
	std::vector<CommonInterval> out;
	for (int hi = 1; hi <= n; ++hi) {
		int mn = std::abs(values[static_cast<std::size_t>(hi - 1)]);
		int mx = mn;
		for (int lo = hi; lo >= 1; --lo) {
			const int a = std::abs(values[static_cast<std::size_t>(lo - 1)]);
			mn = std::min(mn, a);
			mx = std::max(mx, a);
			if (mx - mn == hi - lo) out.push_back({lo, hi, mn, mx});
		}
	}
	// Longest first among intervals sharing a right end.
	std::stable_sort(out.begin(), out.end(), [](const CommonInterval& a, const CommonInterval& b) {
		return a.hi != b.hi ? a.hi < b.hi : a.length() > b.length();
	});
	return out;
}

std::vector<CommonInterval> common_intervals(const SignedPermutation& sigma) {
	return common_intervals(sigma.values());
}

ValueSet to_value_set(const CommonInterval& ci) {
	ValueSet s;
	for (int v = ci.vmin; v <= ci.vmax; ++v) s.push_back(v);
	return s;
}

bool intervals_commute(const ValueSet& a, const ValueSet& b) {
	std::size_t shared = 0;
	auto i = a.begin();
	auto j = b.begin();
	while (i != a.end() && j != b.end()) {
		if (*i < *j) {
			++i;
		} else if (*j < *i) {
			++j;
		} else {
			++shared;
			++i;
			++j;
		}
	}
	return shared == 0 || shared == a.size() || shared == b.size();
}

bool is_simple(std::span<const int> pi) {
	const int n = static_cast<int>(pi.size());
	if (n <= 2) return true;
	// Non-trivial common interval = window of length 2..n-1 with max-min = length-1.
	for (int lo = 0; lo < n; ++lo) {
		int mn = std::abs(pi[static_cast<std::size_t>(lo)]);
		int mx = mn;
		for (int hi = lo + 1; hi < n; ++hi) {
			const int a = std::abs(pi[static_cast<std::size_t>(hi)]);
			mn = std::min(mn, a);
			mx = std::max(mx, a);
			if (hi - lo + 1 == n) break;
			if (mx - mn == hi - lo) return false;
		}
	}
	return true;
}

SortedState classify_sorted(const SignedPermutation& sigma) {
	const int n = sigma.size();
	bool id = true;
	bool rev = true;
	for (int p = 1; p <= n; ++p) {
		if (sigma.at(p) != p) id = false;
		if (sigma.at(p) != -(n + 1 - p)) rev = false;
	}
	if (id) return SortedState::Identity;
	if (rev) return SortedState::ReversedIdentity;
	return SortedState::Neither;
}

SignedPermutation random_signed_permutation(int n, Rng& rng) {
	if (n < 1) throw std::invalid_argument("random_signed_permutation: n must be >= 1");
	std::vector<int> v(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
	for (int i = n - 1; i > 0; --i) {
		const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
		std::swap(v[static_cast<std::size_t>(i)], v[j]);
	}
	for (int& x : v) {
		if (rng.coin()) x = -x;
	}
	return SignedPermutation(std::move(v));
}

SignedPermutation random_signed_permutation(int n, std::uint64_t seed) {
	Rng rng(seed);
	return random_signed_permutation(n, rng);
}

SignedPermutation parse_permutation(std::string_view text) {
	std::vector<int> values;
	std::size_t i = 0;
	auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','; };
	while (i < text.size()) {
		while (i < text.size() && is_space(text[i])) ++i;
		if (i >= text.size()) break;
		std::size_t j = i;
		while (j < text.size() && !is_space(text[j])) ++j;
		std::string_view tok = text.substr(i, j - i);
		if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
		int v = 0;
		auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
		if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
			throw ParseError("not an integer: '" + std::string(text.substr(i, j - i)) + "'");
		}
		values.push_back(v);
		i = j;
	}
	return SignedPermutation(std::move(values));
}

std::string format_permutation(const SignedPermutation& sigma) {
	std::string out;
	for (int p = 1; p <= sigma.size(); ++p) {
		if (p > 1) out += ' ';
		out += std::to_string(sigma.at(p));
	}
	return out;
}

} // namespace persort
