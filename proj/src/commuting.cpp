#include "persort/commuting.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "persort/errors.hpp"

namespace persort {

namespace {

struct Mismatch {
	int vmin;
	int vmax;
};

// Value sets of vertices whose sign differs from their parent's.
std::vector<Mismatch> mismatched_vertices(const SitTree& t) {
	std::vector<Mismatch> out;
	std::function<void(const SitVertex&, int)> walk = [&](const SitVertex& v, int parent_sign) {
		int sign = 1;
		switch (v.kind) {
		case VertexKind::Leaf: sign = v.leaf_sign; break;
		case VertexKind::LinearIncreasing: sign = 1; break;
		case VertexKind::LinearDecreasing: sign = -1; break;
		case VertexKind::Prime: throw DomainError("permutation is not commuting (prime vertex present)");
		}
		if (parent_sign != 0 && sign != parent_sign) out.push_back({v.vmin, v.vmax});
		for (const SitVertex& c : v.children) walk(c, sign);
	};
	walk(t.root, 0);
	return out;
}

BigInt binomial(int n, int k) {
	if (k < 0 || k > n) return 0;
	BigInt r = 1;
	for (int i = 1; i <= k; ++i) {
		r *= n - k + i;
		r /= i;
	}
	return r;
}

// k distinct values from [0, n) in increasing order (partial Fisher-Yates).
std::vector<int> uniform_subset(int n, int k, Rng& rng) {
	std::vector<int> pool(static_cast<std::size_t>(n));
	std::iota(pool.begin(), pool.end(), 0);
	for (int i = 0; i < k; ++i) {
		const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
		std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
	}
	pool.resize(static_cast<std::size_t>(k));
	std::sort(pool.begin(), pool.end());
	return pool;
}

SitVertex leaf() { return SitVertex{}; }

// Builds a plane tree from a pre-order list of child counts.
SitVertex from_preorder(const std::vector<int>& degree) {
	std::size_t next = 0;
	std::function<SitVertex()> build = [&]() {
		SitVertex v;
		const int d = degree[next++];
		for (int i = 0; i < d; ++i) v.children.push_back(build());
		if (d > 0) v.kind = VertexKind::LinearIncreasing;
		return v;
	};
	return build();
}

} // namespace

long long ReversalProfile::total_length() const {
	return std::accumulate(lengths.begin(), lengths.end(), 0LL);
}

bool is_commuting(const SignedPermutation& sigma) { return count_prime_vertices(build_sit(sigma)) == 0; }

Scenario commuting_scenario(const SignedPermutation& sigma) {
	std::vector<Mismatch> sets = mismatched_vertices(build_sit(sigma));
	std::sort(sets.begin(), sets.end(), [](const Mismatch& a, const Mismatch& b) {
		const int la = a.vmax - a.vmin, lb = b.vmax - b.vmin;
		return la != lb ? la > lb : a.vmin < b.vmin;
	});

	const int n = sigma.size();
	std::vector<int> cur(sigma.values().begin(), sigma.values().end());
	std::vector<int> pos(static_cast<std::size_t>(n) + 1);
	for (int p = 1; p <= n; ++p) pos[static_cast<std::size_t>(std::abs(cur[static_cast<std::size_t>(p - 1)]))] = p;

	Scenario s;
	for (const Mismatch& m : sets) {
		int lo = n;
		for (int v = m.vmin; v <= m.vmax; ++v) lo = std::min(lo, pos[static_cast<std::size_t>(v)]);
		const int hi = lo + (m.vmax - m.vmin);
		s.steps.push_back({lo, hi});
		std::reverse(cur.begin() + (lo - 1), cur.begin() + hi);
		for (int p = lo; p <= hi; ++p) {
			int& e = cur[static_cast<std::size_t>(p - 1)];
			e = -e;
			pos[static_cast<std::size_t>(std::abs(e))] = p;
		}
	}
	return s;
}

ReversalProfile reversal_profile(const SignedPermutation& sigma) {
	const SitTree t = build_sit(sigma);
	std::vector<Mismatch> sets = mismatched_vertices(t);
	std::sort(sets.begin(), sets.end(), [](const Mismatch& a, const Mismatch& b) {
		const int la = a.vmax - a.vmin, lb = b.vmax - b.vmin;
		return la != lb ? la > lb : a.vmin < b.vmin;
	});
	ReversalProfile p;
	p.count = static_cast<int>(sets.size());
	for (const Mismatch& m : sets) {
		const int len = m.vmax - m.vmin + 1;
		p.lengths.push_back(len);
		if (len == 1) ++p.length_one_count;
	}
	p.internal_vertices = count_internal_vertices(t);
	p.pathlength = pathlength(t);
	return p;
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
	if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
	const std::size_t bits = boost::multiprecision::msb(bound) + 1;
	const std::size_t words = (bits + 63) / 64;
	const std::size_t top_bits = bits - 64 * (words - 1);
	for (;;) {
		BigInt r = 0;
		for (std::size_t w = 0; w < words; ++w) {
			std::uint64_t x = rng.next();
			if (w == 0 && top_bits < 64) x >>= (64 - top_bits);
			r <<= 64;
			r += x;
		}
		if (r < bound) return r;
	}
}

CommutingSampler::CommutingSampler(int n, SamplerMethod method) : n_(n), method_(method) {
	if (n < 1) throw std::invalid_argument("commuting sampler: n must be >= 1");
	if (method == SamplerMethod::CycleLemma) {
		// Trees with n leaves and m internal vertices:
		// C(n+m, m) * C(n-2, m-1) / (n+m).
		weight_.assign(static_cast<std::size_t>(n), 0);
		for (int m = 1; m <= n - 1; ++m) {
			weight_[static_cast<std::size_t>(m)] = binomial(n + m, m) * binomial(n - 2, m - 1) / (n + m);
			total_ += weight_[static_cast<std::size_t>(m)];
		}
	} else {
		forest_.assign(static_cast<std::size_t>(n) + 1, std::vector<BigInt>(static_cast<std::size_t>(n) + 1, 0));
		// forest_[1][m] = S_m, with S_m = sum_{k>=2} forest_[k][m].
		forest_[1][1] = 1;
		for (int m = 2; m <= n; ++m) {
			for (int k = 2; k <= m; ++k) {
				BigInt f = 0;
				for (int j = 1; j <= m - k + 1; ++j) {
					f += forest_[1][static_cast<std::size_t>(j)] *
					     forest_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - j)];
				}
				forest_[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] = f;
				forest_[1][static_cast<std::size_t>(m)] += f;
			}
		}
		total_ = forest_[1][static_cast<std::size_t>(n)];
	}
}

SitVertex CommutingSampler::recursive_shape(int m, Rng& rng) const {
	if (m == 1) return leaf();
	BigInt r = uniform_below(forest_[1][static_cast<std::size_t>(m)], rng);
	int k = 2;
	for (; k < m; ++k) {
		const BigInt& f = forest_[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
		if (r < f) break;
		r -= f;
	}
	SitVertex v;
	v.kind = VertexKind::LinearIncreasing;
	int left = m;
	for (int trees = k; trees >= 2; --trees) {
		// First tree size j with weight S_j * F(trees-1, left-j).
		BigInt rr = uniform_below(forest_[static_cast<std::size_t>(trees)][static_cast<std::size_t>(left)], rng);
		int j = 1;
		for (; j < left - trees + 1; ++j) {
			const BigInt w = forest_[1][static_cast<std::size_t>(j)] *
			                 forest_[static_cast<std::size_t>(trees - 1)][static_cast<std::size_t>(left - j)];
			if (rr < w) break;
			rr -= w;
		}
		v.children.push_back(recursive_shape(j, rng));
		left -= j;
	}
	v.children.push_back(recursive_shape(left, rng));
	return v;
}

SitVertex CommutingSampler::sample_shape(Rng& rng) const {
	if (n_ == 1) return leaf();
	if (method_ == SamplerMethod::Recursive) return recursive_shape(n_, rng);

	BigInt r = uniform_below(total_, rng);
	int m = 1;
	for (; m < n_ - 1; ++m) {
		if (r < weight_[static_cast<std::size_t>(m)]) break;
		r -= weight_[static_cast<std::size_t>(m)];
	}
	// Degrees: a uniform composition of n+m-1 into m parts >= 2, i.e. of
	// n-1 into m parts >= 1 plus one each, from m-1 cut points in 1..n-2.
	std::vector<int> cuts = uniform_subset(n_ - 2, m - 1, rng);
	std::vector<int> degrees;
	int prev = 0;
	for (int c : cuts) {
		degrees.push_back(c + 1 - prev + 1);
		prev = c + 1;
	}
	degrees.push_back(n_ - 1 - prev + 1);

	const int total = n_ + m;
	std::vector<int> word(static_cast<std::size_t>(total), 0);
	std::vector<int> slots = uniform_subset(total, m, rng);
	for (std::size_t i = 0; i < slots.size(); ++i) word[static_cast<std::size_t>(slots[i])] = degrees[i];

	// Cycle lemma: start right after the first minimum of the prefix sums of
	// (degree - 1); the rotation is a valid pre-order degree sequence.
	int sum = 0, best = 1, cut = 0;
	for (int i = 0; i < total; ++i) {
		sum += word[static_cast<std::size_t>(i)] - 1;
		if (sum < best) {
			best = sum;
			cut = i + 1;
		}
	}
	std::rotate(word.begin(), word.begin() + (cut % total), word.end());
	return from_preorder(word);
}

SitTree decorate_shape(SitVertex shape, int root_sign, const std::vector<int>& leaf_signs) {
	std::size_t next_leaf = 0;
	std::function<void(SitVertex&, int)> walk = [&](SitVertex& v, int sign) {
		if (v.children.empty()) {
			v.kind = VertexKind::Leaf;
			v.leaf_sign = leaf_signs.at(next_leaf++);
			v.quotient.clear();
			return;
		}
		const int k = static_cast<int>(v.children.size());
		v.kind = sign > 0 ? VertexKind::LinearIncreasing : VertexKind::LinearDecreasing;
		v.quotient.resize(static_cast<std::size_t>(k));
		for (int i = 0; i < k; ++i) v.quotient[static_cast<std::size_t>(i)] = sign > 0 ? i + 1 : k - i;
		for (SitVertex& c : v.children) walk(c, -sign);
	};
	walk(shape, root_sign);
	if (next_leaf != leaf_signs.size()) throw std::invalid_argument("decorate_shape: leaf sign count mismatch");
	SitTree t;
	t.root = std::move(shape);
	normalize_tree(t);
	return t;
}

SitTree CommutingSampler::sample_tree(Rng& rng) const {
	SitVertex shape = sample_shape(rng);
	const int root_sign = rng.coin() ? -1 : 1;
	std::vector<int> signs(static_cast<std::size_t>(n_));
	for (int& s : signs) s = rng.coin() ? -1 : 1;
	return decorate_shape(std::move(shape), root_sign, signs);
}

SignedPermutation CommutingSampler::sample(Rng& rng) const { return tree_to_permutation(sample_tree(rng)); }

SignedPermutation random_commuting_permutation(int n, std::uint64_t seed, SamplerMethod method) {
	Rng rng(seed);
	return CommutingSampler(n, method).sample(rng);
}

std::vector<std::vector<int>> schroder_shape_codes(int n) {
	if (n < 1 || n > 11) throw std::invalid_argument("schroder_shape_codes: n out of range");
	using Code = std::vector<int>;
	std::vector<std::vector<Code>> trees(static_cast<std::size_t>(n) + 1);
	// forests[m]: concatenated codes of ordered lists of >= 1 trees with m leaves.
	std::vector<std::vector<Code>> forests(static_cast<std::size_t>(n) + 1);
	std::vector<std::vector<int>> forest_len(static_cast<std::size_t>(n) + 1);
	trees[1].push_back({0});
	for (int m = 1; m <= n; ++m) {
		const auto mm = static_cast<std::size_t>(m);
		for (int j = 1; j < m; ++j) {
			const auto jj = static_cast<std::size_t>(j);
			for (const Code& first : trees[jj]) {
				for (std::size_t f = 0; f < forests[mm - jj].size(); ++f) {
					Code c{1 + forest_len[mm - jj][f]};
					c.insert(c.end(), first.begin(), first.end());
					c.insert(c.end(), forests[mm - jj][f].begin(), forests[mm - jj][f].end());
					trees[mm].push_back(std::move(c));
				}
			}
		}
		if (m == n) break;
		for (const Code& t : trees[mm]) {
			forests[mm].push_back(t);
			forest_len[mm].push_back(1);
		}
		for (int j = 1; j < m; ++j) {
			const auto jj = static_cast<std::size_t>(j);
			for (const Code& first : trees[jj]) {
				for (std::size_t f = 0; f < forests[mm - jj].size(); ++f) {
					Code c = first;
					c.insert(c.end(), forests[mm - jj][f].begin(), forests[mm - jj][f].end());
					forests[mm].push_back(std::move(c));
					forest_len[mm].push_back(1 + forest_len[mm - jj][f]);
				}
			}
		}
	}
	return std::move(trees[static_cast<std::size_t>(n)]);
}

SitVertex shape_from_code(const std::vector<int>& code) {
	if (code.empty()) throw std::invalid_argument("shape_from_code: empty code");
	return from_preorder(code);
}

} // namespace persort
