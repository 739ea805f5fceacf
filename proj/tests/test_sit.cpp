#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "persort/errors.hpp"
#include "persort/sit.hpp"

using namespace persort;

namespace {

const std::vector<int> kWorkedExample{1, -8, 4, 2, -5, 3, 9, -6, 7, 12, 10, -14, 13, -11, 15, -17, 16, 18};

SignedPermutation P(std::vector<int> v) { return SignedPermutation(std::move(v)); }

std::set<oracle::Set> vertex_sets(const SitTree& t) {
	std::set<oracle::Set> out;
	std::function<void(const SitVertex&)> walk = [&](const SitVertex& v) {
		oracle::Set s;
		for (int x = v.vmin; x <= v.vmax; ++x) s.insert(x);
		out.insert(s);
		for (const SitVertex& c : v.children) walk(c);
	};
	walk(t.root);
	return out;
}

SitVertex leaf(int sign = 1) {
	SitVertex v;
	v.leaf_sign = sign;
	return v;
}

SitVertex linear(bool increasing, std::vector<SitVertex> children) {
	SitVertex v;
	v.kind = increasing ? VertexKind::LinearIncreasing : VertexKind::LinearDecreasing;
	const int k = static_cast<int>(children.size());
	for (int i = 0; i < k; ++i) v.quotient.push_back(increasing ? i + 1 : k - i);
	v.children = std::move(children);
	return v;
}

bool has_rule(const std::vector<TreeViolation>& v, const std::string& rule) {
	return std::any_of(v.begin(), v.end(), [&](const TreeViolation& x) { return x.rule == rule; });
}

} // namespace

TEST_CASE("worked example tree") {
	const SitTree t = build_sit(P(kWorkedExample));
	CHECK(t.n == 18);
	CHECK(t.root.kind == VertexKind::LinearIncreasing);
	CHECK(tree_to_text(t) ==
	      "L+(1,P[3 1 4 2](-8,P[3 1 4 2](4,2,-5,3),9,L+(-6,7)),P[3 1 4 2](12,10,L-(-14,13),-11),15,L-(-17,16),18)");
	CHECK(count_prime_vertices(t) == 3);
	CHECK(count_twins(t) == 3);
	CHECK_FALSE(shape_is_prime_with_twins(t));
	CHECK(validate_tree(t).empty());
	CHECK(tree_to_permutation(t) == P(kWorkedExample));

	// Non-trivial linear vertices are exactly {6,7}, {13,14}, {16,17}.
	std::vector<std::pair<int, int>> linear_spans;
	std::function<void(const SitVertex&)> walk = [&](const SitVertex& v) {
		if (v.is_linear() && &v != &t.root) linear_spans.emplace_back(v.vmin, v.vmax);
		for (const SitVertex& c : v.children) walk(c);
	};
	walk(t.root);
	std::sort(linear_spans.begin(), linear_spans.end());
	CHECK(linear_spans == std::vector<std::pair<int, int>>{{6, 7}, {13, 14}, {16, 17}});
}

TEST_CASE("small trees") {
	const SitTree id = build_sit(SignedPermutation::identity(6));
	CHECK(id.root.kind == VertexKind::LinearIncreasing);
	CHECK(id.root.children.size() == 6);
	CHECK(count_prime_vertices(id) == 0);
	CHECK(count_twins(id) == 0);

	CHECK(tree_to_text(build_sit(P({1, -3, -2, 5, 4, 6}))) == "L+(1,L-(-3,-2),L-(5,4),6)");
	CHECK(count_twins(build_sit(P({2, 1}))) == 1);
	CHECK(build_sit(P({2, 1})).root.kind == VertexKind::LinearDecreasing);

	const SitTree simple = build_sit(P({2, 4, 1, 3}));
	CHECK(count_prime_vertices(simple) == 1);
	CHECK(shape_is_prime_with_twins(simple));
	CHECK(simple.root.quotient == std::vector<int>{2, 4, 1, 3});

	const SitTree grafted = build_sit(P({4, 1, 5, 2, 3}));
	CHECK(shape_is_prime_with_twins(grafted));
	CHECK(count_twins(grafted) == 1);
	CHECK_FALSE(shape_is_prime_with_twins(build_sit(P({1, 3, 2}))));

	const SitTree one = build_sit(P({-1}));
	CHECK(one.root.is_leaf());
	CHECK(tree_to_permutation(one) == P({-1}));
}

TEST_CASE("tree vertices are exactly the strong intervals") {
	for (int n = 1; n <= 7; ++n) {
		oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
			const SitTree t = build_sit(P(p));
			REQUIRE(vertex_sets(t) == oracle::strong_intervals(p));
			REQUIRE(t == build_sit_direct(P(p)));
			REQUIRE(validate_tree(t).empty());
		});
	}
	Rng rng(3);
	for (int trial = 0; trial < 200; ++trial) {
		const int n = 2 + static_cast<int>(rng.below(40));
		const SignedPermutation s = random_signed_permutation(n, rng);
		const SitTree t = build_sit(s);
		CHECK(vertex_sets(t) == oracle::strong_intervals(oracle::magnitudes(s)));
		CHECK(t == build_sit_direct(s));
	}
	for (int trial = 0; trial < 100; ++trial) {
		const SignedPermutation s = random_signed_permutation(200, rng);
		CHECK(build_sit(s) == build_sit_direct(s));
	}
	// Inputs with deep structure: trees sampled from random nested blocks.
	for (int trial = 0; trial < 100; ++trial) {
		std::vector<int> v(150);
		std::iota(v.begin(), v.end(), 1);
		for (int k = 0; k < 30; ++k) {
			const int lo = static_cast<int>(rng.below(150));
			const int hi = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(150 - lo)));
			std::reverse(v.begin() + lo, v.begin() + hi + 1);
		}
		const SignedPermutation s(v);
		CHECK(build_sit(s) == build_sit_direct(s));
		CHECK(vertex_sets(build_sit(s)) == oracle::strong_intervals(v));
	}
}

TEST_CASE("strong_intervals_direct") {
	const auto si = strong_intervals_direct(P({1, -3, -2, 5, 4, 6}));
	std::set<oracle::Set> got;
	for (const CommonInterval& ci : si) {
		const ValueSet v = to_value_set(ci);
		got.insert(oracle::Set(v.begin(), v.end()));
	}
	CHECK(got == oracle::strong_intervals({1, 3, 2, 5, 4, 6}));
}

TEST_CASE("quotients are identity, mirrored identity or simple") {
	Rng rng(8);
	for (int trial = 0; trial < 300; ++trial) {
		const SitTree t = build_sit(random_signed_permutation(3 + static_cast<int>(rng.below(30)), rng));
		std::function<void(const SitVertex&, const SitVertex*)> walk = [&](const SitVertex& v, const SitVertex* parent) {
			if (!v.is_leaf()) {
				const int k = static_cast<int>(v.quotient.size());
				CHECK(k == static_cast<int>(v.children.size()));
				CHECK(k >= 2);
				if (v.kind == VertexKind::LinearIncreasing) CHECK(is_identity(v.quotient));
				if (v.kind == VertexKind::LinearDecreasing) CHECK(is_mirrored_identity(v.quotient));
				if (v.kind == VertexKind::Prime) {
					CHECK(k >= 4);
					CHECK(oracle::is_simple(v.quotient));
				}
				if (parent && v.is_linear()) CHECK(v.kind != parent->kind);
			}
			for (const SitVertex& c : v.children) walk(c, &v);
		};
		walk(t.root, nullptr);
	}
}

TEST_CASE("bijection round trip") {
	for (int n = 1; n <= 5; ++n) {
		std::set<std::string> trees;
		oracle::for_each_signed_permutation(n, [&](const SignedPermutation& s) {
			const SitTree t = build_sit(s);
			REQUIRE(tree_to_permutation(t) == s);
			trees.insert(tree_to_text(t));
		});
		std::size_t expect = 1;
		for (int i = 1; i <= n; ++i) expect *= 2 * static_cast<std::size_t>(i);
		CHECK(trees.size() == expect);
	}
	Rng rng(200);
	for (int trial = 0; trial < 1000; ++trial) {
		const SignedPermutation s = random_signed_permutation(200, rng);
		const SitTree t = build_sit(s);
		REQUIRE(tree_to_permutation(t) == s);
		REQUIRE(build_sit(tree_to_permutation(t)) == t);
	}
}

TEST_CASE("validate_tree reports violations") {
	SitTree ok;
	ok.root = linear(true, {leaf(), leaf(-1), leaf()});
	normalize_tree(ok);
	CHECK(validate_tree(ok).empty());
	CHECK(tree_to_permutation(ok) == P({1, -2, 3}));

	SitTree p6;
	p6.root = linear(true, {linear(true, {leaf(), leaf()}), leaf()});
	normalize_tree(p6);
	CHECK(has_rule(validate_tree(p6), "P6"));
	CHECK_THROWS_AS(tree_to_permutation(p6), TreeValidationError);

	SitTree p4;
	p4.root = linear(true, {linear(false, {leaf()}), leaf()});
	normalize_tree(p4);
	CHECK(has_rule(validate_tree(p4), "P4"));
	CHECK_THROWS_AS(tree_to_permutation(p4), TreeValidationError);

	SitTree p5;
	p5.root = linear(true, {leaf(), leaf(), leaf()});
	p5.root.kind = VertexKind::Prime;
	p5.root.quotient = {2, 1, 3};
	normalize_tree(p5);
	CHECK(has_rule(validate_tree(p5), "P5"));

	SitTree p2;
	p2.root = linear(true, {leaf(), leaf(2)});
	normalize_tree(p2);
	CHECK(has_rule(validate_tree(p2), "P2"));
}

TEST_CASE("text and json serialization round trip") {
	CHECK(tree_to_text(tree_from_text("P[2 4 1 3](1,2,3,4)")) == "P[2 4 1 3](2,4,1,3)");
	CHECK(tree_to_permutation(tree_from_text("P[2 4 1 3](+,-,+,+)")) == P({2, -4, 1, 3}));
	CHECK_THROWS_AS(tree_from_text("P[2 4 1 3](1,2,3"), ParseError);
	CHECK_THROWS_AS(tree_from_text("Q(1,2)"), ParseError);
	CHECK_THROWS_AS(tree_from_json(nlohmann::json::parse(R"({"n": 2})")), ParseError);

	Rng rng(4);
	for (int trial = 0; trial < 200; ++trial) {
		const SignedPermutation s = random_signed_permutation(1 + static_cast<int>(rng.below(60)), rng);
		const SitTree t = build_sit(s);
		CHECK(tree_from_text(tree_to_text(t)) == t);
		CHECK(tree_from_json(tree_to_json(t)) == t);
		CHECK(tree_from_json(nlohmann::json::parse(tree_to_json(t).dump())) == t);
	}
	const SitTree fig = build_sit(P(kWorkedExample));
	const nlohmann::json j = tree_to_json(fig);
	CHECK(j["schema"] == "persort/1");
	CHECK(j["root"]["kind"] == "L+");
}

TEST_CASE("pathlength and internal vertices") {
	const SitTree t = build_sit(P({1, -3, -2, 5, 4, 6}));
	CHECK(count_internal_vertices(t) == 3);
	CHECK(pathlength(t) == 6 + 2 + 2);
	CHECK(pathlength(build_sit(P({1}))) == 0);
	CHECK(same_shape(build_sit(P({1, -3, -2})).root, build_sit(P({1, 3, 2})).root));
}
