#include "persort/sit.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "persort/errors.hpp"

namespace persort {

namespace {

// Range add, range min, and "rightmost zero" over positions 1..n.
// All stored values are >= 0 for positions <= the current scan index.
class MinAddTree {
public:
	explicit MinAddTree(int n) : n_(n), min_(4 * static_cast<std::size_t>(n) + 4, 0), lazy_(min_.size(), 0) {}

	void add(int l, int r, int delta) {
		if (l > r) return;
		add(1, 1, n_, l, r, delta);
	}

	// Largest position p in [l, r] whose value is 0, or -1.
	int rightmost_zero(int l, int r) {
		if (l > r) return -1;
		return rightmost_zero(1, 1, n_, l, r);
	}

private:
	void push(std::size_t node) {
		if (lazy_[node] != 0) {
			for (std::size_t c : {2 * node, 2 * node + 1}) {
				min_[c] += lazy_[node];
				lazy_[c] += lazy_[node];
			}
			lazy_[node] = 0;
		}
	}

	void add(std::size_t node, int nl, int nr, int l, int r, int delta) {
		if (r < nl || nr < l) return;
		if (l <= nl && nr <= r) {
			min_[node] += delta;
			lazy_[node] += delta;
			return;
		}
		push(node);
		const int mid = (nl + nr) / 2;
		add(2 * node, nl, mid, l, r, delta);
		add(2 * node + 1, mid + 1, nr, l, r, delta);
		min_[node] = std::min(min_[2 * node], min_[2 * node + 1]);
	}

	int rightmost_zero(std::size_t node, int nl, int nr, int l, int r) {
		if (r < nl || nr < l || min_[node] > 0) return -1;
		if (nl == nr) return nl;
		push(node);
		const int mid = (nl + nr) / 2;
		const int right = rightmost_zero(2 * node + 1, mid + 1, nr, l, r);
		if (right != -1) return right;
		return rightmost_zero(2 * node, nl, mid, l, r);
	}

	int n_;
	std::vector<int> min_;
	std::vector<int> lazy_;
};

struct BuildNode {
	VertexKind kind;
	int lo, hi, vmin, vmax;
	int sign;
	std::vector<int> kids;
};

std::vector<int> quotient_of(const std::vector<SitVertex>& children) {
	std::vector<int> order(children.size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](int a, int b) {
		return children[static_cast<std::size_t>(a)].vmin < children[static_cast<std::size_t>(b)].vmin;
	});
	std::vector<int> q(children.size());
	for (std::size_t r = 0; r < order.size(); ++r) q[static_cast<std::size_t>(order[r])] = static_cast<int>(r) + 1;
	return q;
}

VertexKind kind_of_quotient(const std::vector<int>& q) {
	if (is_identity(q)) return VertexKind::LinearIncreasing;
	if (is_mirrored_identity(q)) return VertexKind::LinearDecreasing;
	return VertexKind::Prime;
}

SitVertex make_leaf(int pos, int value) {
	SitVertex v;
	v.kind = VertexKind::Leaf;
	v.lo = v.hi = pos;
	v.vmin = v.vmax = std::abs(value);
	v.leaf_sign = value < 0 ? -1 : 1;
	return v;
}

SitVertex materialize(const std::vector<BuildNode>& pool, int id, const SignedPermutation& sigma) {
	const BuildNode& b = pool[static_cast<std::size_t>(id)];
	if (b.kind == VertexKind::Leaf) return make_leaf(b.lo, sigma.at(b.lo));
	SitVertex v;
	v.kind = b.kind;
	v.lo = b.lo;
	v.hi = b.hi;
	v.vmin = b.vmin;
	v.vmax = b.vmax;
	v.children.reserve(b.kids.size());
	for (int k : b.kids) v.children.push_back(materialize(pool, k, sigma));
	v.quotient = quotient_of(v.children);
	if (kind_of_quotient(v.quotient) != v.kind) throw std::logic_error("build_sit: vertex kind disagrees with quotient");
	return v;
}

void visit(const SitVertex& v, const std::function<void(const SitVertex&, const SitVertex*)>& f,
           const SitVertex* parent = nullptr) {
	f(v, parent);
	for (const SitVertex& c : v.children) visit(c, f, &v);
}

} // namespace

bool is_identity(const std::vector<int>& q) {
	for (std::size_t i = 0; i < q.size(); ++i) {
		if (q[i] != static_cast<int>(i) + 1) return false;
	}
	return true;
}

bool is_mirrored_identity(const std::vector<int>& q) {
	const int k = static_cast<int>(q.size());
	for (int i = 0; i < k; ++i) {
		if (q[static_cast<std::size_t>(i)] != k - i) return false;
	}
	return true;
}

const char* kind_name(VertexKind k) {
	switch (k) {
	case VertexKind::Leaf: return "leaf";
	case VertexKind::LinearIncreasing: return "L+";
	case VertexKind::LinearDecreasing: return "L-";
	case VertexKind::Prime: return "P";
	}
	return "?";
}

SitTree build_sit(const SignedPermutation& sigma) {
	const int n = sigma.size();
	std::vector<int> val(static_cast<std::size_t>(n) + 1);
	for (int p = 1; p <= n; ++p) val[static_cast<std::size_t>(p)] = std::abs(sigma.at(p));

	MinAddTree seg(n);
	std::vector<int> max_stack;
	std::vector<int> min_stack;
	std::vector<BuildNode> pool;
	pool.reserve(2 * static_cast<std::size_t>(n));
	std::vector<int> stack;

	auto node = [&](int id) -> BuildNode& { return pool[static_cast<std::size_t>(id)]; };

	// Appends `child` to linear vertex `parent`, flattening a same-direction linear child.
	auto adopt = [&](int parent, int child) {
		if (node(child).kind == node(parent).kind) {
			const std::vector<int> kids = node(child).kids;
			for (int k : kids) node(parent).kids.push_back(k);
		} else {
			node(parent).kids.push_back(child);
		}
		BuildNode& p = node(parent);
		const BuildNode& c = node(child);
		p.lo = std::min(p.lo, c.lo);
		p.hi = std::max(p.hi, c.hi);
		p.vmin = std::min(p.vmin, c.vmin);
		p.vmax = std::max(p.vmax, c.vmax);
	};

	for (int i = 1; i <= n; ++i) {
		const int a = val[static_cast<std::size_t>(i)];
		seg.add(1, i - 1, -1);
		while (!max_stack.empty() && val[static_cast<std::size_t>(max_stack.back())] < a) {
			const int t = max_stack.back();
			max_stack.pop_back();
			const int left = max_stack.empty() ? 1 : max_stack.back() + 1;
			seg.add(left, t, a - val[static_cast<std::size_t>(t)]);
		}
		max_stack.push_back(i);
		while (!min_stack.empty() && val[static_cast<std::size_t>(min_stack.back())] > a) {
			const int t = min_stack.back();
			min_stack.pop_back();
			const int left = min_stack.empty() ? 1 : min_stack.back() + 1;
			seg.add(left, t, val[static_cast<std::size_t>(t)] - a);
		}
		min_stack.push_back(i);

		pool.push_back({VertexKind::Leaf, i, i, a, a, 0, {}});
		int cur = static_cast<int>(pool.size()) - 1;

		while (!stack.empty()) {
			const int t = stack.back();
			const BuildNode& tn = node(t);
			const BuildNode& cn = node(cur);
			const bool up = tn.vmax + 1 == cn.vmin;
			const bool down = cn.vmax + 1 == tn.vmin;

			if ((tn.kind == VertexKind::LinearIncreasing && up) || (tn.kind == VertexKind::LinearDecreasing && down)) {
				adopt(t, cur);
				cur = t;
				stack.pop_back();
				continue;
			}
			if (up || down) {
				const VertexKind kind = up ? VertexKind::LinearIncreasing : VertexKind::LinearDecreasing;
				pool.push_back({kind, tn.lo, tn.lo, tn.vmin, tn.vmin, 0, {}});
				const int fresh = static_cast<int>(pool.size()) - 1;
				adopt(fresh, t);
				adopt(fresh, cur);
				cur = fresh;
				stack.pop_back();
				continue;
			}
			// Shortest common interval ending at i that extends past cur.
			const int l = seg.rightmost_zero(1, node(cur).lo - 1);
			if (l == -1) break;
			std::vector<int> kids{cur};
			int vmin = node(cur).vmin;
			int vmax = node(cur).vmax;
			while (true) {
				if (stack.empty()) throw std::logic_error("build_sit: stack exhausted while closing prime vertex");
				const int s = stack.back();
				stack.pop_back();
				kids.push_back(s);
				vmin = std::min(vmin, node(s).vmin);
				vmax = std::max(vmax, node(s).vmax);
				if (node(s).lo == l) break;
				if (node(s).lo < l) throw std::logic_error("build_sit: common interval starts inside a stacked vertex");
			}
			std::reverse(kids.begin(), kids.end());
			pool.push_back({VertexKind::Prime, l, i, vmin, vmax, 0, std::move(kids)});
			cur = static_cast<int>(pool.size()) - 1;
		}
		stack.push_back(cur);
	}
	if (stack.size() != 1) throw std::logic_error("build_sit: scan ended with more than one vertex");

	SitTree t;
	t.n = n;
	t.root = materialize(pool, stack.front(), sigma);
	return t;
}

std::vector<CommonInterval> strong_intervals_direct(const SignedPermutation& sigma) {
	const std::vector<CommonInterval> all = common_intervals(sigma);
	std::vector<CommonInterval> strong;
	for (const CommonInterval& a : all) {
		bool ok = true;
		for (const CommonInterval& b : all) {
			const bool nested = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
			const bool disjoint = a.hi < b.lo || b.hi < a.lo;
			if (!nested && !disjoint) {
				ok = false;
				break;
			}
		}
		if (ok) strong.push_back(a);
	}
	return strong;
}

SitTree build_sit_direct(const SignedPermutation& sigma) {
	std::vector<CommonInterval> strong = strong_intervals_direct(sigma);
	std::sort(strong.begin(), strong.end(), [](const CommonInterval& a, const CommonInterval& b) {
		return a.lo != b.lo ? a.lo < b.lo : a.length() > b.length();
	});
	// Pre-order over the laminar family; each interval's parent is the
	// innermost enclosing interval still open.
	std::function<SitVertex(std::size_t&)> take = [&](std::size_t& idx) -> SitVertex {
		const CommonInterval ci = strong[idx++];
		if (ci.lo == ci.hi) return make_leaf(ci.lo, sigma.at(ci.lo));
		SitVertex v;
		v.lo = ci.lo;
		v.hi = ci.hi;
		v.vmin = ci.vmin;
		v.vmax = ci.vmax;
		while (idx < strong.size() && strong[idx].hi <= ci.hi) v.children.push_back(take(idx));
		v.quotient = quotient_of(v.children);
		v.kind = kind_of_quotient(v.quotient);
		return v;
	};
	std::size_t idx = 0;
	SitTree t;
	t.n = sigma.size();
	t.root = take(idx);
	return t;
}

std::vector<TreeViolation> validate_tree(const SitTree& t) {
	std::vector<TreeViolation> out;
	int leaves = 0;
	visit(t.root, [&](const SitVertex& v, const SitVertex* parent) {
		const std::string where = "vertex [" + std::to_string(v.lo) + ".." + std::to_string(v.hi) + "]";
		if (v.is_leaf()) {
			++leaves;
			if (v.leaf_sign != 1 && v.leaf_sign != -1) out.push_back({"P2", where + ": leaf sign must be + or -"});
			if (!v.children.empty()) out.push_back({"P4", where + ": leaf has children"});
		} else {
			const std::size_t k = v.children.size();
			if (k < 2) out.push_back({"P4", where + ": internal vertex has " + std::to_string(k) + " child(ren)"});
			// Children spans partition the parent span, left to right.
			if (k > 0) {
				bool tiles = v.children.front().lo == v.lo && v.children.back().hi == v.hi;
				for (std::size_t c = 1; c < k; ++c) tiles = tiles && v.children[c].lo == v.children[c - 1].hi + 1;
				if (!tiles) out.push_back({"P3", where + ": children do not partition the span in order"});
			}
			std::vector<int> sorted = v.quotient;
			std::sort(sorted.begin(), sorted.end());
			if (v.quotient.size() != k || !is_identity(sorted)) {
				out.push_back({"P5", where + ": quotient is not a permutation of the children"});
			} else {
				switch (v.kind) {
				case VertexKind::LinearIncreasing:
					if (!is_identity(v.quotient)) out.push_back({"P5", where + ": L+ vertex without identity quotient"});
					break;
				case VertexKind::LinearDecreasing:
					if (!is_mirrored_identity(v.quotient)) out.push_back({"P5", where + ": L- vertex without mirrored quotient"});
					break;
				case VertexKind::Prime:
					if (k < 4 || !is_simple(v.quotient)) out.push_back({"P5", where + ": prime quotient is not simple of size >= 4"});
					break;
				case VertexKind::Leaf: break;
				}
			}
		}
		if (parent != nullptr && v.is_linear() && v.kind == parent->kind) {
			out.push_back({"P6", where + ": adjacent linear vertices of the same direction"});
		}
	});
	if (leaves != t.n) out.push_back({"P1", "tree has " + std::to_string(leaves) + " leaves, expected " + std::to_string(t.n)});
	return out;
}

void normalize_tree(SitTree& t) {
	std::function<int(SitVertex&, int)> positions = [&](SitVertex& v, int lo) -> int {
		v.lo = lo;
		if (v.is_leaf()) {
			v.hi = lo;
			return 1;
		}
		int size = 0;
		for (SitVertex& c : v.children) size += positions(c, lo + size);
		v.hi = lo + size - 1;
		return size;
	};
	t.n = positions(t.root, 1);

	// m_i = m + sum of sizes of siblings ranked below i in the quotient.
	std::function<void(SitVertex&, int)> values = [&](SitVertex& v, int m) {
		v.vmin = m;
		v.vmax = m + v.size() - 1;
		if (v.is_leaf()) return;
		const std::size_t k = v.children.size();
		if (v.quotient.size() != k) return;
		std::vector<int> by_rank(k + 1, -1);
		for (std::size_t c = 0; c < k; ++c) {
			const int r = v.quotient[c];
			if (r < 1 || r > static_cast<int>(k) || by_rank[static_cast<std::size_t>(r)] != -1) return;
			by_rank[static_cast<std::size_t>(r)] = static_cast<int>(c);
		}
		int next = m;
		for (std::size_t r = 1; r <= k; ++r) {
			SitVertex& c = v.children[static_cast<std::size_t>(by_rank[r])];
			values(c, next);
			next += c.size();
		}
	};
	values(t.root, 1);
}

SignedPermutation tree_to_permutation(const SitTree& t) {
	std::vector<TreeViolation> violations = validate_tree(t);
	if (!violations.empty()) {
		std::string message =
		    "invalid strong interval tree: " + violations.front().rule + " " + violations.front().message;
		throw TreeValidationError(std::move(message), std::move(violations));
	}
	SitTree copy = t;
	normalize_tree(copy);
	std::vector<int> values;
	values.reserve(static_cast<std::size_t>(copy.n));
	visit(copy.root, [&](const SitVertex& v, const SitVertex*) {
		if (v.is_leaf()) values.push_back(v.leaf_sign * v.vmin);
	});
	return SignedPermutation(std::move(values));
}

int count_twins(const SitTree& t) {
	int twins = 0;
	visit(t.root, [&](const SitVertex& v, const SitVertex*) {
		if (v.children.size() == 2 && v.children[0].is_leaf() && v.children[1].is_leaf()) ++twins;
	});
	return twins;
}

int count_prime_vertices(const SitTree& t) {
	int primes = 0;
	visit(t.root, [&](const SitVertex& v, const SitVertex*) {
		if (v.kind == VertexKind::Prime) ++primes;
	});
	return primes;
}

int count_internal_vertices(const SitTree& t) {
	int internal = 0;
	visit(t.root, [&](const SitVertex& v, const SitVertex*) {
		if (!v.is_leaf()) ++internal;
	});
	return internal;
}

long long pathlength(const SitTree& t) {
	long long psi = 0;
	visit(t.root, [&](const SitVertex& v, const SitVertex*) {
		if (!v.is_leaf()) psi += v.size();
	});
	return psi;
}

bool shape_is_prime_with_twins(const SitTree& t) {
	if (t.n < 4 || t.root.kind != VertexKind::Prime) return false;
	return std::all_of(t.root.children.begin(), t.root.children.end(), [](const SitVertex& c) {
		return c.is_leaf() || (c.children.size() == 2 && c.children[0].is_leaf() && c.children[1].is_leaf());
	});
}

bool same_shape(const SitVertex& a, const SitVertex& b) {
	if (a.kind != b.kind || a.quotient != b.quotient || a.children.size() != b.children.size()) return false;
	for (std::size_t i = 0; i < a.children.size(); ++i) {
		if (!same_shape(a.children[i], b.children[i])) return false;
	}
	return true;
}

// ---------------------------------------------------------------- text form

namespace {

void print_vertex(const SitVertex& v, std::string& out) {
	if (v.is_leaf()) {
		out += std::to_string(v.leaf_sign * v.vmin);
		return;
	}
	if (v.kind == VertexKind::Prime) {
		out += "P[";
		for (std::size_t i = 0; i < v.quotient.size(); ++i) {
			if (i) out += ' ';
			out += std::to_string(v.quotient[i]);
		}
		out += ']';
	} else {
		out += v.kind == VertexKind::LinearIncreasing ? "L+" : "L-";
	}
	out += '(';
	for (std::size_t i = 0; i < v.children.size(); ++i) {
		if (i) out += ',';
		print_vertex(v.children[i], out);
	}
	out += ')';
}

class TreeParser {
public:
	explicit TreeParser(std::string_view s) : s_(s) {}

	SitVertex parse_all() {
		SitVertex v = vertex();
		skip();
		if (i_ != s_.size()) fail("trailing characters");
		return v;
	}

private:
	[[noreturn]] void fail(const std::string& what) const {
		throw ParseError("tree text, offset " + std::to_string(i_) + ": " + what);
	}
	void skip() {
		while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
	}
	bool eat(char c) {
		skip();
		if (i_ < s_.size() && s_[i_] == c) {
			++i_;
			return true;
		}
		return false;
	}
	void expect(char c) {
		if (!eat(c)) fail(std::string("expected '") + c + "'");
	}
	int integer() {
		skip();
		std::size_t j = i_;
		if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
		const std::size_t digits = j;
		while (j < s_.size() && s_[j] >= '0' && s_[j] <= '9') ++j;
		if (j == digits) fail("expected integer");
		const int v = std::stoi(std::string(s_.substr(i_, j - i_)));
		i_ = j;
		return v;
	}
	std::vector<SitVertex> children() {
		expect('(');
		std::vector<SitVertex> kids;
		kids.push_back(vertex());
		while (eat(',')) kids.push_back(vertex());
		expect(')');
		return kids;
	}
	SitVertex vertex() {
		skip();
		if (i_ >= s_.size()) fail("unexpected end of input");
		const char c = s_[i_];
		SitVertex v;
		if (c == 'L') {
			++i_;
			if (eat('+')) {
				v.kind = VertexKind::LinearIncreasing;
			} else if (eat('-')) {
				v.kind = VertexKind::LinearDecreasing;
			} else {
				fail("expected L+ or L-");
			}
			v.children = children();
			const int k = static_cast<int>(v.children.size());
			for (int r = 1; r <= k; ++r) v.quotient.push_back(v.kind == VertexKind::LinearIncreasing ? r : k + 1 - r);
			return v;
		}
		if (c == 'P') {
			++i_;
			v.kind = VertexKind::Prime;
			expect('[');
			while (!eat(']')) v.quotient.push_back(integer());
			v.children = children();
			return v;
		}
		// Leaf: a bare sign or a signed integer.
		if ((c == '+' || c == '-') &&
		    (i_ + 1 >= s_.size() || s_[i_ + 1] < '0' || s_[i_ + 1] > '9')) {
			++i_;
			v.leaf_sign = c == '-' ? -1 : 1;
			return v;
		}
		const int value = integer();
		if (value == 0) fail("leaf value 0");
		v.leaf_sign = value < 0 ? -1 : 1;
		v.vmin = v.vmax = std::abs(value);
		return v;
	}

	std::string_view s_;
	std::size_t i_ = 0;
};

nlohmann::json vertex_to_json(const SitVertex& v) {
	nlohmann::json j;
	j["kind"] = kind_name(v.kind);
	j["span"] = {v.lo, v.hi};
	j["values"] = {v.vmin, v.vmax};
	if (v.is_leaf()) {
		j["sign"] = v.leaf_sign < 0 ? "-" : "+";
	} else {
		j["quotient"] = v.quotient;
		nlohmann::json kids = nlohmann::json::array();
		for (const SitVertex& c : v.children) kids.push_back(vertex_to_json(c));
		j["children"] = std::move(kids);
	}
	return j;
}

SitVertex vertex_from_json(const nlohmann::json& j) {
	SitVertex v;
	const std::string kind = j.at("kind").get<std::string>();
	if (kind == "leaf") {
		v.kind = VertexKind::Leaf;
	} else if (kind == "L+") {
		v.kind = VertexKind::LinearIncreasing;
	} else if (kind == "L-") {
		v.kind = VertexKind::LinearDecreasing;
	} else if (kind == "P") {
		v.kind = VertexKind::Prime;
	} else {
		throw ParseError("tree json: unknown vertex kind '" + kind + "'");
	}
	v.lo = j.at("span").at(0).get<int>();
	v.hi = j.at("span").at(1).get<int>();
	v.vmin = j.at("values").at(0).get<int>();
	v.vmax = j.at("values").at(1).get<int>();
	if (v.is_leaf()) {
		const std::string sign = j.at("sign").get<std::string>();
		if (sign != "+" && sign != "-") throw ParseError("tree json: leaf sign must be \"+\" or \"-\"");
		v.leaf_sign = sign == "-" ? -1 : 1;
	} else {
		v.quotient = j.at("quotient").get<std::vector<int>>();
		for (const auto& c : j.at("children")) v.children.push_back(vertex_from_json(c));
	}
	return v;
}

} // namespace

std::string tree_to_text(const SitTree& t) {
	std::string out;
	print_vertex(t.root, out);
	return out;
}

SitTree tree_from_text(std::string_view text) {
	SitTree t;
	t.root = TreeParser(text).parse_all();
	normalize_tree(t);
	return t;
}

nlohmann::json tree_to_json(const SitTree& t) {
	return {{"schema", "persort/1"}, {"n", t.n}, {"root", vertex_to_json(t.root)}};
}

SitTree tree_from_json(const nlohmann::json& j) {
	try {
		SitTree t;
		t.n = j.at("n").get<int>();
		t.root = vertex_from_json(j.at("root"));
		return t;
	} catch (const nlohmann::json::exception& e) {
		throw ParseError(std::string("tree json: ") + e.what());
	}
}

} // namespace persort
