#include "persort/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string_view>

#include "persort/errors.hpp"

#ifndef PERSORT_SOURCE_DIR
#define PERSORT_SOURCE_DIR "."
#endif

namespace persort {

namespace {

std::string trim(std::string_view s) {
	const auto b = s.find_first_not_of(" \t\r");
	if (b == std::string_view::npos) return {};
	const auto e = s.find_last_not_of(" \t\r");
	return std::string(s.substr(b, e - b + 1));
}

} // namespace

Tolerances load_tolerances(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw ParseError("cannot open tolerance file " + path);
	Tolerances t;
	const std::map<std::string, double*> keys{
	    {"schroder_rel", &t.schroder_rel},
	    {"shape_fraction_min", &t.shape_fraction_min},
	    {"mean_twins_lo", &t.mean_twins_lo},
	    {"mean_twins_hi", &t.mean_twins_hi},
	    {"twin_tv_max", &t.twin_tv_max},
	    {"exhaustive_twin_tv_max", &t.exhaustive_twin_tv_max},
	    {"mean_2p_max", &t.mean_2p_max},
	    {"commuting_rel", &t.commuting_rel},
	    {"internal_vertex_series_rel", &t.internal_vertex_series_rel},
	    {"pathlength_series_rel", &t.pathlength_series_rel},
	};
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		const std::string body = trim(line.substr(0, line.find('#')));
		if (body.empty() || body.front() == '[') continue;
		const auto eq = body.find('=');
		if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
		const std::string key = trim(body.substr(0, eq));
		const std::string value = trim(body.substr(eq + 1));
		const auto it = keys.find(key);
		if (it == keys.end()) throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
		char* end = nullptr;
		const double v = std::strtod(value.c_str(), &end);
		if (value.empty() || end != value.c_str() + value.size()) {
			throw ParseError(path + ":" + std::to_string(lineno) + ": bad number " + value);
		}
		*it->second = v;
	}
	return t;
}

Tolerances default_tolerances() {
	if (const char* env = std::getenv("PERSORT_TOLERANCES")) return load_tolerances(env);
	const std::string path = std::string(PERSORT_SOURCE_DIR) + "/config/tolerances.toml";
	if (std::filesystem::exists(path)) return load_tolerances(path);
	return Tolerances{};
}

} // namespace persort
