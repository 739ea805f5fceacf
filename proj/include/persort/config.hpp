#pragma once

#include <string>

namespace persort {

// Acceptance thresholds for the Monte Carlo and asymptotic checks. Defaults
// match config/tolerances.toml; the file may override any subset.
struct Tolerances {
	double schroder_rel = 0.03;
	double shape_fraction_min = 0.98;
	double mean_twins_lo = 1.9;
	double mean_twins_hi = 2.1;
	double twin_tv_max = 0.05;
	double exhaustive_twin_tv_max = 0.15;
	double mean_2p_max = 51.0;
	double commuting_rel = 0.05;
	double internal_vertex_series_rel = 0.02;
	double pathlength_series_rel = 0.03;
};

// Reads "key = value" lines; '#' starts a comment, [sections] are ignored.
// Throws ParseError on unknown keys or malformed values.
Tolerances load_tolerances(const std::string& path);
// PERSORT_TOLERANCES if set, else config/tolerances.toml in the source tree
// when present, else the defaults.
Tolerances default_tolerances();

} // namespace persort
