#pragma once

#include "relations.hpp"
#include "twist.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace veech {

inline constexpr const char * kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    long q_max = 64;
    int precision_start_bits = 64;
    int workers = 0; // 0 = all logical cores
    std::string prefilter_tolerance = "1e-6";
    std::string output_path; // empty = stdout
    std::string format = "json";
    bool include_timings = false; // timings break byte-identity; off by default

    int effective_workers() const;
    double tolerance_value() const;
};

using Json = nlohmann::ordered_json;

// rationals as "num/den" strings, never floats
std::string rat_str(const Rat & r);

Json enumeration_json(const EnumerationResult & e);
Json pair_search_json(const PairSearchResult & r);
Json det_search_json(const DetSearchResult & r);
Json classification_json(const Classification & c, const RunConfig & cfg,
                         const std::map<std::string, double> & timings);

std::string render(const Json & j, const std::string & format);

// exit-code policy: 0 = classification complete and unique, 2 = complete but
// different survivor set, 3 = incompleteness flag present
int classification_exit_code(const Classification & c);

void write_output(const std::string & text, const std::string & path);

} // namespace veech
