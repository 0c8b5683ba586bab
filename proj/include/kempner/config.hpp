#pragma once

#include "kempner/constraint.hpp"
#include "kempner/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kempner::config {

struct SequenceConfig {
    std::string kind = "constant";  // constant | explicit | power | factorial
    std::optional<std::uint64_t> d;
    std::vector<std::uint64_t> values;
    std::string extend = "repeat-last";  // repeat-last | cycle
    std::optional<std::uint64_t> base;
    std::optional<std::uint64_t> bound_hint;

    friend bool operator==(const SequenceConfig&, const SequenceConfig&) = default;
};

struct IndexSetConfig {
    std::string kind = "all";  // all | explicit | arithmetic | powers-of | complement
    std::vector<std::uint64_t> indices;
    std::optional<std::uint64_t> first;
    std::optional<std::uint64_t> step;
    std::optional<std::uint64_t> base;
    std::vector<IndexSetConfig> of;  // complement operand, exactly one element

    friend bool operator==(const IndexSetConfig&, const IndexSetConfig&) = default;
};

struct DigitSetConfig {
    bool nonzero = false;  // "nonzero" stands for [1, d_i - 1]
    std::vector<std::uint64_t> digits;

    friend bool operator==(const DigitSetConfig&, const DigitSetConfig&) = default;
};

struct ParamsConfig {
    std::optional<std::uint64_t> max_k;
    std::optional<std::string> n_max;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> delta;

    friend bool operator==(const ParamsConfig&, const ParamsConfig&) = default;
};

struct Config {
    SequenceConfig sequence;
    IndexSetConfig index_set;
    std::optional<DigitSetConfig> forbidden_default;
    std::map<std::uint64_t, DigitSetConfig> forbidden_overrides;
    ParamsConfig params;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Throws Error(ConfigInvalid) naming the offending field path.
Config parse(const nlohmann::json& doc);
Config parse_text(const std::string& text);
nlohmann::json to_json(const Config& cfg);

QuotientSequence build_sequence(const Config& cfg);
DigitConstraint build_constraint(const Config& cfg);

std::vector<std::string> preset_names();
/// g and c parameterize "base-g-no-c"; other presets ignore them.
Config preset(const std::string& name, std::uint64_t g = 10, std::uint64_t c = 9);

}  // namespace kempner::config
