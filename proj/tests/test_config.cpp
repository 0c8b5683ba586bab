#include "kempner/config.hpp"
#include "kempner/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kempner;

namespace {

std::string error_text(const std::string& doc) {
    try {
        config::parse_text(doc);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigInvalid);
        return e.what();
    }
    return "";
}

std::string build_error(const std::string& doc) {
    try {
        config::build_constraint(config::parse_text(doc));
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("presets round-trip through JSON") {
    for (const auto& name : config::preset_names()) {
        const auto cfg = config::preset(name);
        const auto text = config::to_json(cfg).dump();
        CHECK(config::parse_text(text) == cfg);
        CHECK(config::to_json(config::parse_text(text)).dump() == text);
        CHECK_NOTHROW(config::build_constraint(cfg));
    }
    CHECK_THROWS_AS(config::preset("nope"), Error);
}

TEST_CASE("full schema parses") {
    const std::string doc = R"({
      "sequence": {"kind": "explicit", "values": [3, 5], "extend": "cycle", "bound_hint": 5},
      "constraint": {
        "index_set": {"kind": "complement", "of": {"kind": "arithmetic", "first": 1, "step": 4}},
        "forbidden": {"default": [0], "overrides": {"2": [1, 2], "4": "nonzero"}}
      },
      "params": {"max_k": 5, "n_max": "1000", "budget": 10, "delta": "1/4"}
    })";
    const auto cfg = config::parse_text(doc);
    CHECK(cfg.sequence.values == std::vector<std::uint64_t>{3, 5});
    CHECK(cfg.index_set.of.size() == 1);
    CHECK(cfg.forbidden_overrides.at(4).nonzero);
    CHECK(cfg.params.delta == "1/4");
    CHECK(config::parse_text(config::to_json(cfg).dump()) == cfg);
    const auto c = config::build_constraint(cfg);
    CHECK(c.sequence().quotient(3) == 5);
    CHECK_FALSE(c.index_set().contains(5));
    CHECK(c.forbidden(2)->contains(std::uint64_t{2}));
}

TEST_CASE("validation errors name the field path") {
    CHECK(error_text("[1]").find("$") != std::string::npos);
    CHECK(error_text("{not json").size() > 0);
    CHECK(error_text(R"({"sequence": {"kind": "weird"}})").find("sequence.kind") != std::string::npos);
    CHECK(error_text(R"({"sequence": {"kind": "constant"}})").find("sequence.d") != std::string::npos);
    CHECK(error_text(R"({"sequence": {"kind": "constant", "d": "ten"}})").find("sequence.d") != std::string::npos);
    CHECK(error_text(R"({"sequence": {"kind": "constant", "d": 10},
        "constraint": {"index_set": {"kind": "arithmetic", "first": 0}, "forbidden": {"default": [9]}}})")
              .find("constraint.index_set.step") != std::string::npos);
    CHECK(error_text(R"({"sequence": {"kind": "constant", "d": 10},
        "constraint": {"index_set": {"kind": "all"}, "forbidden": {"default": [9], "overrides": {"x": [1]}}}})")
              .find("constraint.forbidden.overrides") != std::string::npos);
    CHECK(build_error(R"({"sequence": {"kind": "constant", "d": 10},
        "constraint": {"index_set": {"kind": "all"}, "forbidden": {"default": [10]}}})")
              .find("DigitOutOfRange") != std::string::npos);
    CHECK(build_error(R"({"sequence": {"kind": "constant", "d": 1},
        "constraint": {"index_set": {"kind": "all"}, "forbidden": {"default": [0]}}})")
              .find("sequence") != std::string::npos);
}

TEST_CASE("preset contents") {
    const auto k = test::kempner10();
    CHECK(k.sequence().bound_hint() == 10u);
    CHECK(*k.forbidden(3) == DigitSet::listed({9}));
    const auto g = config::build_constraint(config::preset("base-g-no-c", 7, 0));
    CHECK(g.sequence().quotient(4) == 7);
    CHECK(*g.forbidden(0) == DigitSet::listed({0}));
    const auto d = test::preset("div-log");
    CHECK(d.index_set().contains(16));
    CHECK_FALSE(d.index_set().contains(8));
}
