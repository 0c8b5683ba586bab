#include "kempner/config.hpp"

#include "kempner/error.hpp"

namespace kempner::config {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ConfigInvalid, path + ": " + what);
}

std::uint64_t get_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) invalid(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::optional<std::uint64_t> opt_u64(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    return get_u64(obj.at(key), path + "." + key);
}

std::uint64_t req_u64(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) invalid(path + "." + key, "required");
    return get_u64(obj.at(key), path + "." + key);
}

std::vector<std::uint64_t> u64_array(const json& j, const std::string& path) {
    if (!j.is_array()) invalid(path, "expected an array of nonnegative integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_u64(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string req_string(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key) || !obj.at(key).is_string()) invalid(path + "." + key, "expected a string");
    return obj.at(key).get<std::string>();
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) invalid(path, "expected an object");
}

SequenceConfig parse_sequence(const json& j, const std::string& path) {
    expect_object(j, path);
    SequenceConfig s;
    s.kind = req_string(j, "kind", path);
    s.bound_hint = opt_u64(j, "bound_hint", path);
    if (s.kind == "constant") {
        s.d = req_u64(j, "d", path);
    } else if (s.kind == "explicit") {
        if (!j.contains("values")) invalid(path + ".values", "required");
        s.values = u64_array(j.at("values"), path + ".values");
        if (j.contains("extend")) {
            s.extend = req_string(j, "extend", path);
            if (s.extend != "repeat-last" && s.extend != "cycle")
                invalid(path + ".extend", "expected \"repeat-last\" or \"cycle\"");
        }
    } else if (s.kind == "power") {
        s.base = req_u64(j, "base", path);
    } else if (s.kind != "factorial") {
        invalid(path + ".kind", "unknown sequence kind \"" + s.kind + "\"");
    }
    return s;
}

IndexSetConfig parse_index_set(const json& j, const std::string& path) {
    expect_object(j, path);
    IndexSetConfig s;
    s.kind = req_string(j, "kind", path);
    if (s.kind == "explicit") {
        if (!j.contains("indices")) invalid(path + ".indices", "required");
        s.indices = u64_array(j.at("indices"), path + ".indices");
    } else if (s.kind == "arithmetic") {
        s.first = req_u64(j, "first", path);
        s.step = req_u64(j, "step", path);
    } else if (s.kind == "powers-of") {
        s.base = req_u64(j, "base", path);
    } else if (s.kind == "complement") {
        if (!j.contains("of")) invalid(path + ".of", "required");
        s.of.push_back(parse_index_set(j.at("of"), path + ".of"));
    } else if (s.kind != "all") {
        invalid(path + ".kind", "unknown index set kind \"" + s.kind + "\"");
    }
    return s;
}

DigitSetConfig parse_digit_set(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() != "nonzero") invalid(path, "expected an array or \"nonzero\"");
        return DigitSetConfig{true, {}};
    }
    return DigitSetConfig{false, u64_array(j, path)};
}

json digit_set_json(const DigitSetConfig& d) { return d.nonzero ? json("nonzero") : json(d.digits); }

json index_set_json(const IndexSetConfig& s) {
    json j;
    j["kind"] = s.kind;
    if (s.kind == "explicit") j["indices"] = s.indices;
    if (s.first) j["first"] = *s.first;
    if (s.step) j["step"] = *s.step;
    if (s.base) j["base"] = *s.base;
    if (!s.of.empty()) j["of"] = index_set_json(s.of.front());
    return j;
}

IndexSet build_index_set(const IndexSetConfig& s) {
    if (s.kind == "all") return IndexSet::all();
    if (s.kind == "explicit") return IndexSet::explicit_set(s.indices);
    if (s.kind == "arithmetic") return IndexSet::arithmetic(*s.first, *s.step);
    if (s.kind == "powers-of") return IndexSet::powers_of(*s.base);
    return IndexSet::complement(build_index_set(s.of.front()));
}

DigitSet build_digit_set(const DigitSetConfig& d) {
    return d.nonzero ? DigitSet::nonzero() : DigitSet::listed(d.digits);
}

// Library errors raised while building get the config section prefixed.
template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigInvalid) throw;
        throw Error(e.code(), path + ": " + e.what());
    }
}

}  // namespace

Config parse(const json& doc) {
    expect_object(doc, "$");
    Config cfg;
    if (!doc.contains("sequence")) invalid("sequence", "required");
    cfg.sequence = parse_sequence(doc.at("sequence"), "sequence");

    if (!doc.contains("constraint")) invalid("constraint", "required");
    const json& c = doc.at("constraint");
    expect_object(c, "constraint");
    if (!c.contains("index_set")) invalid("constraint.index_set", "required");
    cfg.index_set = parse_index_set(c.at("index_set"), "constraint.index_set");

    if (c.contains("forbidden")) {
        const json& f = c.at("forbidden");
        expect_object(f, "constraint.forbidden");
        if (f.contains("default")) cfg.forbidden_default = parse_digit_set(f.at("default"), "constraint.forbidden.default");
        if (f.contains("overrides")) {
            const json& o = f.at("overrides");
            expect_object(o, "constraint.forbidden.overrides");
            for (const auto& [key, value] : o.items()) {
                const std::string path = "constraint.forbidden.overrides." + key;
                auto index = parse_bigint(key);
                if (!index || !to_u64(*index)) invalid(path, "key must be a nonnegative integer index");
                cfg.forbidden_overrides[*to_u64(*index)] = parse_digit_set(value, path);
            }
        }
    }

    if (doc.contains("params")) {
        const json& p = doc.at("params");
        expect_object(p, "params");
        cfg.params.max_k = opt_u64(p, "max_k", "params");
        cfg.params.budget = opt_u64(p, "budget", "params");
        if (p.contains("n_max")) {
            const json& n = p.at("n_max");
            std::string text = n.is_string() ? n.get<std::string>() : n.is_number_unsigned() ? n.dump() : "";
            if (!parse_bigint(text)) invalid("params.n_max", "expected a nonnegative integer");
            cfg.params.n_max = text;
        }
        if (p.contains("delta")) {
            const json& d = p.at("delta");
            std::string text = d.is_string() ? d.get<std::string>() : d.is_number() ? d.dump() : "";
            auto q = parse_rational(text);
            if (!q || sgn(*q) <= 0) invalid("params.delta", "expected a positive rational such as \"2/5\" or 0.4");
            cfg.params.delta = text;
        }
    }
    return cfg;
}

Config parse_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        invalid("$", std::string("malformed JSON: ") + e.what());
    }
    return parse(doc);
}

json to_json(const Config& cfg) {
    json seq;
    seq["kind"] = cfg.sequence.kind;
    if (cfg.sequence.d) seq["d"] = *cfg.sequence.d;
    if (cfg.sequence.kind == "explicit") {
        seq["values"] = cfg.sequence.values;
        seq["extend"] = cfg.sequence.extend;
    }
    if (cfg.sequence.base) seq["base"] = *cfg.sequence.base;
    if (cfg.sequence.bound_hint) seq["bound_hint"] = *cfg.sequence.bound_hint;

    json forbidden = json::object();
    if (cfg.forbidden_default) forbidden["default"] = digit_set_json(*cfg.forbidden_default);
    if (!cfg.forbidden_overrides.empty()) {
        json o = json::object();
        for (const auto& [i, d] : cfg.forbidden_overrides) o[std::to_string(i)] = digit_set_json(d);
        forbidden["overrides"] = o;
    }

    json doc;
    doc["sequence"] = seq;
    doc["constraint"] = {{"index_set", index_set_json(cfg.index_set)}, {"forbidden", forbidden}};

    json params = json::object();
    if (cfg.params.max_k) params["max_k"] = *cfg.params.max_k;
    if (cfg.params.n_max) params["n_max"] = *cfg.params.n_max;
    if (cfg.params.budget) params["budget"] = *cfg.params.budget;
    if (cfg.params.delta) params["delta"] = *cfg.params.delta;
    if (!params.empty()) doc["params"] = params;
    return doc;
}

QuotientSequence build_sequence(const Config& cfg) {
    const SequenceConfig& s = cfg.sequence;
    return with_path("sequence", [&] {
        QuotientRule rule;
        if (s.kind == "constant") rule = ConstantRule{*s.d};
        else if (s.kind == "explicit")
            rule = ExplicitRule{s.values, s.extend == "cycle" ? Extension::Cycle : Extension::RepeatLast};
        else if (s.kind == "power") rule = PowerRule{*s.base};
        else rule = FactorialRule{};
        return make_sequence(rule, s.bound_hint);
    });
}

DigitConstraint build_constraint(const Config& cfg) {
    const QuotientSequence seq = build_sequence(cfg);
    const IndexSet set = with_path("constraint.index_set", [&] { return build_index_set(cfg.index_set); });
    return with_path("constraint.forbidden", [&] {
        ForbiddenSpec spec;
        if (cfg.forbidden_default) spec.default_set = build_digit_set(*cfg.forbidden_default);
        for (const auto& [i, d] : cfg.forbidden_overrides) spec.overrides.emplace(i, build_digit_set(d));
        return make_constraint(seq, set, std::move(spec));
    });
}

std::vector<std::string> preset_names() {
    return {"kempner10", "base-g-no-c", "power2-no-zero", "fixed-bits", "div-log", "open-boundary"};
}

Config preset(const std::string& name, std::uint64_t g, std::uint64_t c) {
    Config cfg;
    auto constant = [&](std::uint64_t d) {
        cfg.sequence.kind = "constant";
        cfg.sequence.d = d;
    };
    auto listed = [](std::vector<std::uint64_t> digits) { return DigitSetConfig{false, std::move(digits)}; };

    if (name == "kempner10") {
        constant(10);
        cfg.index_set.kind = "all";
        cfg.forbidden_default = listed({9});
    } else if (name == "base-g-no-c") {
        constant(g);
        cfg.index_set.kind = "all";
        cfg.forbidden_default = listed({c});
    } else if (name == "power2-no-zero") {
        cfg.sequence.kind = "power";
        cfg.sequence.base = 2;
        cfg.index_set.kind = "all";
        cfg.forbidden_default = listed({0});
    } else if (name == "fixed-bits") {
        // bit 1 at every power-of-two position, except bit 0 at position 2
        constant(2);
        cfg.index_set.kind = "powers-of";
        cfg.index_set.base = 2;
        cfg.forbidden_default = listed({0});
        cfg.forbidden_overrides[2] = listed({1});
    } else if (name == "div-log") {
        constant(2);
        cfg.index_set.kind = "powers-of";
        cfg.index_set.base = 4;
        cfg.forbidden_default = listed({0});
    } else if (name == "open-boundary") {
        constant(2);
        cfg.index_set.kind = "powers-of";
        cfg.index_set.base = 2;
        cfg.forbidden_default = listed({0});
    } else {
        throw Error(ErrorCode::ConfigInvalid, "preset: unknown name \"" + name + "\"");
    }
    return cfg;
}

}  // namespace kempner::config
