#include "kempner/cli.hpp"

#include "kempner/config.hpp"
#include "kempner/error.hpp"
#include "kempner/harmonic.hpp"
#include "kempner/kernels.hpp"
#include "kempner/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace kempner::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::string preset_name;
    std::uint64_t g = 10;
    std::uint64_t c = 9;
    std::string format = "text";
};

json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

std::string approx(const Rational& q) {
    std::ostringstream s;
    s << std::setprecision(12) << q.get_d();
    return s.str();
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
    return out;
}

BigInt positive_arg(const std::string& text, const char* what) {
    auto v = parse_bigint(text);
    if (!v) throw Error(ErrorCode::ConfigInvalid, std::string(what) + ": expected a nonnegative integer, got \"" + text + "\"");
    return *v;
}

std::uint64_t default_budget(const config::Config& cfg) {
    if (const char* env = std::getenv("KEMPNER_LAB_BUDGET")) {
        auto v = parse_bigint(env);
        if (!v || !to_u64(*v)) throw Error(ErrorCode::ConfigInvalid, "KEMPNER_LAB_BUDGET: expected a nonnegative integer");
        return *to_u64(*v);
    }
    return cfg.params.budget.value_or(kDefaultBudget);
}

config::Config load_config(const Options& opt) {
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config file " + opt.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        return config::parse_text(buf.str());
    }
    return config::preset(opt.preset_name.empty() ? "kempner10" : opt.preset_name, opt.g, opt.c);
}

void write_blocks(std::ostream& out, const std::vector<BlockReport>& rows, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"k", r.k},
                           {"g_k", r.g_k.get_str()},
                           {"g_k1", r.g_k1.get_str()},
                           {"count", r.count.get_str()},
                           {"bracket_lo", rational_json(r.bracket_lo)},
                           {"bracket_hi", rational_json(r.bracket_hi)},
                           {"cumulative_lo", rational_json(r.cumulative_lo)},
                           {"cumulative_hi", rational_json(r.cumulative_hi)}});
        }
        out << json{{"blocks", arr}}.dump(2) << "\n";
        return;
    }
    if (format == "text") {
        out << std::setw(4) << "k" << std::setw(24) << "g_k" << std::setw(24) << "|A_k|" << std::setw(16) << "lo"
            << std::setw(16) << "hi" << std::setw(16) << "cum_lo" << std::setw(16) << "cum_hi" << "\n";
        for (const auto& r : rows) {
            out << std::setw(4) << r.k << std::setw(24) << r.g_k.get_str() << std::setw(24) << r.count.get_str()
                << std::setw(16) << approx(r.bracket_lo) << std::setw(16) << approx(r.bracket_hi) << std::setw(16)
                << approx(r.cumulative_lo) << std::setw(16) << approx(r.cumulative_hi) << "\n";
        }
        return;
    }
    out << "k,g_k,g_k1,count,bracket_lo_num,bracket_lo_den,bracket_hi_num,bracket_hi_den,cum_lo_num,cum_lo_den,"
           "cum_hi_num,cum_hi_den\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.g_k.get_str() << ',' << r.g_k1.get_str() << ',' << r.count.get_str() << ','
            << r.bracket_lo.get_num().get_str() << ',' << r.bracket_lo.get_den().get_str() << ','
            << r.bracket_hi.get_num().get_str() << ',' << r.bracket_hi.get_den().get_str() << ','
            << r.cumulative_lo.get_num().get_str() << ',' << r.cumulative_lo.get_den().get_str() << ','
            << r.cumulative_hi.get_num().get_str() << ',' << r.cumulative_hi.get_den().get_str() << "\n";
    }
}

json classification_json(const Classification& c) {
    json m = json::object();
    if (c.margin.delta) m["delta"] = rational_json(*c.margin.delta);
    if (c.margin.threshold_index) m["threshold_index"] = *c.margin.threshold_index;
    if (c.margin.asymptotic_index) m["asymptotic_index"] = *c.margin.asymptotic_index;
    if (c.margin.window) m["window"] = *c.margin.window;
    if (c.margin.slack) m["slack"] = *c.margin.slack;
    if (c.margin.tail_sum) {
        m["tail_sum"] = rational_json(*c.margin.tail_sum);
        m["tail_exact"] = c.margin.tail_exact;
    }
    return {{"verdict", to_string(c.verdict)}, {"rule", to_string(c.rule)}, {"margin", m}, {"notes", c.notes}};
}

// Oracle cross-check over [1, upto]. Returns the number of disagreements.
std::uint64_t verify(const DigitConstraint& c, std::uint64_t upto, std::ostream& log, json& summary) {
    std::uint64_t mismatches = 0;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) {
            ++mismatches;
            log << "MISMATCH " << what << "\n";
        }
    };

    const auto reference = oracle::members(c, 1, upto);
    const auto fast = kernels::filter_range_parallel(1, upto, [&c](std::uint64_t n) { return is_member_u64(c, n); });
    check(reference == fast, "membership over [1, " + std::to_string(upto) + "]");

    // A(n) at block boundaries plus deterministic random probes
    std::vector<std::uint64_t> probes;
    const auto& seq = c.sequence();
    for (std::uint64_t k = 0; seq.base_value_u64(k) && *seq.base_value_u64(k) <= upto; ++k) {
        probes.push_back(*seq.base_value_u64(k));
        if (*seq.base_value_u64(k) > 1) probes.push_back(*seq.base_value_u64(k) - 1);
    }
    probes.push_back(upto);
    std::mt19937_64 rng(0x4b656d70ULL);
    std::uniform_int_distribution<std::uint64_t> pick(1, upto);
    for (int i = 0; i < 10'000; ++i) probes.push_back(pick(rng));
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    for (std::uint64_t n : probes) {
        const auto expected = static_cast<std::uint64_t>(std::upper_bound(reference.begin(), reference.end(), n) - reference.begin());
        check(count_upto(c, to_big(n)) == to_big(expected), "A(" + std::to_string(n) + ")");
    }

    // whole blocks inside the range
    std::uint64_t blocks = 0;
    for (std::uint64_t k = 0; seq.base_value_u64(k + 1) && *seq.base_value_u64(k + 1) - 1 <= upto; ++k, ++blocks) {
        const std::uint64_t lo = *seq.base_value_u64(k);
        const std::uint64_t hi = *seq.base_value_u64(k + 1) - 1;
        auto first = std::lower_bound(reference.begin(), reference.end(), lo);
        auto last = std::upper_bound(reference.begin(), reference.end(), hi);
        const std::vector<std::uint64_t> in_block(first, last);
        const BlockCount bc = block_count_exact(c, k);
        check(bc.exact == to_big(in_block.size()), "|A_" + std::to_string(k) + "|");
        check(bc.empty == in_block.empty(), "emptiness of A_" + std::to_string(k));

        std::vector<std::uint64_t> streamed;
        enumerate_block(c, k, in_block.size() + 1, [&](const BigInt& v) { streamed.push_back(*to_u64(v)); });
        check(streamed == in_block, "enumeration of A_" + std::to_string(k));

        const Rational s = oracle::reciprocal_sum(in_block);
        const BlockReport r = block_bracket(c, k);
        check(r.bracket_lo <= s && s <= r.bracket_hi, "bracket of A_" + std::to_string(k));
    }

    summary = {{"upto", upto},
               {"members", reference.size()},
               {"probes", probes.size()},
               {"blocks", blocks},
               {"mismatches", mismatches}};
    return mismatches;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Missing-digit sets in mixed-radix numeration: counts, sums and convergence", "kempner-lab"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--preset", opt.preset_name, "built-in preset (see `preset --list`)");
    app.add_option("--g", opt.g, "radix for base-g-no-c");
    app.add_option("--c", opt.c, "missing digit for base-g-no-c");
    app.add_option("--format", opt.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

    std::string encode_n, decode_digits, member_n, count_upto_arg, sum_upto, density_at, delta_arg;
    std::uint64_t count_k = 0, max_k = 8, verify_upto = 100000, budget_arg = 0;
    bool check_blocks = false, list_presets = false;
    std::string preset_print;

    auto* encode = app.add_subcommand("encode", "digits of N, least significant first");
    encode->add_option("N", encode_n)->required();
    auto* decode = app.add_subcommand("decode", "integer from digits c0,c1,...");
    decode->add_option("DIGITS", decode_digits)->required();
    auto* count = app.add_subcommand("count", "|A_k| or A(N)");
    auto* count_k_opt = count->add_option("--k", count_k, "block index");
    auto* count_upto_opt = count->add_option("--upto", count_upto_arg, "count members <= N");
    count_k_opt->excludes(count_upto_opt);
    auto* member = app.add_subcommand("member", "test membership of N");
    member->add_option("N", member_n)->required();
    auto* sum = app.add_subcommand("sum", "exact sum of 1/a over members a <= N");
    sum->add_option("--upto", sum_upto)->required();
    auto* sum_budget = sum->add_option("--budget", budget_arg, "maximum number of members enumerated");
    auto* blocks = app.add_subcommand("blocks", "per-block counts and reciprocal brackets");
    blocks->add_option("--max-k", max_k);
    blocks->add_flag("--check", check_blocks, "cross-check small blocks against the oracle");
    auto* classify_cmd = app.add_subcommand("classify", "decide convergence of the harmonic series");
    classify_cmd->add_option("--delta", delta_arg, "fixed delta instead of the search grid");
    auto* density_cmd = app.add_subcommand("density", "A(n)/n at the given points");
    density_cmd->add_option("--at", density_at)->required();
    auto* verify_cmd = app.add_subcommand("verify", "cross-check against the brute-force oracle");
    verify_cmd->add_option("--upto", verify_upto);
    auto* preset_cmd = app.add_subcommand("preset", "list presets or print one as a JSON config");
    preset_cmd->add_flag("--list", list_presets);
    preset_cmd->add_option("--name", preset_print);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (preset_cmd->parsed()) {
            if (list_presets || preset_print.empty()) {
                for (const auto& n : config::preset_names()) out << n << "\n";
                return kExitOk;
            }
            out << config::to_json(config::preset(preset_print, opt.g, opt.c)).dump(2) << "\n";
            return kExitOk;
        }

        const config::Config cfg = load_config(opt);
        const DigitConstraint c = config::build_constraint(cfg);
        const bool as_json = opt.format == "json";

        if (encode->parsed()) {
            const Numeral num = to_digits(c.sequence(), positive_arg(encode_n, "N"));
            std::vector<std::string> digits;
            for (const auto& d : num.digits) digits.push_back(d.get_str());
            if (as_json) {
                out << json{{"n", encode_n}, {"digits", digits}}.dump() << "\n";
            } else {
                for (std::size_t i = 0; i < digits.size(); ++i) out << (i ? "," : "") << digits[i];
                out << "\n";
            }
            return kExitOk;
        }

        if (decode->parsed()) {
            Numeral num{{}, c.sequence()};
            for (const auto& part : split_csv(decode_digits)) num.digits.push_back(positive_arg(part, "digit"));
            const BigInt n = from_digits(num);
            out << (as_json ? json{{"n", n.get_str()}}.dump() : n.get_str()) << "\n";
            return kExitOk;
        }

        if (member->parsed()) {
            const bool m = is_member(c, positive_arg(member_n, "N"));
            out << (as_json ? json{{"n", member_n}, {"member", m}}.dump() : std::string(m ? "true" : "false")) << "\n";
            return kExitOk;
        }

        if (count->parsed()) {
            if (count_upto_opt->count() > 0) {
                const BigInt a = count_upto(c, positive_arg(count_upto_arg, "--upto"));
                out << (as_json ? json{{"upto", count_upto_arg}, {"count", a.get_str()}}.dump() : a.get_str()) << "\n";
                return kExitOk;
            }
            const BlockCount bc = block_count_exact(c, count_k);
            if (as_json) {
                out << json{{"k", count_k},
                            {"exact", bc.exact.get_str()},
                            {"product_bound", bc.product_bound.get_str()},
                            {"empty", bc.empty}}
                           .dump()
                    << "\n";
            } else {
                out << "k=" << count_k << " |A_k|=" << bc.exact.get_str() << " product_bound=" << bc.product_bound.get_str()
                    << (bc.empty ? " (empty)" : "") << "\n";
            }
            return kExitOk;
        }

        if (sum->parsed()) {
            const std::uint64_t budget = sum_budget->count() > 0 ? budget_arg : default_budget(cfg);
            const PartialSum s = partial_sum_exact(c, positive_arg(sum_upto, "--upto"), budget);
            if (as_json) {
                out << json{{"upto", sum_upto},
                            {"sum", rational_json(s.value)},
                            {"elements", s.elements},
                            {"truncated", s.truncated}}
                           .dump()
                    << "\n";
            } else {
                out << s.value.get_str() << "\n~ " << approx(s.value) << " over " << s.elements << " members"
                    << (s.truncated ? " (TRUNCATED by budget)" : "") << "\n";
            }
            return s.truncated ? kExitTruncated : kExitOk;
        }

        if (blocks->parsed()) {
            const auto rows = block_reports(c, max_k);
            write_blocks(out, rows, opt.format == "text" ? "csv" : opt.format);
            if (check_blocks) {
                std::uint64_t bad = 0;
                for (const auto& r : rows) {
                    if (r.g_k1 - 1 > 1'000'000) break;
                    const auto hi = *to_u64(BigInt(r.g_k1 - 1));
                    const auto list = oracle::members(c, *to_u64(r.g_k), hi);
                    const Rational s = oracle::reciprocal_sum(list);
                    const bool ok = to_big(list.size()) == r.count && r.bracket_lo <= s && s <= r.bracket_hi;
                    if (!ok) {
                        ++bad;
                        err << "MISMATCH block " << r.k << "\n";
                    }
                }
                if (bad) return kExitMismatch;
            }
            return kExitOk;
        }

        if (classify_cmd->parsed()) {
            std::optional<Rational> delta;
            const std::string dtext = !delta_arg.empty() ? delta_arg : cfg.params.delta.value_or("");
            if (!dtext.empty()) {
                delta = parse_rational(dtext);
                if (!delta || sgn(*delta) <= 0) throw Error(ErrorCode::ConfigInvalid, "--delta: expected a positive rational");
            }
            const Classification r = classify(c, delta);
            if (as_json) {
                out << classification_json(r).dump(2) << "\n";
                return kExitOk;
            }
            out << "verdict: " << to_string(r.verdict) << "\nrule: " << to_string(r.rule) << "\n";
            if (r.margin.delta) out << "delta: " << r.margin.delta->get_str() << "\n";
            if (r.margin.threshold_index)
                out << (r.rule == RuleFired::UnboundedDivergence ? "i0: " : "threshold index (window): ")
                    << *r.margin.threshold_index << "\n";
            if (r.margin.asymptotic_index) out << "asymptotic index: " << *r.margin.asymptotic_index << "\n";
            if (r.margin.slack) out << "slack at window end: " << *r.margin.slack << "\n";
            if (r.margin.tail_sum)
                out << "tail sum" << (r.margin.tail_exact ? ": " : " <= ") << r.margin.tail_sum->get_str() << "\n";
            for (const auto& n : r.notes) out << "note: " << n << "\n";
            return kExitOk;
        }

        if (density_cmd->parsed()) {
            json arr = json::array();
            for (const auto& part : split_csv(density_at)) {
                const Rational q = density(c, positive_arg(part, "--at"));
                if (as_json) arr.push_back({{"n", part}, {"density", rational_json(q)}});
                else out << part << " " << q.get_str() << " ~ " << approx(q) << "\n";
            }
            if (as_json) out << arr.dump() << "\n";
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            json summary;
            const std::uint64_t bad = verify(c, verify_upto, err, summary);
            if (as_json) out << summary.dump() << "\n";
            else out << (bad ? "FAIL" : "OK") << " upto=" << verify_upto << " members=" << summary["members"]
                     << " probes=" << summary["probes"] << " blocks=" << summary["blocks"] << " mismatches=" << bad << "\n";
            return bad ? kExitMismatch : kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    err << "error: " << to_string(ErrorCode::UnknownSubcommand) << "\n";
    return kExitInvalid;
}

}  // namespace kempner::cli
