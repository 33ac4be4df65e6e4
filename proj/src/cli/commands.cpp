#include "qadder/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qadder/capacity.hpp"
#include "qadder/codes.hpp"
#include "qadder/documents.hpp"
#include "qadder/schur.hpp"
#include "qadder/verify.hpp"

namespace qadder::cli {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string scenario;
    std::string mode;
    std::optional<double> alpha;
    std::size_t restarts = 20;
    std::size_t budget = 20000;
    std::uint64_t seed = 42;
    std::size_t max = 0;
    std::vector<std::size_t> list;
    std::string code;
    std::string out;
    std::string format = "json";
    bool corrupt_psi_minus = false;
};

double parse_alpha(const std::string &text) {
    const char *begin = text.c_str();
    char *end = nullptr;
    const double a = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size()) {
        throw UsageError("alpha '" + text + "' is not a number");
    }
    return a;
}

std::string format_alpha(double a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

// Splits "ss:<alpha>" and plain "ss" (taking --alpha) into a tag and alpha.
struct ScenarioSpec {
    std::string tag;
    std::optional<double> alpha;
    std::string echo;
};

ScenarioSpec split_scenario(const Config &c) {
    ScenarioSpec s;
    const auto colon = c.scenario.find(':');
    s.tag = c.scenario.substr(0, colon);
    s.echo = c.scenario;
    if (colon != std::string::npos) {
        if (s.tag != "ss") {
            throw UsageError("scenario '" + c.scenario + "' takes no parameter");
        }
        if (c.alpha) {
            throw UsageError("give alpha either as ss:<alpha> or with --alpha, not both");
        }
        s.alpha = parse_alpha(c.scenario.substr(colon + 1));
    } else if (s.tag == "ss") {
        if (!c.alpha) {
            throw UsageError("scenario ss needs an alpha: ss:<alpha> or --alpha");
        }
        s.alpha = c.alpha;
        s.echo = "ss:" + format_alpha(*c.alpha);
    } else if (c.alpha) {
        throw UsageError("--alpha only applies to the ss scenario");
    }
    return s;
}

template <typename Doc>
std::string render(const Doc &d, const std::string &format) {
    return format == "csv" ? to_csv(d) : to_json(d);
}

void emit(const Config &c, const std::string &text, std::ostream &out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + c.out + "' for writing");
    }
    f << text;
    if (!f) {
        throw UsageError("failed writing '" + c.out + "'");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read code file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

int cmd_region(const Config &c, std::ostream &out) {
    const auto s = split_scenario(c);
    RateRegion region = [&] {
        if (s.tag == "classical") {
            return named_region("classical");
        }
        if (s.tag == "ghz") {
            return named_region("ghz");
        }
        if (s.tag == "2ebit") {
            return named_region("two_ebit_unitary");
        }
        if (s.tag == "ss") {
            return time_sharing_region(time_sharing_params(*s.alpha));
        }
        throw UsageError("unknown region scenario '" + c.scenario + "' (classical, ss:<alpha>, ghz, 2ebit)");
    }();
    emit(c, render(make_region_document(s.echo, region), c.format), out);
    return kOk;
}

int cmd_optimize(const Config &c, std::ostream &out) {
    const auto s = split_scenario(c);
    ScenarioTag tag;
    if (s.tag == "unassisted") {
        tag = ScenarioTag::unassisted;
    } else if (s.tag == "ss") {
        tag = ScenarioTag::sender_sender;
    } else if (s.tag == "ghz") {
        tag = ScenarioTag::ghz;
    } else if (s.tag == "2ebit") {
        tag = ScenarioTag::two_ebit;
    } else {
        throw UsageError("unknown optimize scenario '" + c.scenario + "' (unassisted, ss:<alpha>, ghz, 2ebit)");
    }
    EncodingMode mode = tag == ScenarioTag::unassisted ? EncodingMode::prepare : EncodingMode::unitary;
    if (c.mode == "prepare") {
        mode = EncodingMode::prepare;
    } else if (c.mode == "unitary") {
        mode = EncodingMode::unitary;
    } else if (c.mode == "pauli") {
        mode = EncodingMode::pauli;
    }
    const auto scenario = [&] {
        try {
            return Scenario(tag, mode, s.alpha.value_or(1.0));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }();

    OptimizeOptions opt;
    opt.restarts = c.restarts;
    opt.seed = c.seed;
    opt.budget = c.budget;
    const auto r = optimize_rate_sum(scenario, opt);

    OptimizeDocument d;
    d.scenario = s.echo;
    d.mode = to_string(mode);
    d.alpha = s.alpha.value_or(1.0);
    d.seed = c.seed;
    d.restarts = c.restarts;
    d.budget = c.budget;
    d.best_value = r.best_value;
    d.evaluations = r.evaluations;
    d.best_restart = r.best_restart;
    d.sender1 = r.sender1;
    d.sender2 = r.sender2;
    emit(c, render(d, c.format), out);
    return kOk;
}

int cmd_ratesum(const Config &c, std::ostream &out) {
    std::vector<std::size_t> senders = c.list;
    for (std::size_t l = 1; l <= c.max; ++l) {
        senders.push_back(l);
    }
    if (senders.empty()) {
        throw UsageError("ratesum needs --max or --list");
    }
    std::sort(senders.begin(), senders.end());
    senders.erase(std::unique(senders.begin(), senders.end()), senders.end());
    emit(c, render(RateSumDocument{rate_sum_table(senders)}, c.format), out);
    return kOk;
}

int cmd_simulate(const Config &c, std::ostream &out) {
    const auto colon = c.code.find(':');
    const std::string kind = c.code.substr(0, colon);
    const auto alpha = adder_channel(2);
    SimulationDocument d;
    if (kind == "dense") {
        if (colon != std::string::npos) {
            throw UsageError("the dense code takes no file");
        }
        const auto code = dense_coding_code();
        d = make_simulation_document(c.code, code.n(), code.rates(), error_probability(code, alpha));
    } else if (kind == "ghz-lift" || kind == "classical" || kind == "wrap") {
        if (colon == std::string::npos || colon + 1 == c.code.size()) {
            throw UsageError("code '" + kind + "' needs a file: " + kind + ":<path>");
        }
        const std::string path = c.code.substr(colon + 1);
        const auto base = parse_code_file(read_file(path), path);
        const auto base_perf = classical_code_performance(base);
        if (kind == "classical") {
            d = make_simulation_document(c.code, base.n(), base.rates(), base_perf);
        } else if (kind == "wrap") {
            const auto wrapped = wrap_shared_randomness(base);
            d = make_simulation_document(c.code, base.n(), base.rates(), shared_randomness_performance(wrapped));
            d.base_average_error = base_perf.average_error;
        } else {
            const auto lifted = [&] {
                try {
                    return ghz_lift(base);
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
            }();
            d = make_simulation_document(c.code, lifted.n(), lifted.rates(), error_probability(lifted, alpha));
            d.base_average_error = base_perf.average_error;
        }
    } else {
        throw UsageError("unknown code '" + c.code + "' (dense, ghz-lift:<file>, classical:<file>, wrap:<file>)");
    }
    emit(c, render(d, c.format), out);
    return kOk;
}

int cmd_verify(const Config &c, std::ostream &out, std::ostream &err) {
    VerifyOptions opt;
    opt.seed = c.seed;
    opt.corrupt_psi_minus = c.corrupt_psi_minus;
    VerifyDocument d;
    d.seed = c.seed;
    d.suites = run_verification(opt);
    d.passed = all_passed(d.suites);
    for (const auto &s : d.suites) {
        err << (s.passed() ? "pass " : "FAIL ") << s.name << ": " << s.checked << " checked, " << s.failed
            << " failed";
        if (!s.passed()) {
            err << " (first: " << s.detail << ")";
        }
        err << "\n";
    }
    emit(c, render(d, c.format), out);
    return d.passed ? kOk : kVerificationFailed;
}

std::optional<std::uint64_t> env_seed() {
    const char *s = std::getenv("QADDER_SEED");
    if (s == nullptr || *s == '\0') {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    const auto end = s + std::char_traits<char>::length(s);
    const auto [ptr, ec] = std::from_chars(s, end, v);
    if (ec != std::errc() || ptr != end || v == 0) {
        throw UsageError(std::string("QADDER_SEED='") + s + "' is not a positive integer");
    }
    return v;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Config c;
    try {
        c.seed = env_seed().value_or(42);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    CLI::App app{"Capacity regions, rate-sum searches and code simulations for the quantum binary adder channel.",
                 "qadder"};
    app.require_subcommand(1);

    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--out", c.out, "Write the document to this file instead of stdout");
        sub->add_option("--format", c.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };
    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", c.seed, "Seed for every random choice (default: QADDER_SEED or 42)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    auto *region = app.add_subcommand("region", "Capacity region constraints and vertices");
    region->add_option("--scenario", c.scenario, "classical, ss:<alpha>, ghz or 2ebit")->required();
    region->add_option("--alpha", c.alpha, "Sender-sender amplitude for --scenario ss");
    add_output(region);

    auto *optimize = app.add_subcommand("optimize", "Search for the largest rate sum over input ensembles");
    optimize->add_option("--scenario", c.scenario, "unassisted, ss:<alpha>, ghz or 2ebit")->required();
    optimize->add_option("--mode", c.mode, "Encoding (default: prepare when unassisted, else unitary)")
        ->check(CLI::IsMember({"prepare", "unitary", "pauli"}));
    optimize->add_option("--alpha", c.alpha, "Sender-sender amplitude for --scenario ss");
    optimize->add_option("--restarts", c.restarts, "Number of restarts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimize->add_option("--budget", c.budget, "Objective evaluations per restart")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_seed(optimize);
    add_output(optimize);

    auto *ratesum = app.add_subcommand("ratesum", "Quantum and classical rate sums for L senders");
    auto *max = ratesum->add_option("--max", c.max, "Rows for L = 1..max")->check(CLI::PositiveNumber);
    ratesum->add_option("--list", c.list, "Comma-separated values of L")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->excludes(max);
    add_output(ratesum);

    auto *simulate = app.add_subcommand("simulate", "Exact error probabilities of a code");
    simulate->add_option("--code", c.code, "dense, ghz-lift:<file>, classical:<file> or wrap:<file>")->required();
    add_output(simulate);

    auto *verify = app.add_subcommand("verify", "Run the built-in invariant suites");
    add_seed(verify);
    add_output(verify);
    verify->add_flag("--corrupt-psi-minus", c.corrupt_psi_minus, "Test hook")->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (region->parsed()) {
            return cmd_region(c, out);
        }
        if (optimize->parsed()) {
            return cmd_optimize(c, out);
        }
        if (ratesum->parsed()) {
            return cmd_ratesum(c, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(c, out);
        }
        return cmd_verify(c, out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DocumentError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kVerificationFailed;
    }
}

}  // namespace qadder::cli
