#include "qadder/documents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qadder {

using json = nlohmann::ordered_json;

namespace {

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

json header(const char *kind) {
    return json{{"schema_version", kSchemaVersion}, {"document", kind}};
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

// Doubles that may be NaN or infinite go out as null and come back as NaN.
double number_or_nan(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json parse_root(const std::string &text, const char *kind) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw DocumentError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("schema_version") || root["schema_version"] != kSchemaVersion) {
        throw DocumentError("unsupported or missing schema_version (expected 1)");
    }
    if (!root.contains("document") || root["document"] != kind) {
        throw DocumentError(std::string("expected a ") + kind + " document");
    }
    return root;
}

template <typename F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw DocumentError(std::string("bad document: ") + e.what());
    }
}

json label_json(const EncodingLabel &l) {
    if (const auto *b = std::get_if<BlochPoint>(&l)) {
        return {{"kind", "bloch"}, {"theta", b->theta}, {"phi", b->phi}};
    }
    if (const auto *u = std::get_if<UnitaryAngles>(&l)) {
        return {{"kind", "unitary"}, {"theta", u->theta}, {"phi", u->phi}, {"lambda", u->lambda}};
    }
    const auto index = std::get<PauliIndex>(l).index;
    return {{"kind", "pauli"}, {"index", index}, {"name", std::string(1, "IXYZ"[index & 3U])}};
}

EncodingLabel label_from(const json &j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bloch") {
        return BlochPoint{j.at("theta").get<double>(), j.at("phi").get<double>()};
    }
    if (kind == "unitary") {
        return UnitaryAngles{j.at("theta").get<double>(), j.at("phi").get<double>(), j.at("lambda").get<double>()};
    }
    if (kind == "pauli") {
        return PauliIndex{j.at("index").get<unsigned>()};
    }
    throw DocumentError("unknown label kind '" + kind + "'");
}

json weighted_json(const WeightedLabels &w) {
    json labels = json::array();
    for (const auto &l : w.labels) {
        labels.push_back(label_json(l));
    }
    return {{"weights", w.weights}, {"labels", labels}};
}

WeightedLabels weighted_from(const json &j) {
    WeightedLabels w;
    w.weights = j.at("weights").get<std::vector<double>>();
    for (const auto &l : j.at("labels")) {
        w.labels.push_back(label_from(l));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Code files

struct Position {
    std::size_t line;
    std::size_t column;
};

Position position_of(const std::string &text, std::size_t offset) {
    offset = std::min(offset, text.size());
    Position p{1, 1};
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

class CodeFileReader {
   public:
    CodeFileReader(const std::string &text, const std::string &source) : text_(text), source_(source) {}

    [[noreturn]] void fail_at(std::size_t offset, const std::string &message) const {
        const auto p = position_of(text_, offset);
        throw DocumentError(source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + message);
    }

    // Offset of the quoted token `"token"`, searching from `from`; the start of
    // the file when it does not appear.
    std::size_t find_token(const std::string &token, std::size_t from = 0) const {
        const auto at = text_.find("\"" + token + "\"", from);
        return at == std::string::npos ? 0 : at;
    }

    [[noreturn]] void fail_key(const std::string &key, const std::string &message) const {
        fail_at(find_token(key), message);
    }

    [[noreturn]] void fail_entry(const std::string &key, const std::string &entry, const std::string &message) const {
        const auto k = find_token(key);
        const auto e = text_.find("\"" + entry + "\"", k);
        fail_at(e == std::string::npos ? k : e, message);
    }

    AdderCode read() const {
        json root;
        try {
            root = json::parse(text_);
        } catch (const json::parse_error &e) {
            fail_at(token_start(e.byte == 0 ? 0 : e.byte - 1), std::string("parse error: ") + parse_reason(e.what()));
        }
        if (!root.is_object()) {
            fail_at(0, "code file must be a JSON object");
        }
        for (const auto &[key, value] : root.items()) {
            if (key != "n" && key != "book1" && key != "book2" && key != "decoder") {
                fail_key(key, "unknown field '" + key + "'");
            }
        }
        if (!root.contains("n")) {
            fail_at(0, "missing field 'n'");
        }
        const auto &jn = root["n"];
        if (!jn.is_number_integer() || jn.get<long long>() < 1 || jn.get<long long>() > 64) {
            fail_key("n", "'n' must be an integer between 1 and 64");
        }
        const auto n = jn.get<std::size_t>();
        auto book1 = read_book(root, "book1", n);
        auto book2 = read_book(root, "book2", n);
        std::optional<ClassicalDecoder> decoder;
        if (root.contains("decoder")) {
            decoder = read_decoder(root["decoder"], n, book1.size(), book2.size());
        }
        try {
            return AdderCode(n, std::move(book1), std::move(book2), std::move(decoder));
        } catch (const std::invalid_argument &e) {
            const std::string what = e.what();
            for (const char *key : {"decoder", "book1", "book2"}) {
                if (what.find(key) != std::string::npos) {
                    fail_key(key, what);
                }
            }
            fail_key("n", what);
        }
    }

   private:
    // The parser stops on the last character it read; walk back to the start
    // of the token that character belongs to.
    std::size_t token_start(std::size_t at) const {
        if (at >= text_.size()) {
            return text_.size();
        }
        auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+'; };
        if (std::isspace(static_cast<unsigned char>(text_[at])) && at > 0 && word(text_[at - 1])) {
            --at;
        }
        if (word(text_[at])) {
            while (at > 0 && word(text_[at - 1])) {
                --at;
            }
        } else if (text_[at] == '"' && at > 0) {
            const auto open = text_.rfind('"', at - 1);
            if (open != std::string::npos) {
                at = open;
            }
        }
        return at;
    }

    [[noreturn]] void fail_decoder_key(const std::string &key, const std::string &message) const {
        fail_at(find_token(key, find_token("decoder")), message);
    }

    static std::string parse_reason(const std::string &what) {
        // nlohmann messages look like "[json.exception.parse_error.101] parse error at line 1, column 5: <reason>".
        const auto colon = what.find(": ");
        return colon == std::string::npos ? what : what.substr(colon + 2);
    }

    std::vector<BitWord> read_book(const json &root, const char *key, std::size_t n) const {
        if (!root.contains(key)) {
            fail_at(0, std::string("missing field '") + key + "'");
        }
        const auto &jb = root[key];
        if (!jb.is_array() || jb.empty()) {
            fail_key(key, std::string("'") + key + "' must be a nonempty array of bit strings");
        }
        std::vector<BitWord> book;
        for (const auto &jw : jb) {
            if (!jw.is_string()) {
                fail_key(key, std::string("entries of '") + key + "' must be strings");
            }
            const auto s = jw.get<std::string>();
            if (s.size() != n || s.find_first_not_of("01") != std::string::npos) {
                fail_entry(key, s, "'" + s + "' is not a bit string of length " + std::to_string(n));
            }
            BitWord w;
            for (char c : s) {
                w.push_back(static_cast<std::uint8_t>(c - '0'));
            }
            if (std::find(book.begin(), book.end(), w) != book.end()) {
                fail_entry(key, s, "'" + s + "' appears twice in " + key);
            }
            book.push_back(std::move(w));
        }
        return book;
    }

    ClassicalDecoder read_decoder(const json &jd, std::size_t n, std::size_t m1, std::size_t m2) const {
        if (!jd.is_object()) {
            fail_key("decoder", "'decoder' must be an object from sum words to [i, j]");
        }
        ClassicalDecoder d;
        for (const auto &[key, value] : jd.items()) {
            SumWord y;
            std::stringstream ss(key);
            std::string symbol;
            while (std::getline(ss, symbol, ',')) {
                if (symbol != "0" && symbol != "1" && symbol != "2") {
                    fail_decoder_key(key, "decoder key '" + key + "' must be symbols 0, 1 or 2 joined by commas");
                }
                y.push_back(static_cast<std::uint8_t>(symbol[0] - '0'));
            }
            if (y.size() != n || (!key.empty() && key.back() == ',')) {
                fail_decoder_key(key, "decoder key '" + key + "' must have " + std::to_string(n) + " symbols");
            }
            if (!value.is_array() || value.size() != 2 || !value[0].is_number_unsigned() ||
                !value[1].is_number_unsigned()) {
                fail_decoder_key(key, "decoder value for '" + key + "' must be [i, j] with nonnegative integers");
            }
            const MessagePair m{value[0].get<std::size_t>(), value[1].get<std::size_t>()};
            if (m.first >= m1 || m.second >= m2) {
                fail_decoder_key(key, "decoder value for '" + key + "' is outside the codebooks");
            }
            d[y] = m;
        }
        return d;
    }

    const std::string &text_;
    const std::string &source_;
};

}  // namespace

// ---------------------------------------------------------------------------

RegionDocument make_region_document(const std::string &scenario, const RateRegion &region) {
    return {scenario, region.constraints(), region.vertices(), region.notes(), region.max_rate_sum()};
}

SimulationDocument make_simulation_document(const std::string &code, std::size_t n, std::pair<double, double> rates,
                                            const CodePerformance &perf) {
    SimulationDocument d;
    d.code = code;
    d.n = n;
    d.rate1 = rates.first;
    d.rate2 = rates.second;
    d.average_error = perf.average_error;
    d.max_message_error = perf.max_message_error;
    d.per_message_errors = perf.per_message_errors;
    d.zero_error = perf.max_message_error <= 1e-12;
    return d;
}

std::string to_json(const RegionDocument &d) {
    json j = header("region");
    j["scenario"] = d.scenario;
    j["constraints"] = json::array();
    for (const auto &c : d.constraints) {
        j["constraints"].push_back({{"a", c.a}, {"b", c.b}, {"c", c.c}});
    }
    j["vertices"] = json::array();
    for (const auto &v : d.vertices) {
        j["vertices"].push_back({v.r1, v.r2});
    }
    j["notes"] = d.notes;
    j["max_rate_sum"] = d.max_rate_sum;
    return dump(j);
}

RegionDocument parse_region_document(const std::string &text) {
    const auto j = parse_root(text, "region");
    return guarded([&] {
        RegionDocument d;
        d.scenario = j.at("scenario").get<std::string>();
        for (const auto &c : j.at("constraints")) {
            d.constraints.push_back({c.at("a").get<double>(), c.at("b").get<double>(), c.at("c").get<double>()});
        }
        for (const auto &v : j.at("vertices")) {
            d.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        d.notes = j.at("notes").get<std::vector<std::string>>();
        d.max_rate_sum = j.at("max_rate_sum").get<double>();
        return d;
    });
}

std::string to_json(const OptimizeDocument &d) {
    json j = header("optimize");
    j["scenario"] = d.scenario;
    j["mode"] = d.mode;
    j["alpha"] = d.alpha;
    j["seed"] = d.seed;
    j["restarts"] = d.restarts;
    j["budget"] = d.budget;
    j["best_value"] = d.best_value;
    j["evaluations"] = d.evaluations;
    j["best_restart"] = d.best_restart;
    j["sender1"] = weighted_json(d.sender1);
    j["sender2"] = weighted_json(d.sender2);
    return dump(j);
}

OptimizeDocument parse_optimize_document(const std::string &text) {
    const auto j = parse_root(text, "optimize");
    return guarded([&] {
        OptimizeDocument d;
        d.scenario = j.at("scenario").get<std::string>();
        d.mode = j.at("mode").get<std::string>();
        d.alpha = j.at("alpha").get<double>();
        d.seed = j.at("seed").get<std::uint64_t>();
        d.restarts = j.at("restarts").get<std::size_t>();
        d.budget = j.at("budget").get<std::size_t>();
        d.best_value = j.at("best_value").get<double>();
        d.evaluations = j.at("evaluations").get<std::size_t>();
        d.best_restart = j.at("best_restart").get<std::size_t>();
        d.sender1 = weighted_from(j.at("sender1"));
        d.sender2 = weighted_from(j.at("sender2"));
        return d;
    });
}

std::string to_json(const RateSumDocument &d) {
    json j = header("ratesum");
    j["rows"] = json::array();
    for (const auto &r : d.rows) {
        json row{{"senders", r.senders},
                 {"quantum_sum", r.quantum},
                 {"classical_sum", r.classical},
                 {"asymptote", r.asymptote},
                 {"oracle", nullptr}};
        if (r.oracle) {
            row["oracle"] = *r.oracle;
        }
        j["rows"].push_back(row);
    }
    return dump(j);
}

RateSumDocument parse_rate_sum_document(const std::string &text) {
    const auto j = parse_root(text, "ratesum");
    return guarded([&] {
        RateSumDocument d;
        for (const auto &r : j.at("rows")) {
            RateSumRow row{r.at("senders").get<std::size_t>(), r.at("quantum_sum").get<double>(),
                           r.at("classical_sum").get<double>(), r.at("asymptote").get<double>(), std::nullopt};
            if (!r.at("oracle").is_null()) {
                row.oracle = r.at("oracle").get<double>();
            }
            d.rows.push_back(row);
        }
        return d;
    });
}

std::string to_json(const SimulationDocument &d) {
    json j = header("simulate");
    j["code"] = d.code;
    j["n"] = d.n;
    j["rates"] = {d.rate1, d.rate2};
    j["average_error"] = d.average_error;
    j["max_message_error"] = d.max_message_error;
    j["zero_error"] = d.zero_error;
    j["per_message_errors"] = d.per_message_errors;
    j["base_average_error"] = nullptr;
    if (d.base_average_error) {
        j["base_average_error"] = *d.base_average_error;
    }
    return dump(j);
}

SimulationDocument parse_simulation_document(const std::string &text) {
    const auto j = parse_root(text, "simulate");
    return guarded([&] {
        SimulationDocument d;
        d.code = j.at("code").get<std::string>();
        d.n = j.at("n").get<std::size_t>();
        d.rate1 = j.at("rates").at(0).get<double>();
        d.rate2 = j.at("rates").at(1).get<double>();
        d.average_error = j.at("average_error").get<double>();
        d.max_message_error = j.at("max_message_error").get<double>();
        d.zero_error = j.at("zero_error").get<bool>();
        d.per_message_errors = j.at("per_message_errors").get<std::vector<std::vector<double>>>();
        if (!j.at("base_average_error").is_null()) {
            d.base_average_error = j.at("base_average_error").get<double>();
        }
        return d;
    });
}

std::string to_json(const VerifyDocument &d) {
    json j = header("verify");
    j["seed"] = d.seed;
    j["passed"] = d.passed;
    j["suites"] = json::array();
    for (const auto &s : d.suites) {
        j["suites"].push_back({{"name", s.name},
                               {"checked", s.checked},
                               {"failed", s.failed},
                               {"worst", std::isfinite(s.worst) ? json(s.worst) : json(nullptr)},
                               {"passed", s.passed()},
                               {"detail", s.detail}});
    }
    return dump(j);
}

VerifyDocument parse_verify_document(const std::string &text) {
    const auto j = parse_root(text, "verify");
    return guarded([&] {
        VerifyDocument d;
        d.seed = j.at("seed").get<std::uint64_t>();
        d.passed = j.at("passed").get<bool>();
        for (const auto &s : j.at("suites")) {
            SuiteResult r;
            r.name = s.at("name").get<std::string>();
            r.checked = s.at("checked").get<std::size_t>();
            r.failed = s.at("failed").get<std::size_t>();
            r.worst = number_or_nan(s.at("worst"));
            r.detail = s.at("detail").get<std::string>();
            d.suites.push_back(std::move(r));
        }
        return d;
    });
}

// ---------------------------------------------------------------------------

std::string to_csv(const RegionDocument &d) {
    std::string out = "kind,a,b,c,note\n";
    for (const auto &c : d.constraints) {
        out += "constraint," + fmt9(c.a) + "," + fmt9(c.b) + "," + fmt9(c.c) + ",\n";
    }
    for (const auto &v : d.vertices) {
        out += "vertex," + fmt9(v.r1) + "," + fmt9(v.r2) + ",,\n";
    }
    for (const auto &n : d.notes) {
        out += "note,,,," + csv_quote(n) + "\n";
    }
    return out;
}

std::string to_csv(const OptimizeDocument &d) {
    std::string out = "scenario,mode,alpha,seed,restarts,budget,best_value,evaluations,best_restart\n";
    out += d.scenario + "," + d.mode + "," + fmt9(d.alpha) + "," + std::to_string(d.seed) + "," +
           std::to_string(d.restarts) + "," + std::to_string(d.budget) + "," + fmt9(d.best_value) + "," +
           std::to_string(d.evaluations) + "," + std::to_string(d.best_restart) + "\n";
    return out;
}

std::string to_csv(const RateSumDocument &d) {
    std::string out = "L,quantum_sum,classical_sum,asymptote,oracle\n";
    for (const auto &r : d.rows) {
        out += std::to_string(r.senders) + "," + fmt9(r.quantum) + "," + fmt9(r.classical) + "," + fmt9(r.asymptote) +
               "," + (r.oracle ? fmt9(*r.oracle) : "") + "\n";
    }
    return out;
}

std::string to_csv(const SimulationDocument &d) {
    std::string out = "m1,m2,error\n";
    for (std::size_t i = 0; i < d.per_message_errors.size(); ++i) {
        for (std::size_t j = 0; j < d.per_message_errors[i].size(); ++j) {
            out += std::to_string(i) + "," + std::to_string(j) + "," + fmt9(d.per_message_errors[i][j]) + "\n";
        }
    }
    return out;
}

std::string to_csv(const VerifyDocument &d) {
    std::string out = "suite,checked,failed,worst,passed\n";
    for (const auto &s : d.suites) {
        out += s.name + "," + std::to_string(s.checked) + "," + std::to_string(s.failed) + "," + fmt9(s.worst) + "," +
               (s.passed() ? "true" : "false") + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------

AdderCode parse_code_file(const std::string &text, const std::string &source) {
    return CodeFileReader(text, source).read();
}

std::string code_file_json(const AdderCode &c) {
    auto words = [](const std::vector<BitWord> &book) {
        std::vector<std::string> out;
        for (const auto &w : book) {
            std::string s;
            for (auto b : w) {
                s += static_cast<char>('0' + b);
            }
            out.push_back(s);
        }
        return out;
    };
    json decoder = json::object();
    for (const auto &[y, m] : c.decoder()) {
        std::string key;
        for (std::size_t t = 0; t < y.size(); ++t) {
            key += (t ? "," : "") + std::to_string(y[t]);
        }
        decoder[key] = {m.first, m.second};
    }
    json j{{"n", c.n()}, {"book1", words(c.book1())}, {"book2", words(c.book2())}, {"decoder", decoder}};
    return j.dump(2) + "\n";
}

}  // namespace qadder
