#include "fishsim/config.hpp"

#include "fishsim/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

namespace fishsim {

namespace {

struct Token {
    enum class Type { word, eq, lbrace, rbrace, lbracket, rbracket, comma, end };
    Type type;
    std::string text;
    int line;
};

bool is_word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}' &&
           c != '[' && c != ']' && c != '=' && c != ',' && c != '#';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        auto push = [&](Token::Type t, std::string s) {
            out.push_back({t, std::move(s), line});
            ++i;
        };
        switch (c) {
        case '=': push(Token::Type::eq, "="); continue;
        case '{': push(Token::Type::lbrace, "{"); continue;
        case '}': push(Token::Type::rbrace, "}"); continue;
        case '[': push(Token::Type::lbracket, "["); continue;
        case ']': push(Token::Type::rbracket, "]"); continue;
        case ',': push(Token::Type::comma, ","); continue;
        default: break;
        }
        std::size_t start = i;
        while (i < text.size() && is_word_char(text[i]))
            ++i;
        out.push_back({Token::Type::word, text.substr(start, i - start), line});
    }
    out.push_back({Token::Type::end, "", line});
    return out;
}

[[noreturn]] void syntax_error(const Token& tok, const std::string& expected) {
    std::string got = tok.type == Token::Type::end ? "end of input" : "'" + tok.text + "'";
    throw ConfigError("line " + std::to_string(tok.line) + ": expected " + expected +
                      ", got " + got);
}

bool valid_key(const std::string& s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ConfigNode document() {
        ConfigNode root;
        root.key = "";
        root.kind = ConfigNode::Kind::section;
        entries(root.children, Token::Type::end);
        return root;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    void entries(std::vector<ConfigNode>& out, Token::Type terminator) {
        while (true) {
            if (peek().type == terminator) {
                take();
                return;
            }
            if (peek().type != Token::Type::word)
                syntax_error(peek(), terminator == Token::Type::end ? "a key or end of input"
                                                                    : "a key or '}'");
            Token key = take();
            if (!valid_key(key.text))
                throw ConfigError("line " + std::to_string(key.line) + ": invalid key '" +
                                  key.text + "'");
            ConfigNode node;
            node.key = key.text;
            node.line = key.line;
            if (peek().type == Token::Type::lbrace) {
                take();
                node.kind = ConfigNode::Kind::section;
                entries(node.children, Token::Type::rbrace);
            } else if (peek().type == Token::Type::eq) {
                take();
                value(node);
            } else {
                syntax_error(peek(), "'=' or '{' after key '" + key.text + "'");
            }
            out.push_back(std::move(node));
        }
    }

    void value(ConfigNode& node) {
        if (peek().type == Token::Type::lbracket) {
            take();
            node.kind = ConfigNode::Kind::list;
            if (peek().type == Token::Type::rbracket) {
                take();
                return;
            }
            while (true) {
                if (peek().type != Token::Type::word)
                    syntax_error(peek(), "a list element");
                node.items.push_back(take().text);
                if (peek().type == Token::Type::comma) {
                    take();
                    continue;
                }
                if (peek().type == Token::Type::rbracket) {
                    take();
                    return;
                }
                syntax_error(peek(), "',' or ']'");
            }
        }
        if (peek().type != Token::Type::word)
            syntax_error(peek(), "a value");
        node.kind = ConfigNode::Kind::scalar;
        node.scalar = take().text;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

double to_number(const std::string& text, const std::string& path) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(path + ": not a number: '" + text + "'");
    return v;
}

std::size_t to_count(double v, const std::string& path) {
    if (!(v >= 0.0) || std::abs(v - std::round(v)) > 1e-9)
        throw ConfigError(path + ": must be a nonnegative integer");
    return static_cast<std::size_t>(std::llround(v));
}

/** Field access over one section with unknown-key tracking. */
class SectionReader {
public:
    SectionReader(const ConfigNode& node, std::string path, bool strict,
                  std::vector<std::string>* warnings)
        : node_(node), path_(std::move(path)), strict_(strict), warnings_(warnings) {}

    const ConfigNode* child(const std::string& name) {
        used_.insert(name);
        for (const auto& c : node_.children)
            if (c.key == name)
                return &c;
        return nullptr;
    }

    std::vector<const ConfigNode*> repeated(const std::string& name) {
        used_.insert(name);
        std::vector<const ConfigNode*> out;
        for (const auto& c : node_.children)
            if (c.key == name)
                out.push_back(&c);
        return out;
    }

    bool has(const std::string& name) const {
        for (const auto& c : node_.children)
            if (c.key == name)
                return true;
        return false;
    }

    double number(const std::string& name) {
        const ConfigNode* c = scalar_child(name, true);
        return to_number(c->scalar, path_ + "." + name);
    }

    double number_or(const std::string& name, double def) {
        const ConfigNode* c = scalar_child(name, false);
        return c ? to_number(c->scalar, path_ + "." + name) : def;
    }

    std::string word(const std::string& name) {
        const ConfigNode* c = scalar_child(name, true);
        return c->scalar;
    }

    std::vector<double> list(const std::string& name) {
        const ConfigNode* c = child(name);
        if (!c)
            throw ConfigError(path_ + "." + name + ": missing required list");
        return as_list(*c, name);
    }

    std::vector<double> list_or(const std::string& name) {
        const ConfigNode* c = child(name);
        return c ? as_list(*c, name) : std::vector<double>{};
    }

    const ConfigNode& section(const std::string& name) {
        const ConfigNode* c = child(name);
        if (!c)
            throw ConfigError(path_ + "." + name + ": missing required section");
        if (c->kind != ConfigNode::Kind::section)
            throw ConfigError(path_ + "." + name + ": expected a '{...}' section");
        return *c;
    }

    const ConfigNode* section_opt(const std::string& name) {
        const ConfigNode* c = child(name);
        if (c && c->kind != ConfigNode::Kind::section)
            throw ConfigError(path_ + "." + name + ": expected a '{...}' section");
        return c;
    }

    const std::string& path() const { return path_; }

    void finish() {
        for (const auto& c : node_.children) {
            if (used_.count(c.key))
                continue;
            std::string msg = path_ + "." + c.key + ": unknown key (line " +
                              std::to_string(c.line) + ")";
            if (strict_)
                throw ConfigError(msg);
            if (warnings_)
                warnings_->push_back(msg);
        }
    }

private:
    const ConfigNode* scalar_child(const std::string& name, bool required) {
        const ConfigNode* c = child(name);
        if (!c) {
            if (required)
                throw ConfigError(path_ + "." + name + ": missing required value");
            return nullptr;
        }
        if (c->kind != ConfigNode::Kind::scalar)
            throw ConfigError(path_ + "." + name + ": expected a scalar value");
        return c;
    }

    std::vector<double> as_list(const ConfigNode& c, const std::string& name) {
        if (c.kind != ConfigNode::Kind::list)
            throw ConfigError(path_ + "." + name + ": expected a [..] list");
        std::vector<double> out;
        out.reserve(c.items.size());
        for (std::size_t k = 0; k < c.items.size(); ++k)
            out.push_back(to_number(c.items[k], path_ + "." + name + "[" + std::to_string(k) + "]"));
        return out;
    }

    const ConfigNode& node_;
    std::string path_;
    bool strict_;
    std::vector<std::string>* warnings_;
    std::set<std::string> used_;
};

CoefficientSpec read_coefficient(const ConfigNode& node, const std::string& path, bool strict,
                                 std::vector<std::string>* warnings) {
    SectionReader r(node, path, strict, warnings);
    std::string kind = r.word("kind");
    try {
        if (kind == "constant") {
            double v = r.number("value");
            r.finish();
            return CoefficientSpec::constant(v);
        }
        if (kind == "sinusoid") {
            double mean = r.number("mean");
            double amplitude = r.number("amplitude");
            double period = r.number("period");
            double phase = r.number_or("phase", 0.0);
            r.finish();
            return CoefficientSpec::sinusoid(mean, amplitude, period, phase);
        }
        if (kind == "fourier") {
            double period = r.number("period");
            double c0 = r.number("c0");
            auto cosv = r.list_or("cos");
            auto sinv = r.list_or("sin");
            r.finish();
            return CoefficientSpec::fourier(period, c0, std::move(cosv), std::move(sinv));
        }
        if (kind == "piecewise_linear") {
            double period = r.number("period");
            auto times = r.list("times");
            auto values = r.list("values");
            r.finish();
            return CoefficientSpec::piecewise_linear(period, std::move(times), std::move(values));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ".kind: unknown coefficient kind '" + kind +
                      "' (constant | sinusoid | fourier | piecewise_linear)");
}

DelaySpec read_delay(const ConfigNode& node, const std::string& path, bool strict,
                     std::vector<std::string>* warnings) {
    SectionReader probe(node, path, false, nullptr);
    std::string kind = probe.word("kind");
    if (kind == "constant") {
        SectionReader r(node, path, strict, warnings);
        r.word("kind");
        double v = r.number("value");
        r.finish();
        if (v < 0.0)
            throw ConfigError(path + ".value: lag must be nonnegative");
        return DelaySpec::constant_lag(v);
    }
    CoefficientSpec spec = read_coefficient(node, path, strict, warnings);
    return DelaySpec::varying_lag(std::move(spec));
}

HistorySpec read_history(const ConfigNode& node, const std::string& path, bool strict,
                         std::vector<std::string>* warnings) {
    SectionReader r(node, path, strict, warnings);
    std::string kind = r.word("kind");
    try {
        if (kind == "constant") {
            double value = r.number("value");
            double n0 = r.number_or("n0", value);
            r.finish();
            return HistorySpec::constant(value, n0);
        }
        if (kind == "table") {
            auto times = r.list("times");
            auto values = r.list("values");
            double n0 = r.number("n0");
            r.finish();
            return HistorySpec::table(std::move(times), std::move(values), n0);
        }
        if (kind == "formula") {
            const ConfigNode& spec_node = r.section("spec");
            CoefficientSpec spec = read_coefficient(spec_node, path + ".spec", strict, warnings);
            double n0 = r.number("n0");
            r.finish();
            return HistorySpec::formula(std::move(spec), n0);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ".kind: unknown history kind '" + kind +
                      "' (constant | table | formula)");
}

ModelParams read_model(const ConfigNode& node, bool strict, std::vector<std::string>* warnings) {
    SectionReader r(node, "model", strict, warnings);
    double gamma = r.number("gamma");
    CoefficientSpec a = read_coefficient(r.section("a"), "model.a", strict, warnings);
    CoefficientSpec b = read_coefficient(r.section("b"), "model.b", strict, warnings);
    CoefficientSpec K = read_coefficient(r.section("K"), "model.K", strict, warnings);
    DelaySpec delay = read_delay(r.section("delay"), "model.delay", strict, warnings);
    std::optional<double> period;
    if (r.has("period")) {
        period = r.number("period");
        if (!(*period > 0.0))
            throw ConfigError("model.period: must be positive");
    }
    r.finish();
    try {
        return ModelParams(gamma, std::move(a), std::move(b), std::move(K), std::move(delay),
                           period);
    } catch (const std::exception& e) {
        throw ConfigError("model.gamma: " + std::string(e.what()));
    }
}

ProportionalParams read_proportional(const ConfigNode& node, bool strict,
                                     std::vector<std::string>* warnings) {
    SectionReader r(node, "proportional", strict, warnings);
    double a = r.number("a");
    double b = r.number("b");
    double gamma = r.number("gamma");
    double K = r.number("K");
    CoefficientSpec rr = read_coefficient(r.section("r"), "proportional.r", strict, warnings);
    DelaySpec delay = read_delay(r.section("delay"), "proportional.delay", strict, warnings);
    r.finish();
    try {
        return ProportionalParams(a, b, gamma, K, std::move(rr), std::move(delay));
    } catch (const std::exception& e) {
        throw ConfigError("proportional: " + std::string(e.what()));
    }
}

RunSettings read_run(const ConfigNode* node, bool strict, std::vector<std::string>* warnings) {
    RunSettings run;
    if (!node)
        return run;
    SectionReader r(*node, "run", strict, warnings);
    if (r.has("t_end")) {
        run.t_end = r.number("t_end");
        if (!(*run.t_end > 0.0))
            throw ConfigError("run.t_end: must be positive");
    }
    run.horizon_periods = to_count(r.number_or("horizon_periods", 60.0), "run.horizon_periods");
    if (run.horizon_periods < 1)
        throw ConfigError("run.horizon_periods: must be at least 1");
    run.step = r.number_or("step", 0.0);
    if (run.step < 0.0)
        throw ConfigError("run.step: must be nonnegative (0 = automatic)");
    run.vanishing_lag_tol = r.number_or("vanishing_lag_tol", 1e-12);
    if (!(run.vanishing_lag_tol > 0.0))
        throw ConfigError("run.vanishing_lag_tol: must be positive");
    run.vanishing_lag_max_iter =
        static_cast<int>(to_count(r.number_or("vanishing_lag_max_iter", 8.0),
                                  "run.vanishing_lag_max_iter"));
    if (run.vanishing_lag_max_iter < 1)
        throw ConfigError("run.vanishing_lag_max_iter: must be at least 1");
    run.breakpoint_depth = static_cast<int>(
        to_count(r.number_or("breakpoint_depth", 3.0), "run.breakpoint_depth"));
    run.tol = r.number_or("tol", 1e-4);
    if (!(run.tol > 0.0))
        throw ConfigError("run.tol: must be positive");
    run.transient_periods =
        to_count(r.number_or("transient_periods", 40.0), "run.transient_periods");
    if (run.transient_periods < 1)
        throw ConfigError("run.transient_periods: must be at least 1");
    run.residual_tol = r.number_or("residual_tol", 1e-6);
    if (!(run.residual_tol > 0.0))
        throw ConfigError("run.residual_tol: must be positive");
    if (r.has("guess")) {
        run.guess = r.number("guess");
        if (!(*run.guess > 0.0))
            throw ConfigError("run.guess: must be positive");
    }
    run.x0 = r.number_or("x0", 0.1);
    run.horizon = r.number_or("horizon", 80.0);
    if (!(run.horizon > 0.0))
        throw ConfigError("run.horizon: must be positive");
    r.finish();
    return run;
}

SweepAxis read_axis(const ConfigNode& node, const std::string& path, bool strict,
                    std::vector<std::string>* warnings) {
    SectionReader r(node, path, strict, warnings);
    std::string kind = r.word("kind");
    SweepAxis axis;
    if (kind == "gamma")
        axis.kind = SweepAxisKind::gamma;
    else if (kind == "lag")
        axis.kind = SweepAxisKind::lag;
    else if (kind == "amplitude")
        axis.kind = SweepAxisKind::amplitude;
    else
        throw ConfigError(path + ".kind: unknown axis kind '" + kind +
                          "' (gamma | lag | amplitude)");
    axis.lo = r.number("lo");
    axis.hi = r.number("hi");
    axis.count = to_count(r.number("count"), path + ".count");
    r.finish();
    if (axis.count < 1)
        throw ConfigError(path + ".count: must be at least 1");
    if (axis.hi < axis.lo)
        throw ConfigError(path + ".hi: must not be below lo");
    if (axis.kind == SweepAxisKind::gamma && !(axis.lo > 0.0))
        throw ConfigError(path + ".lo: gamma axis must stay positive");
    if (axis.kind == SweepAxisKind::lag && axis.lo < 0.0)
        throw ConfigError(path + ".lo: lag axis must be nonnegative");
    return axis;
}

} // namespace

ConfigNode parse_config_tree(const std::string& text) {
    return Parser(lex(text)).document();
}

StepControl RunSettings::control() const {
    StepControl c;
    c.step = step;
    c.vanishing_lag_tol = vanishing_lag_tol;
    c.vanishing_lag_max_iter = vanishing_lag_max_iter;
    c.breakpoint_depth = breakpoint_depth;
    return c;
}

ModelParams ExperimentConfig::resolved_model() const {
    if (model)
        return *model;
    if (proportional)
        return proportional->as_model();
    throw ConfigError("model: a model or proportional section is required");
}

ExperimentConfig resolve_config(const ConfigNode& root, bool strict,
                                std::vector<std::string>* warnings) {
    ExperimentConfig cfg;
    SectionReader r(root, "config", strict, warnings);

    const ConfigNode* model_node = r.section_opt("model");
    const ConfigNode* prop_node = r.section_opt("proportional");
    if (model_node && prop_node)
        throw ConfigError("model: give either a model or a proportional section, not both");
    if (model_node)
        cfg.model = read_model(*model_node, strict, warnings);
    if (prop_node)
        cfg.proportional = read_proportional(*prop_node, strict, warnings);

    if (const ConfigNode* h = r.section_opt("history"))
        cfg.history = read_history(*h, "history", strict, warnings);

    cfg.run = read_run(r.section_opt("run"), strict, warnings);

    if (const ConfigNode* s = r.section_opt("sweep")) {
        SectionReader sr(*s, "sweep", strict, warnings);
        cfg.sweep_axis1 = read_axis(sr.section("axis1"), "sweep.axis1", strict, warnings);
        cfg.sweep_axis2 = read_axis(sr.section("axis2"), "sweep.axis2", strict, warnings);
        sr.finish();
    }

    if (const ConfigNode* c = r.section_opt("converge")) {
        SectionReader cr(*c, "converge", strict, warnings);
        auto nodes = cr.repeated("history");
        cr.finish();
        for (std::size_t k = 0; k < nodes.size(); ++k)
            cfg.converge_histories.push_back(read_history(
                *nodes[k], "converge.history[" + std::to_string(k) + "]", strict, warnings));
        if (cfg.converge_histories.size() == 1)
            throw ConfigError("converge: need at least two history sections, got 1");
    }

    r.finish();
    return cfg;
}

ExperimentConfig parse_config(const std::string& text, bool strict,
                              std::vector<std::string>* warnings) {
    return resolve_config(parse_config_tree(text), strict, warnings);
}

namespace {

class Emitter {
public:
    void open(const std::string& key) {
        indent();
        out_ += key;
        out_ += " {\n";
        ++depth_;
    }
    void close() {
        --depth_;
        indent();
        out_ += "}\n";
    }
    void kv(const std::string& key, double v) {
        indent();
        out_ += key;
        out_ += " = ";
        out_ += format_double_shortest(v);
        out_ += '\n';
    }
    void kv(const std::string& key, const std::string& v) {
        indent();
        out_ += key;
        out_ += " = ";
        out_ += v;
        out_ += '\n';
    }
    void kvlist(const std::string& key, const std::vector<double>& vs) {
        indent();
        out_ += key;
        out_ += " = [";
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i)
                out_ += ", ";
            out_ += format_double_shortest(vs[i]);
        }
        out_ += "]\n";
    }
    std::string take() { return std::move(out_); }

private:
    void indent() { out_.append(2 * depth_, ' '); }
    std::string out_;
    int depth_ = 0;
};

void emit_coefficient(Emitter& e, const std::string& key, const CoefficientSpec& c) {
    e.open(key);
    switch (c.kind()) {
    case CoefficientSpec::Kind::constant:
        e.kv("kind", "constant");
        e.kv("value", c.constant_value());
        break;
    case CoefficientSpec::Kind::sinusoid:
        e.kv("kind", "sinusoid");
        e.kv("mean", c.mean());
        e.kv("amplitude", c.amplitude());
        e.kv("period", *c.period());
        e.kv("phase", c.phase());
        break;
    case CoefficientSpec::Kind::fourier:
        e.kv("kind", "fourier");
        e.kv("period", *c.period());
        e.kv("c0", c.fourier_c0());
        e.kvlist("cos", c.cos_coeffs());
        e.kvlist("sin", c.sin_coeffs());
        break;
    case CoefficientSpec::Kind::piecewise_linear:
        e.kv("kind", "piecewise_linear");
        e.kv("period", *c.period());
        e.kvlist("times", c.sample_times());
        e.kvlist("values", c.sample_values());
        break;
    }
    e.close();
}

void emit_delay(Emitter& e, const DelaySpec& d) {
    if (d.is_constant()) {
        e.open("delay");
        e.kv("kind", "constant");
        e.kv("value", d.constant_value());
        e.close();
    } else {
        emit_coefficient(e, "delay", d.varying_spec());
    }
}

void emit_history(Emitter& e, const std::string& key, const HistorySpec& h) {
    e.open(key);
    switch (h.kind()) {
    case HistorySpec::Kind::constant:
        e.kv("kind", "constant");
        e.kv("value", h.constant_value());
        e.kv("n0", h.n0());
        break;
    case HistorySpec::Kind::table:
        e.kv("kind", "table");
        e.kvlist("times", h.sample_times());
        e.kvlist("values", h.sample_values());
        e.kv("n0", h.n0());
        break;
    case HistorySpec::Kind::formula:
        e.kv("kind", "formula");
        emit_coefficient(e, "spec", h.formula_spec());
        e.kv("n0", h.n0());
        break;
    }
    e.close();
}

void emit_axis(Emitter& e, const std::string& key, const SweepAxis& axis) {
    e.open(key);
    e.kv("kind", to_string(axis.kind));
    e.kv("lo", axis.lo);
    e.kv("hi", axis.hi);
    e.kv("count", static_cast<double>(axis.count));
    e.close();
}

} // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
    Emitter e;
    if (cfg.model) {
        const ModelParams& m = *cfg.model;
        e.open("model");
        e.kv("gamma", m.gamma);
        emit_coefficient(e, "a", m.a);
        emit_coefficient(e, "b", m.b);
        emit_coefficient(e, "K", m.K);
        emit_delay(e, m.delay);
        if (m.common_period)
            e.kv("period", *m.common_period);
        e.close();
    }
    if (cfg.proportional) {
        const ProportionalParams& p = *cfg.proportional;
        e.open("proportional");
        e.kv("a", p.a);
        e.kv("b", p.b);
        e.kv("gamma", p.gamma);
        e.kv("K", p.K);
        emit_coefficient(e, "r", p.r);
        emit_delay(e, p.delay);
        e.close();
    }
    if (cfg.history)
        emit_history(e, "history", *cfg.history);

    e.open("run");
    if (cfg.run.t_end)
        e.kv("t_end", *cfg.run.t_end);
    e.kv("horizon_periods", static_cast<double>(cfg.run.horizon_periods));
    e.kv("step", cfg.run.step);
    e.kv("vanishing_lag_tol", cfg.run.vanishing_lag_tol);
    e.kv("vanishing_lag_max_iter", static_cast<double>(cfg.run.vanishing_lag_max_iter));
    e.kv("breakpoint_depth", static_cast<double>(cfg.run.breakpoint_depth));
    e.kv("tol", cfg.run.tol);
    e.kv("transient_periods", static_cast<double>(cfg.run.transient_periods));
    e.kv("residual_tol", cfg.run.residual_tol);
    if (cfg.run.guess)
        e.kv("guess", *cfg.run.guess);
    e.kv("x0", cfg.run.x0);
    e.kv("horizon", cfg.run.horizon);
    e.close();

    if (cfg.sweep_axis1 && cfg.sweep_axis2) {
        e.open("sweep");
        emit_axis(e, "axis1", *cfg.sweep_axis1);
        emit_axis(e, "axis2", *cfg.sweep_axis2);
        e.close();
    }
    if (!cfg.converge_histories.empty()) {
        e.open("converge");
        for (const auto& h : cfg.converge_histories)
            emit_history(e, "history", h);
        e.close();
    }
    return e.take();
}

} // namespace fishsim
