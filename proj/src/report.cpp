#include "fishsim/report.hpp"

#include "fishsim/csv.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fishsim {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict ConditionReport::classify(double margin, double tol) {
    if (std::isnan(margin)) return Verdict::inconclusive;
    if (margin > tol) return Verdict::holds;
    if (margin < -tol) return Verdict::fails;
    return Verdict::inconclusive;
}

void ConditionReport::add_lower(std::string name, double quantity, double threshold,
                                bool strict, double tol) {
    double m = quantity - threshold;
    entries.push_back({std::move(name), quantity, threshold, strict, classify(m, tol), m});
}

void ConditionReport::add_upper(std::string name, double quantity, double threshold,
                                bool strict, double tol) {
    double m = threshold - quantity;
    entries.push_back({std::move(name), quantity, threshold, strict, classify(m, tol), m});
}

void ConditionReport::add_positivity(std::string name, double grid_min, double tol) {
    double m = grid_min;
    Verdict v = grid_min <= 0.0 ? Verdict::fails : classify(m, tol);
    entries.push_back({std::move(name), grid_min, 0.0, true, v, m});
}

void ConditionReport::add_not_equal(std::string name, double quantity, double threshold,
                                    double tol) {
    double m = std::abs(quantity - threshold);
    Verdict v = m > tol ? Verdict::holds : Verdict::fails;
    entries.push_back({std::move(name), quantity, threshold, true, v, m});
}

void ConditionReport::add_recorded(std::string name, double quantity) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    entries.push_back({std::move(name), quantity, inf, false, Verdict::holds, inf});
}

void ConditionReport::add_note(const std::string& line) {
    if (!notes.empty()) notes += "\n";
    notes += line;
}

const ConditionEntry* ConditionReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

Verdict ConditionReport::overall() const {
    bool all_hold = true;
    for (const auto& e : entries) {
        if (e.verdict == Verdict::fails) return Verdict::fails;
        if (e.verdict != Verdict::holds) all_hold = false;
    }
    return all_hold ? Verdict::holds : Verdict::inconclusive;
}

bool ConditionReport::passes() const {
    for (const auto& e : entries)
        if (e.verdict == Verdict::fails) return false;
    return true;
}

std::string ConditionReport::first_failure() const {
    for (const auto& e : entries)
        if (e.verdict == Verdict::fails) return e.name;
    return "";
}

void ConditionReport::merge(const ConditionReport& other, const std::string& prefix) {
    for (auto e : other.entries) {
        if (!prefix.empty()) e.name = prefix + e.name;
        entries.push_back(std::move(e));
    }
    if (!other.notes.empty()) add_note(other.notes);
}

std::string ConditionReport::to_csv() const {
    std::string out = "name,quantity,threshold,strict,verdict,margin\n";
    for (const auto& e : entries) {
        out += e.name;
        out += ',';
        out += format_double(e.quantity);
        out += ',';
        out += format_double(e.threshold);
        out += ',';
        out += e.strict ? "true" : "false";
        out += ',';
        out += to_string(e.verdict);
        out += ',';
        out += format_double(e.margin);
        out += '\n';
    }
    return out;
}

std::string ConditionReport::to_text() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << "  [" << to_string(e.verdict) << "] " << e.name
           << ": quantity " << format_double_shortest(e.quantity);
        if (std::isfinite(e.threshold))
            os << (e.strict ? " vs " : " vs (non-strict) ")
               << format_double_shortest(e.threshold) << ", margin "
               << format_double_shortest(e.margin);
        os << "\n";
    }
    os << "overall: " << to_string(overall()) << "\n";
    if (!notes.empty()) os << "notes:\n" << notes << "\n";
    return os.str();
}

} // namespace fishsim
