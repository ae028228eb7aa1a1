#ifndef FISHSIM_REPORT_HPP
#define FISHSIM_REPORT_HPP

#include <string>
#include <vector>

namespace fishsim {

enum class Verdict { holds, fails, inconclusive };

const char* to_string(Verdict v);

/** One evaluated condition.
 *
 * margin is signed distance into the feasible side: positive means the
 * condition is satisfied with room to spare. The verdict is derived from the
 * margin with a tolerance band: |margin| <= tol gives inconclusive, since
 * numerical equality cannot certify a strict inequality either way.
 *
 * The one exception is pointwise positivity conditions (b > 0, K > 0, n0 > 0
 * and the a > b premise): a grid sample that evaluates to exactly zero or
 * below is a witnessed violation, and the verdict is fails rather than
 * inconclusive. */
struct ConditionEntry {
    std::string name;
    double quantity = 0.0;
    double threshold = 0.0;
    bool strict = true;
    Verdict verdict = Verdict::inconclusive;
    double margin = 0.0;
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;
    std::string notes;

    /// Margin-based verdict: holds above +tol, fails below -tol, else inconclusive.
    static Verdict classify(double margin, double tol = 1e-9);

    /// quantity must exceed threshold (strict lower bound).
    void add_lower(std::string name, double quantity, double threshold,
                   bool strict = true, double tol = 1e-9);
    /// quantity must stay below threshold (strict upper bound).
    void add_upper(std::string name, double quantity, double threshold,
                   bool strict = true, double tol = 1e-9);
    /// Pointwise positivity: fails outright when the witnessed minimum is <= 0.
    void add_positivity(std::string name, double grid_min, double tol = 1e-9);
    /// quantity must differ from threshold; fails when indistinguishable.
    void add_not_equal(std::string name, double quantity, double threshold,
                       double tol = 1e-9);
    /// Recorded value with no constraint (always holds), e.g. a finiteness report.
    void add_recorded(std::string name, double quantity);
    void add_note(const std::string& line);

    const ConditionEntry* find(const std::string& name) const;

    /// Conjunction over entries: fails if any entry fails, holds if all hold,
    /// inconclusive otherwise.
    Verdict overall() const;
    /// No entry fails (inconclusive findings are tolerated).
    bool passes() const;
    /// Name of the first failing entry, or "" when none fails.
    std::string first_failure() const;

    void merge(const ConditionReport& other, const std::string& prefix = "");

    /// Flat CSV: name,quantity,threshold,strict,verdict,margin.
    std::string to_csv() const;
    std::string to_text() const;
};

} // namespace fishsim

#endif
