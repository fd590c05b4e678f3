#pragma once

#include <string>
#include <vector>

// Oracle-vs-analytic verification suite. Each checker returns a table of rows;
// gate rows decide pass/fail, informational rows only report measurements
// (discrepancy demonstrations, fitted factors, leakage populations).

namespace decoh::verify {

enum class Level { fast, full };

struct Row {
    std::string criterion;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;
    std::string note;
};

struct Report {
    std::vector<Row> rows;

    bool all_passed() const {
        for (const Row& r : rows)
            if (!r.informational && !r.pass) return false;
        return true;
    }
    void append(const Report& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }
};

// Acceptance criteria, numbered as in the report output.
Report check_spin_exactness(Level level);              // 1
Report check_spin_revivals(Level level);               // 2
Report check_spin_full_model(Level level);             // 3
Report check_sg_grid(Level level);                     // 4
Report check_sg_decoherence_time(Level level);         // 5
Report check_sg_analytics(Level level);                // 5a-5f closed-form consistency
Report check_cavity_overlaps(Level level);             // 6
Report check_cavity_limit(Level level);                // 7
Report check_cavity_fock_decay(Level level);           // 8
Report check_localization_factorization(Level level);  // 9
Report check_localization_rate(Level level);           // 10
Report check_localization_densities(Level level);      // 11
Report check_cross_cutting(Level level);               // 12

// Further per-model verification used by the CLI (not a numbered criterion).
Report check_semiclassics(Level level);

Report run_model(const std::string& model, Level level);  // sg|spin|cavity|localize|semiclassic|core|all
Report run_all(Level level);

std::string render(const Report& report);  // one pass/fail line per row

}  // namespace decoh::verify
