#pragma once

#include <string>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

// A mathematical verification failure raised while building an object whose
// constructor guarantees its invariants (group/semigroup axioms, closure,
// linearity, construction preconditions). Distinct from input_error, which
// is reserved for malformed input: the CLI maps check_error to exit 1 and
// input_error to exit 2.
struct check_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One witnessed failure of a checked identity. Index/basis tuples are kept
// separately so reports sort lexicographically over (check, indices, basis).
struct CheckFailure {
    std::vector<long> indices;  // semigroup index tuple, empty when n/a
    std::vector<long> basis;    // basis tuple
    std::string detail;

    std::string to_string() const {
        std::string s;
        if (!indices.empty()) {
            s += "indices (";
            for (size_t i = 0; i < indices.size(); ++i)
                s += (i ? "," : "") + std::to_string(indices[i]);
            s += ")";
        }
        if (!basis.empty()) {
            if (!s.empty()) s += " ";
            s += "basis (";
            for (size_t i = 0; i < basis.size(); ++i)
                s += (i ? "," : "") + std::to_string(basis[i]);
            s += ")";
        }
        if (!detail.empty()) {
            if (!s.empty()) s += " ";
            s += detail;
        }
        return s;
    }
};

// Outcome of one identity checked exhaustively over basis and index tuples.
// `anchor` names the identity in the report output (e.g. "Eq 3.1").
struct CheckLine {
    std::string check;
    std::string anchor;
    long instances = 0;     // basis tuples evaluated per index tuple
    long index_tuples = 0;  // semigroup index tuples (0 when not applicable)
    std::vector<CheckFailure> failures;

    bool ok() const { return failures.empty(); }
};

struct CheckReport {
    std::string subject;
    std::vector<CheckLine> lines;

    bool ok() const {
        for (const auto& l : lines)
            if (!l.ok()) return false;
        return true;
    }
    void append(const CheckReport& o) {
        lines.insert(lines.end(), o.lines.begin(), o.lines.end());
    }
    const CheckLine* find(const std::string& check) const {
        for (const auto& l : lines)
            if (l.check == check) return &l;
        return nullptr;
    }
};

}  // namespace opal
