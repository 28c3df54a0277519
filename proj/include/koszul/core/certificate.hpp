#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// A single labelled value inside a counterexample, e.g. {"a", "x1 * dx2"}.
/// Values use the same text grammar the CLI parses.
struct WitnessEntry {
    std::string label;
    std::string value;
    friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

struct Check {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;
    std::vector<WitnessEntry> witness;

    /// Records a failure; only the first counterexample is kept.
    void fail(std::vector<WitnessEntry> w, std::string why = {}) {
        if (!passed) return;
        passed = false;
        witness = std::move(w);
        if (!why.empty()) detail = std::move(why);
    }
    friend bool operator==(const Check&, const Check&) = default;
};

/// Outcome of a verification suite. A certificate never claims more than its
/// recorded window.
struct Certificate {
    std::string suite;
    std::map<std::string, std::string> window;
    // deque: references returned by add() stay valid as checks are appended.
    std::deque<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const Check* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    Check& add(std::string name) {
        Check c;
        c.name = std::move(name);
        checks.push_back(std::move(c));
        return checks.back();
    }
    void absorb(const Certificate& other, const std::string& prefix = {}) {
        for (auto c : other.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (const auto& [k, v] : other.window) window.emplace(prefix + k, v);
    }
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

}  // namespace koszul
