#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace courant {

/// A local coordinate chart: an ordered list of distinct coordinate names.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
        std::set<std::string> seen(names_.begin(), names_.end());
        if (seen.size() != names_.size()) throw std::invalid_argument("chart coordinate names must be distinct");
    }

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }

    int index(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw std::invalid_argument("no coordinate '" + name + "' in chart");
        return static_cast<int>(it - names_.begin());
    }

    bool has(const std::string& name) const {
        return std::find(names_.begin(), names_.end(), name) != names_.end();
    }

    bool operator==(const Chart& o) const { return names_ == o.names_; }
    bool operator!=(const Chart& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": chart mismatch");
}

}  // namespace courant
