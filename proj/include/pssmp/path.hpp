#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

namespace pssmp {

enum class PathKind { LEVY, PSSMP };

// Uniform-grid sample path. A Lévy path starts at 0 and is sent to -inf when
// killed; a pssMp path is strictly positive while alive and absorbed at 0.
// lifetime_index is the first dead index; values at and after it hold the
// cemetery marker.
struct SamplePath {
    PathKind kind = PathKind::LEVY;
    double dt = 1.0;
    std::vector<double> values;
    std::optional<std::size_t> lifetime_index;

    static double cemetery(PathKind k) {
        return k == PathKind::LEVY ? -std::numeric_limits<double>::infinity() : 0.0;
    }

    std::size_t living_count() const {
        return lifetime_index ? std::min(*lifetime_index, values.size()) : values.size();
    }

    bool alive_at(std::size_t i) const { return i < living_count(); }

    void validate() const;  // throws std::invalid_argument on broken invariants
};

struct ClockMap {
    std::vector<double> source_times;
    std::vector<double> target_times;  // nondecreasing, same length
};

// CSV with header path_id,t,value,alive; dead rows carry value 0
void write_paths_csv(std::ostream& os, const std::vector<SamplePath>& paths);

}  // namespace pssmp
