#include "pssmp/path.hpp"

#include <cmath>
#include <stdexcept>

namespace pssmp {

void SamplePath::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SamplePath: dt must be > 0");
    if (values.size() < 2) throw std::invalid_argument("SamplePath: needs at least 2 entries");
    const std::size_t live = living_count();
    if (kind == PathKind::PSSMP) {
        for (std::size_t i = 0; i < live; ++i)
            if (!(values[i] > 0.0))
                throw std::invalid_argument("SamplePath: pssMp values must be > 0 before the lifetime");
    } else {
        for (std::size_t i = 0; i < live; ++i)
            if (!std::isfinite(values[i]))
                throw std::invalid_argument("SamplePath: Lévy values must be finite before the lifetime");
    }
}

void write_paths_csv(std::ostream& os, const std::vector<SamplePath>& paths) {
    os << "path_id,t,value,alive\n";
    for (std::size_t id = 0; id < paths.size(); ++id) {
        const SamplePath& p = paths[id];
        const std::size_t live = p.living_count();
        char buf[160];
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            const bool alive = i < live;
            std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.17g,%d\n", id, i * p.dt,
                          alive ? p.values[i] : 0.0, alive ? 1 : 0);
            os << buf;
        }
    }
}

}  // namespace pssmp
