#ifndef LOGSCH_PROBE_REPORT_HPP
#define LOGSCH_PROBE_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace logsch {

// Outcome of an empirical bound probe: which bound was exercised, the fitted
// constants, the worst signed violation seen (<= 0 means the bound held), and
// a description of the sample set.
struct BoundProbeReport {
    std::string bound_id;
    std::vector<std::pair<std::string, double>> constants;
    double max_violation = 0.0;
    std::string sample_desc;
    std::string note;

    double constant(const std::string& name) const;
};

} // namespace logsch

#endif
