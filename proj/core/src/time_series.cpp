#include "prft/time_series.hpp"

#include "prft/error.hpp"

#include <cmath>
#include <string>

namespace prft {

void TimeSeries::validate() const {
    if (values.size() < 2)
        throw ContractViolation("time series needs at least 2 samples, got " + std::to_string(values.size()));
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ContractViolation("sampling interval must be positive and finite");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw ContractViolation("non-finite sample at index " + std::to_string(i));
    if (meta.calendar_trim != TrimPolicy::None) {
        const double days = duration() / 86400.0;
        if (std::abs(days - std::round(days)) > 1e-9 * std::max(1.0, days))
            throw ContractViolation("calendar-trimmed series does not span whole days");
    }
}

TimeSeries TimeSeries::with_values(std::vector<double> v, std::string new_label) const {
    TimeSeries out;
    out.values = std::move(v);
    out.dt = dt;
    out.start = start;
    out.label = new_label.empty() ? label : std::move(new_label);
    return out;
}

} // namespace prft
