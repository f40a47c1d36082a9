#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsched/estimation.hpp"
#include "bsched/items.hpp"
#include "bsched/periodic.hpp"
#include "bsched/social.hpp"

namespace bsched {

// JSON schemas. Writers re-parse their own output as a self-check, so a
// successful save guarantees the file loads again.
//   items:    [{"label": str, "v": num, "alpha": num, "r": num}, ...]
//   schedule: {"period": int, "choices": [int...]}  (idle encoded as -1)
//   society:  {"A": [[row]...], "r": num,
//              "items": [{"label": str, "v": [num...], "alpha": [num...]}]}

ItemList parse_items_json(const std::string& text);
std::string items_to_json(std::span<const Item> items);

PeriodicSchedule parse_schedule_json(const std::string& text);
std::string schedule_to_json(const PeriodicSchedule& schedule);

Society parse_society_json(const std::string& text);
std::string society_to_json(const Society& society);

/// Popularity CSV: either long form with header "label,t,count" (several
/// traces per file) or a headerless two-column (t, count) file.
std::vector<PopularityTrace> parse_traces_csv(const std::string& text);

std::string read_file(const std::string& path); ///< throws std::ios_base::failure
void write_file(const std::string& path, const std::string& text);

/// Formats a double with enough digits to round-trip.
std::string format_double(double x);

} // namespace bsched
