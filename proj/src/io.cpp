#include "bsched/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsched/errors.hpp"

namespace bsched {

namespace {

using nlohmann::json;

json must_parse(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw schema_error(std::string(what) + ": not valid JSON");
    }
    return parsed;
}

double number_field(const json& node, const char* key, const char* what) {
    if (!node.contains(key) || !node[key].is_number()) {
        throw schema_error(std::string(what) + ": missing numeric field '" + key + "'");
    }
    return node[key].get<double>();
}

} // namespace

ItemList parse_items_json(const std::string& text) {
    json parsed = must_parse(text, "item list");
    if (parsed.is_object() && parsed.contains("items")) {
        parsed = parsed["items"];
    }
    if (!parsed.is_array() || parsed.empty()) {
        throw schema_error("item list: expected a non-empty JSON array");
    }
    ItemList items;
    for (const json& node : parsed) {
        if (!node.is_object()) {
            throw schema_error("item list: entries must be objects");
        }
        Item item;
        item.label = node.value("label", std::string{});
        item.base_utility = number_field(node, "v", "item list");
        item.boredom_coeff = number_field(node, "alpha", "item list");
        item.decay_rate = number_field(node, "r", "item list");
        items.push_back(std::move(item));
    }
    validate_items(items);
    return items;
}

std::string items_to_json(std::span<const Item> items) {
    json out = json::array();
    for (const Item& item : items) {
        out.push_back({{"label", item.label},
                       {"v", item.base_utility},
                       {"alpha", item.boredom_coeff},
                       {"r", item.decay_rate}});
    }
    std::string text = out.dump(2);
    parse_items_json(text); // self-check: what we wrote must load again
    return text;
}

PeriodicSchedule parse_schedule_json(const std::string& text) {
    const json parsed = must_parse(text, "schedule");
    if (!parsed.is_object() || !parsed.contains("choices") || !parsed["choices"].is_array()) {
        throw schema_error("schedule: expected {\"period\": n, \"choices\": [...]}");
    }
    PeriodicSchedule schedule;
    for (const json& node : parsed["choices"]) {
        if (!node.is_number_integer()) {
            throw schema_error("schedule: choices must be integers (-1 for idle)");
        }
        schedule.choices.push_back(node.get<int>());
    }
    if (parsed.contains("period")) {
        if (!parsed["period"].is_number_integer() ||
            parsed["period"].get<int>() != schedule.period()) {
            throw schema_error("schedule: period does not match the number of choices");
        }
    }
    if (schedule.period() < 1) {
        throw schema_error("schedule: needs at least one slot");
    }
    for (const int c : schedule.choices) {
        if (c < kIdle) {
            throw schema_error("schedule: choice " + std::to_string(c) + " is not an index or -1");
        }
    }
    return schedule;
}

std::string schedule_to_json(const PeriodicSchedule& schedule) {
    json out;
    out["period"] = schedule.period();
    out["choices"] = schedule.choices;
    std::string text = out.dump(2);
    parse_schedule_json(text);
    return text;
}

Society parse_society_json(const std::string& text) {
    const json parsed = must_parse(text, "society");
    if (!parsed.is_object() || !parsed.contains("A") || !parsed["A"].is_array() ||
        !parsed.contains("items") || !parsed["items"].is_array()) {
        throw schema_error("society: expected {\"A\": [[..]..], \"r\": x, \"items\": [..]}");
    }
    Society society;
    const json& rows = parsed["A"];
    const int n = static_cast<int>(rows.size());
    society.influence = Matrix(n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw schema_error("society: influence matrix must be square");
        }
        for (int j = 0; j < n; ++j) {
            const json& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_number()) {
                throw schema_error("society: influence entries must be numbers");
            }
            society.influence.at(i, j) = cell.get<double>();
        }
    }
    society.decay_rate = number_field(parsed, "r", "society");
    for (const json& node : parsed["items"]) {
        SocietyItem item;
        item.label = node.value("label", std::string{});
        if (!node.contains("v") || !node["v"].is_array() || !node.contains("alpha") ||
            !node["alpha"].is_array()) {
            throw schema_error("society: items need per-person 'v' and 'alpha' arrays");
        }
        for (const json& cell : node["v"]) {
            item.base.push_back(cell.get<double>());
        }
        for (const json& cell : node["alpha"]) {
            item.boredom.push_back(cell.get<double>());
        }
        society.items.push_back(std::move(item));
    }
    validate_society(society);
    return society;
}

std::string society_to_json(const Society& society) {
    json matrix = json::array();
    for (int i = 0; i < society.influence.n; ++i) {
        json row = json::array();
        for (int j = 0; j < society.influence.n; ++j) {
            row.push_back(society.influence.at(i, j));
        }
        matrix.push_back(std::move(row));
    }
    json items = json::array();
    for (const SocietyItem& item : society.items) {
        items.push_back({{"label", item.label}, {"v", item.base}, {"alpha", item.boredom}});
    }
    json out;
    out["A"] = std::move(matrix);
    out["r"] = society.decay_rate;
    out["items"] = std::move(items);
    std::string text = out.dump(2);
    parse_society_json(text);
    return text;
}

std::vector<PopularityTrace> parse_traces_csv(const std::string& text) {
    std::vector<PopularityTrace> traces;
    std::istringstream stream(text);
    std::string line;
    bool long_form = false;
    bool first_content = true;

    const auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(s);
        while (std::getline(fs, field, ',')) {
            fields.push_back(field);
        }
        return fields;
    };

    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<std::string> fields = split(line);
        if (first_content) {
            first_content = false;
            if (fields.size() == 3 && fields[0] == "label" && fields[1] == "t") {
                long_form = true;
                continue; // header row
            }
            if (fields.size() != 2) {
                throw schema_error("trace CSV: expected 'label,t,count' or two columns (t, count)");
            }
            traces.push_back({"trace", {}});
        }
        try {
            if (long_form) {
                if (fields.size() != 3) {
                    throw schema_error("trace CSV: malformed row '" + line + "'");
                }
                if (traces.empty() || traces.back().label != fields[0]) {
                    traces.push_back({fields[0], {}});
                }
                traces.back().counts.push_back(std::stod(fields[2]));
            } else {
                if (fields.size() != 2) {
                    throw schema_error("trace CSV: malformed row '" + line + "'");
                }
                traces.back().counts.push_back(std::stod(fields[1]));
            }
        } catch (const std::invalid_argument&) {
            throw schema_error("trace CSV: non-numeric count in row '" + line + "'");
        } catch (const std::out_of_range&) {
            throw schema_error("trace CSV: count out of range in row '" + line + "'");
        }
    }
    if (traces.empty()) {
        throw schema_error("trace CSV: no data rows");
    }
    return traces;
}

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::ios_base::failure("cannot open '" + path + "' for reading");
    }
    std::ostringstream out;
    out << stream.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::ios_base::failure("cannot open '" + path + "' for writing");
    }
    stream << text;
    if (!stream) {
        throw std::ios_base::failure("short write to '" + path + "'");
    }
}

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

} // namespace bsched
