#pragma once

// Deterministic result reports.  A report is a flat map of named scalars
// plus named tables; serialization to JSON and sectioned CSV is
// byte-stable: keys are emitted sorted, floating-point values are rounded
// through "%.6g", and no timestamps or environment data are recorded, so
// identical inputs always produce identical bytes.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "evaset/errors.hpp"

namespace evaset {

using Value = std::variant<bool, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    bool operator==(const Table&) const = default;
};

struct Report {
    std::string tool;
    std::map<std::string, Value> scalars;
    std::map<std::string, Table> tables;

    void set(const std::string& key, bool v) { scalars[key] = v; }
    void set(const std::string& key, std::int64_t v) { scalars[key] = v; }
    void set(const std::string& key, std::uint64_t v) {
        scalars[key] = static_cast<std::int64_t>(v);
    }
    void set(const std::string& key, int v) {
        scalars[key] = static_cast<std::int64_t>(v);
    }
    void set(const std::string& key, double v) { scalars[key] = v; }
    void set(const std::string& key, const char* v) {
        scalars[key] = std::string(v);
    }
    void set(const std::string& key, const std::string& v) { scalars[key] = v; }

    Table& table(const std::string& name, std::vector<std::string> columns);
    void add_row(const std::string& name, std::vector<Value> row);

    std::string to_json() const;
    std::string to_csv() const;
    static Report from_json(const std::string& text);
    static Report from_csv(const std::string& text);

    bool operator==(const Report&) const = default;
};

// "%.6g" rendering used for every floating-point value in both formats.
std::string format_double(double v);

}  // namespace evaset
