#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace apm {

// One run record: the resolved experiment config plus a result table. The
// writers are deliberately hand-rolled so the byte output is deterministic;
// floats are rendered with 17 significant digits (value-preserving).
class Report {
  public:
    using Value = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

    void add_config(std::string key, Value value);
    void set_columns(std::vector<std::string> names);
    void add_row(std::vector<Value> values);

    // CSV: one header row (config columns then result columns), one line per
    // row with the config values repeated. An empty table emits just the
    // header.
    void write_csv(std::ostream& out) const;

    // JSON: a single object {"config": {...}, "rows": [...]}.
    void write_json(std::ostream& out) const;

    static std::string format_value(const Value& value);

  private:
    std::vector<std::pair<std::string, Value>> config_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Value>> rows_;
};

}  // namespace apm
