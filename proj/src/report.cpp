#include "apm/report.hpp"

#include <cmath>
#include <cstdio>

#include "apm/errors.hpp"

namespace apm {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", ch);
                    out += buffer;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string json_value(const Report::Value& value) {
    if (std::holds_alternative<std::string>(value)) {
        return "\"" + json_escape(std::get<std::string>(value)) + "\"";
    }
    if (std::holds_alternative<double>(value)) {
        const double v = std::get<double>(value);
        if (std::isnan(v) || std::isinf(v)) return "null";
    }
    return Report::format_value(value);
}

}  // namespace

std::string Report::format_value(const Value& value) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, value);
}

void Report::add_config(std::string key, Value value) {
    config_.emplace_back(std::move(key), std::move(value));
}

void Report::set_columns(std::vector<std::string> names) {
    columns_ = std::move(names);
}

void Report::add_row(std::vector<Value> values) {
    if (values.size() != columns_.size()) {
        throw validation_error("Report: row width does not match the column schema");
    }
    rows_.push_back(std::move(values));
}

void Report::write_csv(std::ostream& out) const {
    bool first = true;
    for (const auto& [key, value] : config_) {
        if (!first) out << ',';
        out << csv_escape(key);
        first = false;
    }
    for (const auto& name : columns_) {
        if (!first) out << ',';
        out << csv_escape(name);
        first = false;
    }
    out << '\n';
    for (const auto& row : rows_) {
        first = true;
        for (const auto& [key, value] : config_) {
            (void)key;
            if (!first) out << ',';
            out << csv_escape(format_value(value));
            first = false;
        }
        for (const auto& value : row) {
            if (!first) out << ',';
            out << csv_escape(format_value(value));
            first = false;
        }
        out << '\n';
    }
}

void Report::write_json(std::ostream& out) const {
    out << "{\"config\":{";
    for (std::size_t k = 0; k < config_.size(); ++k) {
        if (k) out << ',';
        out << '"' << json_escape(config_[k].first) << "\":" << json_value(config_[k].second);
    }
    out << "},\"rows\":[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r) out << ',';
        out << '{';
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out << ',';
            out << '"' << json_escape(columns_[c]) << "\":" << json_value(rows_[r][c]);
        }
        out << '}';
    }
    out << "]}\n";
}

}  // namespace apm
