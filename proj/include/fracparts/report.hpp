#pragma once

// Deterministic JSON emission for run reports: keys keep insertion order and
// floats are printed with 17 significant digits, so identical runs produce
// identical bytes.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fracparts {

inline std::string json_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

class Json {
public:
    static Json object() { return Json(Kind::Object); }
    static Json array() { return Json(Kind::Array); }
    static Json str(const std::string& s) { return Json(json_escape(s)); }
    static Json num(double v) { return Json(json_double(v)); }
    static Json num(long long v) { return Json(std::to_string(v)); }
    static Json num(unsigned long long v) { return Json(std::to_string(v)); }
    static Json num(int v) { return Json(std::to_string(v)); }
    static Json num(std::uint64_t v) { return Json(std::to_string(v)); }
    static Json boolean(bool b) { return Json(std::string(b ? "true" : "false")); }

    Json& set(const std::string& key, Json v) {
        members_.emplace_back(key, std::move(v));
        return *this;
    }
    Json& push(Json v) {
        members_.emplace_back(std::string(), std::move(v));
        return *this;
    }

    std::string dump() const {
        switch (kind_) {
            case Kind::Scalar: return scalar_;
            case Kind::Array: {
                std::string out = "[";
                for (size_t i = 0; i < members_.size(); ++i) {
                    if (i) out += ",";
                    out += members_[i].second.dump();
                }
                return out + "]";
            }
            case Kind::Object: {
                std::string out = "{";
                for (size_t i = 0; i < members_.size(); ++i) {
                    if (i) out += ",";
                    out += json_escape(members_[i].first) + ":" + members_[i].second.dump();
                }
                return out + "}";
            }
        }
        return "null";
    }

private:
    enum class Kind { Scalar, Array, Object };
    explicit Json(Kind k) : kind_(k) {}
    explicit Json(std::string scalar) : kind_(Kind::Scalar), scalar_(std::move(scalar)) {}

    Kind kind_ = Kind::Scalar;
    std::string scalar_ = "null";
    std::vector<std::pair<std::string, Json>> members_;
};

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

}  // namespace fracparts
