#include "irislab/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "irislab/errors.hpp"

namespace irislab {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "linear_to_db: need x > 0");
    return 10.0 * std::log10(x);
}

double dbm_to_w(double dbm) { return db_to_linear(dbm - 30.0); }
double w_to_dbm(double w) { return linear_to_db(w) + 30.0; }
double dbw_to_w(double dbw) { return db_to_linear(dbw); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits "30dBm" into 30 and "dBm".
std::pair<double, std::string_view> split_number(std::string_view text) {
    text = trim(text);
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v))
        fail(ErrorKind::config, "cannot read a number from '" + std::string(text) + "'");
    return {v, trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)))};
}

}  // namespace

double parse_power_w(std::string_view text) {
    const auto [v, unit] = split_number(text);
    double w = 0.0;
    if (unit.empty() || unit == "W")
        w = v;
    else if (unit == "mW")
        w = v * 1e-3;
    else if (unit == "dBm")
        w = dbm_to_w(v);
    else if (unit == "dBW")
        w = dbw_to_w(v);
    else
        fail(ErrorKind::config, "unknown power unit '" + std::string(unit) + "' in '" +
                                    std::string(text) + "'");
    if (w < 0.0) fail(ErrorKind::config, "power must be >= 0: '" + std::string(text) + "'");
    return w;
}

double parse_db(std::string_view text) {
    const auto [v, unit] = split_number(text);
    if (!unit.empty() && unit != "dB")
        fail(ErrorKind::config, "expected a dB value, got '" + std::string(text) + "'");
    return v;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) fail(ErrorKind::io, "format_double failed");
    return std::string(buf, ptr);
}

}  // namespace irislab
