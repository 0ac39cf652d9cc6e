#pragma once

#include <string>
#include <string_view>

namespace irislab {

double db_to_linear(double db);
double linear_to_db(double x);
double dbm_to_w(double dbm);
double w_to_dbm(double w);
double dbw_to_w(double dbw);

// Accepts "30dBm", "9 dBW", "1.0W", "250mW" or a bare number taken as watts.
double parse_power_w(std::string_view text);

// Accepts "-30dB" or a bare number taken as dB.
double parse_db(std::string_view text);

// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace irislab
