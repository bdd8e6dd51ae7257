#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

namespace rqc {

// Fixed %.17g rendering so reruns of the same build are byte-identical.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void csv_field(std::ostream& os, double v) { os << format_double(v); }
inline void csv_field(std::ostream& os, const std::string& v) { os << v; }
inline void csv_field(std::ostream& os, const char* v) { os << v; }
template <class T>
void csv_field(std::ostream& os, T v)
  requires std::is_integral_v<T>
{
  os << v;
}

template <class... Ts>
void csv_row(std::ostream& os, const Ts&... fields) {
  int i = 0;
  ((os << (i++ ? "," : ""), csv_field(os, fields)), ...);
  os << '\n';
}

}  // namespace rqc
