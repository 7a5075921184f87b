#include "twdirac/report.hpp"

#include <cstdio>
#include <sstream>

namespace twdirac {

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void ResidualReport::finalize() {
  relative = l2_residual / std::max(l2_reference, 1e-300);
  pass = relative <= tolerance;
}

std::string ResidualReport::to_json() const {
  std::ostringstream os;
  os << "{\"equation\":\"" << json_escape(equation) << "\"";
  os << ",\"family\":\"" << json_escape(family) << "\"";
  os << ",\"params\":{";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(params[i].first) << "\":" << format_double17(params[i].second);
  }
  os << "}";
  os << ",\"beta\":[" << format_double17(beta.x()) << "," << format_double17(beta.y()) << ","
     << format_double17(beta.z()) << "]";
  os << ",\"mode\":\"" << json_escape(mode) << "\"";
  os << ",\"samples\":" << samples;
  os << ",\"l2_residual\":" << format_double17(l2_residual);
  os << ",\"max_residual\":" << format_double17(max_residual);
  os << ",\"l2_reference\":" << format_double17(l2_reference);
  os << ",\"relative\":" << format_double17(relative);
  os << ",\"tolerance\":" << format_double17(tolerance);
  os << ",\"pass\":" << (pass ? "true" : "false");
  os << "}";
  return os.str();
}

}  // namespace twdirac
