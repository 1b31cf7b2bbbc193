#include "vgprod/format.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace vgprod {
namespace {

std::string special(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return special(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  if (!std::isfinite(v)) return special(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_number(const std::string& text, double& out) {
  if (text == "inf" || text == "+inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (text == "-inf") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, out, std::chars_format::general);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace vgprod
