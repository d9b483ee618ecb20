#include "seisgrid/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace seisgrid {

double distance_km(Point a, Point b) { return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km); }

Point midpoint(Point a, Point b) {
  return {0.5 * (a.x_km + b.x_km), 0.5 * (a.y_km + b.y_km)};
}

std::string_view class_key(ComponentClass c) {
  switch (c) {
    case ComponentClass::Bus: return "bus";
    case ComponentClass::Generator: return "generator";
    case ComponentClass::Load: return "load";
    case ComponentClass::Substation: return "substation";
  }
  return "?";
}

std::string_view class_label(ComponentClass c) {
  switch (c) {
    case ComponentClass::Bus: return "Bus";
    case ComponentClass::Generator: return "Gen";
    case ComponentClass::Load: return "Load";
    case ComponentClass::Substation: return "Sub";
  }
  return "?";
}

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

ComponentClass parse_class(std::string_view key) {
  const std::string k = lowered(key);
  if (k == "bus") return ComponentClass::Bus;
  if (k == "generator" || k == "gen") return ComponentClass::Generator;
  if (k == "load") return ComponentClass::Load;
  if (k == "substation" || k == "sub") return ComponentClass::Substation;
  throw ParseError("unknown component class '" + std::string(key) + "'");
}

std::string ComponentKey::name() const {
  return std::string(class_label(cls)) + " " + std::to_string(id);
}

ComponentKey ComponentKey::parse(std::string_view name) {
  const auto space = name.find(' ');
  if (space == std::string_view::npos) {
    throw ParseError("component name '" + std::string(name) + "' must look like 'Bus 15'");
  }
  ComponentKey key;
  key.cls = parse_class(name.substr(0, space));
  const auto digits = name.substr(space + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), key.id);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError("component name '" + std::string(name) + "' has a non-integer id");
  }
  return key;
}

}  // namespace seisgrid
