#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seisgrid {

/// Malformed or unreadable input (bad JSON, missing field, wrong type).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parsed but violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not produce a usable answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plan-view position in kilometres.
struct Point {
  double x_km = 0.0;
  double y_km = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance_km(Point a, Point b);
Point midpoint(Point a, Point b);

/// Damageable component classes. The numeric value is the table index.
enum class ComponentClass : std::uint8_t { Bus = 0, Generator = 1, Load = 2, Substation = 3 };

inline constexpr std::array<ComponentClass, 4> kComponentClasses{
    ComponentClass::Bus, ComponentClass::Generator, ComponentClass::Load,
    ComponentClass::Substation};

constexpr std::size_t class_index(ComponentClass c) { return static_cast<std::size_t>(c); }

/// Lower-case key used in input files ("bus", "generator", "load", "substation").
std::string_view class_key(ComponentClass c);
/// Short label used in component names ("Bus", "Gen", "Load", "Sub").
std::string_view class_label(ComponentClass c);
ComponentClass parse_class(std::string_view key);

/// Identifies one damageable component, e.g. {Bus, 15} printed as "Bus 15".
struct ComponentKey {
  ComponentClass cls = ComponentClass::Bus;
  int id = 0;

  auto operator<=>(const ComponentKey&) const = default;

  std::string name() const;
  /// Accepts "Bus 15", "Gen 13", "Load 13", "Sub 5" (case-insensitive label).
  static ComponentKey parse(std::string_view name);
};

/// Number of discrete damage states (0 = intact .. 4 = complete).
inline constexpr int kDamageStates = 5;
/// Number of fragility limit states (slight, moderate, extensive, complete).
inline constexpr int kLimitStates = 4;

}  // namespace seisgrid
