#include "thermoflow/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "thermoflow/mms.hpp"

namespace thermoflow {

namespace {
using std::numbers::pi;
}

VectorFunction decay_velocity() {
  // psi = sin^2(pi x) sin^2(pi y), u = (psi_y, -psi_x)
  return [](const Vec2& p) {
    const double sx = std::sin(pi * p.x()), sy = std::sin(pi * p.y());
    return Vec2(sx * sx * pi * std::sin(2 * pi * p.y()), -pi * std::sin(2 * pi * p.x()) * sy * sy);
  };
}

VectorFunction perturbation_velocity() {
  // psi = sin^2(2 pi x) sin^2(pi y)
  return [](const Vec2& p) {
    const double sx = std::sin(2 * pi * p.x()), sy = std::sin(pi * p.y());
    return Vec2(sx * sx * pi * std::sin(2 * pi * p.y()), -2 * pi * std::sin(4 * pi * p.x()) * sy * sy);
  };
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names = {"rest", "decay", "decay_hot"};
  for (auto& n : mms_case_names()) names.push_back(n);
  return names;
}

Scenario make_scenario(const std::string& name) {
  if (name == "rest") {
    Scenario s;
    s.name = name;
    s.theta0 = [](const Vec2&) { return 1.0; };
    return s;
  }
  if (name == "decay" || name == "decay_hot") {
    Scenario s;
    s.name = name;
    s.u0 = decay_velocity();
    if (name == "decay") {
      s.theta0 = [](const Vec2&) { return 1.0; };
    } else {
      s.theta0 = [](const Vec2& p) { return 1.0 + 0.5 * std::sin(pi * p.x()) * std::sin(pi * p.y()); };
    }
    return s;
  }
  for (const auto& n : mms_case_names()) {
    if (n == name) return mms_case(name);
  }
  throw ValidationError("unknown scenario '" + name + "'");
}

}  // namespace thermoflow
