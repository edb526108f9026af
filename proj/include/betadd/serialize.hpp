#pragma once

#include "betadd/cylinders.hpp"
#include "betadd/measure.hpp"
#include "betadd/natext.hpp"
#include "betadd/qbeta.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>

namespace betadd {

using Json = nlohmann::ordered_json;

/*
 * Exact values travel as a four-integer record {a_num, a_den, b_num, b_den}
 * (decimal strings, since coefficients outgrow native integers), together
 * with a tagged decimal rendering and a double.
 */
inline Json to_json(const QBeta& x, std::size_t decimal_digits = 20) {
  return Json{{"a_num", numerator(x.a()).str()},
              {"a_den", denominator(x.a()).str()},
              {"b_num", numerator(x.b()).str()},
              {"b_den", denominator(x.b()).str()},
              {"decimal", x.to_decimal(decimal_digits)},
              {"decimal_digits", decimal_digits},
              {"float", x.to_double()}};
}

inline QBeta qbeta_from_json(const Json& j) {
  const Rational a{Int(j.at("a_num").get<std::string>()), Int(j.at("a_den").get<std::string>())};
  const Rational b{Int(j.at("b_num").get<std::string>()), Int(j.at("b_den").get<std::string>())};
  return {a, b};
}

inline Json to_json(const Interval& iv, std::size_t digits = 20) {
  return Json{{"left", to_json(iv.left, digits)}, {"right", to_json(iv.right, digits)}};
}

inline Json to_json(const Cylinder& c, std::size_t digits = 20) {
  return Json{{"block", c.block},
              {"rank", c.rank},
              {"left", to_json(c.interval.left, digits)},
              {"right", to_json(c.interval.right, digits)},
              {"full", c.full},
              {"empty", c.empty()}};
}

inline Json to_json(const RState& s, std::size_t digits = 20) {
  return Json{{"x", to_json(s.x, digits)},
              {"y", to_json(s.y, digits)},
              {"j", s.tag},
              {"n", s.level}};
}

inline Json to_json(const TowerPoint& p, std::size_t digits = 20) {
  return Json{{"x", to_json(p.x, digits)}, {"y", to_json(p.y, digits)}};
}

inline Json to_json(const PiecewiseDensity& d, std::size_t digits = 20) {
  Json breaks = Json::array();
  for (const auto& b : d.breakpoints) breaks.push_back(to_json(b, digits));
  Json values = Json::array();
  for (const auto& v : d.values) values.push_back(to_json(v, digits));
  return Json{{"breakpoints", breaks}, {"values", values}};
}

inline Json to_json(const FloatDensity& d) {
  return Json{{"breakpoints", d.breakpoints}, {"values", d.values}};
}

}  // namespace betadd
