#include "report.hpp"

#include <cmath>
#include <limits>

namespace permpoly::app {

json to_json(const Elem& x) { return {{"rep", x.rep()}, {"power", x.field().format(x.rep())}}; }

json to_json(const WitnessValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigInt>) {
          if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(v);
          return v.str();
        } else if constexpr (std::is_same_v<T, Elem>) {
          return to_json(v);
        } else {
          return v;
        }
      },
      value);
}

json to_json(const Witness& witness) {
  if (const auto* c = std::get_if<Collision>(&witness))
    return {{"kind", "collision"}, {"x1", to_json(c->x1)}, {"x2", to_json(c->x2)}, {"image", to_json(c->image)}};
  const auto& e = std::get<Escape>(witness);
  return {{"kind", "escape"}, {"x", to_json(e.x)}, {"image", to_json(e.image)}};
}

json to_json(const ConditionReport& report) {
  json clauses = json::array();
  for (const ClauseResult& c : report.clauses) {
    json witness = json::object();
    for (const auto& [name, value] : c.witness) witness[name] = to_json(value);
    clauses.push_back({{"clause", c.name}, {"pass", c.pass}, {"witness", witness}});
  }
  return clauses;
}

json to_json(const VerifyReport& report) {
  // Rounded to whole microseconds; the only non-integer number in a report.
  const double ms = std::round(report.elapsed.count() * 1000.0) / 1000.0;
  return {{"target", report.target},
          {"is-permutation", report.is_permutation},
          {"witness", report.witness ? to_json(*report.witness) : json(nullptr)},
          {"evaluations", report.evaluations},
          {"elapsed-ms", ms}};
}

json field_json(const Field& field) {
  json coeffs = json::array();
  for (unsigned c : field.modulus()) coeffs.push_back(c);
  return {{"p", field.characteristic()},
          {"k", field.degree()},
          {"modulus-coeffs", coeffs},
          {"generator-rep", field.generator_rep()}};
}

json params_json(const ParamMap& params) {
  json out = json::object();
  for (const auto& [name, value] : params) {
    if (const auto* e = std::get_if<Elem>(&value)) out[name] = to_json(*e);
    else if (const auto* i = std::get_if<std::int64_t>(&value)) out[name] = *i;
    else out[name] = format_param(value);
  }
  return out;
}

json anchor_json(FamilyId id) {
  const FamilySpec& spec = family(id);
  return {{"proposition", spec.source}, {"quote", spec.anchor}};
}

json instance_json(std::string_view command, FamilyId id, const Field& field, const ParamMap& params,
                   const ConditionReport& condition, const std::optional<VerifyReport>& oracle) {
  return {{"tool-version", kToolVersion},
          {"command", command},
          {"field", field_json(field)},
          {"family", to_string(id)},
          {"params", params_json(params)},
          {"condition", to_json(condition)},
          {"oracle", oracle ? to_json(*oracle) : json(nullptr)},
          {"paper-anchor", anchor_json(id)}};
}

std::string dump(const json& doc) { return doc.dump(2); }

std::string elem_text(const Elem& x) {
  return x.field().format(x.rep()) + " [rep " + std::to_string(x.rep()) + "]";
}

std::string witness_text(const Witness& witness) {
  if (const auto* c = std::get_if<Collision>(&witness))
    return "f(" + elem_text(c->x1) + ") = f(" + elem_text(c->x2) + ") = " + elem_text(c->image);
  const auto& e = std::get<Escape>(witness);
  return "f(" + elem_text(e.x) + ") = " + elem_text(e.image) + " leaves the subset";
}

std::string witness_text(const ClauseResult& clause) {
  std::string out;
  for (const auto& [name, value] : clause.witness) {
    if (!out.empty()) out += ", ";
    out += name + "=";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BigInt>) out += v.str();
          else if constexpr (std::is_same_v<T, Elem>) out += elem_text(v);
          else if constexpr (std::is_same_v<T, bool>) out += v ? "true" : "false";
          else out += v;
        },
        value);
  }
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace permpoly::app
