#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "permpoly/families.hpp"
#include "permpoly/oracle.hpp"

namespace permpoly::app {

using nlohmann::json;

inline constexpr std::string_view kToolVersion = "1.0.0";

// Keys are kept sorted by nlohmann::json itself, so dump() is canonical and a
// parse/dump round trip reproduces the text byte for byte.
json to_json(const Elem& x);
json to_json(const WitnessValue& value);
json to_json(const Witness& witness);
json to_json(const ConditionReport& report);
json to_json(const VerifyReport& report);
json field_json(const Field& field);
json params_json(const ParamMap& params);
json anchor_json(FamilyId id);

json instance_json(std::string_view command, FamilyId id, const Field& field, const ParamMap& params,
                   const ConditionReport& condition, const std::optional<VerifyReport>& oracle);

std::string dump(const json& doc);

/// "g^7 [rep 5]": both notations, as accepted on the command line.
std::string elem_text(const Elem& x);
std::string witness_text(const Witness& witness);
std::string witness_text(const ClauseResult& clause);

std::string csv_field(std::string_view text);

}  // namespace permpoly::app
