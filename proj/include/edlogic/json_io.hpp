#pragma once

// JSON file formats. Numbers may be integers, decimal literals, or "p/q"
// strings; decimal literals are converted exactly (0.2 -> 1/5), which
// requires parsing with the raw token preserved. Emitted numbers are always
// "p/q" strings.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "edlogic/decision.hpp"
#include "edlogic/evidence.hpp"
#include "edlogic/product.hpp"
#include "edlogic/space.hpp"

namespace edlogic {

// Parses JSON with float literals preserved as raw-text strings, so decimal
// inputs stay exact.
nlohmann::json exact_parse_json(const std::string& text);
nlohmann::json exact_parse_json_file(const std::string& path);

Rat rat_from_json(const nlohmann::json& j);
nlohmann::json rat_to_json(const Rat& r);

// Space files: {"points": [...], "metric": [[...]], "prob": [...]}.
RawSpace raw_space_from_json(const nlohmann::json& j);
MetricProbSpace space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const MetricProbSpace& space);

// Set-function / mass files: {"points": [...], "values": {"A,B": "1/5", ...}}
// with subset keys as comma-joined sorted identifiers, "" for the empty set.
SetFunction set_function_from_json(const nlohmann::json& j);
MassFunction mass_function_from_json(const nlohmann::json& j);
nlohmann::json set_function_to_json(const SetFunction& sf);
nlohmann::json mass_function_to_json(const MassFunction& m);

// Product files: {"components": [<space>...], "joint": {"a|b": "1/8", ...}}
// (joint optional; tuple keys join component point names with '|').
ProductSpace product_from_json(const nlohmann::json& j,
                               long max_tuples = kDefaultProductTupleCap);

// Valuations: {"valuation": {"point": ["P", ...], ...}} (total on the frame).
Valuation valuation_from_json(const nlohmann::json& j, const Frame& frame);
nlohmann::json valuation_to_json(const Valuation& v, const Frame& frame);

// A model file is a space file with a "valuation" member.
Model model_from_json(const nlohmann::json& space_json,
                      const nlohmann::json& valuation_json);
nlohmann::json model_to_json(const Model& m);

// Witness files: {"verdict": ..., "e": {"{1,3}": "1/4", ...}, "mass": {...},
// "model": optional model object}.
nlohmann::json witness_to_json(const Witness& w, bool include_model);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace edlogic
