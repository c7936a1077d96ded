#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minkgeo/core.hpp"
#include "minkgeo/errors.hpp"

namespace minkgeo {

/// On-disk description of a MetricSpec. The exponent is a JSON number or the
/// string "inf" for the maximum metric; `normalize` asks validate_frame to
/// rescale the rows to unit length.
struct SpecDocument {
  std::size_t dimension = 0;
  double exponent = 0.0;
  std::vector<std::vector<double>> vectors;
  std::vector<double> weights;
  bool normalize = false;
};

inline SpecDocument parse_spec_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    SpecDocument doc;
    doc.dimension = j.at("dimension").get<std::size_t>();
    const auto& exp = j.at("exponent");
    if (exp.is_string()) {
      if (exp.get<std::string>() != "inf")
        throw ParseError("exponent string must be \"inf\"");
      doc.exponent = kInf;
    } else if (exp.is_number()) {
      doc.exponent = exp.get<double>();
    } else {
      throw ParseError("exponent must be a number or \"inf\"");
    }
    doc.vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
    doc.weights = j.at("weights").get<std::vector<double>>();
    doc.normalize = j.value("normalize", false);
    if (doc.vectors.size() != doc.dimension)
      throw ParseError("vectors must hold `dimension` rows");
    for (const auto& row : doc.vectors)
      if (row.size() != doc.dimension) throw ParseError("every vector row needs `dimension` entries");
    if (doc.weights.size() != doc.dimension)
      throw ParseError("weights must hold `dimension` entries");
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("spec document schema violation: ") + e.what());
  }
}

inline std::string to_json(const SpecDocument& doc) {
  nlohmann::json j;
  j["dimension"] = doc.dimension;
  if (std::isinf(doc.exponent))
    j["exponent"] = "inf";
  else
    j["exponent"] = doc.exponent;
  j["vectors"] = doc.vectors;
  j["weights"] = doc.weights;
  if (doc.normalize) j["normalize"] = true;
  return j.dump(2) + "\n";
}

inline MetricSpec to_metric_spec(const SpecDocument& doc) {
  return MetricSpec(validate_frame(doc.vectors, doc.normalize), doc.weights, doc.exponent);
}

inline SpecDocument load_spec_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_document(buf.str());
}

inline MetricSpec load_metric_spec(const std::string& path) {
  return to_metric_spec(load_spec_document(path));
}

}  // namespace minkgeo
