#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ghr/correspondence.hpp"
#include "ghr/metric_space.hpp"
#include "ghr/realization.hpp"

namespace ghr::io {

using Json = nlohmann::ordered_json;

/// Accepts {"name", "points", "matrix"} JSON, or a whitespace-separated square
/// matrix whose points are labeled p0, p1, ...
FiniteMetricSpace parse_space(std::string_view text, double tol = kDefaultTolerance,
                              std::string fallback_name = {});
FiniteMetricSpace read_space(const std::filesystem::path& path, double tol = kDefaultTolerance);
Json to_json(const FiniteMetricSpace& space);

/// {"m", "n", "pairs": [[i, j], ...]}
Correspondence correspondence_from_json(const Json& j);
Correspondence read_correspondence(const std::filesystem::path& path);
Json to_json(const Correspondence& corr);

/// {"value", "method", "certified", "witness"}
Json to_json(const GHResult& result);

/// {"c", "grid", "points": [{"z", "label", "t"}], "matrix"}
Json to_json(const ProductSpace& product);
/// The family of a loaded product is tabulated from its own slices.
ProductSpace product_from_json(const Json& j, double tol = kDefaultTolerance);
ProductSpace read_product(const std::filesystem::path& path, double tol = kDefaultTolerance);

Json to_json(const MonotoneCheck& check);
Json to_json(const LipschitzCheck& check);
Json to_json(const ConditionReport& report);
Json to_json(const VerificationReport& report);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace ghr::io
