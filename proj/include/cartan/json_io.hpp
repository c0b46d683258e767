#pragma once

// JSON encodings used repo-wide. Matrices travel as
//   {"rows": m, "cols": n, "data": [[re, im], ...]}   (row-major)
// and isometries as {"m": m, "n": n, "matrix": <matrix>}. Parsing goes
// through nlohmann::json; serialization uses a fixed 17-significant-digit
// float format so equal inputs produce byte-identical output that
// round-trips doubles exactly.

#include <string>

#include "json.hpp"

#include "cartan/classify.hpp"
#include "cartan/fixed_points.hpp"

namespace cartan {

using Json = nlohmann::json;

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json complex_to_json(const Complex& z);

struct IsometryParts {
  Mat matrix;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
};

// Shape-validates without running the membership check, so callers can
// report NotAMember with residuals attached.
IsometryParts isometry_parts_from_json(const Json& j);

Json isometry_to_json(const GIsometry& t);
Json factored_to_json(const FactoredIsometry& f);
Json relations_to_json(const RelationsReport& r);
Json classification_to_json(const Classification& c);
Json decomposition_to_json(const SpectralDecomposition& s);
Json spectrum_to_json(const std::vector<LabeledEigenvalue>& spectrum);
Json detection_to_json(const DetectionReport& r);
Json generic_point_to_json(const GenericFixedPoint& p);
Json extra_point_to_json(const ExtraFixedPoint& p);

// Wraps nlohmann parse failures in ParseError.
Json parse_json(const std::string& text);

// Deterministic dump: sorted keys (nlohmann's std::map order), floats at
// 17 significant digits, two-space indent when pretty.
std::string dump_json(const Json& j, bool pretty);

}  // namespace cartan
