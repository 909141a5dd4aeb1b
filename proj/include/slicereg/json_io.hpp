#pragma once

#include <json.hpp>

#include "slicereg/checks.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

// Wire encodings shared by the CLI, reports and tests.  All conversions
// are explicit; malformed input raises UsageError.
//
//   Multivector    {"n": int, "coeffs": [2^n reals in blade-mask order]}
//   SlicePoint     {"u": real, "v": real, "axis": <multivector>}
//   SliceSeries    {"structure": "paravector"|"quaternion", "n": int,
//                   "degree": int, "coefficients": [[2^n reals], ...]}
//   ComplexSeries  {"degree": int, "coefficients": [[re, im], ...]}
//   CheckReport    {"name", "samples", "max_residual", "tolerance",
//                   "pass", "witness"}

nlohmann::json to_json(const Multivector& m);
Multivector multivector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SlicePoint& p);
SlicePoint slice_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SliceSeries& f);
SliceSeries series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ComplexSeries& f);
ComplexSeries complex_series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CheckReport& r);

// Multivector literals like "1", "e1", "e12", "0.6e1+0.8e2", "i-0.5k"
// (i, j, k alias e1, e2, e12 for quaternion contexts).
Multivector parse_multivector_literal(const std::string& text, const ContextPtr& ctx);

// Parses and normalizes an axis literal; rejects non-sphere content.
Multivector parse_axis_literal(const std::string& text, const SliceStructure& s);

}  // namespace slicereg
