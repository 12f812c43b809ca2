#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pairdepth/depth.hpp"
#include "pairdepth/geometry.hpp"
#include "pairdepth/nets.hpp"
#include "pairdepth/selection.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {

// Point-set CSV: header `x1,...,xn`, one point per row, `.` decimals, no
// quoting, LF line endings. Values are written with 17 significant digits so
// a write/read round trip is exact.

PointSet read_csv(std::istream& in, std::string_view source = "<input>");
PointSet read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const PointSet& x);
std::string to_csv(const PointSet& x);

/// Serializes with two-space indentation; floats use printf("%.17g").
std::string dump_json(const nlohmann::json& value);

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json to_json(Coords p);
nlohmann::json to_json(const DepthReport& r);
nlohmann::json to_json(const CenterpointCertificate& c);
nlohmann::json to_json(const DiameterSelection& s);
nlohmann::json to_json(const BoxSplit& s);
nlohmann::json to_json(const TEstimate& e);
nlohmann::json to_json(const NetResult& r);
nlohmann::json to_json(const BoxLowerBound& b);
nlohmann::json to_json(const SegmentArrangementDepth& s);

nlohmann::json bound_block(std::string_view formula, double bound_value, double achieved_value, bool met);

}  // namespace pairdepth
