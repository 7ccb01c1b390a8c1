#pragma once

#include <nlohmann/json.hpp>

#include "flattrace/catalog.hpp"

namespace flattrace {

using Json = nlohmann::json;

// Rationals are encoded as strings "p/q" (or "n" when integral); integer
// matrix entries as JSON numbers. Round trips are value-exact.

Json elem_to_json(const Elem& e);
Elem elem_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json vecq_to_json(const VecQ& v);
VecQ vecq_from_json(const Json& j);

Json group_to_json(const Group& g);
Group group_from_json(const Json& j);

Json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const Json& j, const Group& source, const Group& target);

Json map_to_json(const AffineMapSpec& m);
AffineMapSpec map_from_json(const Json& j, const Group& source, const Group& target);

Json subgroup_to_json(const Subgroup& s);
Subgroup subgroup_from_json(const Json& j);

Json bundle_to_json(const ExampleBundle& b);
ExampleBundle bundle_from_json(const Json& j);

ExampleBundle load_bundle_file(const std::string& path);
void save_bundle_file(const ExampleBundle& b, const std::string& path);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json trace_to_json(const TraceVector& t);
Json averaging_report_to_json(const AveragingReport& r);

}  // namespace flattrace
