#pragma once

#include "neron/abgroup.hpp"
#include "neron/classify.hpp"
#include "neron/linalg.hpp"
#include "neron/model.hpp"

#include "json.hpp"

namespace neron::json_io {

using Json = nlohmann::json;

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json integer_to_json(const Integer& x);
// Always a decimal string.
Json integer_to_string_json(const Integer& x);
// Accepts a JSON integer or a decimal string.
Integer integer_from_json(const Json& j);
long small_int_from_json(const Json& j, const char* what);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json to_json(const AbGroup& g);
AbGroup abgroup_from_json(const Json& j);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json poly_to_json(const ZPoly& p);
ZPoly poly_from_json(const Json& j);

Json to_json(const GaloisLatticeModel& m);
GaloisLatticeModel model_from_json(const Json& j);

Json to_json(const PhiReport& r, std::int64_t l);

Json to_json(const RealizabilityQuery& q);
RealizabilityQuery query_from_json(const Json& j);

Json to_json(const BlockSpec& b);
BlockSpec block_from_json(const Json& j);

// {"query": ..., "blocks": [...]}
Json to_json(const ConstructionPlan& p, const RealizabilityQuery& q);
ConstructionPlan plan_from_json(const Json& j);

// Parses text; malformed JSON raises InvalidArgument.
Json parse(const std::string& text);

} // namespace neron::json_io
