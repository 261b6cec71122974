#pragma once

#include <string>

#include <json.hpp>

#include "mgrz/algebra.hpp"
#include "mgrz/bundle.hpp"
#include "mgrz/bundle_model.hpp"
#include "mgrz/filtration.hpp"
#include "mgrz/frame.hpp"
#include "mgrz/model.hpp"

namespace mgrz {

using Json = nlohmann::ordered_json;

// All emitters produce "format": 1 envelopes (except valuations, which are
// bare letter->worlds objects because "format" is itself a legal letter
// name). Readers accept a missing "format" and reject any other version.

Json frame_to_json(const MKFrame& f);
MKFrame frame_from_json(const Json& j);

Json valuation_to_json(const Valuation& v);
Valuation valuation_from_json(const Json& j, int worlds);

Json bundle_to_json(const KripkeBundle& b);
KripkeBundle bundle_from_json(const Json& j);

Json algebra_to_json(const FiniteMMAlgebra& a);
FiniteMMAlgebra algebra_from_json(const Json& j);

// {"format":1, "w0": {"p*": [totalWorldIdx,...]}, ...} keyed by base world.
Json interpretation_to_json(const BundleModel& bm);
BundleModel bundle_model_from_json(const KripkeBundle& b, const Json& j);

Json worldset_to_json(const WorldSet& s);
Json class_report_to_json(const FrameClassReport& r);
Json algebra_report_to_json(const AlgebraReport& r);
Json filtration_result_to_json(const FiltrationResult& r);

Json load_json_file(const std::string& path);

}  // namespace mgrz
