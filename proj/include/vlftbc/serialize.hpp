#pragma once

#include <string>

#include <json.hpp>

#include "vlftbc/bounds.hpp"
#include "vlftbc/converse.hpp"
#include "vlftbc/info.hpp"
#include "vlftbc/ordering.hpp"
#include "vlftbc/prob.hpp"
#include "vlftbc/sim.hpp"

namespace vlftbc {

using Json = nlohmann::ordered_json;

struct ChannelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ChannelFile schema:
//   {"input_size": n, "branches": [{"matrix": [[..]]}, ...],
//    "joint": {"shape": [|X|, |Y_1|, .., |Y_K|], "data": [..]},   (optional)
//    "name": "..."}                                               (optional)
// Joint data is flat with x slowest, then y_1 .. y_K (y_K fastest).
BroadcastChannel channel_from_json(const Json& doc);
Json channel_to_json(const BroadcastChannel& bc, const std::string& name = "");
BroadcastChannel load_channel(const std::string& path);

Json ext_to_json(const ExtReal& v);
Json summary_to_json(const InfoSummary& s);
Json ordering_to_json(const OrderingReport& rep);
Json sim_result_to_json(const SimResult& r);
Json check_report_to_json(const CheckReport& r);

std::string csv_double(double v);  // 9 significant digits
std::string rate_points_to_csv(const std::vector<RatePoint>& pts);
std::string sessions_to_csv(const std::vector<SessionRecord>& recs, int receivers);

}  // namespace vlftbc
