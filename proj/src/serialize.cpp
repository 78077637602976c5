#include "vlftbc/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vlftbc {

BroadcastChannel channel_from_json(const Json& doc) {
    if (!doc.is_object()) throw ChannelFormatError("channel file: top level must be an object");
    if (!doc.contains("input_size") || !doc["input_size"].is_number_integer())
        throw ChannelFormatError("channel file: missing integer field 'input_size'");
    const int nx = doc["input_size"].get<int>();
    if (nx < 1) throw ChannelFormatError("channel file: input_size must be >= 1");
    if (!doc.contains("branches") || !doc["branches"].is_array() || doc["branches"].empty())
        throw ChannelFormatError("channel file: 'branches' must be a non-empty array");

    std::vector<ChannelMatrix> branches;
    int idx = 0;
    for (const auto& entry : doc["branches"]) {
        ++idx;
        if (!entry.is_object() || !entry.contains("matrix") || !entry["matrix"].is_array())
            throw ChannelFormatError("channel file: branch " + std::to_string(idx) +
                                     " needs a 'matrix' array");
        std::vector<std::vector<double>> rows;
        for (const auto& row : entry["matrix"]) {
            if (!row.is_array())
                throw ChannelFormatError("channel file: branch " + std::to_string(idx) +
                                         " matrix rows must be arrays");
            rows.push_back(row.get<std::vector<double>>());
        }
        if (static_cast<int>(rows.size()) != nx)
            throw ChannelFormatError("channel file: branch " + std::to_string(idx) + " has " +
                                     std::to_string(rows.size()) + " rows, expected input_size=" +
                                     std::to_string(nx));
        try {
            branches.emplace_back(std::move(rows));
        } catch (const std::exception& e) {
            throw ChannelFormatError("channel file: branch " + std::to_string(idx) + ": " +
                                     e.what());
        }
    }

    std::optional<JointTensor> joint;
    if (doc.contains("joint") && !doc["joint"].is_null()) {
        const auto& j = doc["joint"];
        if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
            throw ChannelFormatError("channel file: 'joint' needs 'shape' and 'data'");
        std::vector<int> shape = j["shape"].get<std::vector<int>>();
        if (shape.size() != branches.size() + 1 || shape.front() != nx)
            throw ChannelFormatError(
                "channel file: joint shape must be [input_size, |Y_1|, ..., |Y_K|]");
        JointTensor t;
        t.output_sizes.assign(shape.begin() + 1, shape.end());
        t.probs = j["data"].get<std::vector<double>>();
        joint = std::move(t);
    }
    try {
        return BroadcastChannel(std::move(branches), std::move(joint));
    } catch (const std::exception& e) {
        throw ChannelFormatError(std::string("channel file: ") + e.what());
    }
}

Json channel_to_json(const BroadcastChannel& bc, const std::string& name) {
    Json doc;
    if (!name.empty()) doc["name"] = name;
    doc["input_size"] = bc.input_size();
    Json branches = Json::array();
    for (int j = 0; j < bc.receivers(); ++j) {
        Json rows = Json::array();
        for (int x = 0; x < bc.input_size(); ++x) rows.push_back(bc.branch(j).row(x).probs());
        branches.push_back(Json{{"matrix", rows}});
    }
    doc["branches"] = branches;
    if (bc.has_joint()) {
        const JointTensor& t = bc.joint();
        std::vector<int> shape{bc.input_size()};
        shape.insert(shape.end(), t.output_sizes.begin(), t.output_sizes.end());
        doc["joint"] = Json{{"shape", shape}, {"data", t.probs}};
    }
    return doc;
}

BroadcastChannel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChannelFormatError("cannot open channel file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ChannelFormatError(path + ": " + e.what());
    }
    return channel_from_json(doc);
}

Json ext_to_json(const ExtReal& v) {
    if (!v.finite()) return Json("inf");
    return Json(v.value);
}

Json summary_to_json(const InfoSummary& s) {
    Json out;
    out["B"] = ext_to_json(s.B);
    out["B_j"] = Json::array();
    for (const auto& v : s.Bj) out["B_j"].push_back(ext_to_json(v));
    out["B_max"] = ext_to_json(s.Bmax);
    out["T_j"] = Json::array();
    for (const auto& v : s.Tj) out["T_j"].push_back(ext_to_json(v));
    out["C_j"] = s.Cj;
    out["C"] = s.C;
    out["C_bar"] = s.Cbar;
    out["argmax_pair_B"] = Json::array({s.argmax_pair_B.first, s.argmax_pair_B.second});
    out["p_star"] = s.pstar.probs();
    out["tol"] = s.tol;
    return out;
}

Json ordering_to_json(const OrderingReport& rep) {
    Json out;
    out["physically_degraded"] = verdict_name(rep.physically_degraded);
    out["stochastically_degraded"] = verdict_name(rep.stochastic.verdict);
    out["stochastic_residual"] = rep.stochastic.residual;
    Json wits = Json::array();
    for (const auto& w : rep.stochastic.witnesses) {
        Json rows = Json::array();
        for (int a = 0; a < w.input_size(); ++a) rows.push_back(w.row(a).probs());
        wits.push_back(rows);
    }
    out["witnesses"] = wits;
    out["less_capable"] = verdict_name(rep.less_capable.verdict);
    out["less_capable_min_gap"] = rep.less_capable.min_gap;
    if (rep.less_capable.counterexample)
        out["counterexample"] = rep.less_capable.counterexample->probs();
    out["less_capable_diagnostics"] = rep.less_capable.diagnostics;
    return out;
}

Json sim_result_to_json(const SimResult& r) {
    Json out;
    Json cfg;
    cfg["R"] = r.config.R;
    cfg["L"] = r.config.L;
    cfg["gamma"] = r.config.gamma;
    cfg["message_len"] = r.config.message_len();
    cfg["control_len"] = r.config.control_len();
    cfg["delta"] = r.config.delta;
    cfg["epsilon"] = r.config.epsilon;
    cfg["M"] = r.config.M;
    cfg["trials"] = r.config.trials;
    cfg["seed"] = r.config.seed;
    cfg["max_blocks"] = r.config.max_blocks;
    cfg["fixed_codebook"] = r.config.fixed_codebook;
    out["config"] = cfg;
    out["pe_hat"] = r.pe_hat;
    out["pe_ci95"] = Json::array({r.pe_ci_lo, r.pe_ci_hi});
    out["pe_j_hat"] = r.pe_j_hat;
    out["mean_tau_j"] = r.mean_tau_j;
    out["var_tau_j"] = r.var_tau_j;
    out["mean_tau_max"] = r.mean_tau_max;
    out["q_hat_j"] = r.q_hat_j;
    out["q_pred_j"] = r.q_pred_j;
    out["p1e_hat_j"] = r.p1e_hat_j;
    out["p2ce_hat_j"] = r.p2ce_hat_j;
    out["p2ec_hat_j"] = r.p2ec_hat_j;
    if (r.empirical_exponent) out["empirical_exponent"] = *r.empirical_exponent;
    else out["empirical_exponent"] = nullptr;
    out["error_sessions"] = r.error_sessions;
    out["truncated_sessions"] = r.truncated_sessions;
    return out;
}

Json check_report_to_json(const CheckReport& r) {
    Json out;
    out["name"] = r.name;
    out["pass"] = r.pass;
    out["worst_slack"] = r.worst_slack;
    out["checks"] = r.checks;
    if (!r.witness.empty()) out["witness"] = r.witness;
    return out;
}

std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string rate_points_to_csv(const std::vector<RatePoint>& pts) {
    std::ostringstream os;
    os << "R,lower_E,upper_E,exact,valid_lower,valid_upper\n";
    for (const auto& p : pts) {
        os << csv_double(p.R) << ',';
        os << (p.valid_lower ? csv_double(p.lower_E) : "") << ',';
        os << (p.valid_upper ? csv_double(p.upper_E) : "") << ',';
        os << (p.exact ? csv_double(*p.exact) : "") << ',';
        os << (p.valid_lower ? 1 : 0) << ',' << (p.valid_upper ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string sessions_to_csv(const std::vector<SessionRecord>& recs, int receivers) {
    std::ostringstream os;
    os << "trial,W";
    for (int j = 1; j <= receivers; ++j) os << ",tau_" << j;
    for (int j = 1; j <= receivers; ++j) os << ",correct_" << j;
    os << ",blocks\n";
    for (size_t i = 0; i < recs.size(); ++i) {
        const SessionRecord& r = recs[i];
        os << i << ',' << r.message;
        for (int j = 0; j < receivers; ++j) os << ',' << r.tau[static_cast<size_t>(j)];
        for (int j = 0; j < receivers; ++j)
            os << ',' << (r.decoded[static_cast<size_t>(j)] == r.message ? 1 : 0);
        os << ',' << r.blocks << '\n';
    }
    return os.str();
}

}  // namespace vlftbc
