#include "vlftbc/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "vlftbc/serialize.hpp"

namespace vlftbc {

namespace {

BroadcastChannel random_positive_channel(RngStream& rng, int max_in, int max_out, int max_k) {
    int nx = 2 + static_cast<int>(rng.next() % static_cast<uint64_t>(max_in - 1));
    int K = 1 + static_cast<int>(rng.next() % static_cast<uint64_t>(max_k));
    std::vector<ChannelMatrix> branches;
    for (int j = 0; j < K; ++j) {
        int ny = 2 + static_cast<int>(rng.next() % static_cast<uint64_t>(max_out - 1));
        std::vector<std::vector<double>> rows(static_cast<size_t>(nx),
                                              std::vector<double>(static_cast<size_t>(ny)));
        for (auto& row : rows) {
            double s = 0.0;
            for (double& v : row) {
                v = 0.05 + rng.uniform01();
                s += v;
            }
            for (double& v : row) v /= s;
        }
        branches.emplace_back(std::move(rows));
    }
    return BroadcastChannel(std::move(branches));
}

int verify_channel(const BroadcastChannel& bc, int M, int n_max, uint64_t seed, Json& reports,
                   bool& any_fail) {
    InfoSummary info = summarize(bc, 1e-9);
    std::vector<std::pair<std::string, EncoderPolicy>> policies = {
        {"repetition", repetition_policy(bc.input_size())},
        {"greedy", greedy_policy(bc.input_size())},
        {"random", random_policy(bc.input_size(), seed)},
    };
    for (const auto& [pname, policy] : policies) {
        PosteriorTrace trace = enumerate_posteriors(bc, policy, M, n_max);
        std::vector<CheckReport> reps;
        reps.push_back(check_entropy_drop(trace, info));
        reps.push_back(check_log_drop(trace, info));
        reps.push_back(check_pointwise_log_drop(trace, info));
        for (double a : {0.0, 0.5, 2.0}) reps.push_back(check_clipped_drop(trace, info, a));
        reps.push_back(check_fano_stopping(trace, stop_at(n_max > 1 ? n_max - 1 : n_max), M));
        reps.push_back(check_fano_stopping(trace, entropy_threshold(0.3), M));
        for (const auto& r : reps) {
            Json jr = check_report_to_json(r);
            jr["policy"] = pname;
            reports.push_back(jr);
            if (!r.pass) any_fail = true;
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
    CLI::App app{"information quantities, channel orderings, reliability bounds and"
                 " a two-phase coding-scheme simulator for common-message broadcast"
                 " channels with variable-length feedback"};
    app.require_subcommand(1);
    std::ostringstream os;

    std::string channel_path;
    double tol = 1e-6;

    auto* analyze = app.add_subcommand("analyze", "information quantities of a channel (JSON)");
    analyze->add_option("channel", channel_path, "channel JSON file")->required();
    analyze->add_option("--tol", tol, "numerical tolerance in nats (default 1e-6)");

    auto* classify = app.add_subcommand("classify", "degradation / less-capable report (JSON)");
    classify->add_option("channel", channel_path, "channel JSON file")->required();
    int restarts = 16;
    classify->add_option("--restarts", restarts, "local-descent restarts (default 16)");

    auto* bounds = app.add_subcommand(
        "bounds", "reliability-function bounds over a rate grid (CSV: R,lower_E,upper_E,exact,"
                  "valid_lower,valid_upper; floats printed with 9 significant digits)");
    bounds->add_option("channel", channel_path, "channel JSON file")->required();
    double rmin = 0.0, rmax = -1.0;
    int points = 11;
    bounds->add_option("--rmin", rmin, "lowest rate (default 0)");
    bounds->add_option("--rmax", rmax, "highest rate (default 0.99*C)");
    bounds->add_option("--points", points, "grid size (default 11)")->check(CLI::PositiveNumber);
    bounds->add_option("--tol", tol, "numerical tolerance in nats");

    auto* simulate = app.add_subcommand("simulate",
                                        "Monte Carlo run of the two-phase scheme (JSON result)");
    simulate->add_option("channel", channel_path, "channel JSON file")->required();
    SchemeConfig cfg;
    cfg.trials = 1000;
    std::string sessions_out;
    simulate->add_option("--R", cfg.R, "target rate, nats per use")->required();
    simulate->add_option("--L", cfg.L, "block length")->required();
    simulate->add_option("--gamma", cfg.gamma, "message-mode fraction (default R/(C-epsilon))");
    simulate->add_option("--delta", cfg.delta, "typicality band half-width (default 0.3)");
    simulate->add_option("--epsilon", cfg.epsilon, "capacity backoff for derived gamma");
    simulate->add_option("--M", cfg.M, "message count (default ceil(e^{RL}))");
    simulate->add_option("--trials", cfg.trials, "Monte Carlo sessions (default 1000)");
    simulate->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    simulate->add_option("--max-blocks", cfg.max_blocks, "session block cap (default 64)");
    simulate->add_flag("--fixed-codebook", cfg.fixed_codebook,
                       "reuse one codebook instead of redrawing per trial");
    simulate->add_option("--sessions-out", sessions_out,
                         "write per-session CSV (trial,W,tau_j...,correct_j...,blocks)");

    auto* verify = app.add_subcommand(
        "verify", "exhaustive converse-inequality checks by exact posterior enumeration (JSON); "
                  "exit 1 on any violation");
    verify->add_option("channel", channel_path, "channel JSON file");
    int rand_instances = 0, nmax = 3, M = 4;
    uint64_t vseed = 1;
    long logsum_trials = 10000;
    verify->add_option("--random-instances", rand_instances,
                       "check N random small channels instead of a file");
    verify->add_option("--seed", vseed, "seed for random instances / policies");
    verify->add_option("--nmax", nmax, "enumeration horizon (default 3)");
    verify->add_option("--M", M, "message count (default 4)");
    verify->add_option("--logsum-trials", logsum_trials, "log-sum inequality trials");

    std::vector<char*> argv;
    std::vector<std::string> argstore = args;
    argstore.insert(argstore.begin(), "vlftbc");
    for (auto& s : argstore) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        out = help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        err = e.what();
        return 2;
    }

    try {
        if (*analyze) {
            BroadcastChannel bc = load_channel(channel_path);
            os << summary_to_json(summarize(bc, tol)).dump(2) << '\n';
        } else if (*classify) {
            BroadcastChannel bc = load_channel(channel_path);
            os << ordering_to_json(vlftbc::classify(bc, restarts)).dump(2) << '\n';
        } else if (*bounds) {
            BroadcastChannel bc = load_channel(channel_path);
            InfoSummary info = summarize(bc, tol);
            OrderingReport rep = vlftbc::classify(bc);
            if (rmax < 0.0) rmax = 0.99 * info.C;
            std::vector<double> grid;
            for (int i = 0; i < points; ++i)
                grid.push_back(points == 1 ? rmin
                                           : rmin + (rmax - rmin) * i / (points - 1));
            os << rate_points_to_csv(rate_sweep(info, rep, grid));
        } else if (*simulate) {
            BroadcastChannel bc = load_channel(channel_path);
            InfoSummary info = summarize(bc, tol);
            std::vector<SessionRecord> recs;
            SimResult r = estimate(bc, info, cfg, sessions_out.empty() ? nullptr : &recs);
            if (!sessions_out.empty()) {
                std::ofstream f(sessions_out);
                if (!f) throw std::invalid_argument("cannot write " + sessions_out);
                f << sessions_to_csv(recs, bc.receivers());
            }
            os << sim_result_to_json(r).dump(2) << '\n';
        } else if (*verify) {
            Json reports = Json::array();
            bool any_fail = false;
            if (rand_instances > 0) {
                RngStream rng(vseed);
                for (int i = 0; i < rand_instances; ++i) {
                    BroadcastChannel bc = random_positive_channel(rng, 3, 3, 2);
                    int m = 2 + static_cast<int>(rng.next() % 3);
                    int n = 1 + static_cast<int>(rng.next() % static_cast<uint64_t>(nmax));
                    verify_channel(bc, m, n, splitmix64(vseed + static_cast<uint64_t>(i)),
                                   reports, any_fail);
                }
            } else if (!channel_path.empty()) {
                BroadcastChannel bc = load_channel(channel_path);
                verify_channel(bc, M, nmax, vseed, reports, any_fail);
            } else {
                err = "verify: give a channel file or --random-instances N";
                return 2;
            }
            CheckReport ls = check_logsum(logsum_trials, vseed);
            reports.push_back(check_report_to_json(ls));
            if (!ls.pass) any_fail = true;
            Json top;
            top["seed"] = vseed;
            top["reports"] = reports;
            top["pass"] = !any_fail;
            os << top.dump(2) << '\n';
            out = os.str();
            return any_fail ? 1 : 0;
        }
    } catch (const ChannelFormatError& e) {
        err = e.what();
        return 2;
    } catch (const std::length_error& e) {
        err = e.what();
        return 2;
    } catch (const std::invalid_argument& e) {
        err = e.what();
        return 2;
    } catch (const std::domain_error& e) {
        err = e.what();
        return 2;
    } catch (const std::exception& e) {
        err = e.what();
        return 1;
    }
    out = os.str();
    return 0;
}

}  // namespace vlftbc
