#include "driftmeter/cli.hpp"

#include "driftmeter/error.hpp"
#include "driftmeter/game.hpp"
#include "driftmeter/synthgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace driftmeter::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Shared {
    std::string input;
    std::string out;
    std::string format = "csv";
    std::string id_col;
    std::string time_col;
    std::string features;
    std::optional<std::uint64_t> seed;
};

struct ClusterFlags {
    std::size_t k = 4;
    std::size_t max_iter = 300;
    std::size_t n_init = 10;
    double tol = 1e-8;
    bool standardize = false;
    std::string init = "kmeanspp";
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
    return s;
}

std::uint64_t resolve_seed(const Shared& shared) {
    if (shared.seed) return *shared.seed;
    if (const char* env = std::getenv("DRIFTMETER_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::InvalidConfig, std::string("DRIFTMETER_SEED is not an unsigned integer: '") + env + "'");
    }
    return 0;
}

fs::path output_dir(const Shared& shared) {
    if (shared.out.empty()) throw Error(ErrorKind::InvalidConfig, "--out is required");
    std::error_code ec;
    fs::create_directories(shared.out, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + shared.out + "': " + ec.message());
    return fs::path(shared.out);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    body(f);
    if (!f) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

void write_manifest(const fs::path& dir, const std::string& subcommand, json config, std::uint64_t seed,
                    const Shared& shared, const std::vector<std::string>& files) {
    config["seed"] = seed;
    config["out"] = shared.out;
    if (!shared.input.empty()) config["input"] = shared.input;
    json m;
    m["tool"] = "driftmeter";
    m["version"] = DRIFTMETER_VERSION;
    m["subcommand"] = subcommand;
    m["seed"] = seed;
    m["input"] = shared.input.empty() ? json(nullptr) : json(shared.input);
    m["output_dir"] = shared.out;
    m["files"] = files;
    m["config"] = std::move(config);
    write_file(dir / "manifest.json", [&](std::ostream& o) { o << m.dump(2) << '\n'; });
}

std::vector<std::string> read_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::MissingColumn, "empty input, no header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return split_list(line);
}

// Explicit --features, or every column besides the id and time columns.
std::vector<std::string> resolve_features(const Shared& shared) {
    if (!shared.features.empty()) return split_list(shared.features);
    std::vector<std::string> features;
    for (const auto& col : read_header(shared.input))
        if (col != shared.id_col && col != shared.time_col) features.push_back(col);
    return features;
}

TemporalDataset load(const Shared& shared, const std::vector<std::string>& features) {
    if (shared.input.empty()) throw Error(ErrorKind::InvalidConfig, "--input is required");
    return ingest_csv(fs::path(shared.input), CsvSchema{shared.id_col, shared.time_col, features});
}

KMeansConfig kmeans_config(const ClusterFlags& c, std::uint64_t seed) {
    KMeansConfig cfg;
    cfg.k = c.k;
    cfg.max_iterations = c.max_iter;
    cfg.n_init = c.n_init;
    cfg.tolerance = c.tol;
    cfg.seed = seed;
    cfg.standardize = c.standardize;
    cfg.init = c.init == "random" ? KMeansInit::random_points : KMeansInit::kmeanspp;
    validate(cfg);
    return cfg;
}

json cluster_json(const ClusterFlags& c) {
    return {{"k", c.k}, {"max-iter", c.max_iter}, {"n-init", c.n_init}, {"tol", c.tol}, {"standardize", c.standardize}, {"init", c.init}};
}

json shared_json(const Shared& s, const std::vector<std::string>& features) {
    return {{"format", s.format}, {"id-col", s.id_col}, {"time-col", s.time_col}, {"features", join(features)}};
}

void add_shared(CLI::App* sub, Shared& s, bool takes_input, const std::string& id_default,
                const std::string& time_default) {
    s.id_col = id_default;
    s.time_col = time_default;
    if (takes_input) sub->add_option("--input", s.input, "Long-format CSV input")->required();
    sub->add_option("--out", s.out, "Output directory")->required();
    sub->add_option("--seed", s.seed, "Random seed (falls back to DRIFTMETER_SEED, then 0)");
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--id-col", s.id_col, "Item id column")->capture_default_str();
    sub->add_option("--time-col", s.time_col, "Time point column")->capture_default_str();
    if (takes_input) sub->add_option("--features", s.features, "Comma-separated feature columns (default: all others)");
}

void add_cluster(CLI::App* sub, ClusterFlags& c) {
    sub->add_option("--k", c.k, "Clusters per time point")->capture_default_str();
    sub->add_option("--max-iter", c.max_iter, "Lloyd iteration cap")->capture_default_str();
    sub->add_option("--n-init", c.n_init, "Independent k-means starts")->capture_default_str();
    sub->add_option("--tol", c.tol, "Squared centroid shift tolerance")->capture_default_str();
    sub->add_flag("--standardize", c.standardize, "Z-score features within each time point");
    sub->add_option("--init", c.init, "Centroid initialisation")
        ->check(CLI::IsMember({"kmeanspp", "random"}))
        ->capture_default_str();
}

// flag/value pairs stored in a manifest back into command line arguments
std::vector<std::string> replay_args(const json& manifest, const std::optional<std::string>& out_override) {
    if (!manifest.contains("subcommand") || !manifest.contains("config"))
        throw Error(ErrorKind::InvalidConfig, "manifest lacks subcommand or config");
    std::vector<std::string> args{manifest.at("subcommand").get<std::string>()};
    for (const auto& [key, value] : manifest.at("config").items()) {
        if (key == "out" && out_override) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (value.is_string()) {
            if (value.get<std::string>().empty()) continue;
            args.push_back("--" + key);
            args.push_back(value.get<std::string>());
        } else if (value.is_number_float()) {
            args.push_back("--" + key);
            args.push_back(format_double(value.get<double>()));
        } else if (!value.is_null()) {
            args.push_back("--" + key);
            args.push_back(value.dump());
        }
    }
    if (out_override) {
        args.push_back("--out");
        args.push_back(*out_override);
    }
    return args;
}

} // namespace

void write_series_csv(const DriftSeries& series, std::ostream& out) {
    out << "reference_t,comparison_t,index,value\n";
    for (const auto& [kind, values] : series.values)
        for (std::size_t c = 0; c < values.size(); ++c)
            out << series.comparisons[c].first << ',' << series.comparisons[c].second << ',' << to_string(kind) << ','
                << format_double(values[c]) << '\n';
    out << "\nindex,slope,intercept\n";
    for (const auto& [kind, trend] : series.trends) {
        out << to_string(kind) << ',';
        if (trend) out << format_double(trend->slope) << ',' << format_double(trend->intercept);
        else out << ',';
        out << '\n';
    }
}

void write_series_json(const DriftSeries& series, std::ostream& out) {
    json j;
    j["comparisons"] = json::array();
    for (const auto& [r, c] : series.comparisons) j["comparisons"].push_back({r, c});
    j["series"] = json::object();
    j["slopes"] = json::object();
    j["intercepts"] = json::object();
    for (const auto& [kind, values] : series.values) j["series"][std::string(to_string(kind))] = values;
    for (const auto& [kind, trend] : series.trends) {
        const std::string name(to_string(kind));
        j["slopes"][name] = trend ? json(trend->slope) : json(nullptr);
        j["intercepts"][name] = trend ? json(trend->intercept) : json(nullptr);
    }
    j["warnings"] = series.warnings;
    out << j.dump(2) << '\n';
}

void write_transitions_csv(const TransitionReport& report, std::ostream& out) {
    out << "t,survived,appeared,disappeared\n";
    for (const auto& tr : report.transitions)
        out << tr.from << ',' << tr.survived << ',' << tr.appeared << ',' << tr.disappeared << '\n';
}

void write_transitions_json(const TransitionReport& report, std::ostream& out) {
    json j;
    j["k"] = report.k;
    j["transitions"] = json::array();
    for (const auto& tr : report.transitions) {
        json t{{"from", tr.from},
               {"to", tr.to},
               {"survived", tr.survived},
               {"appeared", tr.appeared},
               {"disappeared", tr.disappeared},
               {"matches", json::array()}};
        for (const auto& m : tr.matches)
            t["matches"].push_back(
                {{"old", m.old_cluster}, {"new", m.new_cluster}, {"overlap", m.overlap}, {"survived", m.survived}});
        j["transitions"].push_back(std::move(t));
    }
    out << j.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measure how cluster membership drifts across time points"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", std::string(DRIFTMETER_VERSION));
    std::string manifest_path;
    app.add_option("--from-manifest", manifest_path, "Replay the run recorded in a manifest.json");
    std::string replay_out;
    app.add_option("--replay-out", replay_out, "Output directory for --from-manifest (default: the recorded one)");

    // generate
    Shared gen_shared;
    SynthConfig synth;
    auto* gen = app.add_subcommand("generate", "Write the four-quadrant synthetic drift benchmark");
    add_shared(gen, gen_shared, false, "id", "t");
    gen->add_option("--items", synth.n_items, "Number of items")->capture_default_str();
    gen->add_option("--time-points", synth.n_time_points, "Number of time points")->capture_default_str();
    gen->add_option("--distance", synth.cluster_distance, "Cluster centre offset d")->capture_default_str();
    gen->add_option("--jitter", synth.jitter_sigma, "Gaussian jitter sigma")->capture_default_str();
    gen->add_option("--max-jumps", synth.max_jumps, "Upper bound of the per-step jump count")->capture_default_str();

    // simulate
    Shared sim_shared;
    game::GameConfig game_cfg;
    std::string mix = "0.5,0.25,0.15,0.1";
    auto* sim = app.add_subcommand("simulate", "Write a simulated public goods game panel");
    add_shared(sim, sim_shared, false, "subject_id", "period");
    sim->add_option("--players", game_cfg.n_players, "Players (multiple of 4)")->capture_default_str();
    sim->add_option("--rounds", game_cfg.n_rounds, "Rounds")->capture_default_str();
    sim->add_option("--mix", mix, "Shares of conditional_cooperator,free_rider,triangle,noisy")->capture_default_str();
    sim->add_option("--drift-rate", game_cfg.drift_rate, "Per-round archetype switch probability")->capture_default_str();
    sim->add_option("--decay", game_cfg.decay, "Tokens removed per elapsed round")->capture_default_str();
    sim->add_option("--burn-in", game_cfg.burn_in_rounds, "Unrecorded rounds played first")->capture_default_str();
    sim->add_option("--belief-weight", game_cfg.belief_weight, "Weight of the newly observed group mean in beliefs")
        ->capture_default_str();

    // measure
    Shared meas_shared;
    ClusterFlags meas_cluster;
    std::string mode = "first";
    std::string indices = "jaccard,rand,fm,vi,scaled_vi,auc";
    auto* meas = app.add_subcommand("measure", "Cluster every time point and score agreement between them");
    add_shared(meas, meas_shared, true, "id", "t");
    add_cluster(meas, meas_cluster);
    meas->add_option("--mode", mode, "first (first vs rest) or consecutive")
        ->check(CLI::IsMember({"first", "consecutive"}))
        ->capture_default_str();
    meas->add_option("--indices", indices, "Comma-separated indices")->capture_default_str();

    // transitions
    Shared tr_shared;
    ClusterFlags tr_cluster;
    double tau = 0.5;
    bool no_aging = false;
    auto* trans = app.add_subcommand("transitions", "Track survived, appeared and disappeared clusters");
    add_shared(trans, tr_shared, true, "id", "t");
    add_cluster(trans, tr_cluster);
    trans->add_option("--tau", tau, "Survival overlap threshold in (0, 1]")->capture_default_str();
    trans->add_flag("--no-aging", no_aging, "Keep every carried-over record at full weight");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << DRIFTMETER_VERSION << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (!manifest_path.empty()) {
            std::ifstream f(manifest_path);
            if (!f) throw Error(ErrorKind::Io, "cannot open '" + manifest_path + "'");
            json manifest;
            try {
                manifest = json::parse(f);
            } catch (const json::exception& e) {
                throw Error(ErrorKind::InvalidConfig, std::string("malformed manifest: ") + e.what());
            }
            return run(replay_args(manifest, replay_out.empty() ? std::nullopt : std::optional(replay_out)), out,
                       err);
        }

        if (*gen) {
            synth.seed = resolve_seed(gen_shared);
            const auto run = generate(synth);
            const auto dir = output_dir(gen_shared);
            write_csv(run.dataset, dir / "dataset.csv", gen_shared.id_col, gen_shared.time_col);
            write_file(dir / "ground_truth.csv", [&](std::ostream& o) {
                o << gen_shared.id_col << ',' << gen_shared.time_col << ",true_label\n";
                for (std::size_t i = 0; i < run.dataset.n_items(); ++i)
                    for (std::size_t t = 0; t < run.trace.time_points.size(); ++t)
                        o << run.dataset.item_ids()[i] << ',' << run.trace.time_points[t] << ','
                          << run.trace.labels[t][i] << '\n';
            });
            json cfg = shared_json(gen_shared, {});
            cfg.erase("features");
            cfg["items"] = synth.n_items;
            cfg["time-points"] = synth.n_time_points;
            cfg["distance"] = synth.cluster_distance;
            cfg["jitter"] = synth.jitter_sigma;
            cfg["max-jumps"] = synth.max_jumps;
            write_manifest(dir, "generate", cfg, synth.seed, gen_shared, {"dataset.csv", "ground_truth.csv"});
            return 0;
        }

        if (*sim) {
            game_cfg.seed = resolve_seed(sim_shared);
            const auto shares = split_list(mix);
            if (shares.size() != 4) throw Error(ErrorKind::InvalidMix, "--mix needs exactly 4 shares");
            for (std::size_t a = 0; a < 4; ++a) {
                try {
                    game_cfg.mix.shares[a] = std::stod(shares[a]);
                } catch (const std::exception&) {
                    throw Error(ErrorKind::InvalidMix, "share '" + shares[a] + "' is not a number");
                }
            }
            const auto result = game::simulate(game_cfg);
            const auto dir = output_dir(sim_shared);
            write_csv(result.dataset, dir / "game.csv", sim_shared.id_col, sim_shared.time_col);
            json cfg = shared_json(sim_shared, {});
            cfg.erase("features");
            cfg["players"] = game_cfg.n_players;
            cfg["rounds"] = game_cfg.n_rounds;
            cfg["mix"] = mix;
            cfg["drift-rate"] = game_cfg.drift_rate;
            cfg["decay"] = game_cfg.decay;
            cfg["burn-in"] = game_cfg.burn_in_rounds;
            cfg["belief-weight"] = game_cfg.belief_weight;
            write_manifest(dir, "simulate", cfg, game_cfg.seed, sim_shared, {"game.csv"});
            return 0;
        }

        if (*meas) {
            DriftConfig cfg;
            cfg.mode = parse_mode(mode);
            cfg.indices.clear();
            for (const auto& name : split_list(indices)) cfg.indices.push_back(parse_index(name));
            const std::uint64_t seed = resolve_seed(meas_shared);
            cfg.kmeans = kmeans_config(meas_cluster, seed);
            validate(cfg);
            const auto features = resolve_features(meas_shared);
            const auto ds = load(meas_shared, features);
            const auto series = measure(ds, cfg);
            for (const auto& w : series.warnings) err << "warning: " << w << '\n';
            const auto dir = output_dir(meas_shared);
            const std::string file = meas_shared.format == "json" ? "series.json" : "series.csv";
            write_file(dir / file, [&](std::ostream& o) {
                if (meas_shared.format == "json") write_series_json(series, o);
                else write_series_csv(series, o);
            });
            json manifest_cfg = shared_json(meas_shared, features);
            manifest_cfg.update(cluster_json(meas_cluster));
            manifest_cfg["mode"] = mode;
            manifest_cfg["indices"] = indices;
            write_manifest(dir, "measure", manifest_cfg, seed, meas_shared, {file});
            return 0;
        }

        if (*trans) {
            if (!(tau > 0.0 && tau <= 1.0))
                throw Error(ErrorKind::InvalidThreshold, "--tau must lie in (0, 1], got " + format_double(tau));
            const std::uint64_t seed = resolve_seed(tr_shared);
            const auto kcfg = kmeans_config(tr_cluster, seed);
            const auto features = resolve_features(tr_shared);
            const auto ds = load(tr_shared, features);
            const auto report = track(ds, kcfg, no_aging ? AgingPolicy::no_aging() : AgingPolicy{}, tau);
            const auto dir = output_dir(tr_shared);
            const std::string file = tr_shared.format == "json" ? "transitions.json" : "transitions.csv";
            write_file(dir / file, [&](std::ostream& o) {
                if (tr_shared.format == "json") write_transitions_json(report, o);
                else write_transitions_csv(report, o);
            });
            json manifest_cfg = shared_json(tr_shared, features);
            manifest_cfg.update(cluster_json(tr_cluster));
            manifest_cfg["tau"] = tau;
            manifest_cfg["no-aging"] = no_aging;
            write_manifest(dir, "transitions", manifest_cfg, seed, tr_shared, {file});
            return 0;
        }

        out << app.help();
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace driftmeter::cli
