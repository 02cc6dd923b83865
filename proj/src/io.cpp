#include "gridloc/io.hpp"

#include "gridloc/version.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

namespace gridloc {

namespace {

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

const json& require_key(const json& j, const std::string& key, const std::string& origin) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(origin + ": missing key '" + key + "'");
    }
    return *it;
}

double as_double(const json& j, const std::string& origin) {
    if (!j.is_number()) {
        throw ValidationError(origin + ": expected a number");
    }
    return j.get<double>();
}

Point point_from_json(const json& j, const std::string& origin) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError(origin + ": expected [x, y]");
    }
    return {as_double(j[0], origin), as_double(j[1], origin)};
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    return lines;
}

double parse_double_field(const std::string& s, const std::string& where) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
        throw ValidationError(where + ": bad number '" + s + "'");
    }
    return v;
}

std::int64_t parse_int_field(const std::string& s, const std::string& where) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
        throw ValidationError(where + ": bad integer '" + s + "'");
    }
    return v;
}

void expect_fields(const std::vector<std::string>& fields, std::size_t n,
                   const std::string& where) {
    if (fields.size() != n) {
        throw ValidationError(where + ": expected " + std::to_string(n) + " fields, got " +
                              std::to_string(fields.size()));
    }
}

void expect_header(const std::vector<std::string>& lines, const std::string& header,
                   const std::string& origin) {
    if (lines.empty() || lines[0] != header) {
        throw ValidationError(origin + ":1: expected header '" + header + "'");
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

bool is_model_preset(const std::string& name) {
    return name == "outdoor" || name == "indoor";
}

PathLossModel model_preset(const std::string& name) {
    if (name == "outdoor") {
        return PathLossModel{-45.0, 2.0, 2.0, 1.0, false};
    }
    if (name == "indoor") {
        return PathLossModel{-45.0, 3.0, 4.0, 1.0, false};
    }
    throw LookupError("unknown model preset '" + name + "'");
}

bool is_scenario_preset(const std::string& name) { return name == "paper-iv"; }

Scenario scenario_preset(const std::string& name) {
    if (name != "paper-iv") {
        throw LookupError("unknown scenario preset '" + name + "'");
    }
    // 8 m x 8 m region, 4 m anchor spacing, 25 x 25 sweep (625 windows). The
    // lattice discretization and margin are artifact choices.
    GridSpec grid{{0.0, 0.0}, 4.0, 4.0, 2, 2};
    Scenario scenario{Deployment::with_auto_anchors(grid), model_preset("outdoor"),
                      42, SweepMotion{25, 25, 0.16}, 0.2, 8};
    return scenario;
}

// ---------------------------------------------------------------------------
// JSON codecs
// ---------------------------------------------------------------------------

Deployment deployment_from_json(const json& j) {
    const std::string origin = "deployment";
    GridSpec grid;
    grid.origin = point_from_json(require_key(j, "origin", origin), origin + ".origin");
    grid.spacing_x = as_double(require_key(j, "spacing_x", origin), origin + ".spacing_x");
    grid.spacing_y = as_double(require_key(j, "spacing_y", origin), origin + ".spacing_y");
    grid.cols = require_key(j, "cols", origin).get<int>();
    grid.rows = require_key(j, "rows", origin).get<int>();
    grid.validate();

    if (!j.contains("anchors")) {
        return Deployment::with_auto_anchors(grid);
    }
    const json& anchors = j["anchors"];
    if (!anchors.is_array()) {
        throw ValidationError(origin + ".anchors: expected an array");
    }
    std::map<std::string, VertexIndex> by_id;
    for (const auto& a : anchors) {
        const std::string id = require_key(a, "id", origin + ".anchors").get<std::string>();
        const VertexIndex v{require_key(a, "col", origin + ".anchors").get<int>(),
                            require_key(a, "row", origin + ".anchors").get<int>()};
        if (!by_id.emplace(id, v).second) {
            throw ValidationError(origin + ".anchors: duplicate id '" + id + "'");
        }
    }
    return Deployment(grid, std::move(by_id));
}

json deployment_to_json(const Deployment& deployment) {
    const GridSpec& grid = deployment.grid();
    json anchors = json::array();
    for (const auto& [id, v] : deployment.anchors()) {
        anchors.push_back({{"id", id}, {"col", v.col}, {"row", v.row}});
    }
    return {{"origin", {grid.origin.x, grid.origin.y}},
            {"spacing_x", grid.spacing_x},
            {"spacing_y", grid.spacing_y},
            {"cols", grid.cols},
            {"rows", grid.rows},
            {"anchors", std::move(anchors)}};
}

PathLossModel model_from_json(const json& j) {
    PathLossModel model;
    model.a_ref = as_double(require_key(j, "a_ref", "model"), "model.a_ref");
    model.n = as_double(require_key(j, "n", "model"), "model.n");
    model.sigma = as_double(require_key(j, "sigma", "model"), "model.sigma");
    model.quantize = j.value("quantize", false);
    model.validate();
    return model;
}

json model_to_json(const PathLossModel& model) {
    return {{"a_ref", model.a_ref},
            {"n", model.n},
            {"sigma", model.sigma},
            {"quantize", model.quantize}};
}

Scenario scenario_from_json(const json& j) {
    Scenario scenario;
    bool have_base = false;
    if (j.contains("preset")) {
        scenario = scenario_preset(j["preset"].get<std::string>());
        have_base = true;
    }
    if (j.contains("deployment")) {
        scenario.deployment = deployment_from_json(j["deployment"]);
    } else if (!have_base) {
        throw ValidationError("scenario: missing key 'deployment'");
    }
    if (j.contains("model")) {
        const json& m = j["model"];
        scenario.model = m.is_string() ? model_preset(m.get<std::string>())
                                       : model_from_json(m);
    } else if (!have_base) {
        throw ValidationError("scenario: missing key 'model'");
    }
    if (j.contains("seed")) {
        scenario.seed = j["seed"].get<std::uint64_t>();
    } else if (!have_base) {
        throw ValidationError("scenario: missing key 'seed'");
    }
    if (j.contains("motion")) {
        const json& m = j["motion"];
        if (m.contains("sweep")) {
            const json& s = m["sweep"];
            scenario.motion = SweepMotion{require_key(s, "nx", "motion.sweep").get<int>(),
                                          require_key(s, "ny", "motion.sweep").get<int>(),
                                          s.value("margin", 0.0)};
        } else if (m.contains("waypoints")) {
            const json& w = m["waypoints"];
            WaypointMotion motion;
            for (const auto& p : require_key(w, "points", "motion.waypoints")) {
                motion.points.push_back(point_from_json(p, "motion.waypoints.points"));
            }
            motion.speed_mps =
                as_double(require_key(w, "speed", "motion.waypoints"), "motion.waypoints.speed");
            scenario.motion = std::move(motion);
        } else {
            throw ValidationError("scenario.motion: expected 'sweep' or 'waypoints'");
        }
    } else if (!have_base) {
        throw ValidationError("scenario: missing key 'motion'");
    }
    if (j.contains("window_seconds")) {
        scenario.window_seconds = as_double(j["window_seconds"], "scenario.window_seconds");
    }
    if (j.contains("samples_per_window")) {
        scenario.samples_per_window = j["samples_per_window"].get<int>();
    }
    scenario.validate();
    return scenario;
}

json scenario_to_json(const Scenario& scenario) {
    json motion;
    if (const auto* sweep = std::get_if<SweepMotion>(&scenario.motion)) {
        motion = {{"sweep",
                   {{"nx", sweep->nx}, {"ny", sweep->ny}, {"margin", sweep->margin}}}};
    } else {
        const auto& wp = std::get<WaypointMotion>(scenario.motion);
        json points = json::array();
        for (const Point& p : wp.points) {
            points.push_back({p.x, p.y});
        }
        motion = {{"waypoints", {{"points", std::move(points)}, {"speed", wp.speed_mps}}}};
    }
    return {{"deployment", deployment_to_json(scenario.deployment)},
            {"model", model_to_json(scenario.model)},
            {"seed", scenario.seed},
            {"motion", std::move(motion)},
            {"window_seconds", scenario.window_seconds},
            {"samples_per_window", scenario.samples_per_window}};
}

EstimatorConfig config_from_json(const json& j) {
    EstimatorConfig config;
    if (j.contains("window_seconds")) {
        config.window_seconds = as_double(j["window_seconds"], "config.window_seconds");
    }
    if (j.contains("near_radius_fraction")) {
        config.near_radius_fraction =
            as_double(j["near_radius_fraction"], "config.near_radius_fraction");
    }
    if (j.contains("clamp")) {
        const std::string c = j["clamp"].get<std::string>();
        if (c == "off") {
            config.clamp_policy = ClampPolicy::kOff;
        } else if (c == "clamp") {
            config.clamp_policy = ClampPolicy::kClamp;
        } else {
            throw ValidationError("config.clamp: expected 'off' or 'clamp'");
        }
    }
    if (j.contains("baseline")) {
        config.baseline_enabled = j["baseline"].get<bool>();
    }
    config.validate();
    return config;
}

json config_to_json(const EstimatorConfig& config) {
    return {{"window_seconds", config.window_seconds},
            {"near_radius_fraction", config.near_radius_fraction},
            {"clamp", config.clamp_policy == ClampPolicy::kClamp ? "clamp" : "off"},
            {"baseline", config.baseline_enabled}};
}

json report_to_json(const ErrorReport& report) {
    json per_window = json::array();
    for (const auto& w : report.per_window) {
        per_window.push_back({{"window_id", w.window_id},
                              {"truth", {w.truth.x, w.truth.y}},
                              {"estimate", {w.estimate.x, w.estimate.y}},
                              {"error", w.error},
                              {"method", to_string(w.method)}});
    }
    json histogram = json::array();
    for (const auto& bin : report.histogram) {
        json b = {{"count", bin.count}, {"fraction", bin.fraction}};
        // JSON has no infinity; the open-ended final bin serializes as null.
        if (std::isfinite(bin.upper_edge)) {
            b["upper_edge"] = bin.upper_edge;
        } else {
            b["upper_edge"] = nullptr;
        }
        histogram.push_back(std::move(b));
    }
    return {{"summary",
             {{"count", report.summary.count},
              {"skipped", report.summary.skipped},
              {"mean", report.summary.mean},
              {"median", report.summary.median},
              {"p95", report.summary.p95},
              {"max", report.summary.max}}},
            {"histogram", std::move(histogram)},
            {"per_window", std::move(per_window)}};
}

Deployment load_deployment(const std::string& path) {
    return deployment_from_json(parse_json(read_file(path), path));
}

PathLossModel load_model(const std::string& path_or_preset) {
    if (is_model_preset(path_or_preset)) {
        return model_preset(path_or_preset);
    }
    return model_from_json(parse_json(read_file(path_or_preset), path_or_preset));
}

Scenario load_scenario(const std::string& path_or_preset) {
    if (is_scenario_preset(path_or_preset)) {
        return scenario_preset(path_or_preset);
    }
    return scenario_from_json(parse_json(read_file(path_or_preset), path_or_preset));
}

EstimatorConfig load_config(const std::string& path) {
    return config_from_json(parse_json(read_file(path), path));
}

// ---------------------------------------------------------------------------
// CSV codecs
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string truth_to_csv(const TruthTrace& truth) {
    std::string out = "window_id,x,y\n";
    for (const auto& tp : truth) {
        out += std::to_string(tp.window_id);
        out += ',';
        out += format_double(tp.position.x);
        out += ',';
        out += format_double(tp.position.y);
        out += '\n';
    }
    return out;
}

TruthTrace truth_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    expect_header(lines, "window_id,x,y", "truth.csv");
    TruthTrace truth;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "truth.csv:" + std::to_string(i + 1);
        const auto fields = split_line(lines[i]);
        expect_fields(fields, 3, where);
        truth.push_back({parse_int_field(fields[0], where),
                         {parse_double_field(fields[1], where),
                          parse_double_field(fields[2], where)}});
    }
    return truth;
}

std::string samples_to_csv(std::span<const RssiWindow> windows) {
    std::string out = "window_id,anchor_id,rssi_dbm\n";
    for (const auto& w : windows) {
        for (const auto& [id, rssi] : w.readings) {
            out += std::to_string(w.window_id);
            out += ',';
            out += id;
            out += ',';
            out += format_double(rssi);
            out += '\n';
        }
    }
    return out;
}

std::vector<RssiWindow> samples_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    expect_header(lines, "window_id,anchor_id,rssi_dbm", "samples.csv");
    std::map<std::int64_t, RssiWindow> by_id;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "samples.csv:" + std::to_string(i + 1);
        const auto fields = split_line(lines[i]);
        expect_fields(fields, 3, where);
        const std::int64_t window_id = parse_int_field(fields[0], where);
        auto& window = by_id[window_id];
        window.window_id = window_id;
        if (!window.readings.emplace(fields[1], parse_double_field(fields[2], where)).second) {
            throw ValidationError(where + ": duplicate anchor '" + fields[1] +
                                  "' in window " + std::to_string(window_id));
        }
    }
    std::vector<RssiWindow> windows;
    windows.reserve(by_id.size());
    for (auto& [id, w] : by_id) {
        windows.push_back(std::move(w));
    }
    return windows;
}

std::string estimates_to_csv(std::span<const Estimate> estimates) {
    std::string out = "window_id,x,y,method,cell_col,cell_row\n";
    for (const auto& est : estimates) {
        out += std::to_string(est.window_id);
        out += ',';
        out += format_double(est.position.x);
        out += ',';
        out += format_double(est.position.y);
        out += ',';
        out += to_string(est.method);
        out += ',';
        if (est.cell) {
            out += std::to_string(est.cell->col);
            out += ',';
            out += std::to_string(est.cell->row);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::vector<Estimate> estimates_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    expect_header(lines, "window_id,x,y,method,cell_col,cell_row", "estimates.csv");
    std::vector<Estimate> estimates;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "estimates.csv:" + std::to_string(i + 1);
        const auto fields = split_line(lines[i]);
        expect_fields(fields, 6, where);
        Estimate est;
        est.window_id = parse_int_field(fields[0], where);
        est.position = {parse_double_field(fields[1], where),
                        parse_double_field(fields[2], where)};
        est.method = method_from_string(fields[3]);
        if (!fields[4].empty() || !fields[5].empty()) {
            est.cell = GridCell{static_cast<int>(parse_int_field(fields[4], where)),
                                static_cast<int>(parse_int_field(fields[5], where))};
        }
        estimates.push_back(std::move(est));
    }
    return estimates;
}

std::string skips_to_csv(std::span<const SkipRecord> skips) {
    std::string out = "window_id,reason\n";
    for (const auto& skip : skips) {
        std::string reason = skip.reason;
        for (char& c : reason) {
            if (c == ',' || c == '\n') c = ';';
        }
        out += std::to_string(skip.window_id);
        out += ',';
        out += reason;
        out += '\n';
    }
    return out;
}

std::string report_to_csv(const ErrorReport& report) {
    std::string out = "window_id,truth_x,truth_y,est_x,est_y,error,method\n";
    for (const auto& w : report.per_window) {
        out += std::to_string(w.window_id);
        out += ',';
        out += format_double(w.truth.x);
        out += ',';
        out += format_double(w.truth.y);
        out += ',';
        out += format_double(w.estimate.x);
        out += ',';
        out += format_double(w.estimate.y);
        out += ',';
        out += format_double(w.error);
        out += ',';
        out += to_string(w.method);
        out += '\n';
    }
    return out;
}

std::string surface_to_csv(const ErrorSurface& surface) {
    std::string out;
    for (int iy = 0; iy < surface.ny; ++iy) {
        for (int ix = 0; ix < surface.nx; ++ix) {
            if (ix > 0) out += ',';
            out += format_double(surface.at(ix, iy));
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Files and manifests
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("cannot write '" + tmp + "'");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw ValidationError("short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw ValidationError("cannot rename '" + tmp + "' to '" + path + "': " +
                              std::strerror(errno));
    }
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

json make_manifest(const std::string& command,
                   const std::map<std::string, std::string>& input_digests,
                   std::optional<std::uint64_t> seed, const json& config_echo,
                   const std::vector<std::string>& outputs) {
    json manifest = {{"tool_version", kVersion},
                     {"command", command},
                     {"inputs", input_digests},
                     {"config", config_echo},
                     {"outputs", outputs}};
    if (seed) {
        manifest["seed"] = *seed;
    }
    manifest["digest"] = content_digest(manifest.dump());
    manifest["timestamp"] = utc_timestamp();
    return manifest;
}

}  // namespace gridloc
