#include "weaksde/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <sstream>

namespace weaksde {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& v, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(v, &used);
        return used == v.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_int(const std::string& v, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(v, &used);
        return used == v.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_u64(const std::string& v, std::uint64_t& out) {
    try {
        std::size_t used = 0;
        out = std::stoull(v, &used);
        return used == v.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_double_list(const std::string& v, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        double d = 0.0;
        if (!parse_double(trim(cell), d)) return false;
        out.push_back(d);
    }
    return !out.empty();
}

}  // namespace

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> problems;
    auto require = [&problems](bool ok, const std::string& message) {
        if (!ok) problems.push_back(message);
    };

    require(!out_dir.empty(), "suite.out: output directory must not be empty");

    require(tangential.t0 > 0.0, "tangential.t0: must be > 0 (log grid)");
    require(tangential.t1 > tangential.t0, "tangential.t1: must exceed tangential.t0");
    require(tangential.steps >= 1, "tangential.steps: must be >= 1");
    require(tangential.paths >= 1, "tangential.paths: must be >= 1");

    require(angle.n >= 8, "angle.n: must be >= 8");
    require(angle.significance > 0.0 && angle.significance < 1.0,
            "angle.significance: must lie in (0, 1)");
    require(!angle.s_values.empty(), "angle.s_values: must not be empty");

    require(reconstruction.t0 > 0.0, "reconstruction.t0: must be > 0");
    require(reconstruction.t1 > reconstruction.t0,
            "reconstruction.t1: must exceed reconstruction.t0");
    require(reconstruction.coarse_steps >= 2, "reconstruction.coarse_steps: must be >= 2");
    require(reconstruction.replicas >= 1, "reconstruction.replicas: must be >= 1");

    require(!lambda_mean.lambdas.empty(), "lambda-mean.lambdas: must not be empty");
    for (double l : lambda_mean.lambdas)
        require(l > 0.0 && l < 1.0, "lambda-mean.lambdas: every lambda must lie in (0, 1)");
    for (double t : lambda_mean.times)
        require(t > 0.0, "lambda-mean.times: every time must be > 0");
    require(lambda_mean.replicas >= 2, "lambda-mean.replicas: must be >= 2");
    require(lambda_mean.steps >= 1, "lambda-mean.steps: must be >= 1");

    for (double l : origin_return.lambdas)
        require(l > 0.0 && l < 1.0, "origin-return.lambdas: every lambda must lie in (0, 1)");
    require(origin_return.epsilon > 0.0, "origin-return.epsilon: must be > 0");
    require(origin_return.horizon > 0.0, "origin-return.horizon: must be > 0");
    require(origin_return.r0 > 0.0, "origin-return.r0: must be > 0");
    require(origin_return.n >= 1, "origin-return.n: must be >= 1");
    require(origin_return.steps >= 1, "origin-return.steps: must be >= 1");

    require(hitting.lambda > 0.0 && hitting.lambda < std::numbers::sqrt2 / 2.0,
            "hitting.lambda: must lie in (0, sqrt(2)/2)");
    require(hitting.rho > 0.0, "hitting.rho: must be > 0");
    require(hitting.n >= 8, "hitting.n: must be >= 8");

    require(scaling.lambda > 0.0 && scaling.lambda < 1.0,
            "scaling.lambda: must lie in (0, 1)");
    require(scaling.rho0 > 0.0, "scaling.rho0: must be > 0");
    require(scaling.rho1 > scaling.rho0, "scaling.rho1: must exceed scaling.rho0");
    require(scaling.alpha > 0.0, "scaling.alpha: must be > 0");
    require(scaling.n >= 8, "scaling.n: must be >= 8");

    require(tsirelson.depth >= 1, "tsirelson.depth: must be >= 1");
    require(tsirelson.substeps >= 1, "tsirelson.substeps: must be >= 1");
    require(tsirelson.n >= 8, "tsirelson.n: must be >= 8");

    require(tanaka.steps >= 2, "tanaka.steps: must be >= 2");
    require(tanaka.n >= 8, "tanaka.n: must be >= 8");

    require(control.eta > 0.0, "control.eta: must be > 0");
    require(control.big_r >= control.eta, "control.R: must be >= control.eta");
    require(control.n >= 2, "control.n: must be >= 2");
    for (double l : control.lambdas)
        require(l > 0.0 && l < 1.0, "control.lambdas: every lambda must lie in (0, 1)");

    return problems;
}

std::optional<RunConfig> parse_run_config(std::istream& is, std::string& error) {
    RunConfig config;
    std::string section = "suite";
    std::string line;
    int line_no = 0;

    auto fail = [&error](const std::string& message) {
        error = message;
        return std::nullopt;
    };

    while (std::getline(is, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                return fail("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            return fail("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const std::string field = section + "." + key;

        auto bad_value = [&]() { return "field " + field + ": cannot parse value '" + value + "'"; };

        bool known = true;
        bool ok = true;
        if (section == "suite") {
            if (key == "master_seed") ok = parse_u64(value, config.seed.master);
            else if (key == "stream") ok = parse_u64(value, config.seed.stream);
            else if (key == "out") config.out_dir = value;
            else if (key == "format") {
                if (value == "csv") config.format = RunConfig::Format::csv;
                else if (value == "csv+svg") config.format = RunConfig::Format::csv_svg;
                else ok = false;
            } else known = false;
        } else if (section == "tangential") {
            if (key == "t0") ok = parse_double(value, config.tangential.t0);
            else if (key == "t1") ok = parse_double(value, config.tangential.t1);
            else if (key == "steps") ok = parse_int(value, config.tangential.steps);
            else if (key == "paths") ok = parse_int(value, config.tangential.paths);
            else known = false;
        } else if (section == "angle") {
            if (key == "n") ok = parse_int(value, config.angle.n);
            else if (key == "s_values") ok = parse_double_list(value, config.angle.s_values);
            else if (key == "significance") ok = parse_double(value, config.angle.significance);
            else known = false;
        } else if (section == "reconstruction") {
            if (key == "t0") ok = parse_double(value, config.reconstruction.t0);
            else if (key == "t1") ok = parse_double(value, config.reconstruction.t1);
            else if (key == "coarse_steps") ok = parse_int(value, config.reconstruction.coarse_steps);
            else if (key == "replicas") ok = parse_int(value, config.reconstruction.replicas);
            else known = false;
        } else if (section == "lambda-mean") {
            if (key == "lambdas") ok = parse_double_list(value, config.lambda_mean.lambdas);
            else if (key == "times") ok = parse_double_list(value, config.lambda_mean.times);
            else if (key == "replicas") ok = parse_int(value, config.lambda_mean.replicas);
            else if (key == "steps") ok = parse_int(value, config.lambda_mean.steps);
            else known = false;
        } else if (section == "origin-return") {
            if (key == "lambdas") ok = parse_double_list(value, config.origin_return.lambdas);
            else if (key == "epsilon") ok = parse_double(value, config.origin_return.epsilon);
            else if (key == "horizon") ok = parse_double(value, config.origin_return.horizon);
            else if (key == "r0") ok = parse_double(value, config.origin_return.r0);
            else if (key == "n") ok = parse_int(value, config.origin_return.n);
            else if (key == "steps") ok = parse_int(value, config.origin_return.steps);
            else known = false;
        } else if (section == "hitting") {
            if (key == "lambda") ok = parse_double(value, config.hitting.lambda);
            else if (key == "rho") ok = parse_double(value, config.hitting.rho);
            else if (key == "n") ok = parse_int(value, config.hitting.n);
            else known = false;
        } else if (section == "scaling") {
            if (key == "lambda") ok = parse_double(value, config.scaling.lambda);
            else if (key == "rho0") ok = parse_double(value, config.scaling.rho0);
            else if (key == "rho1") ok = parse_double(value, config.scaling.rho1);
            else if (key == "alpha") ok = parse_double(value, config.scaling.alpha);
            else if (key == "n") ok = parse_int(value, config.scaling.n);
            else known = false;
        } else if (section == "tsirelson") {
            if (key == "depth") ok = parse_int(value, config.tsirelson.depth);
            else if (key == "substeps") ok = parse_int(value, config.tsirelson.substeps);
            else if (key == "n") ok = parse_int(value, config.tsirelson.n);
            else known = false;
        } else if (section == "tanaka") {
            if (key == "steps") ok = parse_int(value, config.tanaka.steps);
            else if (key == "n") ok = parse_int(value, config.tanaka.n);
            else known = false;
        } else if (section == "control") {
            if (key == "eta") ok = parse_double(value, config.control.eta);
            else if (key == "R") ok = parse_double(value, config.control.big_r);
            else if (key == "n") ok = parse_int(value, config.control.n);
            else if (key == "lambdas") ok = parse_double_list(value, config.control.lambdas);
            else known = false;
        } else {
            return fail("unknown section [" + section + "]");
        }
        if (!known) return fail("unknown field " + field);
        if (!ok) return fail(bad_value());
    }

    const auto problems = config.validate();
    if (!problems.empty()) {
        error = problems.front();
        return std::nullopt;
    }
    return config;
}

void apply_env_overrides(RunConfig& config) {
    if (const char* env = std::getenv("SUITE_SEED")) {
        std::uint64_t master = 0;
        if (parse_u64(env, master)) config.seed.master = master;
    }
}

}  // namespace weaksde
