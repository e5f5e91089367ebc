// Command-line front end: simulators, statistical tests, control
// experiments, the suite runner and the SVG plotter.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weaksde/control.hpp"
#include "weaksde/lambda.hpp"
#include "weaksde/path.hpp"
#include "weaksde/run_config.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/suite.hpp"
#include "weaksde/svg.hpp"
#include "weaksde/tanaka.hpp"
#include "weaksde/tangential.hpp"
#include "weaksde/tsirelson.hpp"

namespace {

using namespace weaksde;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void print_report(const TestReport& report) {
    std::cout << (report.pass ? "PASS " : "FAIL ") << report.name << "  statistic="
              << format_double(report.statistic) << "  threshold="
              << format_double(report.threshold) << "  n=" << report.n << '\n';
    for (const auto& [key, value] : report.details)
        std::cout << "      " << key << " = " << value << '\n';
}

int reports_exit_code(const std::vector<TestReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return kExitCheckFailed;
    return kExitPass;
}

void write_or_print(const std::string& contents, const std::string& out) {
    if (out.empty()) {
        std::cout << contents;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    os << contents;
}

std::string polar_csv(const PolarPath& path) {
    std::ostringstream os;
    os << "t,theta,lifted,b,x1,x2\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto planar = path.planar(i);
        os << format_double(path.grid[i]) << ',' << format_double(path.angle[i]) << ','
           << format_double(path.lifted[i]) << ',' << format_double(path.driver[i]) << ','
           << format_double(planar[0]) << ',' << format_double(planar[1]) << '\n';
    }
    return os.str();
}

std::string lambda_csv(const LambdaPath& path) {
    std::ostringstream os;
    os << "t,z,r,theta,lifted,b\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        os << format_double(path.radius.grid[i]) << ',' << format_double(path.radius.z[i]) << ','
           << format_double(path.radius.r[i]) << ',' << format_double(path.angle[i]) << ','
           << format_double(path.lifted[i]) << ','
           << format_double(path.radius.implied_driver[i]) << '\n';
    }
    return os.str();
}

std::string indexed_out(const std::string& out, int replica, int replicas) {
    if (replicas <= 1) return out;
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "_%03d.csv", replica);
    return out + suffix;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and statistical verification lab for planar SDEs with weak but "
                 "no strong solutions"};
    app.require_subcommand(1);
    int exit_code = kExitPass;

    std::uint64_t master_seed = 20240801u;
    std::uint64_t stream = 0;
    app.add_option("--seed", master_seed, "master seed")->capture_default_str();
    app.add_option("--stream", stream, "stream index / replica offset")->capture_default_str();
    auto seed = [&]() { return Seed{master_seed, stream}; };

    // ----------------------------------------------------------------- simulate
    auto* simulate = app.add_subcommand("simulate", "generate sample paths as CSV");
    simulate->require_subcommand(1);

    {
        auto* cmd = simulate->add_subcommand("tangential", "tangential motion (polar dump)");
        auto t0 = std::make_shared<double>(1e-4);
        auto t1 = std::make_shared<double>(4.0);
        auto steps = std::make_shared<int>(1000);
        auto replicas = std::make_shared<int>(1);
        auto theta0 = std::make_shared<double>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--t0", *t0, "first grid time (> 0)")->capture_default_str();
        cmd->add_option("--t1", *t1, "last grid time")->capture_default_str();
        cmd->add_option("--steps", *steps, "number of steps")->capture_default_str();
        cmd->add_option("--replicas", *replicas, "number of paths")->capture_default_str();
        auto* theta_opt = cmd->add_option("--theta0", *theta0, "initial angle (default: uniform)");
        cmd->add_option("--out", *out, "output file (or prefix with --replicas > 1)");
        cmd->callback([=, &exit_code]() {
            const TimeGrid grid = TimeGrid::logspaced(*t0, *t1, *steps + 1);
            for (int rep = 0; rep < *replicas; ++rep) {
                std::optional<double> angle;
                if (theta_opt->count() > 0) angle = *theta0;
                const PolarPath path = simulate_tangential(
                    Seed{master_seed, stream + static_cast<std::uint64_t>(rep)}, grid, angle);
                write_or_print(polar_csv(path), indexed_out(*out, rep, *replicas));
            }
            exit_code = kExitPass;
        });
    }
    {
        auto* cmd = simulate->add_subcommand("lambda", "lambda-family solution");
        auto lambda = std::make_shared<double>(0.5);
        auto t0 = std::make_shared<double>(0.0);
        auto t1 = std::make_shared<double>(1.0);
        auto steps = std::make_shared<int>(1000);
        auto replicas = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--lambda", *lambda, "lambda in (0,1)")->capture_default_str();
        cmd->add_option("--t0", *t0, "first grid time (>= 0)")->capture_default_str();
        cmd->add_option("--t1", *t1, "last grid time")->capture_default_str();
        cmd->add_option("--steps", *steps, "number of steps")->capture_default_str();
        cmd->add_option("--replicas", *replicas, "number of paths")->capture_default_str();
        cmd->add_option("--out", *out, "output file (or prefix with --replicas > 1)");
        cmd->callback([=, &exit_code]() {
            const LambdaParams params = LambdaParams::from_lambda(*lambda);
            const TimeGrid grid = TimeGrid::uniform(*t0, *t1, *steps + 1);
            for (int rep = 0; rep < *replicas; ++rep) {
                const LambdaPath path = simulate_lambda(
                    Seed{master_seed, stream + static_cast<std::uint64_t>(rep)}, params, grid);
                write_or_print(lambda_csv(path), indexed_out(*out, rep, *replicas));
            }
            exit_code = kExitPass;
        });
    }
    {
        auto* cmd = simulate->add_subcommand("tanaka", "Tanaka solution and recovered driver");
        auto steps = std::make_shared<int>(1000);
        auto t1 = std::make_shared<double>(1.0);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--steps", *steps, "number of steps")->capture_default_str();
        cmd->add_option("--t1", *t1, "horizon")->capture_default_str();
        cmd->add_option("--out", *out, "output file");
        cmd->callback([=, &exit_code]() {
            const TimeGrid grid = TimeGrid::uniform(0.0, *t1, *steps + 1);
            const TanakaPaths paths = simulate_tanaka(seed(), grid);
            std::ostringstream os;
            os << "t,x,w\n";
            for (std::size_t i = 0; i < paths.x.size(); ++i)
                os << format_double(grid[i]) << ',' << format_double(paths.x[i]) << ','
                   << format_double(paths.w[i]) << '\n';
            write_or_print(os.str(), *out);
            exit_code = kExitPass;
        });
    }
    {
        auto* cmd = simulate->add_subcommand("tsirelson", "Tsirelson drift recursion");
        auto depth = std::make_shared<int>(6);
        auto substeps = std::make_shared<int>(8);
        auto out = std::make_shared<std::string>();
        auto intervals_out = std::make_shared<std::string>();
        cmd->add_option("--depth", *depth, "number of dyadic intervals")->capture_default_str();
        cmd->add_option("--substeps", *substeps, "integration steps per interval")
            ->capture_default_str();
        cmd->add_option("--out", *out, "path CSV output file");
        cmd->add_option("--intervals-out", *intervals_out, "per-interval drift CSV output file");
        cmd->callback([=, &exit_code]() {
            TsirelsonConfig config;
            config.depth = *depth;
            config.substeps = *substeps;
            const TsirelsonPath path = simulate_tsirelson(seed(), config);
            std::ostringstream os;
            os << "t,x,w\n";
            for (std::size_t i = 0; i < path.x.size(); ++i)
                os << format_double(path.x.grid()[i]) << ',' << format_double(path.x[i]) << ','
                   << format_double(path.w[i]) << '\n';
            write_or_print(os.str(), *out);
            std::ostringstream is;
            is << "k,t_k,b_k\n";
            const int intervals = static_cast<int>(path.b.size());
            for (int j = 0; j < intervals; ++j)
                is << (j - intervals) << ',' << format_double(path.interval_times[j]) << ','
                   << format_double(path.b[static_cast<std::size_t>(j)]) << '\n';
            if (!intervals_out->empty())
                write_or_print(is.str(), *intervals_out);
            else if (!out->empty())
                std::cout << is.str();
            exit_code = kExitPass;
        });
    }

    // --------------------------------------------------------------------- test
    auto* test = app.add_subcommand("test", "statistical checks (exit 1 on failure)");
    test->require_subcommand(1);

    {
        auto* cmd = test->add_subcommand("uniformity", "Kuiper uniformity of the time-changed "
                                                        "tangential angle");
        auto s = std::make_shared<double>(0.0);
        auto n = std::make_shared<int>(10000);
        auto significance = std::make_shared<double>(0.01);
        cmd->add_option("--s", *s, "log time of the marginal")->capture_default_str();
        cmd->add_option("--n", *n, "sample size")->capture_default_str();
        cmd->add_option("--significance", *significance, "test level")->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const AngleMarginal sample = angle_marginal_sample(seed(), *s, *n);
            const TestReport report =
                kuiper_test(TorusSample::wrap(sample.marginal), *significance,
                            "angle-uniformity");
            print_report(report);
            exit_code = report.pass ? kExitPass : kExitCheckFailed;
        });
    }
    {
        auto* cmd = test->add_subcommand(
            "independence", "ECF factorization of the tangential angle against increments");
        auto s = std::make_shared<double>(0.0);
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--s", *s, "log time of the marginal")->capture_default_str();
        cmd->add_option("--n", *n, "sample size")->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const std::pair<double, double> windows[3] = {{*s - 2.0, *s - 1.25},
                                                          {*s + 0.5, *s + 1.0},
                                                          {*s + 1.5, *s + 2.5}};
            const AngleMarginal sample = angle_marginal_sample(seed(), *s, *n, windows);
            std::vector<TestReport> reports;
            for (std::size_t w = 0; w < 3; ++w)
                reports.push_back(ecf_independence(
                    TorusSample::wrap(sample.marginal), TorusSample::wrap(sample.increments[w]),
                    1, 1, "angle-independence.window" + std::to_string(w + 1)));
            for (const auto& r : reports) print_report(r);
            exit_code = reports_exit_code(reports);
        });
    }
    {
        auto* cmd = test->add_subcommand("angle-hitting",
                                          "hitting-angle uniformity/independence/decay");
        auto lambda = std::make_shared<double>(0.5);
        auto rho = std::make_shared<double>(1.0);
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--lambda", *lambda, "lambda in (0, sqrt(2)/2)")->capture_default_str();
        cmd->add_option("--rho", *rho, "target radius")->capture_default_str();
        cmd->add_option("--n", *n, "replicas")->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const AngleHittingReports reports = angle_at_hitting_tests(
                seed(), LambdaParams::from_lambda(*lambda), *rho, *n);
            print_report(reports.uniformity);
            print_report(reports.independence);
            print_report(reports.shell_contraction);
            print_report(reports.power_decay);
            exit_code = reports_exit_code({reports.uniformity, reports.independence,
                                           reports.shell_contraction, reports.power_decay});
        });
    }
    {
        auto* cmd = test->add_subcommand("scaling", "shell-increment scale invariance");
        auto lambda = std::make_shared<double>(0.5);
        auto rho0 = std::make_shared<double>(0.5);
        auto rho1 = std::make_shared<double>(1.0);
        auto alpha = std::make_shared<double>(0.25);
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--lambda", *lambda, "lambda in (0,1)")->capture_default_str();
        cmd->add_option("--rho0", *rho0, "inner radius")->capture_default_str();
        cmd->add_option("--rho1", *rho1, "outer radius")->capture_default_str();
        cmd->add_option("--alpha", *alpha, "time-scaling factor")->capture_default_str();
        cmd->add_option("--n", *n, "replicas")->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const TestReport report = scaling_check(
                seed(), LambdaParams::from_lambda(*lambda), *rho0, *rho1, *alpha, *n);
            print_report(report);
            exit_code = report.pass ? kExitPass : kExitCheckFailed;
        });
    }

    auto add_origin_return = [&](CLI::App* parent) {
        auto* cmd = parent->add_subcommand("origin-return",
                                            "near-origin visit frequency before a horizon");
        auto lambda = std::make_shared<double>(0.5);
        auto eps = std::make_shared<double>(1e-3);
        auto horizon = std::make_shared<double>(10.0);
        auto r0 = std::make_shared<double>(1.0);
        auto n = std::make_shared<int>(10000);
        auto steps = std::make_shared<int>(4000);
        auto sweep = std::make_shared<bool>(false);
        cmd->add_option("--lambda", *lambda, "lambda in (0,1)")->capture_default_str();
        cmd->add_option("--eps", *eps, "radius threshold")->capture_default_str();
        cmd->add_option("--horizon", *horizon, "time horizon")->capture_default_str();
        cmd->add_option("--r0", *r0, "start radius")->capture_default_str();
        cmd->add_option("--n", *n, "replicas")->capture_default_str();
        cmd->add_option("--steps", *steps, "grid steps")->capture_default_str();
        cmd->add_flag("--sweep", *sweep, "also report eps*10 and eps/10");
        cmd->callback([=]() {
            const LambdaParams params = LambdaParams::from_lambda(*lambda);
            std::vector<double> epsilons{*eps};
            if (*sweep) epsilons = {*eps * 10.0, *eps, *eps / 10.0};
            const auto rows =
                origin_return_sweep(seed(), params, epsilons, *horizon, *n, *r0, *steps);
            std::cout << "lambda,epsilon,horizon,r0,n,hits,probability,std_error\n";
            for (const auto& row : rows)
                std::cout << format_double(*lambda) << ',' << format_double(row.epsilon) << ','
                          << format_double(row.horizon) << ',' << format_double(row.r0) << ','
                          << row.n << ',' << row.hits << ',' << format_double(row.probability)
                          << ',' << format_double(row.std_error) << '\n';
        });
    };
    add_origin_return(test);

    auto* experiment = app.add_subcommand("experiment", "long-running experiments");
    experiment->require_subcommand(1);
    add_origin_return(experiment);

    // ------------------------------------------------------------------ control
    auto* control = app.add_subcommand("control", "martingale control-cost experiments");
    control->require_subcommand(1);

    {
        auto* cmd = control->add_subcommand("cost", "Monte Carlo strategy cost");
        auto strategy_text = std::make_shared<std::string>("tangential");
        auto f_text = std::make_shared<std::string>("power:-1");
        auto eta = std::make_shared<double>(0.5);
        auto big_r = std::make_shared<double>(1.0);
        auto start = std::make_shared<double>(0.0);
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--strategy", *strategy_text,
                        "radial | tangential | lambda:<l> | switch:<rho>:<inner>:<outer>")
            ->capture_default_str();
        cmd->add_option("--f", *f_text, "cost: const:<c> | power:<p> | <number>")
            ->capture_default_str();
        cmd->add_option("--eta", *eta, "stop radius")->capture_default_str();
        cmd->add_option("--R", *big_r, "cost domain radius")->capture_default_str();
        cmd->add_option("--start", *start, "start radius")->capture_default_str();
        cmd->add_option("--n", *n, "replicas")->capture_default_str();
        cmd->callback([=]() {
            const Strategy strategy = Strategy::parse(*strategy_text);
            const RadialCost f = RadialCost::parse(*f_text, *big_r);
            const CostEstimate estimate = cost_estimate(strategy, f, *start, *eta, seed(), *n);
            std::cout << "strategy,f,start,stop,n,mean,stderr,truncated,overflow\n";
            std::cout << strategy.label() << ',' << f.label() << ',' << format_double(*start)
                      << ',' << format_double(*eta) << ',' << estimate.n << ','
                      << format_double(estimate.mean) << ',' << format_double(estimate.std_error)
                      << ',' << (estimate.truncated ? 1 : 0) << ','
                      << (estimate.overflow_flag ? 1 : 0) << '\n';
        });
    }
    {
        auto* cmd = control->add_subcommand("dpp-check", "origin cost additivity");
        auto f_text = std::make_shared<std::string>("power:-1");
        auto eta = std::make_shared<double>(0.5);
        auto big_r = std::make_shared<double>(1.0);
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--f", *f_text, "cost family")->capture_default_str();
        cmd->add_option("--eta", *eta, "intermediate radius")->capture_default_str();
        cmd->add_option("--R", *big_r, "domain radius")->capture_default_str();
        cmd->add_option("--n", *n, "replicas")->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const TestReport report =
                dpp_origin_check(RadialCost::parse(*f_text, *big_r), *eta, *big_r, seed(), *n);
            print_report(report);
            exit_code = report.pass ? kExitPass : kExitCheckFailed;
        });
    }
    {
        auto* cmd = control->add_subcommand("lambda-limit", "cost convergence as lambda drops");
        auto f_text = std::make_shared<std::string>("power:-1");
        auto eta = std::make_shared<double>(1.0);
        auto lambdas = std::make_shared<std::vector<double>>(std::vector<double>{0.5, 0.25, 0.1});
        auto n = std::make_shared<int>(10000);
        cmd->add_option("--f", *f_text, "cost family")->capture_default_str();
        cmd->add_option("--eta", *eta, "stop radius")->capture_default_str();
        cmd->add_option("--lambdas", *lambdas, "comma-separated lambda list")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--n", *n, "replicas per lambda")->capture_default_str();
        cmd->callback([=]() {
            const RadialCost f = RadialCost::parse(*f_text, std::max(*eta, 1.0));
            const auto rows = lambda_limit_experiment(f, *eta, *lambdas, seed(), *n);
            std::cout << "lambda,mean,stderr,n,limit,gap\n";
            for (const auto& row : rows)
                std::cout << format_double(row.lambda) << ',' << format_double(row.cost.mean)
                          << ',' << format_double(row.cost.std_error) << ',' << row.cost.n << ','
                          << format_double(row.limit) << ',' << format_double(row.gap) << '\n';
        });
    }

    // -------------------------------------------------------------------- suite
    auto* suite = app.add_subcommand("suite", "full verification battery");
    suite->require_subcommand(1);
    {
        auto* cmd = suite->add_subcommand("run", "run every check and write reports");
        auto config_path = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>();
        cmd->add_option("--config", *config_path, "key = value config file");
        cmd->add_option("--out", *out_dir, "output directory (overrides config)");
        cmd->callback([=, &app, &exit_code]() {
            RunConfig config;
            if (!config_path->empty()) {
                std::ifstream is(*config_path);
                if (!is) {
                    std::cerr << "error: cannot open config file " << *config_path << '\n';
                    exit_code = kExitUsage;
                    return;
                }
                std::string error;
                const auto parsed = parse_run_config(is, error);
                if (!parsed) {
                    std::cerr << "error: " << error << '\n';
                    exit_code = kExitUsage;
                    return;
                }
                config = *parsed;
            }
            if (app.count("--seed") > 0) config.seed.master = master_seed;
            if (app.count("--stream") > 0) config.seed.stream = stream;
            if (!out_dir->empty()) config.out_dir = *out_dir;
            apply_env_overrides(config);
            const auto problems = config.validate();
            if (!problems.empty()) {
                for (const auto& problem : problems) std::cerr << "error: " << problem << '\n';
                exit_code = kExitUsage;
                return;
            }
            const SuiteOutcome outcome = run_suite(config);
            for (const auto& report : outcome.reports) print_report(report);
            std::cout << (outcome.all_pass ? "SUITE PASS" : "SUITE FAIL") << "  ("
                      << outcome.reports.size() << " checks, summary at "
                      << (config.out_dir / "summary.csv").string() << ")\n";
            exit_code = outcome.all_pass ? kExitPass : kExitCheckFailed;
        });
    }

    // --------------------------------------------------------------------- plot
    {
        auto* cmd = app.add_subcommand("plot", "deterministic SVG from a planar path CSV");
        auto input = std::make_shared<std::string>();
        auto output = std::make_shared<std::string>();
        auto radius_output = std::make_shared<std::string>();
        auto exit_radius = std::make_shared<double>(0.0);
        cmd->add_option("--input", *input, "CSV with t and v1,v2 (or x1,x2) columns")->required();
        cmd->add_option("--output", *output, "trajectory SVG path")->required();
        cmd->add_option("--radius-output", *radius_output, "also write |X| against t");
        cmd->add_option("--exit-radius", *exit_radius, "draw the exit circle");
        cmd->callback([=]() {
            std::ifstream is(*input);
            if (!is) throw std::runtime_error("cannot open input CSV " + *input);
            const PlanarPath path = read_planar_csv(is);
            ScatterOptions options;
            options.exit_radius = *exit_radius;
            emit_scatter_file(path, *output, options);
            if (!radius_output->empty()) {
                std::vector<double> radii(path.size());
                for (std::size_t i = 0; i < path.size(); ++i)
                    radii[i] = std::hypot(path.x1[i], path.x2[i]);
                emit_line_file(path.grid.times(), radii, *radius_output);
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return exit_code;
}
