// Command-line front end: sampling, fitting, information matrices, and the
// Monte Carlo tables behind subcommands with a flat key=value config file.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grss/dataset_io.hpp"
#include "grss/estimation.hpp"
#include "grss/information.hpp"
#include "grss/rng.hpp"
#include "grss/simulation.hpp"

namespace {

using namespace grss;

// All file output goes through a temp file + rename so failures never leave a
// partial artifact behind.
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::fputs(content.c_str(), stdout);
    else
        atomic_write(path, content);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string matrix_line(const std::string& name, const InfoMatrix& M) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s = [[%.6g, %.6g],[%.6g, %.6g]]\n", name.c_str(),
                  M(0, 0), M(0, 1), M(1, 0), M(1, 1));
    return buf;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct CliConfig {
    std::string family_name = "normal";
    double mu = 5.0;
    double sigma = 3.0;
    int m = 3;
    int r = 5;
    int replicates = 20000;
    int bootstrap_b = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string mode_name = "grss";
    std::string rule_name = "chen";
    std::string input_path;
    std::string output_path;
    std::string output_dir = ".";
    int workers = 0;
    bool no_rss = false;
    bool no_grss = false;
};

Family parse_family(const std::string& name) { return family_from_name(name); }

Mode parse_mode(const std::string& name) {
    if (name == "rss") return Mode::RSS;
    if (name == "grss") return Mode::GRSS;
    throw CLI::ValidationError("--mode", "expected rss or grss");
}

CoefficientRule parse_rule(const std::string& name) {
    if (name == "chen") return CoefficientRule::ChenMMinus1;
    if (name == "paper") return CoefficientRule::PaperRMinus1;
    throw CLI::ValidationError("--rule", "expected chen or paper");
}

void run_sample(const CliConfig& cfg) {
    const std::uint64_t seed = cfg.seed_given ? cfg.seed : entropy_seed();
    const LocationScaleModel model{parse_family(cfg.family_name), cfg.mu, cfg.sigma};
    const GrssDataset data = draw_grss(model, cfg.m, cfg.r, seed);
    const std::string path = cfg.output_path.empty() ? "dataset.txt" : cfg.output_path;
    write_dataset_file(path, data, seed);
}

void run_fit(const CliConfig& cfg) {
    const GrssDataset data = read_dataset_file(cfg.input_path);
    const Family family = parse_family(cfg.family_name);
    const Mode mode = parse_mode(cfg.mode_name);
    const FitResult fit = fit_mle(data, family, mode);
    std::ostringstream out;
    out << "mode=" << mode_name(mode) << "\n"
        << "family=" << family_name(family) << "\n"
        << "mu_hat=" << fmt(fit.theta_hat.mu) << "\n"
        << "sigma_hat=" << fmt(fit.theta_hat.sigma) << "\n"
        << "loglik=" << fmt(fit.loglik_at_opt) << "\n"
        << "converged=" << (fit.converged ? 1 : 0) << "\n"
        << "iterations=" << fit.iterations << "\n"
        << "boundary_hit=" << (fit.boundary_hit ? 1 : 0) << "\n";
    if (fit.std_errors) {
        out << "se_mu=" << fmt(fit.std_errors->first) << "\n"
            << "se_sigma=" << fmt(fit.std_errors->second) << "\n";
    }
    emit(cfg.output_path, out.str());
}

void run_info(const CliConfig& cfg) {
    const Family family = parse_family(cfg.family_name);
    const ThetaVector theta{cfg.mu, cfg.sigma};
    const CoefficientRule rule = parse_rule(cfg.rule_name);
    std::ostringstream out;
    out << "family=" << family_name(family) << "\n"
        << "mu=" << fmt(cfg.mu) << "\nsigma=" << fmt(cfg.sigma) << "\n"
        << "m=" << cfg.m << "\nr=" << cfg.r << "\n"
        << "rule=" << cfg.rule_name << "\n";
    if (family == Family::TwoParamExponential) {
        // the location entries of the gain matrix diverge at the support
        // boundary; only the scale-only subfamily constant is reported
        out << "delta_scale=" << fmt(one_param_exponential_delta(cfg.sigma)) << "\n"
            << "note=location information entries are not integrable for this family\n";
        emit(cfg.output_path, out.str());
        return;
    }
    out << matrix_line("delta", delta_matrix(family, theta));
    out << matrix_line("i_srs", srs_fisher(family, theta));
    out << matrix_line("i_x", rss_fisher(family, theta, cfg.m, cfg.r, rule));
    out << matrix_line("i_zx", conditional_info(family, theta, cfg.m, cfg.r));
    const TotalInfo total = total_info_and_se(family, theta, cfg.m, cfg.r, rule);
    out << matrix_line("i_d", total.total);
    out << "se_mu=" << fmt(total.se_mu) << "\n"
        << "se_sigma=" << fmt(total.se_sigma) << "\n";
    emit(cfg.output_path, out.str());
}

SimConfig make_sim_config(const CliConfig& cfg) {
    SimConfig sim;
    sim.family = parse_family(cfg.family_name);
    sim.mu = cfg.mu;
    sim.sigma = cfg.sigma;
    sim.m = cfg.m;
    sim.r = cfg.r;
    sim.replicates = cfg.replicates;
    sim.seed = cfg.seed;
    sim.run_rss = !cfg.no_rss;
    sim.run_grss = !cfg.no_grss;
    return sim;
}

void run_simulate(const CliConfig& cfg) {
    const std::vector<TableRow> rows = run_table({make_sim_config(cfg)}, cfg.workers);
    std::ostringstream out;
    write_report_csv(out, rows);
    const std::string path = cfg.output_path.empty() ? "report.csv" : cfg.output_path;
    atomic_write(path, out.str());
}

void run_tables(const CliConfig& cfg) {
    struct SigmaTag {
        const char* tag;
        double sigma;
    };
    // variance 9, 0.04, and 1 blocks of the design grid
    static const SigmaTag kTags[] = {{"sigma3", 3.0}, {"sigma0.2", 0.2}, {"sigma1", 1.0}};
    static const int kDesigns[][2] = {{3, 5},  {3, 10}, {3, 15}, {3, 20}, {3, 25},
                                      {5, 3},  {5, 6},  {5, 9},  {5, 12}, {5, 15}};
    for (Family family : kAllFamilies) {
        for (std::size_t t = 0; t < 3; ++t) {
            std::vector<SimConfig> grid;
            for (const auto& d : kDesigns) {
                CliConfig c = cfg;
                c.family_name = family_name(family);
                c.sigma = kTags[t].sigma;
                c.m = d[0];
                c.r = d[1];
                SimConfig sim = make_sim_config(c);
                sim.seed = RngStream::derive(
                    cfg.seed, {0x7461626cULL, static_cast<std::uint64_t>(family), t,
                               static_cast<std::uint64_t>(d[0]), static_cast<std::uint64_t>(d[1])});
                grid.push_back(sim);
            }
            std::ostringstream out;
            write_report_csv(out, run_table(grid, cfg.workers));
            atomic_write(cfg.output_dir + "/" + family_name(family) + "_" + kTags[t].tag + ".csv",
                         out.str());
        }
    }
}

void run_fixtures(const CliConfig& cfg) {
    const std::uint64_t seed = cfg.seed_given ? cfg.seed : 20240901ULL;
    std::ostringstream out;
    write_fixture_report(out, fixture_report(cfg.bootstrap_b, seed));
    emit(cfg.output_path, out.str());
}

// Expand `--config <file>` into `--key=value` tokens in place, so the flat
// key=value file behaves exactly like flags typed at that position; explicit
// flags later on the line override it (TakeLast policy).
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) {
            path = argv[++i];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        } else {
            args.push_back(std::move(arg));
            continue;
        }
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read config file " + path);
        std::string line;
        while (std::getline(in, line)) {
            const std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos || line[start] == '#') continue;
            const std::size_t end = line.find_last_not_of(" \t\r");
            line = line.substr(start, end - start + 1);
            if (line.find('=') == std::string::npos)
                throw std::runtime_error("config line is not key=value: " + line);
            args.push_back("--" + line);
        }
    }
    return args;
}

void add_model_flags(CLI::App* sub, CliConfig& cfg, bool with_theta = true) {
    sub->add_option("--family", cfg.family_name, "normal, logistic, laplace, or exponential");
    if (with_theta) {
        sub->add_option("--mu", cfg.mu, "location parameter");
        sub->add_option("--sigma", cfg.sigma, "scale parameter")
            ->check(CLI::PositiveNumber);
    }
    sub->add_option("--m", cfg.m, "set size")->check(CLI::PositiveNumber);
    sub->add_option("--r", cfg.r, "number of cycles")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ranked set sampling with binomial side counts: sampling, MLE, "
                 "Fisher information, and Monte Carlo tables"};
    app.require_subcommand(1);
    app.footer("Any subcommand accepts --config <file>, a flat key=value file whose entries\n"
               "behave like flags at that position; flags given later override it.");
    // a repeated option keeps its last value, so config entries yield to flags
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    CliConfig cfg;

    CLI::App* sample = app.add_subcommand("sample", "draw a dataset and write it to a file");
    add_model_flags(sample, cfg);
    CLI::Option* sample_seed = sample->add_option("--seed", cfg.seed, "RNG seed (default: OS entropy)");
    sample->add_option("-o,--output", cfg.output_path, "output dataset path (default dataset.txt)");

    CLI::App* fit = app.add_subcommand("fit", "fit the MLE to a dataset file");
    fit->add_option("-i,--input", cfg.input_path, "dataset file")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--family", cfg.family_name, "model family");
    fit->add_option("--mode", cfg.mode_name, "rss or grss");
    fit->add_option("-o,--output", cfg.output_path, "report path (default stdout)");

    CLI::App* info = app.add_subcommand("info", "Fisher information matrices and SEs");
    add_model_flags(info, cfg);
    info->add_option("--rule", cfg.rule_name, "coefficient rule: chen or paper");
    info->add_option("-o,--output", cfg.output_path, "report path (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo bias/MSE for one design");
    add_model_flags(simulate, cfg);
    simulate->add_option("--replicates", cfg.replicates, "Monte Carlo replicates")
        ->check(CLI::Range(2, 100000000));
    CLI::Option* sim_seed = simulate->add_option("--seed", cfg.seed, "RNG seed (required)");
    simulate->add_option("--workers", cfg.workers, "parallel workers (0 = default team)");
    simulate->add_flag("--no-rss", cfg.no_rss, "skip the RSS fits");
    simulate->add_flag("--no-grss", cfg.no_grss, "skip the GRSS fits");
    simulate->add_option("-o,--output", cfg.output_path, "CSV path (default report.csv)");

    CLI::App* tables = app.add_subcommand("tables", "full design grid, one CSV per family and scale");
    tables->add_option("--replicates", cfg.replicates, "Monte Carlo replicates per cell")
        ->check(CLI::Range(2, 100000000));
    CLI::Option* tab_seed = tables->add_option("--seed", cfg.seed, "RNG seed (required)");
    tables->add_option("--workers", cfg.workers, "parallel workers");
    tables->add_option("--mu", cfg.mu, "location parameter");
    tables->add_option("-d,--output-dir", cfg.output_dir, "directory for the CSV files")
        ->check(CLI::ExistingDirectory);

    CLI::App* fixtures = app.add_subcommand("fixtures", "benchmark dataset fits with bootstrap MSE");
    fixtures->add_option("--bootstrap-b", cfg.bootstrap_b, "bootstrap replicates")
        ->check(CLI::Range(2, 100000000));
    CLI::Option* fx_seed = fixtures->add_option("--seed", cfg.seed, "bootstrap RNG seed");
    fixtures->add_option("-o,--output", cfg.output_path, "report path (default stdout)");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cli: %s\n", e.what());
        return 2;
    }
    // reproducibility is mandatory for the Monte Carlo subcommands
    if ((app.got_subcommand(simulate) && sim_seed->count() == 0) ||
        (app.got_subcommand(tables) && tab_seed->count() == 0)) {
        std::fprintf(stderr, "--seed is required\nRun with --help for more information.\n");
        return 2;
    }
    cfg.seed_given = sample_seed->count() > 0 || fx_seed->count() > 0 ||
                     (app.got_subcommand(simulate) || app.got_subcommand(tables));

    const char* stage = "cli";
    try {
        if (app.got_subcommand(sample)) { stage = "sample"; run_sample(cfg); }
        else if (app.got_subcommand(fit)) { stage = "fit"; run_fit(cfg); }
        else if (app.got_subcommand(info)) { stage = "info"; run_info(cfg); }
        else if (app.got_subcommand(simulate)) { stage = "simulate"; run_simulate(cfg); }
        else if (app.got_subcommand(tables)) { stage = "tables"; run_tables(cfg); }
        else if (app.got_subcommand(fixtures)) { stage = "fixtures"; run_fixtures(cfg); }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s: %s\n", stage, e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: %s\n", stage, e.what());
        return 1;
    }
    return 0;
}
