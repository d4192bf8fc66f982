// darkmap_cli.cpp — command-line front end over the shared-library C API.

#include <darkmap/darkmap.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitFail = 1;        // verification or expectation failure
constexpr int kExitValidation = 2;  // schema or validation error
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct SystemDeleter {
    void operator()(dm_system* s) const { dm_system_free(s); }
};
struct ReportDeleter {
    void operator()(dm_report* r) const { dm_report_free(r); }
};
using SystemPtr = std::unique_ptr<dm_system, SystemDeleter>;
using ReportPtr = std::unique_ptr<dm_report, ReportDeleter>;

struct CommonOptions {
    std::string input;
    std::string catalog_name;
    std::vector<std::string> params;
    std::vector<int> upper;
    std::optional<double> tol_degeneracy;
    std::optional<double> tol_rank;
    std::optional<double> tol_residual;
    std::string report_path;
    bool large_n = false;
    std::optional<uint64_t> seed;
};

void add_input_options(CLI::App* cmd, CommonOptions& opt, bool with_report) {
    cmd->add_option("input", opt.input, "system description (JSON file)");
    cmd->add_option("--catalog", opt.catalog_name, "catalog entry instead of a file");
    cmd->add_option("--param", opt.params, "catalog parameter key=value")->delimiter(',');
    cmd->add_option("--upper", opt.upper, "upper-state level ids")->delimiter(',');
    cmd->add_option("--tol-degeneracy", opt.tol_degeneracy, "eigenvalue clustering tolerance");
    cmd->add_option("--tol-rank", opt.tol_rank, "singular-value rank cutoff");
    cmd->add_option("--tol-residual", opt.tol_residual, "verification tolerance");
    cmd->add_flag("--large-n", opt.large_n, "large ensemble approximation (dsp)");
    cmd->add_option("--seed", opt.seed, "seed for randomized catalog couplings");
    if (with_report) {
        cmd->add_option("--report", opt.report_path, "write the report here instead of stdout");
    }
}

int exit_code(dm_status status) {
    switch (status) {
        case DM_OK: return 0;
        case DM_ERR_SCHEMA: return kExitValidation;
        case DM_ERR_VALIDATION: return kExitValidation;
        case DM_ERR_ARGUMENT: return kExitValidation;
        case DM_ERR_NUMERIC: return kExitNumeric;
        case DM_ERR_IO: return kExitIo;
    }
    return kExitNumeric;
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void print_error(const char* kind, const std::string& message) {
    std::cerr << "{\"error\":{\"kind\":\"" << kind << "\",\"message\":\""
              << json_escape(message) << "\"}}" << std::endl;
}

int report_error(dm_status status) {
    print_error(dm_status_name(status), dm_last_error());
    return exit_code(status);
}

std::string params_to_json(const std::vector<std::string>& params) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            print_error("argument", "--param expects key=value, got " + kv);
            std::exit(kExitValidation);
        }
        if (!first) out << ",";
        first = false;
        out << "\"" << json_escape(kv.substr(0, eq)) << "\":\""
            << json_escape(kv.substr(eq + 1)) << "\"";
    }
    out << "}";
    return out.str();
}

dm_tolerances effective_tolerances(const CommonOptions& opt) {
    dm_tolerances tol;
    dm_tolerances_init(&tol);
    if (const char* env = std::getenv("DARKMAP_TOL_RANK")) {
        try {
            tol.rank = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable DARKMAP_TOL_RANK=" << env << std::endl;
        }
    }
    if (opt.tol_degeneracy) tol.degeneracy = *opt.tol_degeneracy;
    if (opt.tol_rank) tol.rank = *opt.tol_rank;  // flag wins over the environment
    if (opt.tol_residual) tol.residual = *opt.tol_residual;
    return tol;
}

SystemPtr open_system(const CommonOptions& opt, dm_status* status) {
    dm_system* system = nullptr;
    if (!opt.catalog_name.empty()) {
        const std::string params = params_to_json(opt.params);
        *status = dm_catalog_build(opt.catalog_name.c_str(), params.c_str(),
                                   opt.large_n ? 1 : 0, opt.seed.value_or(0),
                                   opt.seed.has_value() ? 1 : 0, &system);
    } else if (!opt.input.empty()) {
        *status = dm_system_load(opt.input.c_str(), &system);
    } else {
        print_error("argument", "give an input file or --catalog name");
        std::exit(kExitValidation);
    }
    return SystemPtr(system);
}

std::vector<int> choose_upper(const CommonOptions& opt, const dm_system* system) {
    size_t hint_count = 0;
    dm_system_upper_hint(system, nullptr, 0, &hint_count);
    if (!opt.upper.empty()) {
        if (hint_count > 0) {
            std::cerr << "warning: --upper overrides the partition in the input" << std::endl;
        }
        return opt.upper;
    }
    return {};  // fall back to the document partition inside the library
}

int write_output(const std::string& path, const char* text) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        print_error("io", "cannot write " + path);
        return kExitIo;
    }
    file << text;
    return 0;
}

int run_analyze_or_verify(const CommonOptions& opt, bool verify) {
    dm_status status = DM_OK;
    SystemPtr system = open_system(opt, &status);
    if (!system) return report_error(status);

    const dm_tolerances tol = effective_tolerances(opt);
    const std::vector<int> upper = choose_upper(opt, system.get());
    dm_report* raw = nullptr;
    status = dm_analyze(system.get(), upper.empty() ? nullptr : upper.data(), upper.size(),
                        &tol, &raw);
    if (status != DM_OK) return report_error(status);
    ReportPtr report(raw);

    if (verify) {
        status = dm_report_verify(report.get(), 0);
        if (status != DM_OK) return report_error(status);
    }

    char* json = nullptr;
    status = dm_report_to_json(report.get(), 1, &json);
    if (status != DM_OK) return report_error(status);
    const int io = write_output(opt.report_path, json);
    if (opt.report_path.empty()) std::cout << std::endl;
    dm_string_free(json);
    if (io != 0) return io;

    if (verify && dm_report_pass(report.get()) != 1) {
        std::cerr << "verification failed" << std::endl;
        return kExitFail;
    }
    return 0;
}

int run_export_dot(const CommonOptions& opt) {
    dm_status status = DM_OK;
    SystemPtr system = open_system(opt, &status);
    if (!system) return report_error(status);

    const dm_tolerances tol = effective_tolerances(opt);
    const std::vector<int> upper = choose_upper(opt, system.get());
    char* dot = nullptr;
    status = dm_export_dot(system.get(), upper.empty() ? nullptr : upper.data(), upper.size(),
                           &tol, &dot);
    if (status != DM_OK) return report_error(status);
    const int io = write_output(opt.report_path, dot);
    dm_string_free(dot);
    return io;
}

int run_catalog_list() {
    char* text = nullptr;
    const dm_status status = dm_catalog_list(&text);
    if (status != DM_OK) return report_error(status);
    std::cout << text;
    dm_string_free(text);
    return 0;
}

int run_catalog_run(const CommonOptions& opt) {
    dm_status status = DM_OK;
    SystemPtr system = open_system(opt, &status);
    if (!system) return report_error(status);

    const dm_tolerances tol = effective_tolerances(opt);
    dm_report* raw = nullptr;
    status = dm_analyze(system.get(), nullptr, 0, &tol, &raw);
    if (status != DM_OK) return report_error(status);
    ReportPtr report(raw);

    status = dm_report_verify(report.get(), 0);
    if (status != DM_OK) return report_error(status);

    int ok = 0;
    char* message = nullptr;
    status = dm_check_expected(system.get(), report.get(), 1e-8, &ok, &message);
    if (status != DM_OK) return report_error(status);

    const bool verified = dm_report_pass(report.get()) == 1;
    std::cout << opt.catalog_name << ": total_dark=" << dm_report_total_dark(report.get())
              << ", expected " << (ok ? "ok" : "MISMATCH") << " (" << message << "), verification "
              << (verified ? "pass" : "FAIL") << std::endl;
    dm_string_free(message);

    if (!opt.report_path.empty()) {
        char* json = nullptr;
        status = dm_report_to_json(report.get(), 1, &json);
        if (status != DM_OK) return report_error(status);
        const int io = write_output(opt.report_path, json);
        dm_string_free(json);
        if (io != 0) return io;
    }
    return (ok && verified) ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dark-state analysis of multilevel systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dm_version());

    CommonOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "run the dark-state analysis");
    add_input_options(analyze, analyze_opt, true);

    CommonOptions verify_opt;
    CLI::App* verify = app.add_subcommand(
        "verify", "analyze, then check residuals and time-evolution leakage");
    add_input_options(verify, verify_opt, true);

    CommonOptions dot_opt;
    CLI::App* export_dot =
        app.add_subcommand("export-dot", "emit the dressed-state bipartite graph");
    add_input_options(export_dot, dot_opt, true);

    CLI::App* catalog = app.add_subcommand("catalog", "built-in configurations");
    catalog->require_subcommand(1);
    CLI::App* catalog_list = catalog->add_subcommand("list", "list catalog entries");
    CommonOptions run_opt;
    CLI::App* catalog_run =
        catalog->add_subcommand("run", "build an entry, analyze, verify, compare");
    catalog_run->add_option("name", run_opt.catalog_name, "catalog entry name")->required();
    catalog_run->add_option("--param", run_opt.params, "parameter key=value")->delimiter(',');
    catalog_run->add_option("--tol-degeneracy", run_opt.tol_degeneracy, "clustering tolerance");
    catalog_run->add_option("--tol-rank", run_opt.tol_rank, "rank cutoff");
    catalog_run->add_option("--tol-residual", run_opt.tol_residual, "verification tolerance");
    catalog_run->add_flag("--large-n", run_opt.large_n, "large ensemble approximation (dsp)");
    catalog_run->add_option("--seed", run_opt.seed, "seed for randomized couplings");
    catalog_run->add_option("--report", run_opt.report_path, "also write the report JSON here");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return run_analyze_or_verify(analyze_opt, false);
    if (verify->parsed()) return run_analyze_or_verify(verify_opt, true);
    if (export_dot->parsed()) return run_export_dot(dot_opt);
    if (catalog->parsed()) {
        if (catalog_list->parsed()) return run_catalog_list();
        if (catalog_run->parsed()) return run_catalog_run(run_opt);
    }
    return 0;
}
