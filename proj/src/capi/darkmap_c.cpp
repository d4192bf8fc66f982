// darkmap_c.cpp — extern-C shim over the C++ core.

#include "darkmap/darkmap.h"

#include "core/catalog.hpp"
#include "core/pipeline.hpp"
#include "core/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

using namespace darkmap;

struct dm_system {
    SystemSpec spec;
    std::vector<int> upper_hint;
    std::optional<catalog::ExpectedDark> expected;
    std::string note;
};

struct dm_report {
    AnalysisResult result;
};

namespace {

thread_local std::string g_last_error;

dm_status status_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::schema: return DM_ERR_SCHEMA;
        case ErrorCode::validation: return DM_ERR_VALIDATION;
        case ErrorCode::numeric: return DM_ERR_NUMERIC;
        case ErrorCode::io: return DM_ERR_IO;
        case ErrorCode::argument: return DM_ERR_ARGUMENT;
    }
    return DM_ERR_ARGUMENT;
}

template <typename Fn>
dm_status guarded(Fn&& fn) {
    try {
        fn();
        return DM_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DM_ERR_NUMERIC;
    }
}

dm_status fail_argument(const char* message) {
    g_last_error = message;
    return DM_ERR_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

Tolerances to_tolerances(const dm_tolerances* tol) {
    if (!tol) return Tolerances{};
    if (tol->degeneracy <= 0.0 || tol->rank <= 0.0 || tol->residual <= 0.0) {
        throw Error(ErrorCode::argument, "BadTolerance", "tolerances must be positive");
    }
    return Tolerances{tol->degeneracy, tol->rank, tol->residual};
}

std::vector<int> pick_upper(const dm_system& system, const int* upper, size_t n_upper) {
    if (upper && n_upper > 0) return {upper, upper + n_upper};
    return system.upper_hint;
}

}  // namespace

extern "C" {

const char* dm_version(void) { return "0.1.0"; }

const char* dm_status_name(dm_status status) {
    switch (status) {
        case DM_OK: return "ok";
        case DM_ERR_SCHEMA: return "schema";
        case DM_ERR_VALIDATION: return "validation";
        case DM_ERR_NUMERIC: return "numeric";
        case DM_ERR_IO: return "io";
        case DM_ERR_ARGUMENT: return "argument";
    }
    return "unknown";
}

const char* dm_last_error(void) { return g_last_error.c_str(); }

void dm_string_free(char* text) { delete[] text; }

void dm_tolerances_init(dm_tolerances* tol) {
    if (!tol) return;
    const Tolerances defaults;
    tol->degeneracy = defaults.degeneracy;
    tol->rank = defaults.rank;
    tol->residual = defaults.residual;
}

dm_status dm_system_parse(const char* json_utf8, dm_system** out) {
    if (!json_utf8 || !out) return fail_argument("null argument");
    return guarded([&] {
        auto system = std::make_unique<dm_system>();
        system->spec = parse_system(json_utf8);
        system->upper_hint = system->spec.upper_hint;
        *out = system.release();
    });
}

dm_status dm_system_load(const char* path, dm_system** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] {
        std::ifstream file(path);
        if (!file) {
            throw Error(ErrorCode::io, "IoError", std::string("cannot open ") + path);
        }
        std::ostringstream text;
        text << file.rdbuf();
        auto system = std::make_unique<dm_system>();
        system->spec = parse_system(text.str());
        system->upper_hint = system->spec.upper_hint;
        *out = system.release();
    });
}

void dm_system_free(dm_system* system) { delete system; }

int dm_system_levels(const dm_system* system) { return system ? system->spec.levels : -1; }

dm_status dm_system_upper_hint(const dm_system* system, int* ids, size_t capacity,
                               size_t* out_count) {
    if (!system || !out_count) return fail_argument("null argument");
    *out_count = system->upper_hint.size();
    if (!ids) return DM_OK;
    if (capacity < system->upper_hint.size()) return fail_argument("buffer too small");
    std::copy(system->upper_hint.begin(), system->upper_hint.end(), ids);
    return DM_OK;
}

dm_status dm_catalog_build(const char* name, const char* params_json, int large_n,
                           unsigned long long seed, int has_seed, dm_system** out) {
    if (!name || !out) return fail_argument("null argument");
    return guarded([&] {
        catalog::ParamMap params;
        if (params_json && *params_json) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(params_json);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::schema, "SchemaError",
                            std::string("malformed params: ") + e.what());
            }
            if (!doc.is_object()) {
                throw Error(ErrorCode::schema, "SchemaError", "params must be an object");
            }
            for (const auto& [key, value] : doc.items()) {
                if (value.is_string()) {
                    params[key] = value.get<std::string>();
                } else {
                    params[key] = value.dump();
                }
            }
        }
        std::optional<uint64_t> seed_opt;
        if (has_seed) seed_opt = seed;
        catalog::CatalogEntry entry = catalog::build(name, params, large_n != 0, seed_opt);
        auto system = std::make_unique<dm_system>();
        system->spec = std::move(entry.spec);
        system->upper_hint = std::move(entry.upper);
        system->expected = std::move(entry.expected);
        system->note = std::move(entry.note);
        *out = system.release();
    });
}

dm_status dm_catalog_list(char** out_text) {
    if (!out_text) return fail_argument("null argument");
    return guarded([&] { *out_text = copy_string(catalog::describe()); });
}

dm_status dm_analyze(const dm_system* system, const int* upper, size_t n_upper,
                     const dm_tolerances* tol, dm_report** out) {
    if (!system || !out) return fail_argument("null argument");
    return guarded([&] {
        const std::vector<int> upper_ids = pick_upper(*system, upper, n_upper);
        if (upper_ids.empty()) {
            throw Error(ErrorCode::validation, "EmptyUpper",
                        "no upper set: pass one or add \"upper\" to the document");
        }
        auto report = std::make_unique<dm_report>();
        report->result = run_analysis(system->spec, upper_ids, to_tolerances(tol));
        *out = report.release();
    });
}

void dm_report_free(dm_report* report) { delete report; }

int dm_report_total_dark(const dm_report* report) {
    return report ? report->result.report.total_dark : -1;
}

dm_status dm_report_verify(dm_report* report, size_t samples) {
    if (!report) return fail_argument("null argument");
    return guarded([&] {
        if (samples == 0) {
            run_verification(report->result);
        } else {
            const auto times =
                default_time_grid(report->result.h_full, static_cast<int>(samples));
            run_verification(report->result, times);
        }
    });
}

int dm_report_pass(const dm_report* report) {
    if (!report || !report->result.verification) return -1;
    return report->result.verification->pass ? 1 : 0;
}

dm_status dm_report_to_json(const dm_report* report, int pretty, char** out_text) {
    if (!report || !out_text) return fail_argument("null argument");
    return guarded([&] {
        const VerificationResult* verification =
            report->result.verification ? &*report->result.verification : nullptr;
        *out_text = copy_string(
            report_to_json(report->result.report, verification, pretty != 0));
    });
}

dm_status dm_export_dot(const dm_system* system, const int* upper, size_t n_upper,
                        const dm_tolerances* tol, char** out_text) {
    if (!system || !out_text) return fail_argument("null argument");
    return guarded([&] {
        const std::vector<int> upper_ids = pick_upper(*system, upper, n_upper);
        if (upper_ids.empty()) {
            throw Error(ErrorCode::validation, "EmptyUpper",
                        "no upper set: pass one or add \"upper\" to the document");
        }
        const Tolerances tolerances = to_tolerances(tol);
        const AnalysisResult result = run_analysis(system->spec, upper_ids, tolerances);
        *out_text = copy_string(export_dot(result.dressed, tolerances.rank));
    });
}

dm_status dm_check_expected(const dm_system* system, const dm_report* report,
                            double distance_tol, int* out_ok, char** out_message) {
    if (!system || !report || !out_ok) return fail_argument("null argument");
    return guarded([&] {
        std::ostringstream message;
        bool ok = true;
        if (!system->expected) {
            message << "no expected results recorded";
        } else {
            const auto& expected = *system->expected;
            const auto& actual = report->result.report;
            if (actual.total_dark != expected.count) {
                ok = false;
                message << "dark count " << actual.total_dark << ", expected "
                        << expected.count;
            } else if (expected.bare_lower.cols() == expected.count && expected.count > 0) {
                const double distance =
                    subspace_distance(actual.dark_bare_lower, expected.bare_lower);
                ok = distance <= distance_tol;
                message << "dark count " << expected.count << ", subspace distance "
                        << distance << (ok ? " <= " : " > ") << distance_tol;
            } else {
                message << "dark count " << expected.count << " (count-only expectation)";
            }
        }
        if (!system->note.empty()) message << "; " << system->note;
        *out_ok = ok ? 1 : 0;
        if (out_message) *out_message = copy_string(message.str());
    });
}

}  // extern "C"
