#include "core/system_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace darkmap {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& msg) {
    throw Error(ErrorCode::schema, "SchemaError", msg);
}

[[noreturn]] void validation_error(const std::string& msg) {
    throw Error(ErrorCode::validation, "ValidationError", msg);
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            schema_error("unknown field \"" + key + "\" in " + where);
        }
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) schema_error("missing field \"" + key + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_number()) schema_error("field \"" + key + "\" in " + where + " must be a number");
    return v.get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) schema_error("missing field \"" + key + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        schema_error("field \"" + key + "\" in " + where + " must be an integer");
    }
    return v.get<int>();
}

Complex require_complex(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) schema_error("missing field \"" + key + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema_error("field \"" + key + "\" in " + where + " must be a [re, im] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::string pair_name(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Detuning of |r> against |N> from the energies and the (r, N) drive.
double lab_detuning(const SystemSpec& spec, const TransitionSpec& t) {
    return spec.energies[static_cast<size_t>(t.to - 1)] -
           spec.energies[static_cast<size_t>(t.from - 1)] - *t.drive_frequency;
}

const TransitionSpec* find_transition(const SystemSpec& spec, int a, int b) {
    for (const auto& t : spec.transitions) {
        if (t.from == a && t.to == b) return &t;
    }
    return nullptr;
}

}  // namespace

double default_consistency_tol(const SystemSpec& spec) {
    double scale = 1.0;
    for (double e : spec.energies) scale = std::max(scale, std::abs(e));
    return 1e-9 * scale;
}

SystemSpec parse_system(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        schema_error(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("document root must be an object");

    if (!doc.contains("mode") || !doc.at("mode").is_string()) {
        schema_error("missing string field \"mode\"");
    }
    const std::string mode = doc.at("mode").get<std::string>();

    SystemSpec spec;
    if (mode == "lab") {
        spec.mode = SpecMode::lab;
        reject_unknown_fields(doc, {"mode", "levels", "transitions", "upper"}, "document");
        if (!doc.contains("levels") || !doc.at("levels").is_array()) {
            schema_error("lab document requires a \"levels\" array");
        }
        const json& levels = doc.at("levels");
        const int n = static_cast<int>(levels.size());
        if (n < 2) validation_error("at least two levels required");
        spec.levels = n;
        spec.energies.assign(static_cast<size_t>(n), 0.0);
        std::set<int> seen;
        for (const json& entry : levels) {
            if (!entry.is_object()) schema_error("level entries must be objects");
            reject_unknown_fields(entry, {"id", "energy"}, "level entry");
            const int id = require_int(entry, "id", "level entry");
            const double energy = require_number(entry, "energy", "level entry");
            if (id < 1 || id > n) {
                validation_error("level id " + std::to_string(id) + " outside 1.." +
                                 std::to_string(n));
            }
            if (!seen.insert(id).second) {
                validation_error("duplicate level id " + std::to_string(id));
            }
            if (!std::isfinite(energy)) validation_error("non-finite energy");
            spec.energies[static_cast<size_t>(id - 1)] = energy;
        }
    } else if (mode == "rotating") {
        spec.mode = SpecMode::rotating;
        reject_unknown_fields(doc, {"mode", "detunings", "transitions", "upper"}, "document");
        if (!doc.contains("detunings") || !doc.at("detunings").is_object()) {
            schema_error("rotating document requires a \"detunings\" object");
        }
        const json& detunings = doc.at("detunings");
        const int n = static_cast<int>(detunings.size()) + 1;
        if (n < 2) validation_error("at least one detuning required");
        spec.levels = n;
        for (const auto& [key, value] : detunings.items()) {
            int r = 0;
            try {
                size_t pos = 0;
                r = std::stoi(key, &pos);
                if (pos != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                schema_error("detuning key \"" + key + "\" is not a level id");
            }
            if (!value.is_number()) schema_error("detuning for level " + key + " must be a number");
            if (r < 1 || r >= n) {
                validation_error("every level except " + std::to_string(n) +
                                 " carries exactly one detuning; got key " + key);
            }
            spec.detunings[r] = value.get<double>();
        }
    } else {
        schema_error("mode must be \"lab\" or \"rotating\"");
    }

    if (!doc.contains("transitions") || !doc.at("transitions").is_array()) {
        schema_error("missing \"transitions\" array");
    }
    std::set<std::pair<int, int>> pairs;
    for (const json& entry : doc.at("transitions")) {
        if (!entry.is_object()) schema_error("transition entries must be objects");
        if (spec.mode == SpecMode::lab) {
            reject_unknown_fields(entry, {"from", "to", "amplitude", "drive_frequency"},
                                  "transition entry");
        } else {
            reject_unknown_fields(entry, {"from", "to", "amplitude"}, "transition entry");
        }
        TransitionSpec t;
        t.from = require_int(entry, "from", "transition entry");
        t.to = require_int(entry, "to", "transition entry");
        t.amplitude = require_complex(entry, "amplitude", "transition entry");
        if (entry.contains("drive_frequency")) {
            if (!entry.at("drive_frequency").is_number()) {
                schema_error("drive_frequency must be a number");
            }
            t.drive_frequency = entry.at("drive_frequency").get<double>();
        }
        if (t.from == t.to) validation_error("self-transition " + pair_name(t.from, t.to));
        if (t.from > t.to) {
            validation_error("transition " + pair_name(t.from, t.to) + " must have from < to");
        }
        if (t.from < 1 || t.to > spec.levels) {
            validation_error("unknown level in transition " + pair_name(t.from, t.to));
        }
        if (!pairs.insert({t.from, t.to}).second) {
            validation_error("duplicate transition " + pair_name(t.from, t.to));
        }
        if (spec.mode == SpecMode::lab && std::abs(t.amplitude) > 0.0 && !t.drive_frequency) {
            validation_error("transition " + pair_name(t.from, t.to) +
                             " has nonzero amplitude but no drive_frequency");
        }
        spec.transitions.push_back(t);
    }

    if (doc.contains("upper")) {
        const json& upper = doc.at("upper");
        if (!upper.is_array()) schema_error("\"upper\" must be an array of level ids");
        for (const json& v : upper) {
            if (!v.is_number_integer()) schema_error("\"upper\" entries must be integers");
            const int id = v.get<int>();
            if (id < 1 || id > spec.levels) {
                validation_error("unknown level " + std::to_string(id) + " in \"upper\"");
            }
            spec.upper_hint.push_back(id);
        }
    }
    return spec;
}

std::vector<ResonanceViolation> validate_loop_resonance(const SystemSpec& spec,
                                                        double tol_consistency) {
    if (spec.mode != SpecMode::lab) {
        throw Error(ErrorCode::argument, "ValidationError",
                    "loop resonance applies to lab-mode descriptions");
    }
    std::vector<ResonanceViolation> violations;
    const int n = spec.levels;
    for (int r = 1; r < n; ++r) {
        for (int rp = r + 1; rp < n; ++rp) {
            const TransitionSpec* leg = find_transition(spec, r, rp);
            const TransitionSpec* up_r = find_transition(spec, r, n);
            const TransitionSpec* up_rp = find_transition(spec, rp, n);
            // Only triangles through |N> whose three amplitudes are all nonzero
            // constrain the drives; a zero-amplitude leg leaves its drive free.
            if (!leg || !up_r || !up_rp) continue;
            if (std::abs(leg->amplitude) == 0.0 || std::abs(up_r->amplitude) == 0.0 ||
                std::abs(up_rp->amplitude) == 0.0) {
                continue;
            }
            const double d_rn = lab_detuning(spec, *up_r);
            const double d_rpn = lab_detuning(spec, *up_rp);
            const double d_rrp = lab_detuning(spec, *leg);
            const double residual = d_rn - d_rpn - d_rrp;
            if (std::abs(residual) > tol_consistency) {
                violations.push_back({r, rp, n, residual});
            }
        }
    }
    return violations;
}

RotatingHamiltonian to_rotating_frame(const SystemSpec& spec) {
    const int n = spec.levels;
    std::vector<double> detuning(static_cast<size_t>(n) + 1, 0.0);  // index by level, [N] = 0

    if (spec.mode == SpecMode::lab) {
        const auto violations = validate_loop_resonance(spec, default_consistency_tol(spec));
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "drive frequencies are inconsistent on " << violations.size()
                << " triangle(s):";
            for (const auto& v : violations) {
                msg << " (" << v.r << "," << v.r_prime << "," << v.top
                    << ") residual=" << v.residual;
            }
            throw Error(ErrorCode::validation, "InconsistentDetunings", msg.str());
        }
        for (int r = 1; r < n; ++r) {
            const TransitionSpec* up = find_transition(spec, r, n);
            if (!up || !up->drive_frequency) {
                throw Error(ErrorCode::validation, "MissingDetuning",
                            "no transition (" + std::to_string(r) + "," + std::to_string(n) +
                                ") with drive_frequency fixes the frame for level " +
                                std::to_string(r));
            }
            detuning[static_cast<size_t>(r)] = lab_detuning(spec, *up);
        }
    } else {
        for (int r = 1; r < n; ++r) {
            auto it = spec.detunings.find(r);
            if (it == spec.detunings.end()) {
                throw Error(ErrorCode::validation, "MissingDetuning",
                            "no detuning for level " + std::to_string(r));
            }
            detuning[static_cast<size_t>(r)] = it->second;
        }
    }

    RotatingHamiltonian ham;
    ham.basis_order.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) ham.basis_order[static_cast<size_t>(k)] = n - k;
    ham.matrix = Matrix::Zero(n, n);
    for (int r = 1; r < n; ++r) {
        const int idx = n - r;
        ham.matrix(idx, idx) = Complex(-detuning[static_cast<size_t>(r)], 0.0);
    }
    for (const auto& t : spec.transitions) {
        const int row = n - t.to;    // |j'>
        const int col = n - t.from;  // |j>
        ham.matrix(row, col) += t.amplitude;
        ham.matrix(col, row) += std::conj(t.amplitude);
    }
    return ham;
}

}  // namespace darkmap
