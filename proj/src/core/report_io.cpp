#include "core/report_io.hpp"

#include <Eigen/SVD>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace darkmap {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

json columns_to_json(const Matrix& m) {
    json out = json::array();
    for (int k = 0; k < m.cols(); ++k) out.push_back(vector_to_json(m.col(k)));
    return out;
}

Complex complex_from_json(const json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(ErrorCode::schema, "SchemaError", "expected a [re, im] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Matrix columns_from_json(const json& v, int rows) {
    if (!v.is_array()) throw Error(ErrorCode::schema, "SchemaError", "expected an array");
    Matrix out(rows, static_cast<int>(v.size()));
    int col = 0;
    for (const json& column : v) {
        if (!column.is_array() || static_cast<int>(column.size()) != rows) {
            throw Error(ErrorCode::schema, "SchemaError", "vector length mismatch");
        }
        for (int i = 0; i < rows; ++i) out(i, col) = complex_from_json(column[i]);
        ++col;
    }
    return out;
}

}  // namespace

std::string report_to_json(const DarkStateReport& report,
                           const VerificationResult* verification, bool pretty) {
    json doc;
    doc["n_upper"] = report.n_upper;
    doc["n_lower"] = report.n_lower;
    doc["upper_order"] = report.upper_order;
    doc["lower_order"] = report.lower_order;
    doc["blocks"] = json::array();
    int column = 0;
    for (const auto& block : report.blocks) {
        json b;
        b["omega"] = block.omega;
        b["dim"] = block.range.size();
        b["rank"] = block.rank;
        b["singular_values"] = block.singular_values;
        b["zero_columns"] = block.zero_columns;
        const int darks = block.range.size() - block.rank;
        b["dark_states_dressed"] =
            columns_to_json(report.dark_dressed.middleCols(column, darks));
        b["dark_states_bare"] =
            columns_to_json(report.dark_bare_lower.middleCols(column, darks));
        column += darks;
        doc["blocks"].push_back(std::move(b));
    }
    doc["total_dark"] = report.total_dark;
    doc["tolerances"] = {{"degeneracy", report.tolerances.degeneracy},
                         {"rank", report.tolerances.rank},
                         {"residual", report.tolerances.residual}};
    if (verification) {
        json v;
        v["residuals"] = json::array();
        v["max_leakage"] = json::array();
        for (const auto& s : verification->states) {
            v["residuals"].push_back(s.eigen_residual);
            v["max_leakage"].push_back(s.max_leakage);
        }
        v["pass"] = verification->pass;
        doc["verify"] = std::move(v);
    }
    return pretty ? doc.dump(2) : doc.dump();
}

ParsedReport report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema, "SchemaError", std::string("malformed report: ") + e.what());
    }
    ParsedReport parsed;
    DarkStateReport& report = parsed.report;
    try {
        report.n_upper = doc.at("n_upper").get<int>();
        report.n_lower = doc.at("n_lower").get<int>();
        report.upper_order = doc.at("upper_order").get<std::vector<int>>();
        report.lower_order = doc.at("lower_order").get<std::vector<int>>();
        report.total_dark = doc.at("total_dark").get<int>();
        report.tolerances.degeneracy = doc.at("tolerances").at("degeneracy").get<double>();
        report.tolerances.rank = doc.at("tolerances").at("rank").get<double>();
        report.tolerances.residual = doc.at("tolerances").at("residual").get<double>();

        report.dark_dressed = Matrix::Zero(report.n_lower, report.total_dark);
        report.dark_bare_lower = Matrix::Zero(report.n_lower, report.total_dark);
        report.dark_omegas.resize(report.total_dark);
        int column = 0;
        int begin = 0;
        for (const json& b : doc.at("blocks")) {
            BlockAnalysis block;
            block.block_index = static_cast<int>(report.blocks.size());
            block.omega = b.at("omega").get<double>();
            block.rank = b.at("rank").get<int>();
            const int dim = b.at("dim").get<int>();
            block.range = {begin, begin + dim};
            begin += dim;
            block.singular_values = b.at("singular_values").get<std::vector<double>>();
            block.zero_columns = b.at("zero_columns").get<std::vector<int>>();
            const Matrix dressed = columns_from_json(b.at("dark_states_dressed"), report.n_lower);
            const Matrix bare = columns_from_json(b.at("dark_states_bare"), report.n_lower);
            block.dark = dressed.block(block.range.begin, 0, dim, dressed.cols());
            report.dark_dressed.middleCols(column, dressed.cols()) = dressed;
            report.dark_bare_lower.middleCols(column, bare.cols()) = bare;
            for (int k = 0; k < dressed.cols(); ++k) report.dark_omegas(column + k) = block.omega;
            column += static_cast<int>(dressed.cols());
            report.blocks.push_back(std::move(block));
        }
        report.dark_bare_full = Matrix::Zero(report.n_upper + report.n_lower, report.total_dark);
        report.dark_bare_full.bottomRows(report.n_lower) = report.dark_bare_lower;

        if (doc.contains("verify")) {
            VerificationResult v;
            const json& jv = doc.at("verify");
            const auto residuals = jv.at("residuals").get<std::vector<double>>();
            const auto leakage = jv.at("max_leakage").get<std::vector<double>>();
            for (size_t i = 0; i < residuals.size(); ++i) {
                StateVerification s;
                s.eigen_residual = residuals[i];
                s.max_leakage = i < leakage.size() ? leakage[i] : 0.0;
                v.states.push_back(s);
            }
            v.pass = jv.at("pass").get<bool>();
            parsed.verification = v;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema, "SchemaError", std::string("bad report field: ") + e.what());
    }
    return parsed;
}

bool report_equal(const DarkStateReport& a, const DarkStateReport& b) {
    if (a.n_upper != b.n_upper || a.n_lower != b.n_lower || a.total_dark != b.total_dark ||
        a.upper_order != b.upper_order || a.lower_order != b.lower_order ||
        a.blocks.size() != b.blocks.size()) {
        return false;
    }
    if (a.tolerances.degeneracy != b.tolerances.degeneracy ||
        a.tolerances.rank != b.tolerances.rank ||
        a.tolerances.residual != b.tolerances.residual) {
        return false;
    }
    for (size_t k = 0; k < a.blocks.size(); ++k) {
        const auto& x = a.blocks[k];
        const auto& y = b.blocks[k];
        if (x.omega != y.omega || x.rank != y.rank || x.range.size() != y.range.size() ||
            x.singular_values != y.singular_values || x.zero_columns != y.zero_columns) {
            return false;
        }
    }
    return a.dark_dressed == b.dark_dressed && a.dark_bare_lower == b.dark_bare_lower;
}

std::string export_dot(const DressedSystem& dressed, double tol_rank) {
    const int n_upper = static_cast<int>(dressed.coupling.rows());
    const int n_lower = static_cast<int>(dressed.coupling.cols());
    double sigma_max = 0.0;
    if (dressed.coupling.size() > 0) {
        Eigen::JacobiSVD<Matrix> svd(dressed.coupling);
        sigma_max = svd.singularValues()(0);
    }
    const double cutoff = tol_rank * std::max(sigma_max, 1e-300);

    std::ostringstream out;
    out.precision(12);
    out << "graph dressed_system {\n";
    out << "  rankdir=TB;\n";
    for (int i = 0; i < n_upper; ++i) {
        out << "  U" << (i + 1) << " [shape=box, label=\"U" << (i + 1)
            << " (" << dressed.delta(i) << ")\"];\n";
    }
    for (int j = 0; j < n_lower; ++j) {
        out << "  L" << (j + 1) << " [shape=ellipse, label=\"L" << (j + 1)
            << " (" << dressed.omega(j) << ")\"];\n";
    }
    for (int i = 0; i < n_upper; ++i) {
        for (int j = 0; j < n_lower; ++j) {
            const double weight = std::abs(dressed.coupling(i, j));
            if (weight > cutoff) {
                out << "  U" << (i + 1) << " -- L" << (j + 1) << " [weight=" << weight
                    << ", label=\"" << weight << "\"];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace darkmap
