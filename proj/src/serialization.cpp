#include "toda/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "toda/errors.hpp"

namespace toda {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error("cannot parse '" + path + "': " + e.what());
    }
}

namespace {

std::vector<double> number_array(const Json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(std::string(what) + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Json index_array(const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (std::size_t i : idx) out.push_back(i + 1);
    return out;
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

Json to_json(const LaxMatrix& l) { return Json{{"n", l.size()}, {"a", l.a()}, {"b", l.b()}}; }

LaxMatrix lax_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw std::invalid_argument("Lax matrix JSON needs fields \"a\" and \"b\"");
    std::vector<double> a = number_array(j.at("a"), "\"a\"");
    std::vector<double> b = number_array(j.at("b"), "\"b\"");
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long long>() != static_cast<long long>(a.size()))
            throw InvalidLaxMatrix("\"n\" does not match the length of \"a\"");
    }
    return LaxMatrix(std::move(a), std::move(b));
}

Matrix matrix_from_json(const Json& j) {
    if (j.is_object() && j.contains("matrix")) {
        const Json& rows = j.at("matrix");
        if (!rows.is_array() || rows.empty()) throw std::invalid_argument("\"matrix\" must be a nonempty array of rows");
        const std::size_t n = rows.size();
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> r = number_array(rows[i], "matrix row");
            if (r.size() != n) throw std::invalid_argument("\"matrix\" must be square");
            for (std::size_t c = 0; c < n; ++c) m(i, c) = r[c];
        }
        return m;
    }
    return lax_from_json(j).dense();
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const JacobiPoint& p) { return Json{{"f", p.f()}}; }

JacobiPoint point_from_json(const Json& j) {
    if (j.is_array()) return JacobiPoint::from_raw(number_array(j, "point"));
    if (!j.is_object() || !j.contains("f")) throw std::invalid_argument("point JSON needs field \"f\"");
    return JacobiPoint::from_raw(number_array(j.at("f"), "\"f\""));
}

Json to_json(const Spectrum& s) { return Json{{"lambdas", s.values()}}; }

Spectrum spectrum_from_json(const Json& j) {
    if (j.is_array()) return Spectrum(number_array(j, "spectrum"));
    if (!j.is_object() || !j.contains("lambdas")) throw std::invalid_argument("spectrum JSON needs field \"lambdas\"");
    return Spectrum(number_array(j.at("lambdas"), "\"lambdas\""));
}

Json to_json(const TauSequence& t) { return Json{{"tau", t.tau}, {"tau_prime", t.tau_prime}}; }

Json to_json(const TnnReport& r) {
    Json j{{"is_tnn", r.is_tnn}, {"witness", nullptr}, {"method", to_string(r.method)}};
    if (r.witness)
        j["witness"] = Json{{"rows", index_array(r.witness->rows)},
                            {"cols", index_array(r.witness->cols)},
                            {"value", r.witness->value}};
    return j;
}

Json to_json(const Trajectory& t) {
    Json states = Json::array();
    for (const auto& s : t.states) states.push_back(to_json(s));
    Json j{{"method", to_string(t.method)}, {"times", t.times}, {"states", states}, {"blowup", nullptr}};
    if (t.blowup) j["blowup"] = *t.blowup;
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    std::size_t n = t.states.empty() ? 0 : t.states.front().size();
    os << "t";
    for (std::size_t i = 1; i <= n; ++i) os << ",a" << i;
    for (std::size_t i = 1; i < n; ++i) os << ",b" << i;
    os << '\n';
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        os << format("%.10g", t.times[k]);
        for (double v : t.states[k].a()) os << ',' << format("%.17g", v);
        for (double v : t.states[k].b()) os << ',' << format("%.17g", v);
        os << '\n';
    }
    if (t.blowup) {
        // Adding +0.0 turns a rounded -0 into 0 so the line never reads "-0.000000".
        const double shown = std::round(*t.blowup * 1e6) / 1e6 + 0.0;
        os << "# blowup t=" << format("%.6f", shown) << '\n';
    }
}

Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"check", c.check}, {"samples", c.samples}, {"failures", c.failures}, {"skipped", c.skipped}});
    Json failures = Json::array();
    for (const auto& f : r.failure_cases) {
        Json fj{{"check", f.check}, {"seed", r.seed}, {"stream", f.stream}, {"index", f.index}, {"diagnostic", f.diagnostic}};
        if (f.spectrum) fj["spectrum"] = f.spectrum->values();
        if (f.point) fj["point"] = f.point->f();
        if (f.matrix) fj["matrix"] = to_json(*f.matrix);
        failures.push_back(fj);
    }
    return Json{{"config", {{"n", r.n}, {"seed", r.seed}, {"tolerance", r.tolerance}, {"direction", to_string(r.direction)}}},
                {"samples", r.samples},
                {"failures", r.failures},
                {"checks", checks},
                {"failure_cases", failures}};
}

}  // namespace toda
