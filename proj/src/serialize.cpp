/// JSON/CSV serialization shared by the CLI and the tests.

#include "scatterflat/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace scatterflat::serialize {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return std::string(buf);
}

namespace {

exactlin::BigInt bigint_from_json_entry(const json& e) {
    try {
        if (e.is_string()) return exactlin::BigInt(e.get<std::string>());
        if (e.is_number_integer()) return exactlin::BigInt(e.get<long long>());
    } catch (const std::exception&) {
        // fall through to the error below
    }
    throw PreconditionError("bad_matrix",
                            "matrix entries must be integers or integer strings");
}

json rat_matrix_to_json(const exactlin::RatMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

exactlin::IntMatrix int_matrix_from_json(const json& j) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw PreconditionError("bad_matrix", "matrix must be a 2x2 or 3x3 JSON array");
    const int n = static_cast<int>(j.size());
    std::vector<exactlin::BigInt> entries;
    entries.reserve(static_cast<size_t>(n * n));
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw PreconditionError("bad_matrix", "matrix rows must all have length n");
        for (const auto& e : row) entries.push_back(bigint_from_json_entry(e));
    }
    return exactlin::IntMatrix(n, std::move(entries));
}

exactlin::IntMatrix int_matrix_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw PreconditionError("bad_json", std::string("matrix is not valid JSON: ") + e.what());
    }
    return int_matrix_from_json(j);
}

std::string rat_to_string(const exactlin::BigRat& x) {
    const exactlin::BigInt num = boost::multiprecision::numerator(x);
    const exactlin::BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

json factorization_to_json(const exactlin::BruhatFactorization& f) {
    json out;
    out["u_left"] = rat_matrix_to_json(f.u_left);
    json a = json::array();
    for (const auto& v : f.a_diag) a.push_back(rat_to_string(v));
    out["a_diag"] = a;
    out["m_sign"] = f.m_sign;
    out["w_images"] = f.w.images();
    out["w_length"] = f.w.length();
    out["u_right"] = rat_matrix_to_json(f.u_right);
    return out;
}

std::string samples_to_csv(const poisson::SpectralSamples& s, const std::string& axis_name) {
    std::ostringstream os;
    os << axis_name << ",abs,re,im\n";
    const double step = s.spacing();
    for (std::size_t k = 0; k < s.count; ++k) {
        const double x = s.r_min + static_cast<double>(k) * step;
        const specfun::Cplx v = s.values[k];
        os << fmt_double(x) << ',' << fmt_double(std::abs(v)) << ',' << fmt_double(v.real())
           << ',' << fmt_double(v.imag()) << '\n';
    }
    return os.str();
}

poisson::SpectralSamples samples_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line))
        throw PreconditionError("bad_csv", "empty sample file");

    poisson::SpectralSamples out;
    std::vector<double> axis;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x = 0, mag = 0, re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &mag, &re, &im) != 4)
            throw PreconditionError("bad_csv", "malformed sample row: " + line);
        axis.push_back(x);
        out.values.emplace_back(re, im);
    }
    if (axis.size() < 2)
        throw PreconditionError("bad_csv", "sample file needs at least 2 rows");
    out.count = axis.size();
    out.r_min = axis.front();
    out.r_max = axis.back();
    return out;
}

json peak_report_to_json(const poisson::PeakReport& report) {
    json peaks = json::array();
    for (const auto& p : report.peaks)
        peaks.push_back({{"location", p.location}, {"magnitude", p.magnitude}});
    return json{{"threshold", report.threshold},
                {"resolution", report.resolution},
                {"peaks", peaks}};
}

void write_manifest(const std::string& output_path, const std::string& command_line,
                    double wall_seconds, const json& config_echo) {
    json m;
    m["tool"] = "scatterflat";
    m["version"] = kToolVersion;
    m["output"] = output_path;
    m["command"] = command_line;
    m["wall_seconds"] = wall_seconds;
    m["config"] = config_echo;
    write_file(output_path + ".manifest.json", m.dump(2) + "\n");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw PreconditionError("io_error", "cannot open '" + path + "' for writing");
    os << text;
    os.flush();
    if (!os.good())
        throw PreconditionError("io_error", "failed writing '" + path + "'");
}

} // namespace scatterflat::serialize
