#include "harma/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace harma::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);  // shortest round-trip
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    const std::string t = trim(s);
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
    size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("malformed number: " + s);
    return v;
}

std::string to_string(Variant v) { return v == Variant::type1 ? "type1" : "type2"; }

Variant variant_from_string(const std::string& s) {
    if (s == "type1") return Variant::type1;
    if (s == "type2") return Variant::type2;
    throw std::invalid_argument("unknown variant: " + s);
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize_model_document(const HarmaModel& model) {
    std::ostringstream out;
    out << "variant = " << to_string(model.family.variant) << '\n';
    out << "m = " << model.family.m << '\n';
    out << "nu = " << format_double(model.family.nu) << '\n';
    out << "u = " << format_double(model.family.u) << '\n';
    out << "phi = " << join_double_list(model.phi) << '\n';
    out << "theta = " << join_double_list(model.theta) << '\n';
    out << "sigma2 = " << format_double(model.sigma2) << '\n';
    return out.str();
}

std::string model_hash(const HarmaModel& model) {
    return fnv1a64_hex(serialize_model_document(model));
}

std::map<std::string, std::string> parse_flat_document(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed config line (expected key = value): " + line);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> parse_flat_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_flat_document(in);
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    const std::string t = trim(s);
    if (t.empty()) return out;
    for (const auto& part : split(t, ',')) out.push_back(parse_double(part));
    return out;
}

std::string join_double_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

HarmaModel model_from_document(const std::map<std::string, std::string>& kv) {
    HarmaModel model;
    auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* fam = get("family"); fam && *fam != "custom") {
        model.family = specialization(*fam, 0.0, 0.0);
    }
    if (const auto* v = get("variant")) model.family.variant = variant_from_string(*v);
    if (const auto* v = get("m")) model.family.m = static_cast<int>(parse_double(*v));
    if (const auto* v = get("nu")) model.family.nu = parse_double(*v);
    if (const auto* v = get("u")) model.family.u = parse_double(*v);
    if (const auto* v = get("phi")) model.phi = parse_double_list(*v);
    if (const auto* v = get("theta")) model.theta = parse_double_list(*v);
    if (const auto* v = get("sigma2")) model.sigma2 = parse_double(*v);
    return model;
}

void write_provenance_csv(std::ostream& out, const Provenance& prov) {
    for (const auto& [k, v] : prov) out << "# " << k << " = " << v << '\n';
}

void write_coeffs_csv(std::ostream& out, const Provenance& prov, const CoeffSeries& series) {
    write_provenance_csv(out, prov);
    out << "n,value\n";
    for (size_t n = 0; n < series.values.size(); ++n)
        out << n << ',' << format_double(series.values[n]) << '\n';
}

void write_spectrum_csv(std::ostream& out, const Provenance& prov, const SpectrumGrid& grid) {
    write_provenance_csv(out, prov);
    out << "omega,value,is_singular\n";
    for (size_t i = 0; i < grid.omegas.size(); ++i) {
        const bool sing = std::isinf(grid.values[i]);
        out << format_double(grid.omegas[i]) << ',' << format_double(grid.values[i]) << ','
            << (sing ? 1 : 0) << '\n';
    }
}

void write_acvf_csv(std::ostream& out, const Provenance& prov, const AcvfTable& table) {
    write_provenance_csv(out, prov);
    out << "lag,value,method,error_estimate\n";
    for (size_t h = 0; h < table.values.size(); ++h)
        out << h << ',' << format_double(table.values[h]) << ',' << to_string(table.method) << ','
            << format_double(table.error_estimates[h]) << '\n';
}

void write_timeseries_csv(std::ostream& out, const Provenance& prov, const TimeSeries& ts) {
    write_provenance_csv(out, prov);
    out << "t,x\n";
    for (size_t t = 0; t < ts.values.size(); ++t)
        out << (t + 1) << ',' << format_double(ts.values[t]) << '\n';
}

void write_report_csv(std::ostream& out, const Provenance& prov, const StationarityReport& rep) {
    write_provenance_csv(out, prov);
    out << "field,value\n";
    auto joined = [](const std::vector<double>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ';';
            s += format_double(v[i]);
        }
        return s;
    };
    out << "ar_root_moduli," << joined(rep.ar_root_moduli) << '\n';
    out << "ma_root_moduli," << joined(rep.ma_root_moduli) << '\n';
    out << "nu_ok," << (rep.nu_ok ? 1 : 0) << '\n';
    out << "u_ok," << (rep.u_ok ? 1 : 0) << '\n';
    out << "stationary," << (rep.stationary ? 1 : 0) << '\n';
    out << "invertible," << (rep.invertible ? 1 : 0) << '\n';
    std::string flags;
    for (size_t i = 0; i < rep.boundary_flags.size(); ++i) {
        if (i) flags += ';';
        flags += rep.boundary_flags[i];
    }
    out << "boundary_flags," << flags << '\n';
}

void write_singularities_csv(std::ostream& out, const Provenance& prov,
                             const std::vector<SingularFrequency>& list) {
    write_provenance_csv(out, prov);
    out << "omega,tag\n";
    for (const auto& s : list) out << format_double(s.omega) << ',' << to_string(s.tag) << '\n';
}

CsvArtifact read_csv_artifact(std::istream& in) {
    CsvArtifact art;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos)
                art.provenance.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            continue;
        }
        if (!header_done) {
            art.header = split(line, ',');
            header_done = true;
            continue;
        }
        art.rows.push_back(split(line, ','));
    }
    return art;
}

namespace {

int column_index(const CsvArtifact& art, const std::string& name) {
    for (size_t i = 0; i < art.header.size(); ++i)
        if (art.header[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("artifact is missing column: " + name);
}

}  // namespace

CoeffSeries coeffs_from_artifact(const CsvArtifact& art) {
    const int vi = column_index(art, "value");
    CoeffSeries out;
    for (const auto& row : art.rows) out.values.push_back(parse_double(row[vi]));
    out.truncation_index = static_cast<int>(out.values.size()) - 1;
    return out;
}

SpectrumGrid spectrum_from_artifact(const CsvArtifact& art) {
    const int oi = column_index(art, "omega");
    const int vi = column_index(art, "value");
    SpectrumGrid out;
    for (const auto& row : art.rows) {
        out.omegas.push_back(parse_double(row[oi]));
        out.values.push_back(parse_double(row[vi]));
    }
    return out;
}

AcvfTable acvf_from_artifact(const CsvArtifact& art) {
    const int vi = column_index(art, "value");
    const int ei = column_index(art, "error_estimate");
    const int mi = column_index(art, "method");
    AcvfTable out;
    for (const auto& row : art.rows) {
        out.values.push_back(parse_double(row[vi]));
        out.error_estimates.push_back(parse_double(row[ei]));
        out.method = row[mi] == "spectral_quadrature" ? AcvfMethod::spectral_quadrature
                                                      : AcvfMethod::ma_convolution;
    }
    return out;
}

std::vector<double> timeseries_values_from_artifact(const CsvArtifact& art) {
    const int xi = column_index(art, "x");
    std::vector<double> out;
    for (const auto& row : art.rows) out.push_back(parse_double(row[xi]));
    return out;
}

std::vector<SingularFrequency> singularities_from_artifact(const CsvArtifact& art) {
    const int oi = column_index(art, "omega");
    const int ti = column_index(art, "tag");
    std::vector<SingularFrequency> out;
    for (const auto& row : art.rows) {
        SingularFrequency s;
        s.omega = parse_double(row[oi]);
        if (row[ti] == "type_a") s.tag = SingularTag::type_a;
        else if (row[ti] == "type_b") s.tag = SingularTag::type_b;
        else if (row[ti] == "m2_cosinv") s.tag = SingularTag::m2_cosinv;
        else throw std::invalid_argument("unknown singularity tag: " + row[ti]);
        out.push_back(s);
    }
    return out;
}

StationarityReport report_from_artifact(const CsvArtifact& art) {
    const int fi = column_index(art, "field");
    const int vi = column_index(art, "value");
    StationarityReport rep;
    auto moduli = [](const std::string& s) {
        std::vector<double> out;
        if (trim(s).empty()) return out;
        for (const auto& part : split(s, ';')) out.push_back(parse_double(part));
        return out;
    };
    for (const auto& row : art.rows) {
        const std::string& key = row[fi];
        const std::string& val = row[vi];
        if (key == "ar_root_moduli") rep.ar_root_moduli = moduli(val);
        else if (key == "ma_root_moduli") rep.ma_root_moduli = moduli(val);
        else if (key == "nu_ok") rep.nu_ok = val == "1";
        else if (key == "u_ok") rep.u_ok = val == "1";
        else if (key == "stationary") rep.stationary = val == "1";
        else if (key == "invertible") rep.invertible = val == "1";
        else if (key == "boundary_flags" && !trim(val).empty())
            for (const auto& part : split(val, ';')) rep.boundary_flags.push_back(part);
    }
    return rep;
}

}  // namespace harma::io
