#pragma once

#include "harma/covariance.hpp"
#include "harma/model.hpp"
#include "harma/simulate.hpp"
#include "harma/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace harma::io {

/// Shortest-lossless double formatting ("%.17g"); stable across runs.
std::string format_double(double x);

/// Parse a double, accepting the "inf"/"-inf" tokens used in CSV artifacts.
double parse_double(const std::string& s);

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// 64-bit FNV-1a over a byte string, as a fixed-width hex string.
std::string fnv1a64_hex(const std::string& data);

/// Canonical flat key-value document for a model:
/// variant, m, nu, u, phi, theta, sigma2 (one `key = value` per line).
std::string serialize_model_document(const HarmaModel& model);

/// Hash of the canonical model document.
std::string model_hash(const HarmaModel& model);

/// Parse `key = value` lines ('#' comments and blank lines ignored).
/// Later keys override earlier ones.
std::map<std::string, std::string> parse_flat_document(std::istream& in);
std::map<std::string, std::string> parse_flat_document_file(const std::string& path);

/// Build a model from a flat document; unknown keys are ignored so the same
/// document can carry run parameters.
HarmaModel model_from_document(const std::map<std::string, std::string>& kv);

/// Comma-separated list of doubles ("" -> empty).
std::vector<double> parse_double_list(const std::string& s);
std::string join_double_list(const std::vector<double>& v);

/// Ordered provenance block emitted at the top of every artifact.
using Provenance = std::vector<std::pair<std::string, std::string>>;

void write_provenance_csv(std::ostream& out, const Provenance& prov);

// CSV artifact writers: '#'-prefixed provenance, then a header row and data.
void write_coeffs_csv(std::ostream& out, const Provenance& prov, const CoeffSeries& series);
void write_spectrum_csv(std::ostream& out, const Provenance& prov, const SpectrumGrid& grid);
void write_acvf_csv(std::ostream& out, const Provenance& prov, const AcvfTable& table);
void write_timeseries_csv(std::ostream& out, const Provenance& prov, const TimeSeries& ts);
void write_report_csv(std::ostream& out, const Provenance& prov, const StationarityReport& rep);
void write_singularities_csv(std::ostream& out, const Provenance& prov,
                             const std::vector<SingularFrequency>& list);

// Round-trip readers for the CSV artifacts (provenance lines are returned
// separately so a run can be reproduced from its own output).
struct CsvArtifact {
    Provenance provenance;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvArtifact read_csv_artifact(std::istream& in);

CoeffSeries coeffs_from_artifact(const CsvArtifact& art);
SpectrumGrid spectrum_from_artifact(const CsvArtifact& art);
AcvfTable acvf_from_artifact(const CsvArtifact& art);
std::vector<double> timeseries_values_from_artifact(const CsvArtifact& art);
std::vector<SingularFrequency> singularities_from_artifact(const CsvArtifact& art);
StationarityReport report_from_artifact(const CsvArtifact& art);

}  // namespace harma::io
