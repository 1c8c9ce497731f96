#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tcdark/darkspace.hpp"
#include "tcdark/dynamics.hpp"
#include "tcdark/quanta.hpp"
#include "tcdark/rational.hpp"
#include "tcdark/singlets.hpp"

namespace tcdark::io {

using json = nlohmann::ordered_json;

// Every CLI output opens with this block: artifact identity plus the full
// parameter echo, so a result file is self-describing.
json run_header(std::string_view command, json params);

// "3/1,5/1" -> n couplings; a single entry broadcasts to all atoms.
std::vector<Rational> parse_couplings(const std::string& text, int n);

// Comma-separated rationals ("1,-1,0/1") for exact state amplitudes.
std::vector<Rational> parse_amplitudes(const std::string& text);

json subspace_json(const dark::SubspaceBasis& basis);
json matchings_json(int n, int k, const std::vector<singlets::Matching>& family);
json decomposition_json(const singlets::SingletDecomposition& d);
json quantization_report_json(double eps, const quanta::Quantization& q,
                              const quanta::QuantizationReport& rep);
json scan_json(const std::vector<dyn::ScanPoint>& points);
json profile_summary_json(const dyn::EmissionProfile& profile);

void write_profile_csv(const dyn::EmissionProfile& profile, std::ostream& out);

}  // namespace tcdark::io
