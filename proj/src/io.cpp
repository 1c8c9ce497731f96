#include "tcdark/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tcdark/version.hpp"

namespace tcdark::io {

json run_header(std::string_view command, json params) {
    json h;
    h["artifact"] = {{"name", kArtifactName}, {"version", kVersion},
                     {"schema_version", kSchemaVersion}};
    h["command"] = std::string(command);
    h["params"] = std::move(params);
    return h;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

}  // namespace

std::vector<Rational> parse_couplings(const std::string& text, int n) {
    std::vector<std::string> parts = split(text, ',');
    if (parts.empty()) throw std::invalid_argument("couplings: empty list");
    std::vector<Rational> g;
    g.reserve(static_cast<std::size_t>(n));
    if (parts.size() == 1) {
        g.assign(static_cast<std::size_t>(n), parse_fraction(parts[0]));
    } else {
        if (static_cast<int>(parts.size()) != n)
            throw std::invalid_argument("couplings: need 1 or n entries");
        for (const auto& p : parts) g.push_back(parse_fraction(p));
    }
    return g;
}

std::vector<Rational> parse_amplitudes(const std::string& text) {
    std::vector<Rational> amps;
    for (const auto& p : split(text, ',')) amps.push_back(parse_fraction(p));
    return amps;
}

json subspace_json(const dark::SubspaceBasis& basis) {
    json out;
    out["n"] = basis.n;
    out["k"] = basis.k;
    switch (basis.kind) {
        case dark::SubspaceKind::dark: out["kind"] = "dark"; break;
        case dark::SubspaceKind::transparent: out["kind"] = "transparent"; break;
        case dark::SubspaceKind::invisible: out["kind"] = "invisible"; break;
    }
    out["dimension"] = basis.dimension();
    json states = json::array();
    for (const auto& s : basis.sector.states()) states.push_back(s.str());
    out["sector_states"] = std::move(states);
    json vectors = json::array();
    for (const auto& v : basis.vectors) {
        json jv;
        json amps = json::array();
        for (const auto& a : v) amps.push_back(fraction_str(a));
        jv["amplitudes"] = std::move(amps);
        json ints = json::array();
        for (const auto& z : dark::integer_scaled(v)) ints.push_back(z.str());
        jv["integer_scaled"] = std::move(ints);
        vectors.push_back(std::move(jv));
    }
    out["vectors"] = std::move(vectors);
    return out;
}

json matchings_json(int n, int k, const std::vector<singlets::Matching>& family) {
    json out;
    out["n"] = n;
    out["k"] = k;
    out["count"] = family.size();
    json list = json::array();
    for (const auto& m : family) {
        json jm;
        json pairs = json::array();
        for (auto [a, b] : m.pairs) pairs.push_back(json::array({a, b}));
        jm["pairs"] = std::move(pairs);
        jm["singles"] = m.singles;
        jm["display"] = m.str();
        list.push_back(std::move(jm));
    }
    out["matchings"] = std::move(list);
    return out;
}

json decomposition_json(const singlets::SingletDecomposition& d) {
    json out;
    json fam = json::array();
    for (const auto& m : d.family) fam.push_back(m.str());
    out["family"] = std::move(fam);
    json coeffs = json::array();
    for (const auto& c : d.coefficients) coeffs.push_back(fraction_str(c));
    out["coefficients"] = std::move(coeffs);
    out["residual_sq"] = fraction_str(d.residual_sq);
    out["exact"] = d.exact();
    return out;
}

json quantization_report_json(double eps, const quanta::Quantization& q,
                              const quanta::QuantizationReport& rep) {
    json out;
    out["epsilon"] = eps;
    out["nu"] = q.nu;
    out["quantum_size"] = q.quantum_size;
    out["scale_c"] = q.scale_c;
    out["total_quanta"] = rep.total_quanta;
    out["condition_q"] = rep.condition_q;
    out["amp_error"] = rep.amp_error;
    out["passage_error"] = rep.passage_error;
    out["shift_error"] = rep.shift_error;
    out["cancelled_quanta"] = rep.cancelled_quanta;
    out["cancelled_fraction"] = rep.cancelled_fraction;
    return out;
}

json scan_json(const std::vector<dyn::ScanPoint>& points) {
    json out = json::array();
    for (const auto& p : points) {
        json jp;
        jp["omega_a"] = p.omega_a;
        jp["max_leakage"] = p.max_leakage;
        jp["cutoff_converged"] = p.cutoff_converged;
        out.push_back(std::move(jp));
    }
    return out;
}

json profile_summary_json(const dyn::EmissionProfile& profile) {
    json out;
    out["samples"] = profile.times.size();
    out["horizon"] = profile.times.empty() ? 0.0 : profile.times.back();
    out["max_leakage"] = profile.max_leakage;
    out["final_photon_expectation"] =
        profile.photon_expectation.empty() ? 0.0 : profile.photon_expectation.back();
    out["final_atomic_excitation"] =
        profile.atomic_excitation.empty() ? 0.0 : profile.atomic_excitation.back();
    return out;
}

void write_profile_csv(const dyn::EmissionProfile& profile, std::ostream& out) {
    out << "time,photon_expectation,atomic_excitation\n";
    char buf[96];
    for (std::size_t i = 0; i < profile.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", profile.times[i],
                      profile.photon_expectation[i], profile.atomic_excitation[i]);
        out << buf;
    }
}

}  // namespace tcdark::io
