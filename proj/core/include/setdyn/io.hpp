#pragma once

#include <iosfwd>
#include <string>

#include "setdyn/persistence.hpp"

namespace setdyn {

/// Deterministic float formatting shared by every exporter ("%.12g").
std::string format_double(double v);

// CSV exporters. Headers are part of the tool contract.
void write_boxset_csv(std::ostream& os, const BoxSet& s);          // ix,iy,cx,cy,h
void write_loop_csv(std::ostream& os, const LegendrianLoop& l);    // i,x,y,nx,ny
void write_curve_csv(std::ostream& os, const ClosedCurve& c);      // i,x,y
void write_persistence_csv(std::ostream& os, const PersistenceTable& t);
// delta,hausdorff_c0,normal_dev_c1,verdict,margin,converged

// JSON round-trips (text in, text out; parsing failures raise ConfigError).
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

std::string spectrum_to_json(const SpectrumReport& rep, const Classification& cls);
void spectrum_from_json(const std::string& text, SpectrumReport& rep);

std::string certificate_to_json(const MinimalityCertificate& cert);
std::string singularity_report_to_json(const SingularityReport& rep, bool front_simple = true);
std::string equivalence_to_json(const EquivalenceReport& rep);
std::string validation_to_json(const ValidationReport& rep);

}  // namespace setdyn
