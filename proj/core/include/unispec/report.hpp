#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "unispec/ergodic.hpp"
#include "unispec/representation.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

struct AnalysisOptions {
  std::uint64_t seed = 0x5eed;
  bool timings = false;  // wall-clock per section; off keeps reports byte-reproducible
};

/// Full pipeline on a validated representation: boundedness, spectrum,
/// ergodic structure, poles, peripheral decomposition, stability,
/// quasi-compactness, semigroup at infinity (Cayley monoids), and the
/// positivity sections when T is positive. Sections that cannot run carry
/// {"skipped": reason}. "checks" holds one boolean per equivalence check and
/// "all_checks_pass" their conjunction.
nlohmann::json analyze(const Representation& T, const ToleranceConfig& tol, const AnalysisOptions& options = {},
                       const std::string& input_digest = "");

/// Human-readable summary of an analysis report.
std::string summarize(const nlohmann::json& report);

/// "side,distance" lines of a Cesaro trace.
std::string cesaro_csv(const ErgodicReport& erg);
std::string cesaro_csv(const nlohmann::json& report);

// Section builders shared with the single-purpose commands.
nlohmann::json spectrum_json(const UnitarySpectrumResult& sigma);
nlohmann::json ergodic_json(const ErgodicReport& erg);
nlohmann::json pole_json(const PoleVerdict& v);
nlohmann::json stability_json(const StabilityVerdict& v);
nlohmann::json peripheral_json(const PeripheralDecomposition& pd);
nlohmann::json quasi_compact_json(const QuasiCompactVerdict& v);
nlohmann::json certificate_json(const BoundednessCertificate& c);

}  // namespace unispec
