#include "unispec/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "unispec/error.hpp"
#include "unispec/io.hpp"
#include "unispec/positivity.hpp"
#include "unispec/spectrum.hpp"

namespace unispec {
namespace {

Json skipped(const std::string& reason) { return {{"skipped", reason}}; }

Json error_section(const Error& e) { return {{"skipped", "error"}, {"error", e.to_json()}}; }

std::string format_character(const Json& chi) {
  std::ostringstream out;
  if (chi.contains("angles")) {
    out << "angles(";
    bool first = true;
    for (const auto& a : chi["angles"]) {
      out << (first ? "" : " ") << a[0].get<std::int64_t>() << "/" << a[1].get<std::int64_t>();
      first = false;
    }
    out << ")";
  } else {
    out << "values(";
    bool first = true;
    for (const auto& z : chi["generator_values"]) {
      out << (first ? "" : ", ") << z["re"].get<double>() << (z["im"].get<double>() < 0 ? "" : "+")
          << z["im"].get<double>() << "i";
      first = false;
    }
    out << ")";
  }
  return out.str();
}

}  // namespace

Json certificate_json(const BoundednessCertificate& c) {
  Json j = {{"status", to_string(c.status)}, {"seed", c.seed}};
  if (c.witness_generator) {
    j["witness_generator"] = *c.witness_generator;
    j["reason"] = c.reason;
    j["witness_value"] = c.witness_value;
  }
  return j;
}

Json spectrum_json(const UnitarySpectrumResult& sigma) {
  Json chars = Json::array();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    chars.push_back({{"character", to_json(sigma.characters[i])},
                     {"eigendim", sigma.eigenspaces[i].dim()},
                     {"basis", to_json(sigma.eigenspaces[i].basis())}});
  }
  return {{"characters", std::move(chars)}, {"seed", sigma.seed}};
}

Json ergodic_json(const ErgodicReport& erg) {
  Json trace = Json::array();
  for (const auto& p : erg.cesaro_trace) trace.push_back({p.side, p.distance});
  Json j = {{"fix_dim", erg.fix_space.dim()},
            {"range_dim", erg.range_space.dim()},
            {"is_ume", erg.is_ume},
            {"net", erg.net},
            {"net_converged", erg.net_converged},
            {"anomalies", erg.anomalies},
            {"fix_basis", to_json(erg.fix_space.basis())}};
  if (erg.mean_projection) j["mean_projection"] = to_json(*erg.mean_projection);
  if (!trace.empty()) j["cesaro_trace"] = std::move(trace);
  if (erg.kernel_average_distance) j["kernel_average_distance"] = *erg.kernel_average_distance;
  return j;
}

Json pole_json(const PoleVerdict& v) {
  Json j = {{"verdict", to_string(v.kind)},
            {"riesz", v.riesz},
            {"eigendim", v.eigenspace_dim},
            {"post_check_ok", v.post_check_ok}};
  if (v.projection) j["projection"] = to_json(*v.projection);
  return j;
}

Json stability_json(const StabilityVerdict& v) {
  Json j = {{"stable", v.stable},
            {"budget_exceeded", v.budget_exceeded},
            {"max_degree_tried", v.max_degree_tried},
            {"evaluations", v.evaluations},
            {"consistent", v.consistent()}};
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_norm"] = v.witness_norm;
  }
  if (v.obstruction) j["obstruction"] = to_json(*v.obstruction);
  if (v.zero_in_range) j["zero_in_range"] = *v.zero_in_range;
  return j;
}

Json peripheral_json(const PeripheralDecomposition& pd) {
  Json chars = Json::array();
  for (std::size_t i = 0; i < pd.characters.size(); ++i)
    chars.push_back({{"character", to_json(pd.characters[i])}, {"eigendim", pd.eigendims[i]}});
  return {{"characters", std::move(chars)},
          {"reversible_dim", pd.reversible.dim()},
          {"stable_dim", pd.stable.dim()},
          {"projection", to_json(pd.projection)},
          {"stability", stability_json(pd.stability)},
          {"residuals",
           {{"cross_product", pd.cross_product_residual},
            {"idempotence", pd.idempotence_residual},
            {"commutation", pd.commutation_residual},
            {"reconstruction", pd.reconstruction_residual}}}};
}

Json quasi_compact_json(const QuasiCompactVerdict& v) {
  Json chars = Json::array();
  for (std::size_t i = 0; i < v.characters.size(); ++i)
    chars.push_back({{"character", to_json(v.characters[i])}, {"eigendim", v.eigendims[i]}});
  return {{"quasi_compact", v.quasi_compact},
          {"riesz_criterion", v.riesz_criterion},
          {"decomposition_ok", v.decomposition_ok},
          {"witness_distance", v.witness_distance},
          {"consistent", v.consistent()},
          {"characters", std::move(chars)}};
}

Json analyze(const Representation& input, const ToleranceConfig& tol, const AnalysisOptions& options,
             const std::string& input_digest) {
  using Clock = std::chrono::steady_clock;
  Json report;
  Json timings = Json::object();
  Json checks = Json::object();
  const auto timed = [&](const char* name, const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    timings[name] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  report["input_digest"] = input_digest.empty() ? digest(to_json(input)) : input_digest;
  report["tolerance"] = to_json(tol);
  report["semigroup"] = input.semigroup().is_finite()
                            ? Json{{"type", "cayley"}, {"size", input.semigroup().finite().size()}}
                            : Json{{"type", "free_commutative"}, {"rank", input.semigroup().free().rank()}};
  report["dim"] = input.dim();
  report["conventions"] = {{"dual", "transpose"}, {"positivity_indices", "0-based"}};

  std::optional<Representation> T;
  timed("boundedness", [&] {
    const auto cert = certify_boundedness(input, tol, options.seed);
    report["boundedness"] = certificate_json(cert);
    if (cert.status == Boundedness::Certified) T = input.with_certificate(cert);
  });

  const char* sections[] = {"spectrum", "ergodic", "poles", "peripheral", "stability", "quasi_compactness",
                            "semigroup_at_infinity", "positivity", "nisa", "domination"};
  if (!T) {
    for (const char* s : sections) report[s] = skipped("representation is not bounded");
    checks["bounded"] = false;
  } else {
    const auto& S = T->semigroup();
    std::optional<UnitarySpectrumResult> sigma;
    timed("spectrum", [&] {
      sigma = unitary_spectrum(*T, tol, options.seed);
      report["spectrum"] = spectrum_json(*sigma);
      bool separated = true;
      for (std::size_t i = 0; i < sigma->size(); ++i)
        for (std::size_t j = i + 1; j < sigma->size(); ++j)
          separated = separated && character_distance(sigma->characters[i], sigma->characters[j]) >= tol.tol_cluster;
      checks["isolation"] = separated;
    });

    std::optional<ErgodicReport> erg;
    timed("ergodic", [&] {
      erg = mean_ergodic_analysis(*T, tol);
      report["ergodic"] = ergodic_json(*erg);
      checks["net_without_anomaly"] = erg->anomalies.empty();
    });

    timed("poles", [&] {
      Json poles = Json::array();
      const PoleVerdict trivial = is_pole(*T, UnitaryCharacter::trivial(S), tol);
      checks["ume_net_pole"] = erg->is_ume == erg->net_converged && erg->is_ume == trivial.holds();
      if (erg->mean_projection && trivial.projection) {
        const double d = operator_norm(*trivial.projection - *erg->mean_projection);
        checks["mean_projection_unique"] = d <= tol.tol_hom * std::max(1.0, operator_norm(*erg->mean_projection));
      }
      bool all_poles = true;
      for (const auto& chi : sigma->characters) {
        const PoleVerdict v = is_pole(*T, chi, tol);
        all_poles = all_poles && v.kind == PoleKind::Pole;
        Json entry = pole_json(v);
        entry["character"] = to_json(chi);
        poles.push_back(std::move(entry));
      }
      checks["spectrum_is_poles"] = all_poles;
      report["poles"] = std::move(poles);
    });

    std::optional<PeripheralDecomposition> pd;
    timed("peripheral", [&] {
      try {
        pd = peripheral_decomposition(*T, tol);
        report["peripheral"] = peripheral_json(*pd);
        const double worst = std::max({pd->cross_product_residual, pd->idempotence_residual,
                                       pd->commutation_residual, pd->reconstruction_residual});
        checks["peripheral_residuals"] = worst <= 1e-8;
        checks["stable_part_witness"] = pd->stability.stable && pd->stability.witness.has_value();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonPoleSpectrum) throw;
        report["peripheral"] = error_section(e);
        checks["peripheral_residuals"] = false;
      }
    });

    timed("stability", [&] {
      const StabilityVerdict v = stability_verdict(*T, tol);
      report["stability"] = stability_json(v);
      checks["stability_consistent"] = v.consistent() && (!v.stable || v.witness.has_value());
    });

    timed("quasi_compactness", [&] {
      const QuasiCompactVerdict v = quasi_compactness_verdict(*T, tol);
      report["quasi_compactness"] = quasi_compact_json(v);
      checks["quasi_compact_consistent"] = v.consistent();
    });

    timed("semigroup_at_infinity", [&] {
      if (!S.is_finite()) {
        report["semigroup_at_infinity"] = skipped("not enumerated for N^k; see peripheral");
        return;
      }
      const InfinitySemigroup inf = semigroup_at_infinity(*T, tol);
      Json ops = Json::array();
      for (std::size_t i = 0; i < inf.operators.size(); ++i)
        ops.push_back({{"element", inf.representatives[i]}, {"matrix", to_json(inf.operators[i])}});
      report["semigroup_at_infinity"] = {{"operators", std::move(ops)}, {"closed", inf.closed}};
      checks["infinity_closed"] = inf.closed;
    });

    timed("positivity", [&] {
      const PositivityCertificate pos = check_positive(*T, tol);
      Json p = {{"is_positive", pos.is_positive}};
      if (pos.first_violation) {
        const auto& v = *pos.first_violation;
        p["first_violation"] = {{"matrix", v.matrix}, {"row", v.row}, {"col", v.col},
                                {"re", v.value.real()}, {"im", v.value.imag()}};
      }
      report["positivity"] = std::move(p);
      if (!pos.is_positive) {
        report["nisa"] = skipped("representation is not positive");
        report["domination"] = skipped("representation is not positive");
        return;
      }
      try {
        const NisaReport n = nisa_suite(*T, tol);
        report["nisa"] = {{"quasi_compact", n.quasi_compact},
                          {"ume_finite_fix", n.ume_finite_fix},
                          {"trivial_is_riesz", n.trivial_is_riesz},
                          {"fix_dim", n.fix_dim},
                          {"projection_rank", n.projection_rank}};
        checks["nisa_agreement"] = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EquivalenceViolation) throw;
        report["nisa"] = error_section(e);
        checks["nisa_agreement"] = false;
      }
      try {
        const DominationReport d = domination_check(*T, tol);
        Json profile = Json::array();
        for (const auto& e : d.profile) profile.push_back({{"character", to_json(e.character)}, {"eigendim", e.eigendim}});
        report["domination"] = {{"fix_dim", d.fix_dim}, {"profile", std::move(profile)}};
        checks["domination"] = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DominationViolation && e.kind() != ErrorKind::NotUniformlyMeanErgodic) throw;
        report["domination"] = error_section(e);
        checks["domination"] = false;
      }
    });
  }

  bool all = true;
  for (const auto& [name, ok] : checks.items()) all = all && ok.get<bool>();
  report["checks"] = std::move(checks);
  report["all_checks_pass"] = all;
  report["seeds"] = {{"decomposition", options.seed}};
  if (options.timings) report["timings_ms"] = std::move(timings);
  return report;
}

std::string summarize(const Json& r) {
  std::ostringstream out;
  out << "input " << r.value("input_digest", "") << ", dim " << r.value("dim", 0) << "\n";
  out << "boundedness: " << r["boundedness"]["status"].get<std::string>() << "\n";
  const auto section_ok = [&](const char* name) { return r.contains(name) && !r[name].contains("skipped"); };
  if (section_ok("spectrum")) {
    const auto& chars = r["spectrum"]["characters"];
    out << "unitary spectrum: " << chars.size() << " character(s)\n";
    for (const auto& c : chars)
      out << "  " << format_character(c["character"]) << "  eigendim " << c["eigendim"].get<std::int64_t>() << "\n";
  }
  if (section_ok("ergodic")) {
    const auto& e = r["ergodic"];
    out << "mean ergodic: " << (e["is_ume"].get<bool>() ? "uniform" : "no") << ", dim fix "
        << e["fix_dim"].get<std::int64_t>() << ", net " << e["net"].get<std::string>()
        << (e["net_converged"].get<bool>() ? " converged" : " not converged") << "\n";
  }
  if (section_ok("peripheral")) {
    const auto& p = r["peripheral"];
    out << "peripheral: dim E_r " << p["reversible_dim"].get<std::int64_t>() << ", dim E_s "
        << p["stable_dim"].get<std::int64_t>() << "\n";
  }
  if (section_ok("stability")) out << "stable: " << (r["stability"]["stable"].get<bool>() ? "yes" : "no") << "\n";
  if (section_ok("quasi_compactness"))
    out << "quasi-compact: " << (r["quasi_compactness"]["quasi_compact"].get<bool>() ? "yes" : "no") << "\n";
  if (section_ok("positivity"))
    out << "positive: " << (r["positivity"]["is_positive"].get<bool>() ? "yes" : "no") << "\n";
  if (r.contains("checks")) {
    for (const auto& [name, ok] : r["checks"].items()) out << "check " << name << ": " << (ok.get<bool>() ? "ok" : "FAILED") << "\n";
  }
  out << "all checks pass: " << (r.value("all_checks_pass", false) ? "yes" : "no") << "\n";
  return out.str();
}

std::string cesaro_csv(const ErgodicReport& erg) {
  std::ostringstream out;
  out.precision(17);
  out << "side,distance\n";
  for (const auto& p : erg.cesaro_trace) out << p.side << "," << p.distance << "\n";
  return out.str();
}

std::string cesaro_csv(const Json& report) {
  std::ostringstream out;
  out.precision(17);
  out << "side,distance\n";
  if (report.contains("ergodic") && report["ergodic"].contains("cesaro_trace"))
    for (const auto& p : report["ergodic"]["cesaro_trace"]) out << p[0].get<std::uint64_t>() << "," << p[1].get<double>() << "\n";
  return out.str();
}

}  // namespace unispec
