// unispec: command-line front-end over the analysis library.
// Exit codes: 0 ok, 1 a check or equivalence failed, 2 bad input, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "unispec/ensemble.hpp"
#include "unispec/ergodic.hpp"
#include "unispec/error.hpp"
#include "unispec/io.hpp"
#include "unispec/positivity.hpp"
#include "unispec/report.hpp"
#include "unispec/spectrum.hpp"

using namespace unispec;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInput = 2, kInternal = 3 };

struct Flags {
  std::string input;
  std::string format = "json";
  std::string report_path;
  std::string cesaro_csv_path;
  std::string character;
  std::uint64_t seed = 0x5eed;
  bool timings = false;
  ToleranceConfig tol;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::EquivalenceViolation:
    case ErrorKind::DominationViolation:
    case ErrorKind::NonPoleSpectrum:
      return kViolation;
    case ErrorKind::InternalInconsistency:
      return kInternal;
    default:
      return kInput;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path, {{"path", path}});
  out << text;
}

// Emits the result: JSON on stdout (or the text form), and the report file if asked.
void emit(const Flags& f, const Json& result, const std::string& text) {
  const std::string dumped = canonical_dump(result);
  if (!f.report_path.empty()) write_file(f.report_path, dumped + "\n");
  if (f.format == "text") {
    std::cout << text;
  } else {
    std::cout << dumped << "\n";
  }
}

Representation load_representation(const Flags& f, Json* raw = nullptr) {
  const Json j = load_json_file(f.input);
  if (raw) *raw = j;
  return representation_from_json(j, f.tol);
}

Representation load_certified(const Flags& f) {
  const Representation T = load_representation(f);
  const auto cert = certify_boundedness(T, f.tol, f.seed);
  if (cert.status != Boundedness::Certified)
    throw Error(ErrorKind::NotBounded, "representation is not bounded", certificate_json(cert));
  return T.with_certificate(cert);
}

std::string character_text(const UnitaryCharacter& chi) {
  std::ostringstream out;
  if (chi.is_exact()) {
    for (const auto& a : chi.angles()) {
      const Complex z = a.value();
      const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
      const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
      char buf[64];
      if (im == 0.0)
        std::snprintf(buf, sizeof buf, "%6.3g", re);
      else
        std::snprintf(buf, sizeof buf, "%.3g%+.3gi", re, im);
      out << " " << buf;
    }
  } else {
    for (const auto& z : chi.generator_values()) out << " " << z;
  }
  return out.str();
}

int cmd_analyze(const Flags& f) {
  Json raw;
  const Representation T = load_representation(f, &raw);
  AnalysisOptions opt;
  opt.seed = f.seed;
  opt.timings = f.timings;
  const Json report = analyze(T, f.tol, opt, digest(raw));
  if (!f.cesaro_csv_path.empty()) write_file(f.cesaro_csv_path, cesaro_csv(report));
  emit(f, report, summarize(report));
  return report["all_checks_pass"].get<bool>() ? kOk : kViolation;
}

int cmd_dual(const Flags& f) {
  const Json j = load_json_file(f.input);
  const Semigroup S = semigroup_from_json(j.contains("semigroup") ? j["semigroup"] : j);
  if (!S.is_finite()) throw Error(ErrorKind::InvalidInput, "the dual of N^k is the torus; give a Cayley monoid");
  const auto dual = enumerate_unitary_dual(S.finite());
  const KernelGroup K = kernel_group(S.finite());
  Json chars = Json::array();
  std::ostringstream text;
  text << "|S| = " << S.finite().size() << ", |K| = " << K.carrier.size() << ", " << dual.size() << " character(s)\n";
  for (std::size_t i = 0; i < dual.size(); ++i) {
    chars.push_back(to_json(dual[i]));
    text << "chi_" << i << ":" << character_text(dual[i]) << "\n";
  }
  emit(f, {{"size", S.finite().size()}, {"kernel_size", K.carrier.size()}, {"characters", chars}}, text.str());
  return kOk;
}

int cmd_spectrum(const Flags& f) {
  const Representation T = load_certified(f);
  const auto sigma = unitary_spectrum(T, f.tol, f.seed);
  std::ostringstream text;
  text << sigma.size() << " character(s) in the unitary spectrum\n";
  for (std::size_t i = 0; i < sigma.size(); ++i)
    text << " " << character_text(sigma.characters[i]) << "  eigendim " << sigma.eigenspaces[i].dim() << "\n";
  emit(f, spectrum_json(sigma), text.str());
  return kOk;
}

int cmd_ergodic(const Flags& f) {
  const Representation T = load_certified(f);
  const ErgodicReport erg = mean_ergodic_analysis(T, f.tol);
  if (!f.cesaro_csv_path.empty()) write_file(f.cesaro_csv_path, cesaro_csv(erg));
  std::ostringstream text;
  text << "uniformly mean ergodic: " << (erg.is_ume ? "yes" : "no") << "\ndim fix: " << erg.fix_space.dim()
       << "\nnet " << erg.net << ": " << (erg.net_converged ? "converged" : "not converged") << "\n";
  for (const auto& a : erg.anomalies) text << "anomaly: " << a << "\n";
  emit(f, ergodic_json(erg), text.str());
  return erg.anomalies.empty() ? kOk : kViolation;
}

int cmd_decompose(const Flags& f) {
  const Representation T = load_certified(f);
  const PeripheralDecomposition pd = peripheral_decomposition(T, f.tol);
  std::ostringstream text;
  text << "dim E_r = " << pd.reversible.dim() << ", dim E_s = " << pd.stable.dim()
       << "\nreconstruction residual " << pd.reconstruction_residual << "\n";
  emit(f, peripheral_json(pd), text.str());
  return kOk;
}

int cmd_stability(const Flags& f) {
  const Representation T = load_certified(f);
  const StabilityVerdict v = stability_verdict(T, f.tol);
  std::ostringstream text;
  text << (v.stable ? "Stable" : "NotStable");
  if (v.witness) text << ", witness norm " << v.witness_norm;
  if (v.budget_exceeded) text << ", witness budget exceeded";
  text << "\n";
  emit(f, stability_json(v), text.str());
  return v.consistent() ? kOk : kViolation;
}

int cmd_quasicompact(const Flags& f) {
  const Representation T = load_certified(f);
  const QuasiCompactVerdict v = quasi_compactness_verdict(T, f.tol);
  emit(f, quasi_compact_json(v), std::string(v.quasi_compact ? "QuasiCompact" : "NotQuasiCompact") + "\n");
  return v.consistent() ? kOk : kViolation;
}

int cmd_nisa(const Flags& f) {
  const Representation T = load_certified(f);
  const NisaReport n = nisa_suite(T, f.tol);
  const DominationReport d = domination_check(T, f.tol);
  Json profile = Json::array();
  for (const auto& e : d.profile) profile.push_back({{"character", to_json(e.character)}, {"eigendim", e.eigendim}});
  const Json j = {{"quasi_compact", n.quasi_compact},
                  {"ume_finite_fix", n.ume_finite_fix},
                  {"trivial_is_riesz", n.trivial_is_riesz},
                  {"fix_dim", n.fix_dim},
                  {"projection_rank", n.projection_rank},
                  {"domination", profile}};
  std::ostringstream text;
  text << "(a) " << n.quasi_compact << " (b) " << n.ume_finite_fix << " (c) " << n.trivial_is_riesz
       << "\ndim fix = " << n.fix_dim << ", rank P = " << n.projection_rank << "\n";
  emit(f, j, text.str());
  return kOk;
}

int cmd_falsify(const Flags& f) {
  Json raw;
  const Representation base = load_representation(f, &raw);
  const Representation T = certified(base, f.tol, f.seed);
  if (!T.is_certified()) throw Error(ErrorKind::NotBounded, "representation is not bounded");
  Json cj;
  if (!f.character.empty() && f.character.front() == '{') {
    cj = parse_json(f.character, "--character");
  } else if (raw.contains("characters") && raw["characters"].contains(f.character)) {
    cj = raw["characters"][f.character];
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown character; pass JSON or a name from the input's \"characters\"",
                {{"character", f.character}});
  }
  const UnitaryCharacter chi = character_from_json(cj, T.semigroup());
  const FalsifierVerdict v = laplace_falsifier(T, chi, f.tol, 64, f.seed);
  Json j = {{"verdict", v.refuted ? "Refuted" : "Consistent"}, {"trials", v.trials}};
  std::ostringstream text;
  text << (v.refuted ? "Refuted" : "Consistent") << "\n";
  if (v.witness) {
    Json elems = Json::array(), coeffs = Json::array();
    for (const auto& s : v.witness->elements) elems.push_back(to_json(s));
    for (const auto& c : v.witness->coefficients) coeffs.push_back({{"re", c.real()}, {"im", c.imag()}});
    j["witness"] = {{"elements", elems},
                    {"coefficients", coeffs},
                    {"character_sum", v.witness->character_sum},
                    {"operator_sum", v.witness->operator_sum}};
    text << "|sum beta chi(s)| = " << v.witness->character_sum << " > ||sum beta T_s|| = " << v.witness->operator_sum
         << "\n";
  }
  emit(f, j, text.str());
  return kOk;
}

int cmd_ensemble(const Flags& f, std::size_t workers) {
  EnsembleConfig c = EnsembleConfig::from_json(load_json_file(f.input));
  if (workers) c.workers = workers;
  const EnsembleSummary s = run_ensemble(c, f.tol);
  std::ostringstream text;
  text << c.kind << ": " << s.passed << "/" << s.outcomes.size() << " pass, " << s.equivalence_violations
       << " equivalence violation(s), " << s.domination_violations << " domination violation(s)\n";
  emit(f, s.to_json(), text.str());
  return s.passed == s.outcomes.size() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and ergodic analysis of bounded representations of commutative semigroups"};
  app.require_subcommand(1);
  Flags f;
  std::size_t workers = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("input", f.input, "input JSON file")->required();
    sub->add_option("--tol-rank", f.tol.tol_rank, "relative rank threshold");
    sub->add_option("--tol-char", f.tol.tol_char, "character matching threshold");
    sub->add_option("--seed", f.seed, "seed for the joint decomposition");
    sub->add_option("--report", f.report_path, "write the JSON result to this path");
    sub->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-cesaro", f.tol.cesaro_max_side, "largest Cesaro side");
    sub->add_flag("--timings", f.timings, "record wall-clock per section");
    sub->add_option("--cesaro-csv", f.cesaro_csv_path, "write the Cesaro trace as CSV");
  };

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"analyze", "full analysis report"},
      {"dual", "unitary dual of a Cayley monoid"},
      {"spectrum", "unitary spectrum with eigenspaces"},
      {"ergodic", "mean ergodic projection and ergodic net"},
      {"decompose", "peripheral decomposition"},
      {"stability", "stability verdict and witness"},
      {"quasicompact", "quasi-compactness verdict"},
      {"nisa", "positive three-way suite and domination check"},
      {"falsify", "coefficient-inequality falsifier for one character"},
      {"ensemble", "randomized equivalence suite from a config file"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    if (std::string(c.name) == "falsify")
      sub->add_option("--character", f.character, "JSON character or a name from the input's \"characters\"")
          ->required();
    if (std::string(c.name) == "ensemble") sub->add_option("--workers", workers, "worker threads (0: all cores)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    f.tol.validate();
    if (cmd == "analyze") return cmd_analyze(f);
    if (cmd == "dual") return cmd_dual(f);
    if (cmd == "spectrum") return cmd_spectrum(f);
    if (cmd == "ergodic") return cmd_ergodic(f);
    if (cmd == "decompose") return cmd_decompose(f);
    if (cmd == "stability") return cmd_stability(f);
    if (cmd == "quasicompact") return cmd_quasicompact(f);
    if (cmd == "nisa") return cmd_nisa(f);
    if (cmd == "falsify") return cmd_falsify(f);
    if (cmd == "ensemble") return cmd_ensemble(f, workers);
  } catch (const Error& e) {
    std::cerr << e.to_json().dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"Internal\",\"message\":" << Json(e.what()).dump() << "}\n";
    return kInternal;
  }
  return kInternal;
}
