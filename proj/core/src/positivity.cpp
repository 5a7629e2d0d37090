#include "unispec/positivity.hpp"

#include "unispec/ergodic.hpp"
#include "unispec/error.hpp"
#include "unispec/spectrum.hpp"

namespace unispec {
namespace {

void require_positive(const Representation& T, const ToleranceConfig& tol, const char* op) {
  const auto cert = check_positive(T, tol);
  if (cert.is_positive) return;
  const auto& v = *cert.first_violation;
  throw Error(ErrorKind::NotPositive, std::string(op) + ": representation is not positive",
              {{"matrix", v.matrix}, {"row", v.row}, {"col", v.col}, {"re", v.value.real()}, {"im", v.value.imag()}});
}

}  // namespace

PositivityCertificate check_positive(const Representation& T, const ToleranceConfig& tol) {
  PositivityCertificate cert;
  const auto& mats = T.matrices();
  for (std::size_t m = 0; m < mats.size(); ++m) {
    const CMatrix& A = mats[m];
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const Complex z = A(i, j);
        if (z.real() < -tol.tol_char || std::abs(z.imag()) > tol.tol_char) {
          cert.first_violation = PositivityViolation{m, i, j, z};
          return cert;
        }
      }
    }
  }
  cert.is_positive = true;
  return cert;
}

NisaReport nisa_suite(const Representation& T, const ToleranceConfig& tol) {
  require_certified(T, "nisa_suite");
  require_positive(T, tol, "nisa_suite");
  NisaReport r;
  r.quasi_compact = quasi_compactness_verdict(T, tol).quasi_compact;

  const ErgodicReport erg = mean_ergodic_analysis(T, tol);
  r.fix_dim = erg.fix_space.dim();
  // dim fix(T) <= n is automatic here
  r.ume_finite_fix = erg.is_ume;
  if (erg.mean_projection) {
    r.projection_rank = numerical_rank(*erg.mean_projection, tol.tol_rank, std::max(1.0, operator_norm(*erg.mean_projection)));
  }

  const PoleVerdict pole = is_pole(T, UnitaryCharacter::trivial(T.semigroup()), tol);
  r.trivial_is_riesz = pole.holds() && pole.riesz;

  if (!r.agree()) {
    throw Error(ErrorKind::EquivalenceViolation, "quasi-compactness, mean ergodicity and the Riesz test disagree",
                {{"quasi_compact", r.quasi_compact},
                 {"ume_finite_fix", r.ume_finite_fix},
                 {"trivial_is_riesz", r.trivial_is_riesz},
                 {"fix_dim", r.fix_dim}});
  }
  return r;
}

DominationReport domination_check(const Representation& T, const ToleranceConfig& tol) {
  require_certified(T, "domination_check");
  require_positive(T, tol, "domination_check");
  const ErgodicReport erg = mean_ergodic_analysis(T, tol);
  if (!erg.is_ume) {
    throw Error(ErrorKind::NotUniformlyMeanErgodic, "domination_check needs a uniformly mean ergodic representation",
                {{"fix_dim", erg.fix_space.dim()}, {"range_dim", erg.range_space.dim()}});
  }
  DominationReport r;
  r.fix_dim = erg.fix_space.dim();
  const auto sigma = unitary_spectrum(T, tol);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Eigen::Index d = sigma.eigenspaces[i].dim();
    r.profile.push_back({sigma.characters[i], d});
    if (d > r.fix_dim) {
      throw Error(ErrorKind::DominationViolation, "eigenspace larger than the fixed space",
                  {{"index", i}, {"eigendim", d}, {"fix_dim", r.fix_dim}});
    }
  }
  return r;
}

}  // namespace unispec
