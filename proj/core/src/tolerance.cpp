#include "unispec/tolerance.hpp"

#include <cmath>

#include "unispec/error.hpp"

namespace unispec {

void ToleranceConfig::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(tol_rank) || !positive(tol_char) || !positive(tol_cluster) || !positive(tol_orth) ||
      !positive(tol_hom) || !positive(tol_commute) || !positive(cesaro_target) || cesaro_max_side == 0) {
    throw Error(ErrorKind::InvalidInput, "tolerances must be positive and finite");
  }
  if (tol_orth > tol_rank) {
    throw Error(ErrorKind::InvalidInput, "tol_orth must not exceed tol_rank", {{"tol_orth", tol_orth}, {"tol_rank", tol_rank}});
  }
}

}  // namespace unispec
