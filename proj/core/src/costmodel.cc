#include "bslfa/costmodel.h"

#include <cmath>
#include <stdexcept>

namespace bslfa::cost {

int relaxation_madds(const RelaxScheme& s) {
  switch (s.kind) {
    case SchemeKind::DWJ1:
      // Diagonal scaling of all three components, one product with the
      // pressure Laplacian, and products with both gradient components and
      // their adjoints.
      return 3 + kStencilPoints + 4 * kStencilPoints;
    case SchemeKind::DWJ2:
      // The second pressure sweep forms the distributed pressure residual
      // (six 9-point products) and applies one diagonal scaling.
      return 3 + kStencilPoints + 4 * kStencilPoints + 6 * kStencilPoints + 1;
    case SchemeKind::IBSR: {
      if (s.p.inner_cycles < 1)
        throw std::invalid_argument(
            "operation count for ibsr assumes inner W(1,1) cycles");
      // Two diagonal scalings per velocity component, one product each with
      // the divergence and gradient blocks, and 4 work units per inner
      // W(1,1) cycle at the 25-point Schur stencil.
      return 4 + 4 * kStencilPoints +
             s.p.inner_cycles * 4 * kSchurStencilPoints;
    }
    case SchemeKind::UzawaDiag:
      // Diagonal scaling of all three components plus one product with the
      // divergence block.
      return 3 + 2 * kStencilPoints;
    default:
      throw std::invalid_argument("no per-sweep operation count for " +
                                  to_string(s.kind));
  }
}

int sweep_madds(const RelaxScheme& s) {
  return kResidualMadds + relaxation_madds(s);
}

double effective_factor(double rho, double work_ratio) {
  return std::pow(rho, 1.0 / work_ratio);
}

}  // namespace bslfa::cost
