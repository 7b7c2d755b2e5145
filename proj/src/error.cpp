#include "polyvfe/error.hpp"

namespace polyvfe {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ComponentCollision: return "ComponentCollision";
    case Errc::OddLength: return "OddLength";
    case Errc::RangeError: return "RangeError";
    case Errc::ComplexityBudgetExceeded: return "ComplexityBudgetExceeded";
    case Errc::InternalVanishing: return "InternalVanishing";
    case Errc::NonUnitAxis: return "NonUnitAxis";
    case Errc::NonUnitSpinor: return "NonUnitSpinor";
    case Errc::NotARotation: return "NotARotation";
    case Errc::UndefinedTheta: return "UndefinedTheta";
    case Errc::CrossCheckFailed: return "CrossCheckFailed";
    case Errc::GridNotDivisible: return "GridNotDivisible";
    case Errc::BlowUp: return "BlowUp";
  }
  return "Unknown";
}

}  // namespace polyvfe
