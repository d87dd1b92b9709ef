#include "antsel/error.hpp"

namespace antsel {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kNotHermitian: return "NotHermitian";
    case Errc::kNotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::kSingularMatrix: return "SingularMatrix";
    case Errc::kNotPsd: return "NotPSD";
    case Errc::kRankDeficient: return "RankDeficient";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kInvalidPhi: return "InvalidPhi";
    case Errc::kInvalidTau: return "InvalidTau";
    case Errc::kInvalidVariance: return "InvalidVariance";
    case Errc::kInvalidSparsity: return "InvalidSparsity";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kInvalidAxisValue: return "InvalidAxisValue";
    case Errc::kIo: return "IoError";
    case Errc::kUsage: return "UsageError";
  }
  return "Unknown";
}

}  // namespace antsel
