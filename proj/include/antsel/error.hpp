#ifndef ANTSEL_ERROR_HPP
#define ANTSEL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace antsel {

enum class Errc {
  kNotHermitian,
  kNotPositiveDefinite,
  kSingularMatrix,
  kNotPsd,
  kRankDeficient,
  kDimensionMismatch,
  kInvalidPhi,
  kInvalidTau,
  kInvalidVariance,
  kInvalidSparsity,
  kTooLarge,
  kInvalidParams,
  kInvalidAxisValue,
  kIo,
  kUsage,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the Python binding) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace antsel

#endif  // ANTSEL_ERROR_HPP
