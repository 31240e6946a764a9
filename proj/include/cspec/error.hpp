#ifndef CSPEC_ERROR_HPP
#define CSPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cspec {

enum class errc {
  not_odd_prime,
  limit_too_large,
  wrong_modulus,
  incompatible_groups,
  not_primitive_odd,
  principal_character,
  bad_discriminant,
  cutoff_below_modulus,
  invalid_argument,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::not_odd_prime: return "NotOddPrime";
    case errc::limit_too_large: return "LimitTooLarge";
    case errc::wrong_modulus: return "WrongModulus";
    case errc::incompatible_groups: return "IncompatibleGroups";
    case errc::not_primitive_odd: return "NotPrimitiveOdd";
    case errc::principal_character: return "PrincipalCharacter";
    case errc::bad_discriminant: return "BadDiscriminant";
    case errc::cutoff_below_modulus: return "CutoffBelowModulus";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every precondition failure in the library is reported as a cspec::error
/// carrying one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace cspec

#endif  // CSPEC_ERROR_HPP
