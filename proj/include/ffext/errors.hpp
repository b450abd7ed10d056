// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ffext {

enum class errc {
  non_prime,
  even_characteristic,
  degree_out_of_range,
  size_cap_exceeded,
  zero_inverse,
  field_mismatch,
  grid_mismatch,
  bad_exponent,
  bad_parameters,
  zero_parameter,
  odd_dimension,
  length_mismatch,
  bad_stratum,
  zero_coefficient,
  budget_exceeded,
  not_hamming,
  bad_input,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::non_prime: return "NonPrime";
    case errc::even_characteristic: return "EvenCharacteristic";
    case errc::degree_out_of_range: return "DegreeOutOfRange";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::zero_inverse: return "ZeroInverse";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::bad_exponent: return "BadExponent";
    case errc::bad_parameters: return "BadParameters";
    case errc::zero_parameter: return "ZeroParameter";
    case errc::odd_dimension: return "OddDimension";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::bad_stratum: return "BadStratum";
    case errc::zero_coefficient: return "ZeroCoefficient";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_hamming: return "NotHamming";
    case errc::bad_input: return "BadInput";
  }
  return "Error";
}

}  // namespace ffext
