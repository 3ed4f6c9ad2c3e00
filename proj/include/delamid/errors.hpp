#pragma once

#include <stdexcept>
#include <string>

namespace delamid {

/// Thrown when a numerical procedure fails (factorization breakdown,
/// QP iteration limit, simulation failure). Distinct from invalid input,
/// which uses std::invalid_argument.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration / input-file problems; maps to CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace delamid
