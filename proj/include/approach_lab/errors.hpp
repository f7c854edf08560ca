#pragma once

#include <stdexcept>
#include <string>

namespace approach_lab {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that is not a valid value, space, weight, table or descriptor.
/// `locus()` names the offending line or field.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::string locus = {})
      : error(locus.empty() ? what : locus + ": " + what), locus_(std::move(locus)) {}
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string locus_;
};

class domain_error : public error {
 public:
  using error::error;
};

/// min/max fold over an empty list.
class empty_fold_error : public error {
 public:
  empty_fold_error() : error("fold over an empty list") {}
};

class dimension_error : public error {
 public:
  using error::error;
};

class unknown_point_error : public error {
 public:
  using error::error;
};

/// Two objects that must live over the same space do not.
class space_mismatch_error : public error {
 public:
  using error::error;
};

class not_a_weight_error : public error {
 public:
  using error::error;
};

class not_forward_cauchy_error : public error {
 public:
  using error::error;
};

class not_directed_error : public error {
 public:
  using error::error;
};

class not_non_expansive_error : public error {
 public:
  using error::error;
};

/// An approach table, topology or derived metric fails its axioms where the
/// operation requires them.
class invalid_structure_error : public error {
 public:
  using error::error;
};

/// An enumerator could not bound its remainder within its schedule.
class certification_error : public error {
 public:
  using error::error;
};

class unsupported_error : public error {
 public:
  using error::error;
};

}  // namespace approach_lab
