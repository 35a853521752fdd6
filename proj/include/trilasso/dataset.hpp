#pragma once

#include <cstdint>
#include <optional>

#include "trilasso/common.hpp"

namespace trilasso {

/// Instance matrix plus optional responses. Missing cells are tracked by an
/// explicit mask; the corresponding entries of `instances` hold NaN.
struct Dataset {
  Matrix instances;                 // n x d
  std::optional<Vector> responses;  // length n
  Mask missing;                     // n x d, or empty when nothing is missing
  Vector feature_means;             // set by standardize()
  Vector feature_stds;              // population std; 0 marks a constant feature

  Index rows() const { return instances.rows(); }
  Index cols() const { return instances.cols(); }
  bool has_missing() const;
  bool is_standardized() const { return feature_means.size() == cols(); }

  /// Throws unless instances is non-empty, responses (if any) have length n and
  /// the mask (if any) matches.
  void validate() const;
};

/// Dataset from a dense matrix; NaN entries become missing.
Dataset make_dataset(Matrix instances, std::optional<Vector> responses = std::nullopt);

/// Per-feature zero mean / unit population variance. Constant features map to
/// all-zero columns. Responses are untouched.
Dataset standardize(const Dataset& data);

/// Inverse of standardize() for a matrix in the standardized feature space.
Matrix unstandardize(const Dataset& standardized, const Matrix& values);

/// Map new instances through the transform stored by standardize().
Matrix apply_standardization(const Dataset& standardized, const Matrix& values);

enum class ImputePolicy { mean, zero, gaussian };

struct Imputation {
  ImputePolicy policy = ImputePolicy::mean;
  double sigma = 1.0;       // gaussian only; draws are N(0, sigma^2)
  std::uint64_t seed = 0;   // gaussian only
};

Dataset impute_missing(const Dataset& data, const Imputation& how);

ImputePolicy parse_impute_policy(const std::string& name);

}  // namespace trilasso
