#include "trilasso/dataset.hpp"

#include <cmath>
#include <random>

namespace trilasso {

bool Dataset::has_missing() const { return missing.size() > 0 && missing.any(); }

void Dataset::validate() const {
  if (instances.rows() < 1 || instances.cols() < 1) throw Error("dataset is empty");
  if (responses && responses->size() != instances.rows())
    throw Error("response length " + std::to_string(responses->size()) + " does not match " +
                std::to_string(instances.rows()) + " instances");
  if (missing.size() > 0 &&
      (missing.rows() != instances.rows() || missing.cols() != instances.cols()))
    throw Error("missing-value mask shape does not match the instance matrix");
}

Dataset make_dataset(Matrix instances, std::optional<Vector> responses) {
  Dataset out;
  out.missing = instances.array().isNaN();
  if (!out.missing.any()) out.missing.resize(0, 0);
  out.instances = std::move(instances);
  out.responses = std::move(responses);
  out.validate();
  return out;
}

Dataset standardize(const Dataset& data) {
  data.validate();
  if (data.rows() < 2) throw Error("standardize needs at least two instances");
  if (data.has_missing()) throw Error("missing values present; choose an imputation policy");

  Dataset out = data;
  const double n = static_cast<double>(data.rows());
  out.feature_means = data.instances.colwise().mean().transpose();
  out.feature_stds.resize(data.cols());
  for (Index c = 0; c < data.cols(); ++c) {
    auto col = out.instances.col(c);
    col.array() -= out.feature_means(c);
    const double var = col.squaredNorm() / n;
    const double sd = std::sqrt(var);
    // Treat round-off-level spread as constant.
    if (sd <= 1e-12 * std::max(1.0, std::abs(out.feature_means(c)))) {
      col.setZero();
      out.feature_stds(c) = 0.0;
    } else {
      col /= sd;
      out.feature_stds(c) = sd;
    }
  }
  return out;
}

Matrix unstandardize(const Dataset& standardized, const Matrix& values) {
  if (!standardized.is_standardized()) throw Error("dataset carries no standardization state");
  if (values.cols() != standardized.cols()) throw Error("unstandardize: column count mismatch");
  Matrix out = values;
  for (Index c = 0; c < out.cols(); ++c) {
    out.col(c) *= standardized.feature_stds(c);
    out.col(c).array() += standardized.feature_means(c);
  }
  return out;
}

Matrix apply_standardization(const Dataset& standardized, const Matrix& values) {
  if (!standardized.is_standardized()) throw Error("dataset carries no standardization state");
  if (values.cols() != standardized.cols()) throw Error("apply_standardization: column count mismatch");
  Matrix out = values;
  for (Index c = 0; c < out.cols(); ++c) {
    const double sd = standardized.feature_stds(c);
    if (sd > 0.0)
      out.col(c) = (out.col(c).array() - standardized.feature_means(c)) / sd;
    else
      out.col(c).setZero();
  }
  return out;
}

Dataset impute_missing(const Dataset& data, const Imputation& how) {
  data.validate();
  Dataset out = data;
  if (!data.has_missing()) {
    out.missing.resize(0, 0);
    return out;
  }
  std::mt19937_64 rng(how.seed);
  std::normal_distribution<double> normal(0.0, how.sigma);
  for (Index c = 0; c < data.cols(); ++c) {
    double fill = 0.0;
    if (how.policy == ImputePolicy::mean) {
      double sum = 0.0;
      Index count = 0;
      for (Index r = 0; r < data.rows(); ++r)
        if (!data.missing(r, c)) {
          sum += data.instances(r, c);
          ++count;
        }
      if (count == 0)
        throw Error("feature " + std::to_string(c) + " is entirely missing; mean imputation impossible");
      fill = sum / static_cast<double>(count);
    }
    for (Index r = 0; r < data.rows(); ++r) {
      if (!data.missing(r, c)) continue;
      out.instances(r, c) = how.policy == ImputePolicy::gaussian ? normal(rng) : fill;
    }
  }
  out.missing.resize(0, 0);
  return out;
}

ImputePolicy parse_impute_policy(const std::string& name) {
  if (name == "mean") return ImputePolicy::mean;
  if (name == "zero") return ImputePolicy::zero;
  if (name == "gaussian") return ImputePolicy::gaussian;
  throw Error("unknown imputation policy '" + name + "' (expected mean, zero or gaussian)");
}

}  // namespace trilasso
