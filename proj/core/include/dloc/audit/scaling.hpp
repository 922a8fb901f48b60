#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dloc::audit {

enum class Growth { constant, logarithmic, linear, quadratic };

inline constexpr std::array<Growth, 4> kAllGrowth{Growth::constant, Growth::logarithmic, Growth::linear,
                                                  Growth::quadratic};

/// "constant", "logarithmic"...
std::string_view to_string(Growth g);
/// "O(1)", "O(log n)", "O(n)", "O(n^2)" over the given variable.
std::string big_o(Growth g, std::string_view variable = "n");

struct ScalingPoint {
  double x = 0;
  double y = 0;
};

struct ScalingSeries {
  std::string protocol;
  std::string metric;
  std::vector<ScalingPoint> points;  // x strictly increasing, x > 0

  bool all_zero() const;
};

struct ModelFit {
  Growth growth = Growth::constant;
  double slope = 0;      // a in y = a f(x) + b (0 for the constant model)
  double intercept = 0;  // b
  double r2 = 0;
};

struct ScalingClass {
  static constexpr double kMinQuality = 0.9;
  static constexpr double kMinRise = 0.1;

  std::optional<Growth> growth;  // nullopt: inconclusive
  double fit_quality = 0;        // R^2 of the best model
  std::array<ModelFit, 4> fits{};
  bool all_zero = false;

  bool conclusive() const { return growth.has_value(); }
  /// Class name, or "inconclusive".
  std::string label() const;
};

/// Least-squares fit of y = a f(x) + b for f in {1, log x, x, x^2}.
/// A growing model qualifies when its centered R^2 reaches 0.9, its slope is
/// positive and its fitted rise over the sweep is at least 10% of the fitted
/// value at the largest x; the best qualifying R^2 wins, ties going to the
/// slower-growing model. Without one, the series is constant if the flat
/// line scores 0.9 under the uncentered R^2 (1 - SS_res / sum y^2), and
/// inconclusive otherwise. Every other model already contains the flat line,
/// so it could never win a plain R^2 comparison.
/// Throws std::invalid_argument on fewer than 4 points or non-increasing x.
ScalingClass fit_scaling(const ScalingSeries& series);

ModelFit fit_model(const ScalingSeries& series, Growth growth);

}  // namespace dloc::audit
