#include "dloc/audit/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace dloc::audit {

std::string_view to_string(Growth g) {
  switch (g) {
    case Growth::constant: return "constant";
    case Growth::logarithmic: return "logarithmic";
    case Growth::linear: return "linear";
    case Growth::quadratic: return "quadratic";
  }
  return "?";
}

std::string big_o(Growth g, std::string_view v) {
  const std::string var(v);
  switch (g) {
    case Growth::constant: return "O(1)";
    case Growth::logarithmic: return "O(log " + var + ")";
    case Growth::linear: return "O(" + var + ")";
    case Growth::quadratic: return "O(" + var + "^2)";
  }
  return "?";
}

bool ScalingSeries::all_zero() const {
  for (const auto& p : points) {
    if (p.y != 0.0) return false;
  }
  return true;
}

std::string ScalingClass::label() const { return growth ? std::string(to_string(*growth)) : "inconclusive"; }

namespace {

double basis(Growth g, double x) {
  switch (g) {
    case Growth::constant: return 1.0;
    case Growth::logarithmic: return std::log(x);
    case Growth::linear: return x;
    case Growth::quadratic: return x * x;
  }
  return 0.0;
}

void validate(const ScalingSeries& s) {
  if (s.points.size() < 4) throw std::invalid_argument("scaling series needs at least 4 points: " + s.metric);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (!(s.points[i].x > 0)) throw std::invalid_argument("scaling series x must be positive");
    if (i > 0 && !(s.points[i].x > s.points[i - 1].x)) {
      throw std::invalid_argument("scaling series x must be strictly increasing");
    }
  }
}

}  // namespace

ModelFit fit_model(const ScalingSeries& s, Growth growth) {
  validate(s);
  const double n = static_cast<double>(s.points.size());
  double sy = 0, syy = 0;
  for (const auto& p : s.points) {
    sy += p.y;
    syy += p.y * p.y;
  }
  const double mean_y = sy / n;
  ModelFit fit;
  fit.growth = growth;
  if (growth == Growth::constant) {
    fit.intercept = mean_y;
    double ss_res = 0;
    for (const auto& p : s.points) ss_res += (p.y - mean_y) * (p.y - mean_y);
    fit.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
  }
  double sf = 0;
  for (const auto& p : s.points) sf += basis(growth, p.x);
  const double mean_f = sf / n;
  double sff = 0, sfy = 0, ss_tot = 0;
  for (const auto& p : s.points) {
    const double df = basis(growth, p.x) - mean_f;
    sff += df * df;
    sfy += df * (p.y - mean_y);
    ss_tot += (p.y - mean_y) * (p.y - mean_y);
  }
  fit.slope = sff == 0 ? 0 : sfy / sff;
  fit.intercept = mean_y - fit.slope * mean_f;
  double ss_res = 0;
  for (const auto& p : s.points) {
    const double r = p.y - (fit.slope * basis(growth, p.x) + fit.intercept);
    ss_res += r * r;
  }
  // A flat series carries no trend to explain.
  fit.r2 = ss_tot == 0 ? 0.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

ScalingClass fit_scaling(const ScalingSeries& s) {
  validate(s);
  ScalingClass out;
  out.all_zero = s.all_zero();
  constexpr double kTie = 1e-9;
  const double x0 = s.points.front().x;
  const double x1 = s.points.back().x;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < kAllGrowth.size(); ++i) {
    const Growth g = kAllGrowth[i];
    const ModelFit& f = out.fits[i] = fit_model(s, g);
    if (g == Growth::constant || f.slope <= 0 || f.r2 < ScalingClass::kMinQuality) continue;
    const double top = f.slope * basis(g, x1) + f.intercept;
    const double rise = f.slope * (basis(g, x1) - basis(g, x0));
    if (!(top > 0) || rise < ScalingClass::kMinRise * top) continue;
    if (!best || f.r2 > out.fits[*best].r2 + kTie) best = i;
  }
  if (best) {
    out.fit_quality = out.fits[*best].r2;
    out.growth = kAllGrowth[*best];
  } else {
    out.fit_quality = out.fits[0].r2;
    if (out.fit_quality >= ScalingClass::kMinQuality) out.growth = Growth::constant;
  }
  return out;
}

}  // namespace dloc::audit
