#include "railtac/appraisal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace railtac {

Interval externality_saving_eur(double tonkm_shifted,
                                const ExternalityBounds& bounds) {
  if (tonkm_shifted < 0.0) {
    throw std::invalid_argument("externality saving needs a non-negative shift");
  }
  const double lo = bounds.inflation_factor *
                    (bounds.road_lower_ct - bounds.rail_lower_ct) / 100.0 *
                    tonkm_shifted;
  const double hi = bounds.inflation_factor *
                    (bounds.road_upper_ct - bounds.rail_upper_ct) / 100.0 *
                    tonkm_shifted;
  return Interval{std::min(lo, hi), std::max(lo, hi)};
}

NpvResult npv(const InvestmentPlan& plan, double horizon_years) {
  if (plan.amounts_meur.empty()) {
    throw std::invalid_argument("investment plan is empty");
  }
  if (!(horizon_years > 0.0)) {
    throw std::invalid_argument("annualization horizon must be positive");
  }
  if (plan.discount_rate < 0.0) {
    throw std::invalid_argument("discount rate must be non-negative");
  }
  if (plan.tax_recovery_factor < 0.0 || plan.tax_recovery_factor >= 1.0) {
    throw std::invalid_argument("tax recovery factor must lie in [0,1)");
  }
  double value = 0.0;
  for (const auto& [year, amount] : plan.amounts_meur) {
    value += amount / std::pow(1.0 + plan.discount_rate, year - plan.base_year);
  }
  value *= 1.0 - plan.tax_recovery_factor;
  return NpvResult{value, value / horizon_years};
}

Interval bcr_pct(const Interval& total_benefit_meur, double annual_cost_meur) {
  if (!(annual_cost_meur > 0.0)) {
    throw std::invalid_argument("annual cost must be positive");
  }
  return Interval{100.0 * total_benefit_meur.lower / annual_cost_meur,
                  100.0 * total_benefit_meur.upper / annual_cost_meur};
}

BenefitReport benefit_report(const BenefitInputs& scenario,
                             const BenefitInputs& baseline,
                             const ExternalityBounds& bounds,
                             const BenefitParams& params) {
  BenefitReport report;
  report.shifted_tonkm = scenario.rail_tonkm - baseline.rail_tonkm;
  if (report.shifted_tonkm < 0.0) {
    throw std::invalid_argument("scenario moves less freight to rail than the baseline");
  }
  report.tac_revenue_meur = scenario.tac_revenue_meur;
  report.externality_saving_meur = externality_saving_eur(report.shifted_tonkm, bounds);
  report.externality_saving_meur.lower /= 1e6;
  report.externality_saving_meur.upper /= 1e6;
  report.foc_benefit_meur =
      std::max(0.0, baseline.delay_cost_meur - scenario.delay_cost_meur);
  report.social_benefit_meur =
      (scenario.road_cost_per_tkm - scenario.rail_cost_per_tkm) *
      report.shifted_tonkm * (1.0 - params.tax_recovery_factor) / 1e6;
  const double fixed = report.tac_revenue_meur + report.foc_benefit_meur +
                       report.social_benefit_meur;
  report.total_meur = Interval{fixed + report.externality_saving_meur.lower,
                               fixed + report.externality_saving_meur.upper};
  return report;
}

}  // namespace railtac
