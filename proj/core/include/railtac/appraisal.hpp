#pragma once

#include <utility>
#include <vector>

namespace railtac {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool ordered() const { return lower <= upper; }
  bool operator==(const Interval&) const = default;
};

/// Per-tkm externality cost figures for road and rail, in euro cents, with
/// the factor that restates them in present-day money.
struct ExternalityBounds {
  double road_lower_ct = 0.42;
  double road_upper_ct = 8.82;
  double rail_lower_ct = 0.06;
  double rail_upper_ct = 0.74;
  double inflation_factor = 1.3785;
};

/// Monetized externality avoided by moving `tonkm_shifted` ton-km from road
/// to rail, bracketed by the lower and upper cost figures. Rejects negative
/// input.
Interval externality_saving_eur(double tonkm_shifted, const ExternalityBounds& bounds);

struct InvestmentPlan {
  std::vector<std::pair<int, double>> amounts_meur;  // (year, amount)
  double discount_rate = 0.025;
  double tax_recovery_factor = 0.32;  // investment share recovered through taxes
  int base_year = 2023;
};

struct NpvResult {
  double npv_meur = 0.0;  // discounted to the base year, net of tax recovery
  double annualized_meur_per_year = 0.0;
};

NpvResult npv(const InvestmentPlan& plan, double horizon_years);

/// Endpoint-wise benefit-cost ratio, in percent of the annualized cost.
Interval bcr_pct(const Interval& total_benefit_meur, double annual_cost_meur);

/// Aggregates one policy run feeds into benefit arithmetic; all money in M€.
struct BenefitInputs {
  double tac_revenue_meur = 0.0;
  double delay_cost_meur = 0.0;  // negative = saving
  double rail_tonkm = 0.0;
  double road_cost_per_tkm = 0.0;
  double rail_cost_per_tkm = 0.0;
};

struct BenefitParams {
  double tax_recovery_factor = 0.32;
};

struct BenefitReport {
  double tac_revenue_meur = 0.0;
  Interval externality_saving_meur;
  double foc_benefit_meur = 0.0;
  double social_benefit_meur = 0.0;
  Interval total_meur;
  Interval bcr;  // percent; filled once an annual cost is known
  double shifted_tonkm = 0.0;
};

/// Benefits of a pricing scenario against a no-intervention baseline: charge
/// revenue, externality savings on the shifted ton-km, operating-cost savings
/// for the operators, and the net social cost differential after the tax
/// adjustment.
BenefitReport benefit_report(const BenefitInputs& scenario,
                             const BenefitInputs& baseline,
                             const ExternalityBounds& bounds,
                             const BenefitParams& params);

}  // namespace railtac
