#include "dbsurv/competitors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbsurv {

namespace {

void require_competitor(Family family) {
  if (family == Family::Db) {
    throw std::invalid_argument(
        "competitor functions do not cover the db family; use db_dist");
  }
}

void check_time(int t, int lower, const char* what) {
  if (t < lower) {
    throw std::invalid_argument(std::string(what) + ": t must be >= " +
                                std::to_string(lower));
  }
}

}  // namespace

ParamDomain competitor_domain(Family family) {
  require_competitor(family);
  switch (family) {
    case Family::DsFxI:
    case Family::DiscreteLindley:
      return {true};
    case Family::DiscreteRayleigh:
    case Family::DiscreteBurrHatke:
      return {false};
    default:
      throw std::invalid_argument("unknown competitor family");
  }
}

CompetitorParam::CompetitorParam(Family f, double th) : family(f), theta(th) {
  const ParamDomain dom = competitor_domain(f);
  const bool ok = std::isfinite(th) && th > 0.0 && (dom.positive || th < 1.0);
  if (!ok) {
    throw std::invalid_argument("CompetitorParam: theta out of domain for " +
                                family_name(f));
  }
}

double competitor_log_survival(const CompetitorParam& param, int t) {
  check_time(t, -1, "competitor_log_survival");
  const double tau = static_cast<double>(t) + 1.0;
  const double th = param.theta;
  switch (param.family) {
    case Family::DsFxI:
      return std::log1p(th * tau) - th * tau;
    case Family::DiscreteLindley:
      return std::log((1.0 + th + th * tau) / (1.0 + th)) - th * tau;
    case Family::DiscreteRayleigh:
      return tau * tau * std::log(th);
    case Family::DiscreteBurrHatke:
      return tau * std::log(th) - std::log(tau + 1.0);
    default:
      throw std::invalid_argument("unsupported family in competitor_log_survival");
  }
}

double competitor_survival(const CompetitorParam& param, int t) {
  return std::exp(competitor_log_survival(param, t));
}

double competitor_log_pmf(const CompetitorParam& param, int t) {
  check_time(t, 0, "competitor_log_pmf");
  const double td = static_cast<double>(t);
  const double th = param.theta;
  switch (param.family) {
    case Family::DsFxI: {
      // S(t-1) - S(t) = e^{-th t} [ (1+th t)(1-e^{-th}) - th e^{-th} ]
      const double a = -std::expm1(-th);
      const double bracket = (1.0 + th * td) * a - th * std::exp(-th);
      return -th * td + std::log(bracket);
    }
    case Family::DiscreteLindley: {
      const double a = -std::expm1(-th);
      const double bracket = (1.0 + th + th * td) * a - th * std::exp(-th);
      return -th * td + std::log(bracket) - std::log1p(th);
    }
    case Family::DiscreteRayleigh: {
      // q^{t^2} (1 - q^{2t+1})
      const double logq = std::log(th);
      return td * td * logq + std::log(-std::expm1((2.0 * td + 1.0) * logq));
    }
    case Family::DiscreteBurrHatke: {
      // lambda^t [ 1/(t+1) - lambda/(t+2) ]
      return td * std::log(th) + std::log(1.0 / (td + 1.0) - th / (td + 2.0));
    }
    default:
      throw std::invalid_argument("unsupported family in competitor_log_pmf");
  }
}

double competitor_pmf(const CompetitorParam& param, int t) {
  return std::exp(competitor_log_pmf(param, t));
}

}  // namespace dbsurv
