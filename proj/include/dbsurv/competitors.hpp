#ifndef DBSURV_COMPETITORS_HPP_
#define DBSURV_COMPETITORS_HPP_

#include "dbsurv/types.hpp"

namespace dbsurv {

// One-parameter competitor discrete distributions for model comparison, each
// discretized from a continuous parent via P(T=t) = S_X(t) - S_X(t+1) so that
// the survival function on integers is S(t) = S_X(t+1), S(-1) = 1.
//
// Implemented forms (tau = t+1):
//   dsfx1      S(t) = (1 + lambda*tau) exp(-lambda*tau),      lambda > 0
//   lindley    S(t) = (1+theta+theta*tau)/(1+theta) e^{-theta*tau}, theta > 0
//   rayleigh   S(t) = q^{tau^2},                               q in (0,1)
//   burrhatke  S(t) = lambda^{tau} / (tau+1),                  lambda in (0,1)
//
// Each family is gated by normalization / monotonicity property tests rather
// than external reference values.
struct CompetitorParam {
  CompetitorParam(Family family, double theta);
  Family family;
  double theta;
};

// Inclusive parameter domain bounds used for validation and fitting.
// positive == true means theta in (0, inf), else theta in (0, 1).
struct ParamDomain {
  bool positive;
};
ParamDomain competitor_domain(Family family);

double competitor_pmf(const CompetitorParam& param, int t);
double competitor_log_pmf(const CompetitorParam& param, int t);
double competitor_survival(const CompetitorParam& param, int t);  // t >= -1
double competitor_log_survival(const CompetitorParam& param, int t);

}  // namespace dbsurv

#endif  // DBSURV_COMPETITORS_HPP_
