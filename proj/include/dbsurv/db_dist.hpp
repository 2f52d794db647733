#ifndef DBSURV_DB_DIST_HPP_
#define DBSURV_DB_DIST_HPP_

#include <cstddef>
#include <vector>

#include "dbsurv/rng.hpp"

namespace dbsurv {

// Discrete Bilal distribution on {0, 1, 2, ...}.
//
// Parameterized by the rate-like beta > 0 with p = exp(-beta) in (0,1):
//   pmf       f(t) = p^{2t} (1-p) [ (1+2p)(1-p) + 2(1+p+p^2)(1-p^t) ]
//   survival  S(t) = (3 - 2 p^{t+1}) p^{2(t+1)},   S(-1) = 1
//   cdf       F(t) = 1 - S(t)
//   hazard    h(t) = f(t)/S(t-1) = [2(p^3-1)p^t - 3(p^2-1)] / (3 - 2 p^t)
//
// Everything is evaluated through exp(-beta * k) directly (never p multiplied
// up to integer powers), and the pmf/log-pmf groupings above are free of
// cancellation for small beta. Probabilities that underflow return exactly 0
// (pmf, survival) or 1 (cdf); the log variants stay finite for all t.
class DbParam {
 public:
  explicit DbParam(double beta);
  double beta() const { return beta_; }
  double p() const { return p_; }

 private:
  double beta_;
  double p_;
};

double pmf(const DbParam& param, int t);
double log_pmf(const DbParam& param, int t);
double cdf(const DbParam& param, int t);       // t >= -1
double survival(const DbParam& param, int t);  // t >= -1
double log_survival(const DbParam& param, int t);
double hazard(const DbParam& param, int t);
double mean(const DbParam& param);
double variance(const DbParam& param);

// n i.i.d. draws by cdf inversion: the smallest t with cdf(t) >= u.
std::vector<int> sample(const DbParam& param, Rng& rng, std::size_t n);

namespace detail {
// Inversion kernel used by sample(); u in (0,1).
int db_quantile(const DbParam& param, double u);
}  // namespace detail

}  // namespace dbsurv

#endif  // DBSURV_DB_DIST_HPP_
