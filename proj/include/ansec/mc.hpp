#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ansec/params.hpp"

namespace ansec::mc {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

// Counter-based random stream: every variate is a pure function of
// (key, counter), so per-trial and per-eavesdropper substreams can be opened
// at will and results are independent of scheduling. The generator is the
// splitmix64 output function over key + counter * golden-ratio increments.
struct RngStream {
  std::uint64_t key = 0;
  std::uint64_t ctr = 0;

  // Derives a substream key by folding path elements into the seed.
  static RngStream from(std::uint64_t seed,
                        std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();
  double next_unit();  // uniform on (0,1), never hits the endpoints
  double next_exp();   // Exp(1)
  std::pair<double, double> next_normal_pair();  // two iid N(0,1), polar method
  double next_gamma_int(int k);                  // Gamma(k,1) as a sum of exps
  std::complex<double> next_cnormal();           // CN(0,1): E|z|^2 = 1
};

enum class RadiusPolicy { Auto, Fixed };
enum class Fidelity { ChannelLevel, SinrLevel };

struct McConfig {
  long trials = 10000;
  std::uint64_t seed = 1;
  RadiusPolicy r_max_policy = RadiusPolicy::Auto;
  double fixed_radius = 0.0;  // used when r_max_policy == Fixed
  Fidelity fidelity = Fidelity::SinrLevel;
  int threads = 0;  // 0 = hardware concurrency
  // When true, gamma_hat is redrawn as Gamma(N,1) each trial instead of being
  // held fixed; this leaves the closed forms' conditioning and is labeled an
  // unconditioned experiment.
  bool sample_gamma = false;
};

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample std / sqrt(trials)
  long trials = 0;
  std::uint64_t seed = 0;
  // Set when the request was answered without sampling (certain outage at
  // xi <= omega, or an empty eavesdropper process).
  bool degenerate = false;
};

// Radii of a Poisson process of the given density inside the disc of radius
// r_max, sorted ascending. Squared radii are a unit-rate Poisson process on
// the area scale, so the sequence for a smaller density or a larger disc is
// a rescaling/prefix of the same draws - which is what makes shared-seed
// monotonicity and truncation-stability couplings exact.
std::vector<double> sample_eves(double lambda_e, double r_max, RngStream& rng);

// w = conj(h_hat)/||h_hat||; G completes [w | G] to an orthonormal basis from
// random complex Gaussian columns by twice-iterated Gram-Schmidt.
std::pair<VecC, MatC> build_precoders(const VecC& h_hat, RngStream& rng);

// Bob's worst-case-noise SINR: deterministic xi * kappa.
double sinr_bob(const SystemConfig& cfg, double xi);

// Eavesdropper SINR at distance r_k:
//   xi P |h_e^T w|^2 r^-alpha / ((1-xi) P ||h_e^T G||^2 r^-alpha/(N-1) + 1).
double sinr_eve(const VecC& h_e, double r_k, const VecC& w, const MatC& G,
                const SystemConfig& cfg, double xi);

// Smallest truncation radius such that a single eavesdropper AT the radius
// exceeds the SINR threshold x with probability <= 1e-8:
//   exp(-r^alpha x/(P xi)) (1+phi x)^(1-N) <= 1e-8.
// Returns 0 when even r = 0 satisfies the bound.
double auto_radius(const SystemConfig& cfg, double xi, double x_threshold);

// Fraction of trials in which some eavesdropper's SINR exceeds
// (1 + xi kappa)/2^rate - 1. ChannelLevel samples channel vectors and
// precoders; SinrLevel samples the reduced laws |h^T w|^2 ~ Exp(1) and
// ||h^T G||^2 ~ Gamma(N-1,1) directly.
McEstimate empirical_sop(const SystemConfig& cfg, double rate, double xi,
                         const McConfig& mc);

// One max-SINR draw per trial (0 for an empty process). r_max chosen by the
// policy with threshold x_floor under Auto. The sampling core behind
// empirical_gamma_e_cdf and the distribution tests.
std::vector<double> max_sinr_samples(const SystemConfig& cfg, double xi,
                                     double x_floor, const McConfig& mc);

// Empirical P{gamma_E < x} at each grid point, all estimated from one shared
// set of trials (truncation radius taken at the smallest grid point).
std::vector<McEstimate> empirical_gamma_e_cdf(const SystemConfig& cfg,
                                              double xi,
                                              const std::vector<double>& x_grid,
                                              const McConfig& mc);

// Per-eavesdropper conditional SINR samples at a fixed distance r (the
// distribution behind the CDF 1 - exp(-r^alpha x/(P xi)) (1+phi x)^(1-N)).
std::vector<double> sinr_eve_samples(const SystemConfig& cfg, double xi,
                                     double r, long n, std::uint64_t seed,
                                     Fidelity fidelity);

// Exact main channel h_b = sqrt(1-tau^2) h_hat + tau h_tilde with isotropic
// h_tilde; used by the channel-model distribution checks.
VecC sample_main_channel(const VecC& h_hat, double tau, RngStream& rng);

// Closed-form max-SINR CDF F(x) = exp(-beta lambda (P xi)^delta x^-delta
// (1+phi x)^(1-N)) and its quantile (bisection on the log).
double gamma_e_cdf(const SystemConfig& cfg, double xi, double x);
double gamma_e_quantile(const SystemConfig& cfg, double xi, double p);

}  // namespace ansec::mc
