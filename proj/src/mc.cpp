#include "ansec/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace ansec::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kPi = 3.141592653589793;
constexpr double kTailProb = 1e-8;  // single-Eve exceedance cap at r_max

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream tags: one namespace per role so substreams never collide.
enum : std::uint64_t {
  kTagBob = 1,
  kTagRadii = 2,
  kTagEve = 3,
  kTagGamma = 4,
};

// Deterministic chunked dispatch: results must be stored by index by the
// chunk body, so the outcome is independent of the thread schedule.
constexpr long kChunk = 4096;

void parallel_chunks(long n, int threads,
                     const std::function<void(long, long)>& body) {
  const long n_chunks = (n + kChunk - 1) / kChunk;
  long hw = std::thread::hardware_concurrency();
  if (hw <= 0) hw = 1;
  long n_threads = threads > 0 ? threads : hw;
  n_threads = std::min<long>(n_threads, n_chunks);
  if (n_threads <= 1) {
    body(0, n);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long c = next.fetch_add(1);
      if (c >= n_chunks) return;
      body(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  std::vector<std::thread> pool;
  for (long i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

struct TrialParams {
  double x_threshold;  // SINR level to exceed
  double r_max;
  // Stop scanning eavesdroppers once one exceeds this (the outage indicator
  // needs no exact maximum). Per-Eve substreams make the shortcut invisible
  // to every other draw. Infinite for full-distribution sampling.
  double stop_above = std::numeric_limits<double>::infinity();
};

double kappa_of(const SystemConfig& cfg, double gamma_hat) {
  const double t2 = cfg.tau * cfg.tau;
  return (1.0 - t2) * cfg.power * gamma_hat /
         (t2 * cfg.power + std::pow(cfg.r_bob, cfg.alpha));
}

// Best eavesdropper SINR for one trial; 0 when the disc is empty.
double trial_max_sinr(const SystemConfig& cfg, double xi,
                      const TrialParams& tp, const McConfig& mc, long trial) {
  auto radii_rng = RngStream::from(mc.seed, {kTagRadii, std::uint64_t(trial)});
  const auto radii = sample_eves(cfg.lambda_e, tp.r_max, radii_rng);
  if (radii.empty()) return 0.0;

  const int n = cfg.n_antennas;
  double best = 0.0;
  if (mc.fidelity == Fidelity::ChannelLevel) {
    auto bob_rng = RngStream::from(mc.seed, {kTagBob, std::uint64_t(trial)});
    VecC h_hat(n);
    for (int i = 0; i < n; ++i) h_hat(i) = bob_rng.next_cnormal();
    if (h_hat.norm() == 0.0) h_hat(0) = 1.0;
    h_hat *= std::sqrt(cfg.gamma_hat) / h_hat.norm();
    const auto [w, g_mat] = build_precoders(h_hat, bob_rng);
    VecC h_e(n);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      auto eve_rng = RngStream::from(
          mc.seed, {kTagEve, std::uint64_t(trial), std::uint64_t(k)});
      for (int i = 0; i < n; ++i) h_e(i) = eve_rng.next_cnormal();
      best = std::max(best, sinr_eve(h_e, radii[k], w, g_mat, cfg, xi));
      if (best > tp.stop_above) return best;
    }
  } else {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      auto eve_rng = RngStream::from(
          mc.seed, {kTagEve, std::uint64_t(trial), std::uint64_t(k)});
      const double sig = eve_rng.next_exp();                // |h^T w|^2
      const double art = eve_rng.next_gamma_int(n - 1);     // ||h^T G||^2
      const double ra = std::pow(radii[k], -cfg.alpha);
      const double sinr = xi * cfg.power * sig * ra /
                          ((1.0 - xi) * cfg.power * art * ra / (n - 1) + 1.0);
      best = std::max(best, sinr);
      if (best > tp.stop_above) return best;
    }
  }
  return best;
}

double bernoulli_std_err(long count, long trials) {
  if (trials < 2) return 0.0;
  const double p = double(count) / double(trials);
  return std::sqrt(p * (1.0 - p) * double(trials) / double(trials - 1)) /
         std::sqrt(double(trials));
}

}  // namespace

RngStream RngStream::from(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed + kGolden);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p + kGolden));
  return RngStream{key, 0};
}

std::uint64_t RngStream::next_u64() {
  return mix64(key + (++ctr) * kGolden);
}

double RngStream::next_unit() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_exp() { return -std::log(next_unit()); }

std::pair<double, double> RngStream::next_normal_pair() {
  for (;;) {
    const double v1 = 2.0 * next_unit() - 1.0;
    const double v2 = 2.0 * next_unit() - 1.0;
    const double s = v1 * v1 + v2 * v2;
    if (s > 0.0 && s < 1.0) {
      const double m = std::sqrt(-2.0 * std::log(s) / s);
      return {v1 * m, v2 * m};
    }
  }
}

double RngStream::next_gamma_int(int k) {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += next_exp();
  return sum;
}

std::complex<double> RngStream::next_cnormal() {
  const auto [x, y] = next_normal_pair();
  return std::complex<double>(x, y) * std::sqrt(0.5);
}

std::vector<double> sample_eves(double lambda_e, double r_max,
                                RngStream& rng) {
  std::vector<double> radii;
  if (!(lambda_e > 0.0) || !(r_max > 0.0)) return radii;
  const double area_rate = lambda_e * kPi;
  const double cap = r_max * r_max;
  double s = 0.0;
  for (;;) {
    s += rng.next_exp() / area_rate;
    if (s > cap) break;
    radii.push_back(std::sqrt(s));
  }
  return radii;
}

std::pair<VecC, MatC> build_precoders(const VecC& h_hat, RngStream& rng) {
  const Eigen::Index n = h_hat.size();
  const double norm = h_hat.norm();
  if (!(norm > 0.0)) throw DomainError("build_precoders: zero channel vector");
  MatC q(n, n);
  q.col(0) = h_hat.conjugate() / norm;
  for (Eigen::Index j = 1; j < n; ++j) {
    VecC v(n);
    for (;;) {
      for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.next_cnormal();
      auto prev = q.leftCols(j);
      v -= prev * (prev.adjoint() * v).eval();
      v -= prev * (prev.adjoint() * v).eval();  // second pass: re-orthogonalize
      const double vn = v.norm();
      if (vn > 1e-8) {
        q.col(j) = v / vn;
        break;
      }
    }
  }
  return {q.col(0), q.rightCols(n - 1)};
}

double sinr_bob(const SystemConfig& cfg, double xi) {
  return xi * kappa_of(cfg, cfg.gamma_hat);
}

double sinr_eve(const VecC& h_e, double r_k, const VecC& w, const MatC& G,
                const SystemConfig& cfg, double xi) {
  const double ra = std::pow(r_k, -cfg.alpha);
  const double sig = std::norm(h_e.cwiseProduct(w).sum());
  const double art = (h_e.transpose() * G).squaredNorm();
  const int n = cfg.n_antennas;
  return xi * cfg.power * sig * ra /
         ((1.0 - xi) * cfg.power * art * ra / (n - 1) + 1.0);
}

double auto_radius(const SystemConfig& cfg, double xi, double x_threshold) {
  if (!(x_threshold > 0.0))
    throw DomainError("auto_radius: threshold must be positive");
  const int n = cfg.n_antennas;
  const double phi = (1.0 / xi - 1.0) / (n - 1);
  const double t = -std::log(kTailProb) -
                   (n - 1) * std::log1p(phi * x_threshold);
  if (t <= 0.0) return 0.0;
  return std::pow(cfg.power * xi * t / x_threshold, 1.0 / cfg.alpha);
}

McEstimate empirical_sop(const SystemConfig& cfg, double rate, double xi,
                         const McConfig& mc) {
  validate(cfg);
  if (mc.trials <= 0) throw DomainError("empirical_sop: trials must be >= 1");
  if (!(rate > 0.0)) throw DomainError("empirical_sop: rate must be positive");
  if (!(xi > 0.0 && xi <= 1.0))
    throw DomainError("empirical_sop: xi must be in (0,1]");

  const double t_pow = std::exp2(rate);
  if (cfg.lambda_e == 0.0)
    return McEstimate{0.0, 0.0, mc.trials, mc.seed, true};

  if (!mc.sample_gamma) {
    const double x = (1.0 + xi * kappa_of(cfg, cfg.gamma_hat)) / t_pow - 1.0;
    if (!(x > 0.0))  // xi <= omega: Bob cannot carry the rate, outage certain
      return McEstimate{1.0, 0.0, mc.trials, mc.seed, true};
  }

  TrialParams tp{};
  if (!mc.sample_gamma) {
    tp.x_threshold =
        (1.0 + xi * kappa_of(cfg, cfg.gamma_hat)) / t_pow - 1.0;
    tp.r_max = (mc.r_max_policy == RadiusPolicy::Auto)
                   ? auto_radius(cfg, xi, tp.x_threshold)
                   : mc.fixed_radius;
  }

  const long n_chunks = (mc.trials + kChunk - 1) / kChunk;
  std::vector<long> counts(n_chunks, 0);
  parallel_chunks(mc.trials, mc.threads, [&](long begin, long end) {
    long exceed = 0;
    for (long t = begin; t < end; ++t) {
      TrialParams tpt = tp;
      if (mc.sample_gamma) {
        auto grng = RngStream::from(mc.seed, {kTagGamma, std::uint64_t(t)});
        const double gh = grng.next_gamma_int(cfg.n_antennas);
        tpt.x_threshold = (1.0 + xi * kappa_of(cfg, gh)) / t_pow - 1.0;
        if (!(tpt.x_threshold > 0.0)) {
          ++exceed;  // certain outage under this channel draw
          continue;
        }
        tpt.r_max = (mc.r_max_policy == RadiusPolicy::Auto)
                        ? auto_radius(cfg, xi, tpt.x_threshold)
                        : mc.fixed_radius;
      }
      tpt.stop_above = tpt.x_threshold;
      if (trial_max_sinr(cfg, xi, tpt, mc, t) > tpt.x_threshold) ++exceed;
    }
    counts[begin / kChunk] = exceed;
  });
  long total = 0;
  for (long c : counts) total += c;
  return McEstimate{double(total) / double(mc.trials),
                    bernoulli_std_err(total, mc.trials), mc.trials, mc.seed,
                    false};
}

std::vector<double> max_sinr_samples(const SystemConfig& cfg, double xi,
                                     double x_floor, const McConfig& mc) {
  validate(cfg);
  if (mc.trials <= 0)
    throw DomainError("max_sinr_samples: trials must be >= 1");
  if (!(xi > 0.0 && xi <= 1.0))
    throw DomainError("max_sinr_samples: xi must be in (0,1]");
  TrialParams tp{};
  tp.x_threshold = x_floor;
  tp.r_max = (mc.r_max_policy == RadiusPolicy::Auto)
                 ? auto_radius(cfg, xi, x_floor)
                 : mc.fixed_radius;
  std::vector<double> out(mc.trials, 0.0);
  parallel_chunks(mc.trials, mc.threads, [&](long begin, long end) {
    for (long t = begin; t < end; ++t)
      out[t] = trial_max_sinr(cfg, xi, tp, mc, t);
  });
  return out;
}

std::vector<McEstimate> empirical_gamma_e_cdf(
    const SystemConfig& cfg, double xi, const std::vector<double>& x_grid,
    const McConfig& mc) {
  if (x_grid.empty()) return {};
  double x_floor = x_grid.front();
  for (double x : x_grid) {
    if (!(x > 0.0))
      throw DomainError("empirical_gamma_e_cdf: grid must be positive");
    x_floor = std::min(x_floor, x);
  }
  const bool empty_process = cfg.lambda_e == 0.0;
  std::vector<double> samples;
  if (!empty_process) samples = max_sinr_samples(cfg, xi, x_floor, mc);
  std::vector<McEstimate> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (empty_process) {
      out.push_back(McEstimate{1.0, 0.0, mc.trials, mc.seed, true});
      continue;
    }
    long below = 0;
    for (double s : samples)
      if (s < x) ++below;
    out.push_back(McEstimate{double(below) / double(mc.trials),
                             bernoulli_std_err(below, mc.trials), mc.trials,
                             mc.seed, false});
  }
  return out;
}

std::vector<double> sinr_eve_samples(const SystemConfig& cfg, double xi,
                                     double r, long n, std::uint64_t seed,
                                     Fidelity fidelity) {
  validate(cfg);
  if (n <= 0) throw DomainError("sinr_eve_samples: n must be >= 1");
  if (!(r > 0.0)) throw DomainError("sinr_eve_samples: r must be positive");
  const int na = cfg.n_antennas;
  std::vector<double> out(n, 0.0);
  parallel_chunks(n, 0, [&](long begin, long end) {
    for (long t = begin; t < end; ++t) {
      if (fidelity == Fidelity::ChannelLevel) {
        auto bob_rng = RngStream::from(seed, {kTagBob, std::uint64_t(t)});
        VecC h_hat(na);
        for (int i = 0; i < na; ++i) h_hat(i) = bob_rng.next_cnormal();
        if (h_hat.norm() == 0.0) h_hat(0) = 1.0;
        h_hat *= std::sqrt(cfg.gamma_hat) / h_hat.norm();
        const auto [w, g_mat] = build_precoders(h_hat, bob_rng);
        auto eve_rng =
            RngStream::from(seed, {kTagEve, std::uint64_t(t), 0});
        VecC h_e(na);
        for (int i = 0; i < na; ++i) h_e(i) = eve_rng.next_cnormal();
        out[t] = sinr_eve(h_e, r, w, g_mat, cfg, xi);
      } else {
        auto eve_rng =
            RngStream::from(seed, {kTagEve, std::uint64_t(t), 0});
        const double sig = eve_rng.next_exp();
        const double art = eve_rng.next_gamma_int(na - 1);
        const double ra = std::pow(r, -cfg.alpha);
        out[t] = xi * cfg.power * sig * ra /
                 ((1.0 - xi) * cfg.power * art * ra / (na - 1) + 1.0);
      }
    }
  });
  return out;
}

VecC sample_main_channel(const VecC& h_hat, double tau, RngStream& rng) {
  VecC err(h_hat.size());
  for (Eigen::Index i = 0; i < h_hat.size(); ++i) err(i) = rng.next_cnormal();
  return std::sqrt(1.0 - tau * tau) * h_hat + tau * err;
}

double gamma_e_cdf(const SystemConfig& cfg, double xi, double x) {
  if (!(x > 0.0)) return 0.0;
  const auto d = derive(cfg);
  const int n = cfg.n_antennas;
  const double phi = (1.0 / xi - 1.0) / (n - 1);
  const double logterm = -d.beta * cfg.lambda_e *
                         std::pow(cfg.power * xi, d.delta) *
                         std::pow(x, -d.delta) *
                         std::pow(1.0 + phi * x, 1.0 - n);
  return std::exp(logterm);
}

double gamma_e_quantile(const SystemConfig& cfg, double xi, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("gamma_e_quantile: p must be inside (0,1)");
  if (cfg.lambda_e == 0.0)
    throw DomainError("gamma_e_quantile: degenerate at lambda_e = 0");
  // Solve log F(x) = log p for log x by bisection; log F is increasing in x.
  const auto f = [&](double lx) {
    const double x = std::exp(lx);
    return std::log(gamma_e_cdf(cfg, xi, x)) - std::log(p);
  };
  double lo = -60.0, hi = 60.0;
  while (f(lo) > 0.0) lo -= 60.0;
  while (f(hi) < 0.0) hi += 60.0;
  double mid = 0.0;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) lo = mid; else hi = mid;
  }
  return std::exp(mid);
}

}  // namespace ansec::mc
