#include "bap/solvers.hpp"

#include <cmath>
#include <stdexcept>

#include "bap/operators.hpp"

namespace bap {

std::uint64_t splitmix(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

long long nk(long long k) {
  double v = std::floor(std::pow(1.1, static_cast<double>(k)));
  // Saturate far beyond any reachable budget rather than overflow.
  if (v > 9e15) return static_cast<long long>(9e15);
  return static_cast<long long>(v);
}

double pda_rho(long long k, double rho0, double rho_max) {
  double e = std::pow(1.2, static_cast<double>(std::min(k, 400LL)));
  return std::min(e * rho0, rho_max);
}

Vec hlwb_sweep(const std::vector<SetSpec>& sets, const Vec& anchor,
               const Vec& start, long long nsteps, long long* ops) {
  Vec w = start;
  long long used = 0;
  std::size_t m = sets.size();
  for (long long i = 0; i < nsteps; ++i) {
    double lam = 1.0 / static_cast<double>(i + 2);
    const SetSpec& s = sets[cyclic_index(static_cast<std::size_t>(i), m)];
    Vec p = project(s, w);
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = lam * anchor[j] + (1.0 - lam) * p[j];
    used += unit_cost(s);
  }
  if (ops) *ops = used;
  return w;
}

namespace {

long long product_cost_sum(const Problem& p) {
  long long c = 0;
  for (std::size_t i = 0; i < p.m(); ++i)
    c += unit_cost(p.A(i)) + unit_cost(p.B(i));
  return c;
}

void sum_pair_blocks(Exec exec, const std::vector<Pair>& blocks, std::size_t n,
                     Vec& sx, Vec& sy) {
  sum_blocks(
      exec, blocks.size(), n,
      [&](std::size_t i) -> const Vec& { return blocks[i].x; }, sx);
  sum_blocks(
      exec, blocks.size(), n,
      [&](std::size_t i) -> const Vec& { return blocks[i].y; }, sy);
}

class SolverBase : public Solver {
 public:
  SolverBase(const Problem& p, const SolverConfig& c, const Pair& start,
             Exec exec)
      : prob_(p), cfg_(c), exec_(exec), primal_(start) {}

  const Pair& primal() const override { return primal_; }
  long long iterations() const override { return iters_; }

 protected:
  Problem prob_;
  SolverConfig cfg_;
  Exec exec_;
  Pair primal_;
  long long iters_ = 0;
};

// Alternating anchored HLWB sweeps: even outer steps rebuild the A-side
// iterate (sweeping the A sets, anchored at the current B-side point), odd
// steps the B-side. Sweep k runs floor(1.1^k) inner steps. Dynamic anchoring
// warm-starts each sweep from the slot's current value; fixed anchoring
// restarts from its initial value.
class AcjSolver final : public SolverBase {
 public:
  AcjSolver(const Problem& p, const SolverConfig& c, const Pair& start,
            Exec exec)
      : SolverBase(p, c, start, exec),
        a_(start.x),
        b_(start.y),
        a0_(start.x),
        b0_(start.y) {
    for (const auto& pc : prob_.constraints) {
      As_.push_back(pc.a_side);
      Bs_.push_back(pc.b_side);
    }
  }

  long long next_step_cost() const override {
    const auto& side = (k_ % 2 == 0) ? As_ : Bs_;
    long long n = nk(k_);
    long long m = static_cast<long long>(side.size());
    long long cycle = 0;
    for (const auto& s : side) cycle += unit_cost(s);
    long long c = (n / m) * cycle;
    for (long long i = 0; i < n % m; ++i)
      c += unit_cost(side[static_cast<std::size_t>(i)]);
    return c;
  }

  long long step() override {
    long long n = nk(k_), ops = 0;
    bool dynamic = cfg_.acj_anchor_mode == AnchorMode::dynamic;
    if (k_ % 2 == 0)
      a_ = hlwb_sweep(As_, b_, dynamic ? a_ : a0_, n, &ops);
    else
      b_ = hlwb_sweep(Bs_, a_, dynamic ? b_ : b0_, n, &ops);
    ++k_;
    ++iters_;
    primal_ = Pair{a_, b_};
    return ops;
  }

 private:
  std::vector<SetSpec> As_, Bs_;
  Vec a_, b_, a0_, b0_;
  long long k_ = 0;
};

// Douglas-Rachford over m+1 product-space blocks: block 0 carries the
// coupling prox (p=1 or p=2), blocks 1..m the constraint projections. The
// reported primal is the post-update block mean.
class DrSolver final : public SolverBase {
 public:
  DrSolver(const Problem& p, const SolverConfig& c, const Pair& start,
           Exec exec)
      : SolverBase(p, c, start, exec),
        n_(p.dimension),
        nb_(p.m() + 1),
        cost_(product_cost_sum(p) + 1) {
    Z_.assign(nb_, start);
    refresh_mean();
    primal_ = zbar_;
  }

  long long next_step_cost() const override { return cost_; }

  long long step() override {
    double lam = cfg_.lambda_relax;
    for_each_block(exec_, nb_, [&](std::size_t i) {
      Pair u = zero_pair(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        u.x[j] = 2.0 * zbar_.x[j] - Z_[i].x[j];
        u.y[j] = 2.0 * zbar_.y[j] - Z_[i].y[j];
      }
      Pair w = (i == 0) ? couple(u)
                        : project_product(prob_.constraints[i - 1], u);
      for (std::size_t j = 0; j < n_; ++j) {
        Z_[i].x[j] += lam * (w.x[j] - zbar_.x[j]);
        Z_[i].y[j] += lam * (w.y[j] - zbar_.y[j]);
      }
    });
    refresh_mean();
    primal_ = zbar_;
    ++iters_;
    return cost_;
  }

  std::vector<Pair> blocks() const override { return Z_; }

  void set_blocks(const std::vector<Pair>& Z) override {
    if (Z.size() != nb_) throw std::invalid_argument("set_blocks: bad count");
    Z_ = Z;
    refresh_mean();
    primal_ = zbar_;
  }

 private:
  Pair couple(const Pair& u) const {
    if (cfg_.alpha == 0.0) return u;
    return cfg_.p == 1 ? prox_norm_diff(cfg_.alpha, u)
                       : prox_sqnorm_diff(cfg_.alpha, u);
  }

  void refresh_mean() {
    sum_pair_blocks(exec_, Z_, n_, sx_, sy_);
    zbar_ = zero_pair(n_);
    double denom = static_cast<double>(nb_);
    for (std::size_t j = 0; j < n_; ++j) {
      zbar_.x[j] = sx_[j] / denom;
      zbar_.y[j] = sy_[j] / denom;
    }
  }

  std::size_t n_, nb_;
  long long cost_;
  std::vector<Pair> Z_;
  Pair zbar_;
  Vec sx_, sy_;
};

// Dual projected gradient: m dual blocks starting at zero; the primal is the
// argmax point of the current dual sum, evaluated before the block update.
class DpgSolver final : public SolverBase {
 public:
  DpgSolver(const Problem& p, const SolverConfig& c, const Pair& start,
            Exec exec, double L)
      : SolverBase(p, c, start, exec),
        n_(p.dimension),
        L_(L),
        cost_(product_cost_sum(p) + 1) {
    Z_.assign(p.m(), zero_pair(n_));
  }

  long long next_step_cost() const override { return cost_; }

  long long step() override {
    sum_pair_blocks(exec_, Z_, n_, sx_, sy_);
    primal_ = argmax_dual(cfg_.alpha, cfg_.epsilon, Pair{sx_, sy_});
    const Pair xk = primal_;
    for_each_block(exec_, Z_.size(), [&](std::size_t i) {
      Pair u = zero_pair(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        u.x[j] = xk.x[j] - L_ * Z_[i].x[j];
        u.y[j] = xk.y[j] - L_ * Z_[i].y[j];
      }
      Pair pz = project_product(prob_.constraints[i], u);
      for (std::size_t j = 0; j < n_; ++j) {
        Z_[i].x[j] = Z_[i].x[j] - xk.x[j] / L_ + pz.x[j] / L_;
        Z_[i].y[j] = Z_[i].y[j] - xk.y[j] / L_ + pz.y[j] / L_;
      }
    });
    ++iters_;
    return cost_;
  }

  std::vector<Pair> blocks() const override { return Z_; }

  void set_blocks(const std::vector<Pair>& Z) override {
    if (Z.size() != Z_.size())
      throw std::invalid_argument("set_blocks: bad count");
    Z_ = Z;
  }

 private:
  std::size_t n_;
  double L_;
  long long cost_;
  std::vector<Pair> Z_;
  Vec sx_, sy_;
};

// FISTA-accelerated DPG: gradient block update at the extrapolated point W,
// momentum t_{k+1} = (1+sqrt(1+4t_k^2))/2, extrapolation over the iteration
// index. The reported primal is recomputed from the updated dual sum by an
// extra argmax that is not charged to the budget (monitoring only).
class FdpgSolver final : public SolverBase {
 public:
  FdpgSolver(const Problem& p, const SolverConfig& c, const Pair& start,
             Exec exec, double L)
      : SolverBase(p, c, start, exec),
        n_(p.dimension),
        L_(L),
        cost_(product_cost_sum(p) + 1) {
    Z_.assign(p.m(), zero_pair(n_));
    W_ = Z_;
    Znew_ = Z_;
  }

  long long next_step_cost() const override { return cost_; }

  long long step() override {
    sum_pair_blocks(exec_, W_, n_, sx_, sy_);
    const Pair uk = argmax_dual(cfg_.alpha, cfg_.epsilon, Pair{sx_, sy_});
    for_each_block(exec_, W_.size(), [&](std::size_t i) {
      Pair u = zero_pair(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        u.x[j] = uk.x[j] - L_ * W_[i].x[j];
        u.y[j] = uk.y[j] - L_ * W_[i].y[j];
      }
      Pair pz = project_product(prob_.constraints[i], u);
      for (std::size_t j = 0; j < n_; ++j) {
        Znew_[i].x[j] = W_[i].x[j] - uk.x[j] / L_ + pz.x[j] / L_;
        Znew_[i].y[j] = W_[i].y[j] - uk.y[j] / L_ + pz.y[j] / L_;
      }
    });
    double tnew = (1.0 + std::sqrt(1.0 + 4.0 * t_ * t_)) / 2.0;
    double coef = cfg_.momentum_scale * (t_ - 1.0) / tnew;
    if (coef == 0.0) {
      W_ = Znew_;  // exact DPG degeneration
    } else {
      for_each_block(exec_, W_.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < n_; ++j) {
          W_[i].x[j] = Znew_[i].x[j] + coef * (Znew_[i].x[j] - Z_[i].x[j]);
          W_[i].y[j] = Znew_[i].y[j] + coef * (Znew_[i].y[j] - Z_[i].y[j]);
        }
      });
    }
    Z_.swap(Znew_);
    t_ = tnew;
    sum_pair_blocks(exec_, Z_, n_, sx_, sy_);
    primal_ = argmax_dual(cfg_.alpha, cfg_.epsilon, Pair{sx_, sy_});
    ++iters_;
    return cost_;
  }

  std::vector<Pair> blocks() const override { return Z_; }

 private:
  std::size_t n_;
  double L_, t_ = 1.0;
  long long cost_;
  std::vector<Pair> Z_, W_, Znew_;
  Vec sx_, sy_;
};

// Proximal distance iteration: prox of the gap norm (weight alpha/rho_k)
// applied to the average of the m product projections; rho follows the
// 1.2^k schedule capped at rho_max. The accelerated variant extrapolates
// with coefficient k/(k+3) before projecting.
class PdaSolver final : public SolverBase {
 public:
  PdaSolver(const Problem& p, const SolverConfig& c, const Pair& start,
            Exec exec, bool accelerated)
      : SolverBase(p, c, start, exec),
        n_(p.dimension),
        acc_(accelerated),
        cost_(product_cost_sum(p) + 1),
        z_(start),
        zprev_(start) {
    proj_.assign(p.m(), zero_pair(n_));
  }

  long long next_step_cost() const override { return cost_; }

  long long step() override {
    double rho = pda_rho(s_, cfg_.rho0, cfg_.rho_max);
    Pair w = z_;
    if (acc_) {
      double coef = static_cast<double>(s_) / static_cast<double>(s_ + 3);
      for (std::size_t j = 0; j < n_; ++j) {
        w.x[j] = z_.x[j] + coef * (z_.x[j] - zprev_.x[j]);
        w.y[j] = z_.y[j] + coef * (z_.y[j] - zprev_.y[j]);
      }
    }
    for_each_block(exec_, proj_.size(), [&](std::size_t i) {
      proj_[i] = project_product(prob_.constraints[i], w);
    });
    sum_pair_blocks(exec_, proj_, n_, sx_, sy_);
    Pair avg = zero_pair(n_);
    double m = static_cast<double>(proj_.size());
    for (std::size_t j = 0; j < n_; ++j) {
      avg.x[j] = sx_[j] / m;
      avg.y[j] = sy_[j] / m;
    }
    zprev_ = z_;
    z_ = prox_norm_diff(cfg_.alpha / rho, avg);
    ++s_;
    ++iters_;
    primal_ = z_;
    return cost_;
  }

 private:
  std::size_t n_;
  bool acc_;
  long long cost_;
  long long s_ = 0;
  Pair z_, zprev_;
  std::vector<Pair> proj_;
  Vec sx_, sy_;
};

// Stochastic subgradient descent over I0 = {0, 1, ..., m}: index 0 steps
// along the gap subgradient, index i >= 1 along the scaled distance
// subgradient of constraint i-1. One unit per step.
class SsdSolver final : public SolverBase {
 public:
  SsdSolver(const Problem& p, const SolverConfig& c, const Pair& start,
            Exec exec)
      : SolverBase(p, c, start, exec), z_(start) {}

  long long next_step_cost() const override { return 1; }

  long long step() override {
    double eta = cfg_.step_schedule == EtaSchedule::constant
                     ? cfg_.eta_c
                     : cfg_.eta_c / std::sqrt(static_cast<double>(k_ + 1));
    std::uint64_t ik = splitmix(cfg_.seed, static_cast<std::uint64_t>(k_)) %
                       static_cast<std::uint64_t>(prob_.m() + 1);
    Pair g = (ik == 0)
                 ? subgrad_norm_diff(cfg_.alpha, z_)
                 : subgrad_distance(cfg_.L_penalty,
                                    prob_.constraints[static_cast<std::size_t>(ik) - 1],
                                    z_);
    for (std::size_t j = 0; j < z_.x.size(); ++j) {
      z_.x[j] -= eta * g.x[j];
      z_.y[j] -= eta * g.y[j];
    }
    ++k_;
    ++iters_;
    primal_ = z_;
    return 1;
  }

 private:
  Pair z_;
  long long k_ = 0;
};

double resolve_dual_L(const Problem& p, const SolverConfig& c) {
  if (c.epsilon <= 0.0)
    throw std::invalid_argument("dual gradient: epsilon must be > 0");
  double auto_L = static_cast<double>(p.m()) / c.epsilon;
  double L = c.L_dual <= 0.0 ? auto_L : c.L_dual;
  if (L < auto_L - 1e-9 * auto_L)
    throw std::invalid_argument("dual gradient: L must be >= m/epsilon");
  return L;
}

}  // namespace

std::unique_ptr<Solver> make_solver(const Problem& problem,
                                    const SolverConfig& config,
                                    const Pair& start, Exec exec) {
  validate_problem(problem);
  if (start.x.size() != problem.dimension ||
      start.y.size() != problem.dimension)
    throw std::invalid_argument("start pair: dimension mismatch");

  switch (config.algorithm) {
    case Algorithm::acj:
      return std::make_unique<AcjSolver>(problem, config, start, exec);
    case Algorithm::dr:
      if (config.alpha < 0.0)
        throw std::invalid_argument("dr: alpha must be >= 0");
      if (config.p != 1 && config.p != 2)
        throw std::invalid_argument("dr: p must be 1 or 2");
      if (!(config.lambda_relax > 0.0 && config.lambda_relax < 2.0))
        throw std::invalid_argument("dr: lambda must lie in (0,2)");
      return std::make_unique<DrSolver>(problem, config, start, exec);
    case Algorithm::dpg:
    case Algorithm::fdpg: {
      if (config.alpha <= 0.0)
        throw std::invalid_argument("dual gradient: alpha must be > 0");
      double L = resolve_dual_L(problem, config);
      if (config.algorithm == Algorithm::dpg)
        return std::make_unique<DpgSolver>(problem, config, start, exec, L);
      return std::make_unique<FdpgSolver>(problem, config, start, exec, L);
    }
    case Algorithm::pda:
    case Algorithm::accpda:
      if (config.alpha <= 0.0)
        throw std::invalid_argument("pda: alpha must be > 0");
      if (config.rho0 <= 0.0 || config.rho_max < config.rho0)
        throw std::invalid_argument("pda: need 0 < rho0 <= rho_max");
      return std::make_unique<PdaSolver>(problem, config, start, exec,
                                         config.algorithm == Algorithm::accpda);
    case Algorithm::ssd:
      if (config.alpha <= 0.0)
        throw std::invalid_argument("ssd: alpha must be > 0");
      if (config.L_penalty <= 0.0)
        throw std::invalid_argument("ssd: L must be > 0");
      if (config.eta_c <= 0.0)
        throw std::invalid_argument("ssd: eta scale must be > 0");
      return std::make_unique<SsdSolver>(problem, config, start, exec);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace bap
