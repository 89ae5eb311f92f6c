#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bap/exec.hpp"
#include "bap/problem.hpp"
#include "bap/vec.hpp"

namespace bap {

enum class Algorithm { acj, dr, dpg, fdpg, pda, accpda, ssd };
enum class AnchorMode { fixed, dynamic };
enum class EtaSchedule { constant, inv_sqrt };  // eta_c  or  eta_c/sqrt(k+1)

struct SolverConfig {
  Algorithm algorithm = Algorithm::dr;
  double alpha = 1.0;         // coupling weight (DR allows 0: no coupling)
  int p = 1;                  // DR coupling exponent, 1 or 2
  double lambda_relax = 1.0;  // DR relaxation, in (0,2)
  double epsilon = 0.25;      // DPG/FDPG perturbation
  double L_dual = 0.0;        // DPG/FDPG step constant; <=0 means auto m/eps
  double rho0 = 1.0;          // PDA/accPDA penalty start
  double rho_max = 1e5;       // PDA/accPDA penalty cap
  double L_penalty = 1.0;     // SSD distance-penalty weight
  EtaSchedule step_schedule = EtaSchedule::inv_sqrt;  // SSD
  double eta_c = 1.0;                                 // SSD step scale
  std::uint64_t seed = 1;                             // SSD sampling
  AnchorMode acj_anchor_mode = AnchorMode::dynamic;
  double momentum_scale = 1.0;  // FDPG extrapolation scale; 0 degenerates to DPG
};

// Counter-based generator: stateless, keyed by (seed, k), so sampled indices
// are reproducible regardless of scheduling.
std::uint64_t splitmix(std::uint64_t seed, std::uint64_t k);

// floor(1.1^k), the ACJ inner sweep length at outer step k.
long long nk(long long k);

// Penalty schedule min(1.2^k * rho0, rho_max); the exponent is clamped at 400
// to avoid pow overflow (1.2^400 ~ 5e31 already exceeds any sane rho_max).
double pda_rho(long long k, double rho0, double rho_max);

// Anchored inner iteration: w_0 = start; w_{i+1} = lam_{i+1}*anchor +
// (1 - lam_{i+1})*P_{S_(i mod m)}(w_i) with lam_{i+1} = 1/(i+2); the lambda
// index restarts on every call. Charges the unit cost of each set touched;
// the total is written to *ops when given.
Vec hlwb_sweep(const std::vector<SetSpec>& sets, const Vec& anchor,
               const Vec& start, long long nsteps, long long* ops = nullptr);

class Solver {
 public:
  virtual ~Solver() = default;

  // Units the next step() will charge. Constant for the block solvers and
  // SSD; grows as floor(1.1^k) for ACJ.
  virtual long long next_step_cost() const = 0;
  // Advance one iteration; returns the units consumed.
  virtual long long step() = 0;
  virtual const Pair& primal() const = 0;
  virtual long long iterations() const = 0;

  // Block-state access for solvers that carry per-constraint blocks
  // (DR: m+1 product-space blocks; DPG/FDPG: m dual blocks). Empty for the
  // others. set_blocks lets tests seed exact fixed points.
  virtual std::vector<Pair> blocks() const { return {}; }
  virtual void set_blocks(const std::vector<Pair>& Z) { (void)Z; }
};

// Validates config against the problem and builds the stepper. The start pair
// seeds the primal state (replicated across DR's blocks); DPG/FDPG dual blocks
// start at zero. Throws std::invalid_argument on bad config.
std::unique_ptr<Solver> make_solver(const Problem& problem,
                                    const SolverConfig& config,
                                    const Pair& start,
                                    Exec exec = Exec::serial);

}  // namespace bap
