#include "switchopt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace switchopt {

namespace detail {

double fast_exp(double x) {
    if (!(std::fabs(x) <= 30.0)) return std::exp(x);
    constexpr double kLog2e = 1.4426950408889634074;
    constexpr double kLn2Hi = 6.93147180369123816490e-01;
    constexpr double kLn2Lo = 1.90821492927058770002e-10;
    const double kd = std::floor(x * kLog2e + 0.5);
    const double r = (x - kd * kLn2Hi) - kd * kLn2Lo;
    // Taylor to degree 13: next term < 2e-16 relative for |r| <= ln2/2.
    double p = 1.6059043836821614599e-10;  // 1/13!
    p = p * r + 2.0876756987868098979e-09;  // 1/12!
    p = p * r + 2.5052108385441718775e-08;  // 1/11!
    p = p * r + 2.7557319223985890653e-07;  // 1/10!
    p = p * r + 2.7557319223985892511e-06;  // 1/9!
    p = p * r + 2.4801587301587301566e-05;  // 1/8!
    p = p * r + 1.9841269841269841253e-04;  // 1/7!
    p = p * r + 1.3888888888888889419e-03;  // 1/6!
    p = p * r + 8.3333333333333332177e-03;  // 1/5!
    p = p * r + 4.1666666666666664354e-02;  // 1/4!
    p = p * r + 1.6666666666666665741e-01;  // 1/3!
    p = p * r + 5.0e-01;
    p = p * r + 1.0;
    p = p * r + 1.0;
    // scale by 2^k through the exponent bits; |k| <= 44 here so no overflow
    const std::int64_t bits = (static_cast<std::int64_t>(kd) + 1023) << 52;
    double scale;
    std::memcpy(&scale, &bits, sizeof scale);
    return p * scale;
}

}  // namespace detail

void McConfig::validate(double r) const {
    if (paths < 1) throw InvalidConfig("paths must be >= 1");
    if (!(dt > 0.0)) throw InvalidConfig("dt must be > 0");
    if (!(resolved_horizon(r) >= 100.0 * dt))
        throw InvalidConfig("horizon must be >= 100 dt");
    if (!(discount_floor >= 0.0 && discount_floor < 1.0))
        throw InvalidConfig("discount_floor must lie in [0, 1)");
}

namespace {

using detail::Xoshiro256pp;

// Threshold form of the policy: closed endpoints act.
struct Policy {
    double ab1_hi = 0.0;    // mode 1 abandons iff x <= ab1_hi
    double sout_lo = kInf;  // mode 1 switches iff sout_lo <= x <= sout_hi
    double sout_hi = 0.0;
    double ab0_hi = 0.0;    // mode 0 abandons iff x <= ab0_hi
    double sin_lo = kInf;   // mode 0 switches iff x >= sin_lo
};

Policy policy_from(CaseId id, const FreeBoundaries& b) {
    Policy p;
    switch (id) {
        case CaseId::I1:
            p.sin_lo = 0.0;
            break;
        case CaseId::I2:
            p.sin_lo = *b.alpha;
            break;
        case CaseId::I3:
            p.ab0_hi = *b.zeta;
            p.sin_lo = *b.alpha;
            break;
        case CaseId::II1:
            p.sout_lo = 0.0;
            p.sout_hi = *b.beta;
            p.sin_lo = *b.alpha;
            break;
        case CaseId::II2:
            p.ab1_hi = *b.delta;
            p.sin_lo = *b.alpha;
            break;
        case CaseId::II3:
            p.ab1_hi = *b.delta;
            p.sout_lo = *b.gamma;
            p.sout_hi = *b.beta;
            p.sin_lo = *b.alpha;
            break;
        case CaseId::III1:
            p.ab1_hi = *b.delta;
            p.ab0_hi = *b.zeta;
            p.sin_lo = *b.alpha;
            break;
        case CaseId::III2:
            p.ab1_hi = *b.delta;
            p.sout_lo = *b.gamma;
            p.sout_hi = *b.beta;
            p.ab0_hi = *b.zeta;
            p.sin_lo = *b.alpha;
            break;
    }
    return p;
}

// Payoff evaluator specialised for the hot loop: linear terms folded.
struct HotPayoff {
    double lin = 0.0;
    double c0 = 0.0;
    std::vector<PowerTerm> gen;
    std::vector<StepTerm> steps;

    explicit HotPayoff(const PayoffSpec& h) : c0(h.constant), steps(h.steps) {
        for (const auto& p : h.powers) {
            if (p.c == 0.0) continue;
            if (p.theta == 1.0)
                lin += p.c;
            else
                gen.push_back(p);
        }
    }

    double operator()(double x) const {
        double v = lin * x + c0;
        for (const auto& p : gen) v += p.c * std::pow(x, p.theta);
        for (const auto& s : steps)
            if (x >= s.a) v += s.j;
        return v;
    }
};

struct Engine {
    const Solution* sol;
    Policy policy;
    HotPayoff payoff;
    double x0;
    int z0;
    double drift, vol, stepdisc, halfdt, floor_, K, K0, K1;
    double exp_two_drift;
    std::uint64_t max_steps;
    std::uint64_t seed;
    bool antithetic;

    Engine(const Solution& s, const Policy& pol, int z, double x,
           const McConfig& cfg)
        : sol(&s), policy(pol), payoff(s.ctx.data.payoff), x0(x), z0(z) {
        const double r = s.ctx.r();
        const double s2 = s.ctx.s2();
        drift = (s.ctx.data.market.b - s2) * cfg.dt;
        vol = s.ctx.data.market.sigma * std::sqrt(2.0 * cfg.dt);
        exp_two_drift = detail::fast_exp(2.0 * drift);
        stepdisc = std::exp(-r * cfg.dt);
        halfdt = 0.5 * cfg.dt;
        floor_ = cfg.discount_floor;
        K = s.ctx.K();
        K0 = s.ctx.K0();
        K1 = s.ctx.K1();
        max_steps = static_cast<std::uint64_t>(
            std::ceil(cfg.resolved_horizon(r) / cfg.dt));
        seed = cfg.seed;
        antithetic = cfg.antithetic;
    }
};

struct PathStats {
    double payoff = 0.0;
    double bias = 0.0;
    double switches = 0.0;
    bool abandoned = false;
    bool truncated = false;
};

// Per-step multipliers of the primary leg, shared between the two antithetic
// legs of a pair: the mirrored leg divides them out of exp(2 drift). The
// buffer extends lazily from a single per-pair stream, so results do not
// depend on which leg runs longer or on worker partitioning.
struct DrawBuffer {
    Xoshiro256pp rng;
    std::vector<double> mult;
    std::vector<double> inv_mult;
    double drift = 0.0, vol = 0.0;
    double spare = 0.0;
    bool have_spare = false;

    void reset(std::uint64_t seed, std::uint64_t pair, double drift_,
               double vol_) {
        rng = Xoshiro256pp::stream(seed, pair);
        mult.clear();
        inv_mult.clear();
        drift = drift_;
        vol = vol_;
        have_spare = false;
    }

    double get(std::size_t k) {
        while (k >= mult.size()) generate();
        return mult[k];
    }

    double get_inv(std::size_t k) {
        while (k >= mult.size()) generate();
        return inv_mult[k];
    }

    double normal() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * rng.u01() - 1.0;
            v2 = 2.0 * rng.u01() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare = v2 * f;
        have_spare = true;
        return v1 * f;
    }

    void generate() {
        const double m = detail::fast_exp(drift + vol * normal());
        mult.push_back(m);
        inv_mult.push_back(1.0 / m);
    }
};

PathStats run_path(const Engine& eng, DrawBuffer& buf, bool mirrored) {
    PathStats st;
    double x = eng.x0;
    int z = eng.z0;
    double disc = 1.0;
    double payoff = 0.0;

    // event resolution at the current (post-step) state; ordering rules make
    // chains of length > 1 impossible, the loop bound is defensive
    auto resolve = [&](double xc) -> bool {  // true = path ended
        for (int guard = 0; guard < 3; ++guard) {
            if (z == 1) {
                if (xc <= eng.policy.ab1_hi) {
                    payoff -= disc * eng.K;
                    st.abandoned = true;
                    return true;
                }
                if (xc >= eng.policy.sout_lo && xc <= eng.policy.sout_hi) {
                    payoff -= disc * eng.K0;
                    st.switches += 1.0;
                    z = 0;
                    continue;
                }
            } else {
                if (xc <= eng.policy.ab0_hi) {
                    payoff -= disc * eng.K;
                    st.abandoned = true;
                    return true;
                }
                if (xc >= eng.policy.sin_lo) {
                    payoff -= disc * eng.K1;
                    st.switches += 1.0;
                    z = 1;
                    continue;
                }
            }
            return false;
        }
        return false;
    };

    if (resolve(x)) {
        st.payoff = payoff;
        return st;
    }

    double h_prev = (z == 1) ? eng.payoff(x) : 0.0;
    std::size_t k = 0;
    for (std::uint64_t step = 0; step < eng.max_steps; ++step) {
        const int z_step = z;  // mode held over (t, t + dt]
        const double m0 = mirrored ? eng.exp_two_drift * buf.get_inv(k) : buf.get(k);
        ++k;
        const double disc_prev = disc;
        x *= m0;
        disc *= eng.stepdisc;
        double h_new = 0.0;
        if (z_step == 1) {
            h_new = eng.payoff(x);
            payoff += eng.halfdt * (disc_prev * h_prev + disc * h_new);
        }
        if (resolve(x)) {
            st.payoff = payoff;
            return st;
        }
        if (z == 1) h_prev = (z_step == 1) ? h_new : eng.payoff(x);
        if (disc <= eng.floor_) break;
    }
    // truncated at the horizon or the discount floor: charge the remainder
    // bound to the bias budget
    const double rh = std::fabs(
        resolvent_direct(eng.sol->ctx.roots, eng.sol->ctx.data.market,
                         eng.sol->ctx.data.payoff, x));
    st.bias = disc * std::max(rh, std::fabs(eng.K));
    st.truncated = true;
    st.payoff = payoff;
    return st;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

int resolve_threads(int requested) {
    int t = requested;
    if (t < 0) {
        t = 0;
        if (const char* env = std::getenv("SWITCHOPT_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, t);
}

// Grid-time event detection loses O(dt) value per boundary crossing through
// the jump of w'' there; bound it by the worst boundary and the realized
// event count.
double event_bias_rate(const Solution& sol) {
    const double s2 = sol.ctx.s2();
    double worst = 0.0;
    for (const auto* pieces : {&sol.w1, &sol.w0})
        for (std::size_t i = 0; i + 1 < pieces->size(); ++i) {
            const double p = (*pieces)[i].hi;
            const double jump = std::fabs(eval_piece(sol, (*pieces)[i], p, 2) -
                                          eval_piece(sol, (*pieces)[i + 1], p, 2));
            worst = std::max(worst, s2 * p * p * jump);
        }
    return worst;
}

McResult run_simulation(const Solution& sol, const Policy& policy, int z,
                        double x, const McConfig& cfg) {
    if (!(x > 0.0)) throw InvalidConfig("x0 must be > 0");
    if (z != 0 && z != 1) throw InvalidConfig("z must be 0 or 1");
    cfg.validate(sol.ctx.r());

    const Engine eng(sol, policy, z, x, cfg);
    const std::uint64_t paths = cfg.paths;
    const std::uint64_t samples =
        cfg.antithetic ? (paths + 1) / 2 : paths;

    std::vector<double> sample_mean(samples), sample_weight(samples),
        path_bias(samples), path_switches(samples), path_abandoned(samples),
        path_truncated(samples);

    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        DrawBuffer buf;
        for (std::uint64_t i = lo; i < hi; ++i) {
            buf.reset(eng.seed, i, eng.drift, eng.vol);
            PathStats a = run_path(eng, buf, false);
            double w = 1.0;
            double mean = a.payoff;
            double bias = a.bias;
            double sw = a.switches;
            double ab = a.abandoned ? 1.0 : 0.0;
            double tr = a.truncated ? 1.0 : 0.0;
            if (cfg.antithetic && 2 * i + 1 < paths) {
                PathStats b = run_path(eng, buf, true);
                w = 2.0;
                mean = 0.5 * (a.payoff + b.payoff);
                bias += b.bias;
                sw += b.switches;
                ab += b.abandoned ? 1.0 : 0.0;
                tr += b.truncated ? 1.0 : 0.0;
            }
            sample_mean[i] = mean;
            sample_weight[i] = w;
            path_bias[i] = bias;
            path_switches[i] = sw;
            path_abandoned[i] = ab;
            path_truncated[i] = tr;
        }
    };

    const int nthreads =
        static_cast<int>(std::min<std::uint64_t>(resolve_threads(cfg.threads),
                                                 samples));
    if (nthreads <= 1) {
        worker(0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // deterministic reductions (independent of the worker layout)
    std::vector<double> weighted(samples);
    for (std::uint64_t i = 0; i < samples; ++i)
        weighted[i] = sample_mean[i] * sample_weight[i];
    const double total_weight = pairwise_sum(sample_weight);
    const double mean = pairwise_sum(weighted) / total_weight;

    std::vector<double> sqdev(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double d = sample_mean[i] - mean;
        sqdev[i] = d * d;
    }
    const double var =
        samples > 1 ? pairwise_sum(sqdev) / (samples - 1) : 0.0;

    McResult out;
    out.paths = paths;
    out.mean = mean;
    out.std_error = samples > 0 ? std::sqrt(var / samples) : 0.0;
    out.switch_count_mean = pairwise_sum(path_switches) / paths;
    out.abandon_fraction = pairwise_sum(path_abandoned) / paths;
    out.truncation_fraction = pairwise_sum(path_truncated) / paths;
    out.bias_budget = pairwise_sum(path_bias) / paths +
                      (out.switch_count_mean + 2.0) * event_bias_rate(sol) *
                          cfg.dt;
    return out;
}

}  // namespace

McResult simulate_value(const Solution& sol, int z, double x,
                        const McConfig& cfg) {
    return run_simulation(sol, policy_from(sol.case_id, sol.boundaries), z, x,
                          cfg);
}

McResult simulate_perturbed(const Solution& sol, int z, double x,
                            const McConfig& cfg, BoundaryName which,
                            double rel_shift) {
    FreeBoundaries b = sol.boundaries;
    std::optional<double>* target = nullptr;
    switch (which) {
        case BoundaryName::Zeta: target = &b.zeta; break;
        case BoundaryName::Delta: target = &b.delta; break;
        case BoundaryName::Gamma: target = &b.gamma; break;
        case BoundaryName::Beta: target = &b.beta; break;
        case BoundaryName::Alpha: target = &b.alpha; break;
    }
    if (!target || !target->has_value())
        throw InvalidPerturbation("boundary not present in this case");
    **target *= (1.0 + rel_shift);
    if (!ordering_holds(sol.case_id, b))
        throw InvalidPerturbation("perturbation breaks the boundary ordering");
    return run_simulation(sol, policy_from(sol.case_id, b), z, x, cfg);
}

}  // namespace switchopt
