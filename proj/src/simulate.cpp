#include "sbrw/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace sbrw {

namespace {

int canonical_index(const SimplicialComplex& X, const OrientedCell& oc, int expect_dim) {
    if (oc.dim() != expect_dim)
        throw std::invalid_argument("cell has dimension " + std::to_string(oc.dim()) +
                                    ", expected " + std::to_string(expect_dim));
    int i = X.index_of(oc.cell);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + oc.cell.str());
    return i;
}

std::vector<char> absorbing_mask(const SimplicialComplex& X, const std::vector<Cell>& A, int dim) {
    std::vector<char> mask(X.n_cells(dim), 0);
    for (const auto& c : A) {
        if (c.dim() != dim)
            throw std::invalid_argument("absorbing cell has wrong dimension: " + c.str());
        int i = X.index_of(c);
        if (i < 0) throw std::invalid_argument("absorbing cell not in complex: " + c.str());
        mask[i] = 1;
    }
    return mask;
}

}  // namespace

SimContext::SimContext(const SimplicialComplex& X_, int walk_dim, bool lower_)
    : X(X_), dim(walk_dim), lower(lower_) {
    n_cells = X.n_cells(dim);
    slots = n_slots(X, dim);
    targets.resize(n_cells);
    n_choices.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) {
        if (!lower) {
            const auto& cfs = X.cofaces(dim, i);
            n_choices[i] = static_cast<int>(cfs.size());
            targets[i].reserve(cfs.size());
            for (int cf : cfs) {
                std::vector<int> tg;
                for (auto [nb, s] : X.neighbors_in_coface(dim, i, cf))
                    tg.push_back(slot_of(X, dim, nb, dim == 0 ? 1 : s));
                targets[i].push_back(std::move(tg));
            }
        } else {
            int nf = static_cast<int>(X.faces(dim, i).size());
            n_choices[i] = nf;  // always d+1 faces
            targets[i].reserve(nf);
            for (int fp = 0; fp < nf; ++fp) {
                std::vector<int> tg;
                for (auto [nb, s] : X.adjacent_through_face(dim, i, fp))
                    tg.push_back(slot_of(X, dim, nb, s));
                targets[i].push_back(std::move(tg));
            }
        }
    }
}

int64_t ParticlePopulation::total() const {
    int64_t t = 0;
    for (int64_t c : counts) t += c;
    return t;
}

ParticlePopulation dirac_population(const SimContext& ctx, const OrientedCell& start) {
    int i = canonical_index(ctx.X, start, ctx.dim);
    ParticlePopulation pop;
    pop.counts.assign(ctx.slots, 0);
    pop.counts[slot_of(ctx.X, ctx.dim, i, ctx.dim == 0 ? 1 : start.sign)] = 1;
    return pop;
}

EffectiveState effective(const SimContext& ctx, const ParticlePopulation& pop) {
    EffectiveState D(ctx.n_cells);
    for (int i = 0; i < ctx.n_cells; ++i)
        D[i] = ctx.dim == 0 ? pop.counts[i] : pop.counts[2 * i] - pop.counts[2 * i + 1];
    return D;
}

namespace {

ParticlePopulation step_impl(const SimContext& ctx, const ParticlePopulation& pop,
                             const std::vector<char>* absorbing, const SimConfig& cfg,
                             SplitMix64& rng) {
    ParticlePopulation out;
    out.counts.assign(ctx.slots, 0);
    int64_t total = 0;
    for (int s = 0; s < ctx.slots; ++s) {
        int64_t c = pop.counts[s];
        if (c == 0) continue;
        int cell = ctx.dim == 0 ? s : s / 2;
        bool flip = ctx.dim != 0 && (s & 1);
        if (absorbing && (*absorbing)[cell]) {
            out.counts[s] += c;
            total += c;
            continue;
        }
        int nch = ctx.n_choices[cell];
        if (!ctx.lower && nch == 0)
            throw std::runtime_error("branching walk hit a zero-degree cell: " +
                                     ctx.X.cell(ctx.dim, cell).str());
        for (int64_t t = 0; t < c; ++t) {
            double u = rng.uniform();
            if (u < cfg.p) {
                out.counts[s] += 1;
                total += 1;
            } else {
                int j = static_cast<int>(rng.below(static_cast<uint32_t>(nch)));
                for (int tg : ctx.targets[cell][j]) {
                    out.counts[flip ? ctx.flip_slot(tg) : tg] += 1;
                    total += 1;
                }
            }
        }
        if (total > cfg.growth_cap)
            throw std::runtime_error("population exceeded the growth cap (" +
                                     std::to_string(cfg.growth_cap) +
                                     "); lower the horizon or raise the cap");
    }
    if (cfg.annihilate && ctx.dim != 0) {
        for (int i = 0; i < ctx.n_cells; ++i) {
            int64_t m = std::min(out.counts[2 * i], out.counts[2 * i + 1]);
            out.counts[2 * i] -= m;
            out.counts[2 * i + 1] -= m;
        }
    }
    return out;
}

}  // namespace

ParticlePopulation step(const SimContext& ctx, const ParticlePopulation& pop, const SimConfig& cfg,
                        SplitMix64& rng) {
    return step_impl(ctx, pop, nullptr, cfg, rng);
}

ParticlePopulation step_absorbing(const SimContext& ctx, const ParticlePopulation& pop,
                                  const std::vector<char>& absorbing_cell, const SimConfig& cfg,
                                  SplitMix64& rng) {
    return step_impl(ctx, pop, &absorbing_cell, cfg, rng);
}

std::vector<RunResult> simulate(const SimplicialComplex& X, const OrientedCell& start,
                                const SimConfig& cfg) {
    int dim = X.dim() - 1;
    SimContext ctx(X, dim, false);
    std::vector<char> mask;
    if (!cfg.absorbing.empty()) mask = absorbing_mask(X, cfg.absorbing, dim);
    int start_sign = dim == 0 ? 1 : start.sign;
    OrientedCell canon(start.cell, 1);

    std::vector<RunResult> results(cfg.runs);
    auto run_block = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            SplitMix64 rng(mix_seed(cfg.seed, static_cast<uint64_t>(r)));
            ParticlePopulation pop = dirac_population(ctx, canon);
            RunResult rr;
            rr.trajectory.reserve(cfg.horizon + 1);
            rr.trajectory.push_back(effective(ctx, pop));
            for (int n = 1; n <= cfg.horizon; ++n) {
                pop = mask.empty() ? step(ctx, pop, cfg, rng)
                                   : step_absorbing(ctx, pop, mask, cfg, rng);
                rr.trajectory.push_back(effective(ctx, pop));
            }
            if (start_sign < 0)
                for (auto& D : rr.trajectory)
                    for (auto& v : D) v = -v;
            results[r] = std::move(rr);
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || cfg.runs < 2) {
        run_block(0, cfg.runs);
    } else {
        std::vector<std::thread> pool;
        int per = (cfg.runs + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int lo = t * per, hi = std::min(cfg.runs, (t + 1) * per);
            if (lo < hi) pool.emplace_back(run_block, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return results;
}

AncestryForest simulate_ancestry(const SimplicialComplex& X, const OrientedCell& start,
                                 const SimConfig& cfg, int run_index) {
    int dim = X.dim() - 1;
    SimContext ctx(X, dim, false);
    std::vector<char> mask;
    if (!cfg.absorbing.empty()) mask = absorbing_mask(X, cfg.absorbing, dim);
    uint64_t run_seed = mix_seed(cfg.seed, static_cast<uint64_t>(run_index));

    int i0 = canonical_index(X, start, dim);
    AncestryForest forest;
    forest.generations.push_back(
        {Particle{slot_of(X, dim, i0, dim == 0 ? 1 : start.sign), -1, 1}});
    for (int n = 1; n <= cfg.horizon; ++n) {
        const auto& prev = forest.generations.back();
        std::vector<Particle> next;
        for (int idx = 0; idx < static_cast<int>(prev.size()); ++idx) {
            const Particle& par = prev[idx];
            int cell = dim == 0 ? par.slot : par.slot / 2;
            bool flip = dim != 0 && (par.slot & 1);
            if (!mask.empty() && mask[cell]) {
                next.push_back(Particle{par.slot, idx, mix_seed(par.key, 1)});
                continue;
            }
            int nch = ctx.n_choices[cell];
            if (nch == 0)
                throw std::runtime_error("branching walk hit a zero-degree cell: " +
                                         X.cell(dim, cell).str());
            SplitMix64 g(mix_seed(mix_seed(run_seed, par.key), static_cast<uint64_t>(n)));
            if (g.uniform() < cfg.p) {
                next.push_back(Particle{par.slot, idx, mix_seed(par.key, 1)});
            } else {
                int j = static_cast<int>(g.below(static_cast<uint32_t>(nch)));
                uint64_t ordinal = 2;
                for (int tg : ctx.targets[cell][j]) {
                    next.push_back(Particle{flip ? ctx.flip_slot(tg) : tg, idx,
                                            mix_seed(par.key, ordinal++)});
                }
            }
            if (static_cast<int64_t>(next.size()) > cfg.growth_cap)
                throw std::runtime_error("population exceeded the growth cap");
        }
        forest.generations.push_back(std::move(next));
    }
    return forest;
}

int64_t count_first_visits(const SimContext& ctx, const AncestryForest& forest,
                           const OrientedCell& target, int n) {
    if (n <= 0) return 0;
    if (n >= static_cast<int>(forest.generations.size()))
        throw std::invalid_argument("ancestry horizon too short");
    int ti = canonical_index(ctx.X, target, ctx.dim);
    int tslot = slot_of(ctx.X, ctx.dim, ti, ctx.dim == 0 ? 1 : target.sign);
    const auto& gen = forest.generations[n];
    int64_t count = 0;
    for (const auto& p : gen) {
        if (p.slot != tslot) continue;
        bool first = true;
        int idx = p.parent;
        for (int t = n - 1; t >= 1 && first; --t) {
            const Particle& anc = forest.generations[t][idx];
            int cell = ctx.dim == 0 ? anc.slot : anc.slot / 2;
            if (cell == ti) first = false;
            idx = anc.parent;
        }
        if (first) ++count;
    }
    return count;
}

namespace {

Estimate reduce(const std::vector<double>& vals) {
    int n = static_cast<int>(vals.size());
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= n;
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var = n > 1 ? var / (n - 1) : 0.0;
    return Estimate{mean, std::sqrt(var / n), n};
}

// Runs the lumped simulation and hands D_n to a per-run reducer.
template <typename PerRun>
std::vector<double> lumped_runs(const SimplicialComplex& X, const OrientedCell& start,
                                const SimConfig& cfg, bool lower, PerRun per_run) {
    SimContext ctx(X, lower ? X.dim() : X.dim() - 1, lower);
    std::vector<char> mask;
    if (!cfg.absorbing.empty()) mask = absorbing_mask(X, cfg.absorbing, ctx.dim);
    OrientedCell canon(start.cell, 1);
    int start_sign = ctx.dim == 0 ? 1 : start.sign;

    std::vector<double> vals(cfg.runs);
    auto run_block = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            SplitMix64 rng(mix_seed(cfg.seed, static_cast<uint64_t>(r)));
            ParticlePopulation pop = dirac_population(ctx, canon);
            vals[r] = per_run(ctx, pop, mask, rng, start_sign, r);
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || cfg.runs < 2) {
        run_block(0, cfg.runs);
    } else {
        std::vector<std::thread> pool;
        int per = (cfg.runs + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int lo = t * per, hi = std::min(cfg.runs, (t + 1) * per);
            if (lo < hi) pool.emplace_back(run_block, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return vals;
}

}  // namespace

Estimate estimate_heat_kernel(const SimplicialComplex& X, const OrientedCell& sigma,
                              const OrientedCell& target, int n, double p, int runs,
                              uint64_t seed, int jobs) {
    SimConfig cfg;
    cfg.p = p;
    cfg.horizon = n;
    cfg.runs = runs;
    cfg.seed = seed;
    cfg.jobs = jobs;
    int dim = X.dim() - 1;
    int ti = canonical_index(X, target, dim);
    double tsign = dim == 0 ? 1.0 : target.sign;
    auto vals = lumped_runs(
        X, sigma, cfg, false,
        [&](const SimContext& ctx, ParticlePopulation pop, const std::vector<char>& mask,
            SplitMix64& rng, int start_sign, int) {
            (void)mask;
            for (int t = 0; t < n; ++t) pop = step(ctx, pop, cfg, rng);
            EffectiveState D = effective(ctx, pop);
            return static_cast<double>(start_sign) * tsign * static_cast<double>(D[ti]);
        });
    return reduce(vals);
}

Estimate estimate_first_visits(const SimplicialComplex& X, const OrientedCell& sigma,
                               const OrientedCell& target, int n, double p, int runs,
                               uint64_t seed) {
    SimConfig cfg;
    cfg.p = p;
    cfg.horizon = n;
    cfg.runs = runs;
    cfg.seed = seed;
    cfg.track_ancestry = true;
    SimContext ctx(X, X.dim() - 1, false);
    std::vector<double> vals(runs);
    for (int r = 0; r < runs; ++r) {
        AncestryForest forest = simulate_ancestry(X, sigma, cfg, r);
        vals[r] = static_cast<double>(count_first_visits(ctx, forest, target, n));
    }
    return reduce(vals);
}

Estimate estimate_absorbing_sum(const SimplicialComplex& X, const std::vector<Cell>& A,
                                const OrientedCell& sigma, const OrientedCell& target, int N,
                                double p, int runs, uint64_t seed) {
    SimConfig cfg;
    cfg.p = p;
    cfg.horizon = N;
    cfg.runs = runs;
    cfg.seed = seed;
    cfg.absorbing = A;
    int dim = X.dim() - 1;
    int ti = canonical_index(X, target, dim);
    double tsign = dim == 0 ? 1.0 : target.sign;
    auto vals = lumped_runs(
        X, sigma, cfg, false,
        [&](const SimContext& ctx, ParticlePopulation pop, const std::vector<char>& mask,
            SplitMix64& rng, int start_sign, int) {
            double acc = 0.0;
            EffectiveState D = effective(ctx, pop);
            acc += D[ti];
            for (int t = 0; t < N; ++t) {
                pop = step_absorbing(ctx, pop, mask, cfg, rng);
                D = effective(ctx, pop);
                acc += D[ti];
            }
            return start_sign * tsign * acc;
        });
    return reduce(vals);
}

Estimate estimate_lower_kernel(const SimplicialComplex& X, const OrientedCell& tau,
                               const OrientedCell& target, int n, double p, int runs,
                               uint64_t seed) {
    SimConfig cfg;
    cfg.p = p;
    cfg.horizon = n;
    cfg.runs = runs;
    cfg.seed = seed;
    int ti = canonical_index(X, target, X.dim());
    double tsign = target.sign;
    auto vals = lumped_runs(
        X, tau, cfg, true,
        [&](const SimContext& ctx, ParticlePopulation pop, const std::vector<char>& mask,
            SplitMix64& rng, int start_sign, int) {
            (void)mask;
            for (int t = 0; t < n; ++t) pop = step(ctx, pop, cfg, rng);
            EffectiveState D = effective(ctx, pop);
            return static_cast<double>(start_sign) * tsign * static_cast<double>(D[ti]);
        });
    return reduce(vals);
}

Estimate estimate_total_population(const SimplicialComplex& X, const OrientedCell& sigma, int n,
                                   double p, int runs, uint64_t seed) {
    SimConfig cfg;
    cfg.p = p;
    cfg.horizon = n;
    cfg.runs = runs;
    cfg.seed = seed;
    auto vals = lumped_runs(X, sigma, cfg, false,
                            [&](const SimContext& ctx, ParticlePopulation pop,
                                const std::vector<char>&, SplitMix64& rng, int, int) {
                                for (int t = 0; t < n; ++t) pop = step(ctx, pop, cfg, rng);
                                (void)ctx;
                                return static_cast<double>(pop.total());
                            });
    return reduce(vals);
}

}  // namespace sbrw
