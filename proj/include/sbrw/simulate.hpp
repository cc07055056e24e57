#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbrw/kernels.hpp"

namespace sbrw {

// SplitMix64: seedable, splittable, bit-reproducible across platforms.
// Streams are derived by hashing (seed, run) resp. (run seed, tree position),
// so parallel runs and coupled reruns are deterministic.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    uint32_t below(uint32_t n) {
        return n <= 1 ? 0 : static_cast<uint32_t>(uniform() * n) % n;
    }
};

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    SplitMix64 g(a ^ (b * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    return g.next();
}

struct SimConfig {
    double p = 0.5;
    int horizon = 10;
    int runs = 1;
    uint64_t seed = 0;
    std::vector<Cell> absorbing;   // cells of X^{d-1} frozen with probability one
    bool track_ancestry = false;
    bool annihilate = false;       // couple +/- pairs on a cell after each step
    int64_t growth_cap = 100000000;  // abort above this aggregate population
    int jobs = 1;
};

// Aggregate particle counts per oriented slot (see slot_of in kernels.hpp).
struct ParticlePopulation {
    std::vector<int64_t> counts;
    int64_t total() const;
};

// Signed counts D(s) = N(s) - N(s-bar) per canonical cell.
using EffectiveState = std::vector<int64_t>;

struct Particle {
    int slot;
    int parent;     // index into the previous generation, -1 at time zero
    uint64_t key;   // genealogical position hash, drives this particle's draws
};

struct AncestryForest {
    std::vector<std::vector<Particle>> generations;
};

// Precomputed splitting tables; immutable, shared across runs and threads.
class SimContext {
  public:
    // walk_dim = d-1 for the upper walk, d for the lower one
    SimContext(const SimplicialComplex& X, int walk_dim, bool lower);

    const SimplicialComplex& X;
    int dim;       // dimension the particles live on
    bool lower;
    int n_cells;
    int slots;
    // targets[i][choice] = offspring slots for the + orientation of cell i;
    // choice ranges over cofaces (upper) or faces (lower)
    std::vector<std::vector<std::vector<int>>> targets;
    std::vector<int> n_choices;  // deg (upper) / d+1 (lower)

    int flip_slot(int s) const { return dim == 0 ? s : (s ^ 1); }
};

ParticlePopulation dirac_population(const SimContext& ctx, const OrientedCell& start);
EffectiveState effective(const SimContext& ctx, const ParticlePopulation& pop);

// One step of the branching walk. Every particle stays with probability p,
// otherwise picks a coface (resp. face) uniformly and is replaced by its
// offspring. Throws if an occupied cell has no choices (upper walk, deg 0)
// or the growth cap is exceeded.
ParticlePopulation step(const SimContext& ctx, const ParticlePopulation& pop, const SimConfig& cfg,
                        SplitMix64& rng);
// Same, with the cells listed in `absorbing_cell` frozen.
ParticlePopulation step_absorbing(const SimContext& ctx, const ParticlePopulation& pop,
                                  const std::vector<char>& absorbing_cell, const SimConfig& cfg,
                                  SplitMix64& rng);

struct RunResult {
    std::vector<EffectiveState> trajectory;  // D_0..D_horizon
};

// Independent runs with seeds derived per run index. A start cell with
// negative orientation is simulated from the canonical representative and
// negated (the orientation-flip coupling, exact in law).
std::vector<RunResult> simulate(const SimplicialComplex& X, const OrientedCell& start,
                                const SimConfig& cfg);

// Ancestry-tracked absorbing run; draws are keyed by genealogical position
// and time, so runs with comparable absorbing sets are coupled.
AncestryForest simulate_ancestry(const SimplicialComplex& X, const OrientedCell& start,
                                 const SimConfig& cfg, int run_index);

// K_n(target): generation-n particles at the target whose ancestors at times
// 1..n-1 avoided the target cell in both orientations. K_0 = 0.
int64_t count_first_visits(const SimContext& ctx, const AncestryForest& forest,
                           const OrientedCell& target, int n);

struct Estimate {
    double mean;
    double stderr_;
    int runs;
};

// Monte-Carlo estimate of E_n(sigma, target) = E^sigma[D_n(target)].
Estimate estimate_heat_kernel(const SimplicialComplex& X, const OrientedCell& sigma,
                              const OrientedCell& target, int n, double p, int runs,
                              uint64_t seed, int jobs = 1);

// Estimate of E^sigma[K_n(target)] from ancestry-tracked runs.
Estimate estimate_first_visits(const SimplicialComplex& X, const OrientedCell& sigma,
                               const OrientedCell& target, int n, double p, int runs,
                               uint64_t seed);

// Estimate of sum_{n<=N} E_A^sigma[D_n(target)] for the A-absorbing walk.
Estimate estimate_absorbing_sum(const SimplicialComplex& X, const std::vector<Cell>& A,
                                const OrientedCell& sigma, const OrientedCell& target, int N,
                                double p, int runs, uint64_t seed);

// Estimate of the lower heat kernel E^tau[D^low_n(target)] on d-cells.
Estimate estimate_lower_kernel(const SimplicialComplex& X, const OrientedCell& tau,
                               const OrientedCell& target, int n, double p, int runs,
                               uint64_t seed);

// Sample mean of the total population at time n (growth-law checks).
Estimate estimate_total_population(const SimplicialComplex& X, const OrientedCell& sigma, int n,
                                   double p, int runs, uint64_t seed);

}  // namespace sbrw
