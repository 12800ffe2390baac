#pragma once

// Genetic algorithm over search-parameter chromosomes. Fitness is the
// reciprocal of the total node count an organism needs on a test suite.
//
// Every random decision is drawn sequentially from one seeded generator;
// only fitness evaluation runs in parallel, so results do not depend on the
// number of jobs.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "evochess/genome.hpp"
#include "evochess/harness.hpp"

namespace evochess {

struct GaConfig {
  int population_size = 10;
  double crossover_rate = 0.75;
  double mutation_rate = 0.05;  // per bit
  int generations = 50;
  int elitism_count = 1;
  std::uint64_t seed = 1;
  std::uint64_t node_cap = 500000;
  int jobs = 1;

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be at least 2");
    if (!(crossover_rate >= 0 && crossover_rate <= 1))
      throw std::invalid_argument("crossover rate must lie in [0, 1]");
    if (!(mutation_rate >= 0 && mutation_rate <= 1))
      throw std::invalid_argument("mutation rate must lie in [0, 1]");
    if (generations < 1) throw std::invalid_argument("need at least one generation");
    if (elitism_count < 0 || elitism_count > population_size)
      throw std::invalid_argument("elitism count out of range");
    if (node_cap < 1) throw std::invalid_argument("node cap must be positive");
  }
};

struct FitnessReport {
  Chromosome chromosome;
  std::uint64_t total_nodes = 0;
  int solved = 0;
  double fitness = 0.0;  // 1 / total_nodes
};

inline FitnessReport make_report(const Chromosome& c, const SuiteReport& suite) {
  return FitnessReport{c, suite.total_nodes, suite.solved, 1.0 / double(suite.total_nodes)};
}

inline FitnessReport fitness_of(const Chromosome& c, const std::vector<EpdRecord>& suite,
                                std::uint64_t node_cap, int jobs = 1) {
  return make_report(c, run_suite(suite, decode(c), node_cap, jobs));
}

// Fitness-proportional choice.
inline const Chromosome& roulette_select(const std::vector<FitnessReport>& reports, Rng& rng) {
  double total = 0;
  for (const auto& r : reports) total += r.fitness;
  const double target = rng.uniform() * total;
  double cumulative = 0;
  for (const auto& r : reports) {
    cumulative += r.fitness;
    if (target < cumulative) return r.chromosome;
  }
  return reports.back().chromosome;
}

inline Chromosome uniform_crossover(const Chromosome& a, const Chromosome& b, double rate,
                                    Rng& rng) {
  if (!rng.bernoulli(rate)) return a;
  Chromosome child;
  for (std::size_t i = 0; i < child.size(); ++i) child[i] = rng.bernoulli(0.5) ? a[i] : b[i];
  return child;
}

inline Chromosome mutate(Chromosome c, double rate, Rng& rng) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (rng.bernoulli(rate)) c.flip(i);
  return c;
}

struct GenerationLog {
  int generation = 0;
  double best_fitness = 0;
  double mean_fitness = 0;
  std::uint64_t best_nodes = 0;
  double mean_nodes = 0;
  int best_solved = 0;
  std::vector<int> solved;  // per organism, population order
  Chromosome best;
  std::vector<Chromosome> population;
  std::string rng_state;  // after this generation's population was built

  bool operator==(const GenerationLog& o) const {
    return generation == o.generation && best_fitness == o.best_fitness &&
           mean_fitness == o.mean_fitness && best_nodes == o.best_nodes &&
           mean_nodes == o.mean_nodes && best_solved == o.best_solved && solved == o.solved &&
           best == o.best && population == o.population && rng_state == o.rng_state;
  }
};

struct EvolutionResult {
  std::vector<GenerationLog> log;
  FitnessReport best;
  std::vector<FitnessReport> final_population;
};

// Where to resume: the population and generator state logged for a
// generation.
struct ResumePoint {
  int generation = 0;
  std::vector<Chromosome> population;
  std::string rng_state;
};

// Evaluates whole populations, remembering each chromosome's report; the
// search is deterministic, so a re-evaluated elite scores identically.
class PopulationEvaluator {
 public:
  PopulationEvaluator(const std::vector<EpdRecord>& suite, std::uint64_t node_cap, int jobs)
      : suite_(suite), node_cap_(node_cap), pool_(jobs) {}

  std::vector<FitnessReport> evaluate(const std::vector<Chromosome>& population) {
    std::vector<Chromosome> pending;
    for (const auto& c : population)
      if (!cache_.count(to_text(c)) &&
          std::find(pending.begin(), pending.end(), c) == pending.end())
        pending.push_back(c);

    // One task per (organism, position) keeps all workers busy.
    const std::size_t n = suite_.size();
    std::vector<SuiteRow> rows(pending.size() * n);
    parallel_for(rows.size(), pool_.jobs(), [&](std::size_t t, int worker) {
      const EpdRecord& rec = suite_[t % n];
      const SolveResult r = solve_position(pool_.get(worker), rec, decode(pending[t / n]), node_cap_);
      rows[t] = SuiteRow{rec.id, r.solved, r.nodes, r.depth};
    });
    for (std::size_t i = 0; i < pending.size(); ++i) {
      std::vector<SuiteRow> mine(rows.begin() + std::ptrdiff_t(i * n),
                                 rows.begin() + std::ptrdiff_t((i + 1) * n));
      cache_[to_text(pending[i])] = make_report(pending[i], summarize(std::move(mine)));
    }

    std::vector<FitnessReport> reports;
    reports.reserve(population.size());
    for (const auto& c : population) reports.push_back(cache_.at(to_text(c)));
    return reports;
  }

 private:
  const std::vector<EpdRecord>& suite_;
  std::uint64_t node_cap_;
  SearcherPool pool_;
  std::map<std::string, FitnessReport> cache_;
};

// Indices by decreasing fitness; ties keep population order.
inline std::vector<std::size_t> rank_by_fitness(const std::vector<FitnessReport>& reports) {
  std::vector<std::size_t> order(reports.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reports[a].total_nodes < reports[b].total_nodes;
  });
  return order;
}

inline GenerationLog summarize_generation(int generation, const std::vector<FitnessReport>& reports,
                                          const Rng& rng) {
  GenerationLog g;
  g.generation = generation;
  const std::size_t best = rank_by_fitness(reports).front();
  g.best = reports[best].chromosome;
  g.best_fitness = reports[best].fitness;
  g.best_nodes = reports[best].total_nodes;
  g.best_solved = reports[best].solved;
  for (const auto& r : reports) {
    g.mean_fitness += r.fitness;
    g.mean_nodes += double(r.total_nodes);
    g.solved.push_back(r.solved);
    g.population.push_back(r.chromosome);
  }
  g.mean_fitness /= double(reports.size());
  g.mean_nodes /= double(reports.size());
  g.rng_state = rng.state();
  return g;
}

// Elites first, then select -> crossover -> mutate until the population is full.
inline std::vector<Chromosome> next_generation(const GaConfig& config,
                                               const std::vector<FitnessReport>& reports, Rng& rng) {
  std::vector<Chromosome> next;
  const auto order = rank_by_fitness(reports);
  for (int i = 0; i < config.elitism_count; ++i) next.push_back(reports[order[std::size_t(i)]].chromosome);
  while (int(next.size()) < config.population_size) {
    const Chromosome& a = roulette_select(reports, rng);
    const Chromosome& b = roulette_select(reports, rng);
    next.push_back(mutate(uniform_crossover(a, b, config.crossover_rate, rng), config.mutation_rate, rng));
  }
  return next;
}

using GenerationCallback = std::function<void(const GenerationLog&)>;

inline EvolutionResult run_evolution(const GaConfig& config, const std::vector<EpdRecord>& suite,
                                     const GenerationCallback& on_generation = {},
                                     const ResumePoint* resume = nullptr) {
  config.validate();
  if (suite.empty()) throw std::invalid_argument("test suite is empty");

  Rng rng(config.seed);
  std::vector<Chromosome> population;
  int first = 0;
  if (resume) {
    if (int(resume->population.size()) != config.population_size)
      throw std::invalid_argument("resume population size does not match configuration");
    rng.restore(resume->rng_state);
    population = resume->population;
    first = resume->generation;
  } else {
    for (int i = 0; i < config.population_size; ++i)
      population.push_back(random_chromosome(rng.next_u64()));
  }

  PopulationEvaluator evaluator(suite, config.node_cap, config.jobs);
  EvolutionResult result;
  std::vector<FitnessReport> reports = evaluator.evaluate(population);
  if (resume) {
    // The resumed generation was already logged; move straight on.
    if (first + 1 >= config.generations) {
      result.best = reports[rank_by_fitness(reports).front()];
      result.final_population = reports;
      return result;
    }
    population = next_generation(config, reports, rng);
    reports = evaluator.evaluate(population);
    ++first;
  }
  for (int gen = first;; ++gen) {
    GenerationLog entry = summarize_generation(gen, reports, rng);
    if (!result.log.empty())
      EVOCHESS_INVARIANT(entry.best_nodes <= result.log.back().best_nodes || config.elitism_count == 0,
                         "elitism violated: best organism got worse");
    if (on_generation) on_generation(entry);
    result.log.push_back(std::move(entry));
    if (gen + 1 >= config.generations) break;
    population = next_generation(config, reports, rng);
    reports = evaluator.evaluate(population);
  }
  result.best = reports[rank_by_fitness(reports).front()];
  result.final_population = reports;
  return result;
}

}  // namespace evochess
