#include "gnmawpp/walk.h"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>

#include "gnmawpp/dyadic.h"
#include "gnmawpp/errors.h"

namespace gnmawpp {

ElementCode WalkConfig::endpoint(const GroupOracle &oracle, std::uint64_t z) const {
  const std::uint64_t mask = (std::uint64_t{1} << bits_per_step) - 1;
  std::uint64_t at = oracle.identity_index();
  for (unsigned i = 0; i < steps; ++i) {
    auto pattern = (z >> (static_cast<unsigned long>(i) * bits_per_step)) & mask;
    at = oracle.multiply_index(at, option_table[pattern].element.bits);
  }
  return ElementCode{at, oracle.width()};
}

WalkConfig build_option_table(const GroupOracle &oracle, std::span<const ElementCode> generators) {
  if (generators.empty()) throw std::invalid_argument("walk needs at least one generator");
  const std::size_t k = generators.size();
  WalkConfig config;
  config.bits_per_step = static_cast<unsigned>(std::bit_width(2 * k + 1));  // ceil(log2(2k+2))
  const std::size_t patterns = std::size_t{1} << config.bits_per_step;
  config.option_table.reserve(patterns);
  for (std::size_t i = 0; i < k; ++i) {
    if (!oracle.is_valid(generators[i])) {
      throw InvalidCodeError("generator " + std::to_string(i + 1) + " is not a valid code of " + oracle.name());
    }
    config.option_table.push_back({WalkAction::Kind::kGenerator, i, generators[i]});
  }
  for (std::size_t i = 0; i < k; ++i) {
    config.option_table.push_back({WalkAction::Kind::kInverse, i, oracle.invert(generators[i])});
  }
  while (config.option_table.size() < patterns) {
    config.option_table.push_back({WalkAction::Kind::kIdentity, 0, oracle.identity()});
  }
  return config;
}

const mpz_class &GammaTable::count(ElementCode g) const {
  static const mpz_class kZero = 0;
  auto it = counts.find(g);
  return it == counts.end() ? kZero : it->second;
}

mpz_class GammaTable::sum_of_squares() const {
  mpz_class s = 0;
  for (const auto &[g, c] : counts) s += c * c;
  return s;
}

GammaTable make_gamma_table(std::map<ElementCode, mpz_class> counts, unsigned long total_bits) {
  GammaTable t;
  t.total_bits = total_bits;
  t.N = pow2(total_bits);
  t.subgroup_order = counts.size();
  t.counts = std::move(counts);
  const mpq_class uniform(1, t.subgroup_order);
  t.max_deviation = 0;
  for (const auto &[g, c] : t.counts) {
    mpq_class dev = mpq_class(c, t.N) - uniform;
    dev.canonicalize();
    mpq_class mag = abs(dev);
    if (mag > t.max_deviation) t.max_deviation = mag;
    t.deviations.emplace(g, std::move(dev));
  }
  return t;
}

namespace {

// Walk over H with H indexed densely; transitions aggregate patterns that
// apply the same element.
class SubgroupWalk {
 public:
  SubgroupWalk(const GroupOracle &oracle, std::span<const ElementCode> generators, std::size_t closure_cap)
      : config_(build_option_table(oracle, generators)), elements_(closure(oracle, generators, closure_cap)) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < elements_.size(); ++i) index.emplace(elements_[i].bits, i);
    std::map<std::uint64_t, unsigned> multiplicity;
    for (const auto &action : config_.option_table) ++multiplicity[action.element.bits];
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (const auto &[elem, mult] : multiplicity) {
        edges_.push_back({i, index.at(oracle.multiply_index(elements_[i].bits, elem)), mult});
      }
    }
    dist_.assign(elements_.size(), 0);
    dist_[index.at(oracle.identity_index())] = 1;
  }

  void step() {
    std::vector<mpz_class> next(dist_.size(), 0);
    for (const auto &e : edges_) {
      if (dist_[e.from] != 0) next[e.to] += dist_[e.from] * e.multiplicity;
    }
    dist_ = std::move(next);
    ++config_.steps;
  }

  // max_g |gamma_g |H| - N| * den < num * N * |H|  <=>  max deviation < num/den
  bool deviation_below(const mpq_class &epsilon) const {
    const mpz_class n = pow2(config_.total_bits());
    const mpz_class h = elements_.size();
    mpz_class worst = 0;
    for (const auto &c : dist_) {
      mpz_class d = abs(c * h - n);
      if (d > worst) worst = d;
    }
    return worst * epsilon.get_den() < epsilon.get_num() * n * h;
  }

  GammaTable table() const {
    std::map<ElementCode, mpz_class> counts;
    for (std::size_t i = 0; i < elements_.size(); ++i) counts.emplace(elements_[i], dist_[i]);
    return make_gamma_table(std::move(counts), config_.total_bits());
  }

  const WalkConfig &config() const { return config_; }

 private:
  struct Edge {
    std::size_t from;
    std::size_t to;
    unsigned multiplicity;
  };

  WalkConfig config_;
  std::vector<ElementCode> elements_;
  std::vector<Edge> edges_;
  std::vector<mpz_class> dist_;
};

}  // namespace

GammaTable gamma_exact(const GroupOracle &oracle, std::span<const ElementCode> generators, unsigned steps,
                       std::size_t closure_cap) {
  SubgroupWalk walk(oracle, generators, closure_cap);
  for (unsigned i = 0; i < steps; ++i) walk.step();
  return walk.table();
}

StepChoice choose_steps(const GroupOracle &oracle, std::span<const ElementCode> generators,
                        const mpq_class &epsilon, unsigned ceiling, std::size_t closure_cap) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  SubgroupWalk walk(oracle, generators, closure_cap);
  while (!walk.deviation_below(epsilon)) {
    if (walk.config().steps >= ceiling) {
      throw NonConvergenceError("walk deviation still >= " + rational_string(epsilon) + " after " +
                                std::to_string(ceiling) + " steps");
    }
    walk.step();
  }
  return StepChoice{walk.config(), walk.table()};
}

std::map<ElementCode, std::uint64_t> sample_monte_carlo(const WalkConfig &config, const GroupOracle &oracle,
                                                        std::uint64_t seed, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << config.bits_per_step) - 1;
  std::map<ElementCode, std::uint64_t> freq;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t at = oracle.identity_index();
    for (unsigned s = 0; s < config.steps; ++s) {
      at = oracle.multiply_index(at, config.option_table[rng() & mask].element.bits);
    }
    ++freq[ElementCode{at, oracle.width()}];
  }
  return freq;
}

}  // namespace gnmawpp
