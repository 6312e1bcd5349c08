#include "gnmawpp/group.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <unordered_set>

#include "gnmawpp/errors.h"
#include "text_util.h"

namespace gnmawpp {

namespace {

unsigned width_for_order(std::uint64_t order) {
  if (order <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(order - 1));
}

[[noreturn]] void bad_literal(std::string_view group, std::string_view text) {
  throw InvalidCodeError("'" + std::string(text) + "' is not an element literal of " + std::string(group));
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupOracle

unsigned GroupOracle::width() const { return width_for_order(order()); }

bool GroupOracle::is_valid(ElementCode code) const {
  return code.width == width() && code.bits < order();
}

void GroupOracle::require_valid(ElementCode code, std::string_view what) const {
  if (code.width != width()) {
    throw InvalidCodeError(std::string(what) + " has width " + std::to_string(code.width) + ", " + name() +
                           " expects " + std::to_string(width()));
  }
  if (code.bits >= order()) {
    throw InvalidCodeError(std::string(what) + " bits " + std::to_string(code.bits) +
                           " do not encode an element of " + name());
  }
}

ElementCode GroupOracle::multiply(ElementCode a, ElementCode b) const {
  require_valid(a, "left operand");
  require_valid(b, "right operand");
  return ElementCode{multiply_index(a.bits, b.bits), width()};
}

ElementCode GroupOracle::invert(ElementCode a) const {
  require_valid(a, "operand");
  return ElementCode{invert_index(a.bits), width()};
}

ElementCode GroupOracle::identity() const { return ElementCode{identity_index(), width()}; }

ElementCode GroupOracle::parse_element(std::string_view text) const {
  return ElementCode{parse_index(text::trim(text)), width()};
}

std::string GroupOracle::format_element(ElementCode code) const {
  require_valid(code, "element");
  return format_index(code.bits);
}

ElementCode GroupOracle::code(std::uint64_t index) const {
  ElementCode c{index, width()};
  require_valid(c, "element");
  return c;
}

// ---------------------------------------------------------------------------
// CyclicGroup

CyclicGroup::CyclicGroup(std::uint64_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw std::invalid_argument("cyclic group needs modulus >= 1");
}

std::string CyclicGroup::name() const { return "cyclic(" + std::to_string(modulus_) + ")"; }

std::uint64_t CyclicGroup::multiply_index(std::uint64_t a, std::uint64_t b) const {
  return (a + b) % modulus_;
}

std::uint64_t CyclicGroup::invert_index(std::uint64_t a) const { return (modulus_ - a) % modulus_; }

std::uint64_t CyclicGroup::parse_index(std::string_view text) const {
  auto v = text::parse_u64(text);
  if (!v || *v >= modulus_) bad_literal(name(), text);
  return *v;
}

std::string CyclicGroup::format_index(std::uint64_t index) const { return std::to_string(index); }

// ---------------------------------------------------------------------------
// DihedralGroup

DihedralGroup::DihedralGroup(std::uint64_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("dihedral group needs m >= 1");
}

std::string DihedralGroup::name() const { return "dihedral(" + std::to_string(m_) + ")"; }

// (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j), from r s = s r^-1.
std::uint64_t DihedralGroup::multiply_index(std::uint64_t x, std::uint64_t y) const {
  std::uint64_t a = x / m_, i = x % m_;
  std::uint64_t b = y / m_, j = y % m_;
  std::uint64_t rot = b == 0 ? (i + j) % m_ : (m_ - i + j) % m_;
  return ((a + b) % 2) * m_ + rot;
}

std::uint64_t DihedralGroup::invert_index(std::uint64_t x) const {
  std::uint64_t a = x / m_, i = x % m_;
  if (a == 1) return x;  // reflections are involutions
  return (m_ - i) % m_;
}

std::uint64_t DihedralGroup::parse_index(std::string_view text) const {
  if (auto v = text::parse_u64(text)) {
    if (*v >= order()) bad_literal(name(), text);
    return *v;
  }
  std::uint64_t flip = 0;
  std::string_view rest = text;
  if (!rest.empty() && rest.front() == 's') {
    flip = 1;
    rest.remove_prefix(1);
  }
  std::uint64_t rot = 0;
  if (!rest.empty()) {
    if (rest.front() != 'r') bad_literal(name(), text);
    rest.remove_prefix(1);
    if (rest.empty()) {
      rot = 1;
    } else {
      auto v = text::parse_u64(rest);
      if (!v || *v >= m_) bad_literal(name(), text);
      rot = *v;
    }
  } else if (flip == 0) {
    bad_literal(name(), text);
  }
  return flip * m_ + rot;
}

std::string DihedralGroup::format_index(std::uint64_t index) const { return std::to_string(index); }

// ---------------------------------------------------------------------------
// SymmetricGroup

SymmetricGroup::SymmetricGroup(unsigned degree) : degree_(degree), order_(1) {
  if (degree == 0 || degree > kMaxDegree) {
    throw std::invalid_argument("symmetric group degree must be in 1.." + std::to_string(kMaxDegree));
  }
  for (unsigned i = 2; i <= degree; ++i) order_ *= i;
}

std::string SymmetricGroup::name() const { return "symmetric(" + std::to_string(degree_) + ")"; }

std::vector<unsigned> SymmetricGroup::unrank(std::uint64_t index) const {
  std::vector<unsigned> pool(degree_);
  for (unsigned i = 0; i < degree_; ++i) pool[i] = i;
  std::vector<std::uint64_t> fact(degree_ + 1, 1);
  for (unsigned i = 1; i <= degree_; ++i) fact[i] = fact[i - 1] * i;
  std::vector<unsigned> images;
  images.reserve(degree_);
  for (unsigned pos = 0; pos < degree_; ++pos) {
    std::uint64_t f = fact[degree_ - 1 - pos];
    std::uint64_t digit = index / f;
    index %= f;
    images.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return images;
}

std::uint64_t SymmetricGroup::rank(std::span<const unsigned> images) const {
  std::uint64_t r = 0;
  for (unsigned pos = 0; pos < degree_; ++pos) {
    std::uint64_t smaller_later = 0;
    for (unsigned q = pos + 1; q < degree_; ++q) smaller_later += images[q] < images[pos];
    r = r * (degree_ - pos) + smaller_later;
  }
  return r;
}

std::uint64_t SymmetricGroup::multiply_index(std::uint64_t a, std::uint64_t b) const {
  auto pa = unrank(a), pb = unrank(b);
  std::vector<unsigned> out(degree_);
  for (unsigned x = 0; x < degree_; ++x) out[x] = pa[pb[x]];
  return rank(out);
}

std::uint64_t SymmetricGroup::invert_index(std::uint64_t a) const {
  auto pa = unrank(a);
  std::vector<unsigned> out(degree_);
  for (unsigned x = 0; x < degree_; ++x) out[pa[x]] = x;
  return rank(out);
}

// Cycle notation. Single-digit points may be juxtaposed, "(123)(45)";
// otherwise separate with commas, "(1,2,10)". "()" and "e" are the identity.
// Cycles multiply like permutations: the rightmost cycle acts first.
std::uint64_t SymmetricGroup::parse_index(std::string_view text) const {
  std::vector<unsigned> perm(degree_);
  for (unsigned i = 0; i < degree_; ++i) perm[i] = i;
  if (text.empty()) bad_literal(name(), text);
  if (text == "e" || text == "id") return 0;
  std::vector<std::vector<unsigned>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') bad_literal(name(), text);
    auto close = text.find(')', i);
    if (close == std::string_view::npos) bad_literal(name(), text);
    std::string_view body = text::trim(text.substr(i + 1, close - i - 1));
    std::vector<unsigned> cycle;
    auto take = [&](std::string_view tok) {
      auto v = text::parse_u64(tok);
      if (!v || *v < 1 || *v > degree_) bad_literal(name(), text);
      cycle.push_back(static_cast<unsigned>(*v - 1));
    };
    if (body.find(',') != std::string_view::npos) {
      for (auto tok : text::split_top_level(body, ',')) take(tok);
    } else {
      for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        take(std::string_view(&c, 1));
      }
    }
    std::set<unsigned> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) bad_literal(name(), text);
    cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto &cycle = *it;
    std::vector<unsigned> c(degree_);
    for (unsigned x = 0; x < degree_; ++x) c[x] = x;
    for (std::size_t j = 0; j < cycle.size(); ++j) c[cycle[j]] = cycle[(j + 1) % cycle.size()];
    // perm <- c o perm
    std::vector<unsigned> next(degree_);
    for (unsigned x = 0; x < degree_; ++x) next[x] = c[perm[x]];
    perm = std::move(next);
  }
  return rank(perm);
}

std::string SymmetricGroup::format_index(std::uint64_t index) const {
  auto p = unrank(index);
  std::string out;
  std::vector<bool> seen(degree_, false);
  bool commas = degree_ >= 10;
  for (unsigned start = 0; start < degree_; ++start) {
    if (seen[start] || p[start] == start) continue;
    out += '(';
    unsigned x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first && commas) out += ',';
      out += std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------
// DirectProduct

DirectProduct::DirectProduct(std::shared_ptr<const GroupOracle> left, std::shared_ptr<const GroupOracle> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw std::invalid_argument("direct product needs two factors");
  if (left_->order() > (std::uint64_t{1} << 40) / right_->order()) {
    throw ResourceLimitError("direct product order too large to enumerate");
  }
}

std::string DirectProduct::name() const { return "product(" + left_->name() + ", " + right_->name() + ")"; }

std::uint64_t DirectProduct::order() const { return left_->order() * right_->order(); }

std::uint64_t DirectProduct::multiply_index(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = right_->order();
  return left_->multiply_index(a / r, b / r) * r + right_->multiply_index(a % r, b % r);
}

std::uint64_t DirectProduct::invert_index(std::uint64_t a) const {
  std::uint64_t r = right_->order();
  return left_->invert_index(a / r) * r + right_->invert_index(a % r);
}

std::uint64_t DirectProduct::identity_index() const {
  return left_->identity_index() * right_->order() + right_->identity_index();
}

std::uint64_t DirectProduct::parse_index(std::string_view text) const {
  text = text::trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') bad_literal(name(), text);
  auto parts = text::split_top_level(text.substr(1, text.size() - 2), ',');
  if (parts.size() != 2) bad_literal(name(), text);
  return left_->parse_index(parts[0]) * right_->order() + right_->parse_index(parts[1]);
}

std::string DirectProduct::format_index(std::uint64_t index) const {
  std::uint64_t r = right_->order();
  return "[" + left_->format_index(index / r) + ", " + right_->format_index(index % r) + "]";
}

// ---------------------------------------------------------------------------

std::shared_ptr<const GroupOracle> make_group(std::string_view description) {
  auto call = text::split_call(description);
  if (!call) throw ParseError("group description '" + std::string(description) + "' is not of the form kind(params)");
  auto [kind, args] = *call;
  auto one_param = [&]() -> std::uint64_t {
    auto v = text::parse_u64(args);
    if (!v) throw ParseError("group '" + std::string(kind) + "' needs one integer parameter, got '" + std::string(args) + "'");
    return *v;
  };
  try {
    if (kind == "cyclic" || kind == "Z") return std::make_shared<CyclicGroup>(one_param());
    if (kind == "dihedral" || kind == "D") return std::make_shared<DihedralGroup>(one_param());
    if (kind == "symmetric" || kind == "S") {
      auto k = one_param();
      if (k > SymmetricGroup::kMaxDegree) throw ParseError("symmetric degree too large: " + std::to_string(k));
      return std::make_shared<SymmetricGroup>(static_cast<unsigned>(k));
    }
    if (kind == "product") {
      auto parts = text::split_top_level(args, ',');
      if (parts.size() < 2) throw ParseError("product needs at least two factors");
      auto acc = make_group(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) acc = std::make_shared<DirectProduct>(acc, make_group(parts[i]));
      return acc;
    }
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown group kind '" + std::string(kind) + "'");
}

std::vector<ElementCode> closure(const GroupOracle &oracle, std::span<const ElementCode> generators,
                                 std::size_t cap) {
  std::vector<ElementCode> steps;
  for (auto g : generators) {
    steps.push_back(oracle.invert(g));  // validates g
    steps.push_back(g);
  }
  std::unordered_set<std::uint64_t> seen{oracle.identity_index()};
  std::deque<std::uint64_t> frontier{oracle.identity_index()};
  while (!frontier.empty()) {
    auto x = frontier.front();
    frontier.pop_front();
    for (auto s : steps) {
      auto y = oracle.multiply_index(x, s.bits);
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          throw ResourceLimitError("subgroup closure exceeds cap of " + std::to_string(cap) + " elements");
        }
        frontier.push_back(y);
      }
    }
  }
  std::vector<ElementCode> out;
  out.reserve(seen.size());
  for (auto x : seen) out.push_back(ElementCode{x, oracle.width()});
  std::sort(out.begin(), out.end());
  return out;
}

mpq_class default_epsilon(unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n + 3);
  return mpq_class(mpz_class(1), den);
}

mpq_class ProblemInstance::effective_epsilon() const {
  if (epsilon) return *epsilon;
  return default_epsilon(oracle->width());
}

ValidationResult validate_instance(const ProblemInstance &instance, ValidationMode mode) {
  if (!instance.oracle) throw std::invalid_argument("instance has no group oracle");
  const auto &oracle = *instance.oracle;
  if (instance.generators.empty()) throw std::invalid_argument("instance needs at least one generator");
  for (std::size_t i = 0; i < instance.generators.size(); ++i) {
    if (!oracle.is_valid(instance.generators[i])) {
      throw InvalidCodeError("generator " + std::to_string(i + 1) + " is not a valid code of " + oracle.name());
    }
  }
  if (!oracle.is_valid(instance.target)) throw InvalidCodeError("target is not a valid code of " + oracle.name());
  if (instance.claimed_order < 1) throw std::invalid_argument("claimed order must be >= 1");
  if (oracle.width() < 64 && instance.claimed_order > (std::uint64_t{1} << oracle.width())) {
    throw std::invalid_argument("claimed order " + std::to_string(instance.claimed_order) + " exceeds 2^n = " +
                                std::to_string(std::uint64_t{1} << oracle.width()));
  }
  if (instance.epsilon && *instance.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");

  ValidationResult result;
  result.mode = mode;
  if (mode == ValidationMode::kCheck) {
    auto h = closure(oracle, instance.generators);
    result.true_order = h.size();
    result.order_matches = h.size() == instance.claimed_order;
    result.target_is_member = std::binary_search(h.begin(), h.end(), instance.target);
  }
  return result;
}

}  // namespace gnmawpp
