#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gnmawpp/dyadic.h"
#include "gnmawpp/errors.h"
#include "gnmawpp/pipeline.h"
#include "text_util.h"

namespace gnmawpp {

mpq_class parse_rational(std::string_view text) {
  auto s = text::trim(text);
  auto fail = [&]() -> mpq_class { throw ParseError("'" + std::string(text) + "' is not a rational number"); };
  if (s.starts_with("2^-")) {
    auto k = text::parse_u64(s.substr(3));
    if (!k || *k > 100000) return fail();
    return mpq_class(mpz_class(1), pow2(*k));
  }
  auto slash = s.find('/');
  auto num_text = text::trim(s.substr(0, slash));
  auto num = text::parse_u64(num_text);
  if (!num) return fail();
  if (slash == std::string_view::npos) return mpq_class(mpz_class(std::to_string(*num)));
  auto den = text::parse_u64(s.substr(slash + 1));
  if (!den || *den == 0) return fail();
  mpq_class q(mpz_class(std::to_string(*num)), mpz_class(std::to_string(*den)));
  q.canonicalize();
  return q;
}

namespace {

struct Field {
  std::string value;
  std::size_t line = 0;
};

std::vector<std::string_view> parse_list(std::string_view value) {
  value = text::trim(value);
  if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
    value = text::trim(value.substr(1, value.size() - 2));
    if (value.empty()) return {};
    return text::split_top_level(value, ',');
  }
  return {value};
}

}  // namespace

ProblemInstance parse_instance_text(std::string_view body, std::string_view source) {
  std::map<std::string, Field> fields;
  std::size_t line_no = 0;
  std::istringstream in{std::string(body)};
  std::string raw;
  auto error_at = [&](std::size_t line, const std::string &msg) {
    return ParseError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw error_at(line_no, "expected 'key = value'");
    std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    static const std::set<std::string> known{"group", "params", "generators", "target", "order", "epsilon", "steps"};
    if (!known.contains(key)) throw error_at(line_no, "unknown field '" + key + "'");
    if (fields.contains(key)) throw error_at(line_no, "duplicate field '" + key + "'");
    fields[key] = Field{value, line_no};
  }
  auto require = [&](const std::string &key) -> const Field & {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(std::string(source) + ": missing field '" + key + "'");
    return it->second;
  };

  ProblemInstance inst;
  const Field &group = require("group");
  std::string description = group.value;
  if (auto params = fields.find("params"); params != fields.end()) {
    description += "(" + params->second.value + ")";
  }
  try {
    inst.oracle = make_group(description);
  } catch (const ParseError &e) {
    throw error_at(group.line, e.what());
  } catch (const ResourceLimitError &e) {
    throw error_at(group.line, e.what());
  }

  const Field &gens = require("generators");
  try {
    for (auto g : parse_list(gens.value)) inst.generators.push_back(inst.oracle->parse_element(g));
  } catch (const InvalidCodeError &e) {
    throw error_at(gens.line, e.what());
  }
  if (inst.generators.empty()) throw error_at(gens.line, "at least one generator is required");

  const Field &target = require("target");
  try {
    inst.target = inst.oracle->parse_element(target.value);
  } catch (const InvalidCodeError &e) {
    throw error_at(target.line, e.what());
  }

  const Field &order = require("order");
  auto claimed = text::parse_u64(order.value);
  if (!claimed) throw error_at(order.line, "order must be a non-negative integer");
  if (*claimed < 1) throw error_at(order.line, "order must be >= 1");
  const unsigned n = inst.oracle->width();
  if (n < 64 && *claimed > (std::uint64_t{1} << n)) {
    throw error_at(order.line, "order exceeds 2^n = " + std::to_string(std::uint64_t{1} << n));
  }
  inst.claimed_order = *claimed;

  if (auto it = fields.find("epsilon"); it != fields.end()) {
    try {
      inst.epsilon = parse_rational(it->second.value);
    } catch (const ParseError &e) {
      throw error_at(it->second.line, e.what());
    }
    if (*inst.epsilon <= 0) throw error_at(it->second.line, "epsilon must be positive");
  }
  if (auto it = fields.find("steps"); it != fields.end()) {
    auto s = text::parse_u64(it->second.value);
    if (!s || *s > 1000000) throw error_at(it->second.line, "steps must be a small non-negative integer");
    inst.steps = static_cast<unsigned>(*s);
  }
  return inst;
}

ProblemInstance parse_instance(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance_text(ss.str(), path);
}

}  // namespace gnmawpp
