#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "gnmawpp/errors.h"
#include "gnmawpp/pipeline.h"

namespace gnmawpp {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kSchema = "gnm-awpp-report/1";

std::string str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t to_u64(const ordered_json &j) {
  const auto &s = j.get_ref<const std::string &>();
  std::size_t used = 0;
  auto v = std::stoull(s, &used);
  if (used != s.size()) throw ParseError("'" + s + "' is not a decimal integer");
  return v;
}

mpz_class to_mpz(const ordered_json &j) {
  mpz_class v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("'" + j.get<std::string>() + "' is not an integer");
  return v;
}

mpq_class to_mpq(const ordered_json &j) {
  mpq_class v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("'" + j.get<std::string>() + "' is not a rational");
  v.canonicalize();
  return v;
}

ordered_json dyadic_json(const Dyadic &d) {
  return {{"numerator", d.numerator().get_str()},
          {"exponent", std::to_string(d.exponent())},
          {"value", rational_string(d.to_rational())}};
}

Dyadic dyadic_from(const ordered_json &j) { return Dyadic(to_mpz(j.at("numerator")), to_u64(j.at("exponent"))); }

ordered_json probability_json(const ProbabilityReport &r) {
  return {{"sum_gamma_sq", r.sum_gamma_sq.get_str()},
          {"plus_norm", r.plus_norm.get_str()},
          {"minus_norm", r.minus_norm.get_str()},
          {"p_post", dyadic_json(r.p_post)},
          {"p_o0_joint", dyadic_json(r.p_o0_joint)},
          {"p_o1_joint", dyadic_json(r.p_o1_joint)},
          {"p_o0_given", rational_string(r.p_o0_given)},
          {"p_o1_given", rational_string(r.p_o1_given)},
          {"t_bits", str(r.t_bits)},
          {"s_bits", str(r.s_bits)}};
}

ProbabilityReport probability_from(const ordered_json &j) {
  ProbabilityReport r;
  r.sum_gamma_sq = to_mpz(j.at("sum_gamma_sq"));
  r.plus_norm = to_mpz(j.at("plus_norm"));
  r.minus_norm = to_mpz(j.at("minus_norm"));
  r.p_post = dyadic_from(j.at("p_post"));
  r.p_o0_joint = dyadic_from(j.at("p_o0_joint"));
  r.p_o1_joint = dyadic_from(j.at("p_o1_joint"));
  r.p_o0_given = to_mpq(j.at("p_o0_given"));
  r.p_o1_given = to_mpq(j.at("p_o1_given"));
  r.t_bits = to_u64(j.at("t_bits"));
  r.s_bits = to_u64(j.at("s_bits"));
  return r;
}

RunMode mode_from(const std::string &s) {
  if (s == "analytic") return RunMode::kAnalytic;
  if (s == "brute") return RunMode::kBrute;
  if (s == "both") return RunMode::kBoth;
  throw ParseError("unknown mode '" + s + "'");
}

ordered_json structured(const RunReport &r) {
  ordered_json j;
  j["schema"] = kSchema;
  j["mode"] = run_mode_name(r.mode);
  j["instance"] = {{"group", r.instance.group},
                   {"generators", r.instance.generators},
                   {"target", r.instance.target},
                   {"claimed_order", str(r.instance.claimed_order)},
                   {"n", str(r.instance.n)},
                   {"epsilon", rational_string(r.instance.epsilon)},
                   {"epsilon_is_default", r.instance.epsilon_is_default}};
  ordered_json counts = ordered_json::array();
  for (const auto &[g, c] : r.gamma.counts) counts.push_back({{"element", g}, {"gamma", c.get_str()}});
  j["sampler"] = {{"steps", str(r.gamma.steps)},
                  {"bits_per_step", str(r.gamma.bits_per_step)},
                  {"total_bits", str(r.gamma.total_bits)},
                  {"steps_searched", r.gamma.steps_searched},
                  {"subgroup_order", str(r.gamma.subgroup_order)},
                  {"max_deviation", rational_string(r.gamma.max_deviation)},
                  {"deviation_below_epsilon", r.gamma.deviation_below_epsilon},
                  {"counts", counts}};
  if (r.analytic) j["analytic"] = probability_json(*r.analytic);
  if (r.brute) j["brute"] = probability_json(*r.brute);
  if (r.comparison) {
    ordered_json mism = ordered_json::array();
    for (const auto &m : r.comparison->mismatches) {
      mism.push_back(
          {{"field", m.field}, {"analytic", m.analytic}, {"brute", m.brute}, {"ratio", rational_string(m.ratio)}});
    }
    j["comparison"] = {{"all_equal", r.comparison->all_equal}, {"mismatches", mism}};
  }
  const auto &c = r.certificate;
  j["certificate"] = {{"g_w", c.g_w.get_str()},
                      {"q", str(c.q)},
                      {"G", c.G.get_str()},
                      {"F", rational_string(c.F)},
                      {"f_integral", c.f_integral},
                      {"ratio", rational_string(c.ratio)},
                      {"epsilon", rational_string(c.epsilon)},
                      {"n", str(c.n)},
                      {"s_bits", str(c.s_bits)},
                      {"t_bits", str(c.t_bits)},
                      {"claimed_order", str(c.claimed_order)},
                      {"guard", {{"value", rational_string(c.guard.value)}, {"passes", c.guard.passes}}},
                      {"decision", decision_name(c.decision)}};
  if (r.ground_truth) {
    j["ground_truth"] = {{"true_order", str(r.ground_truth->true_order)},
                         {"order_matches", r.ground_truth->order_matches},
                         {"target_is_member", r.ground_truth->target_is_member},
                         {"decision_consistent", r.ground_truth->decision_consistent}};
  }
  if (r.monte_carlo) {
    j["monte_carlo"] = {{"seed", str(r.monte_carlo->seed)},
                        {"trials", str(r.monte_carlo->trials)},
                        {"max_standard_score", r.monte_carlo->max_standard_score},
                        {"within_five_sigma", r.monte_carlo->within_five_sigma}};
  }
  j["warnings"] = r.warnings;
  j["exit_status"] = static_cast<int>(r.status);
  return j;
}

std::string decimal(const mpq_class &q) {
  std::ostringstream os;
  os << std::setprecision(9) << q.get_d();
  return os.str();
}

void probability_table(std::ostringstream &os, const std::string &title, const ProbabilityReport &p) {
  os << title << "\n";
  os << "  " << std::left << std::setw(20) << "quantity" << std::setw(34) << "exact" << "decimal\n";
  auto row = [&](const std::string &name, const std::string &exact, const std::string &dec) {
    os << "  " << std::left << std::setw(20) << name << std::setw(34) << exact << dec << "\n";
  };
  row("sum gamma^2", p.sum_gamma_sq.get_str(), "");
  row("<h+|h+>", p.plus_norm.get_str(), "");
  row("<h-|h->", p.minus_norm.get_str(), "");
  row("P(p=1)", rational_string(p.p_post.to_rational()), decimal(p.p_post.to_rational()));
  row("P(o=0,p=1)", rational_string(p.p_o0_joint.to_rational()), decimal(p.p_o0_joint.to_rational()));
  row("P(o=1,p=1)", rational_string(p.p_o1_joint.to_rational()), decimal(p.p_o1_joint.to_rational()));
  row("P(o=0|p=1)", rational_string(p.p_o0_given), decimal(p.p_o0_given));
  row("P(o=1|p=1)", rational_string(p.p_o1_given), decimal(p.p_o1_given));
  row("s, t (bits)", std::to_string(p.s_bits) + ", " + std::to_string(p.t_bits), "");
}

std::string text(const RunReport &r) {
  std::ostringstream os;
  const auto &in = r.instance;
  os << "instance\n";
  os << "  group      " << in.group << "  (n = " << in.n << ")\n";
  os << "  generators [";
  for (std::size_t i = 0; i < in.generators.size(); ++i) os << (i ? ", " : "") << in.generators[i];
  os << "]\n";
  os << "  target     " << in.target << "\n";
  os << "  |H| claim  " << in.claimed_order << "\n";
  os << "  epsilon    " << rational_string(in.epsilon) << (in.epsilon_is_default ? "  (default 2^-(n+3))" : "")
     << "\n\n";

  const auto &g = r.gamma;
  os << "sampler\n";
  os << "  steps " << g.steps << (g.steps_searched ? " (shortest meeting epsilon)" : " (fixed)") << ", "
     << g.bits_per_step << " bits/step, S = " << g.total_bits << "\n";
  os << "  |H| (closure) " << g.subgroup_order << ", max deviation " << rational_string(g.max_deviation) << " ("
     << decimal(g.max_deviation) << ") " << (g.deviation_below_epsilon ? "<" : ">=") << " epsilon\n";
  if (g.counts.size() <= 32) {
    os << "  gamma:";
    for (const auto &[e, c] : g.counts) {
      std::string cs = c.get_str();
      os << "  " << e << " -> " << (cs.size() > 24 ? cs.substr(0, 12) + "...(" + std::to_string(cs.size()) + " digits)" : cs);
    }
    os << "\n";
  }
  os << "\n";

  if (r.analytic) probability_table(os, "probabilities (analytic)", *r.analytic);
  if (r.brute) probability_table(os, "probabilities (brute force)", *r.brute);
  if (r.comparison) {
    os << "cross-check: " << (r.comparison->all_equal ? "all fields exactly equal" : "MISMATCH") << "\n";
    for (const auto &m : r.comparison->mismatches) {
      os << "  " << m.field << ": analytic " << m.analytic << " vs brute " << m.brute << " (ratio "
         << rational_string(m.ratio) << ")\n";
    }
  }
  os << "\n";

  const auto &c = r.certificate;
  os << "certificate\n";
  os << "  g(w)       " << c.g_w.get_str() << "  (q = " << c.q << ")\n";
  os << "  G(w)       " << c.G.get_str() << "\n";
  os << "  F(w)       " << rational_string(c.F) << (c.f_integral ? "" : "  (not an integer)") << "\n";
  os << "  G/F        " << rational_string(c.ratio) << "  ~ " << decimal(c.ratio) << "\n";
  os << "  guard      3/(4(1+2^(2n)eps^2)^2) = " << rational_string(c.guard.value) << (c.guard.passes ? " > 2/3" : " <= 2/3")
     << "\n";
  os << "  decision   " << decision_name(c.decision) << "\n";
  switch (c.decision) {
    case Decision::kNonMember:
      os << "  2/3 ≤ ratio ≤ 1\n";
      break;
    case Decision::kMember:
      os << "  0 ≤ ratio ≤ 1/3\n";
      break;
    case Decision::kInvalid:
      os << "  ratio in neither [0, 1/3] nor [2/3, 1]" << (c.guard.passes ? "" : " (guard failed)") << "\n";
      break;
  }

  if (r.ground_truth) {
    const auto &t = *r.ground_truth;
    os << "\nground truth (closure)\n";
    os << "  true |H|   " << t.true_order << (t.order_matches ? " (matches claim)" : " (DIFFERS from claim)") << "\n";
    os << "  target     " << (t.target_is_member ? "in H" : "not in H") << "\n";
    os << "  decision   " << (t.decision_consistent ? "consistent" : "INCONSISTENT") << "\n";
  }
  if (r.monte_carlo) {
    os << "\nmonte carlo\n";
    os << "  seed " << r.monte_carlo->seed << ", " << r.monte_carlo->trials << " trials, max |z| = "
       << r.monte_carlo->max_standard_score << (r.monte_carlo->within_five_sigma ? " (within 5 sigma)" : " (EXCEEDS 5 sigma)")
       << "\n";
  }
  if (!r.warnings.empty()) {
    os << "\n";
    for (const auto &w : r.warnings) {
      os << (c.decision == Decision::kInvalid ? "WARNING: certificate unsound: " : "WARNING: ") << w << "\n";
    }
  }
  os << "\ntimings: sampler " << std::fixed << std::setprecision(1) << r.timings.sampler_ms << " ms";
  if (r.analytic) os << ", analytic " << r.timings.analytic_ms << " ms";
  if (r.brute) os << ", brute force " << r.timings.brute_ms << " ms";
  os << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const RunReport &report, ReportFormat format) {
  if (format == ReportFormat::kStructured) return structured(report).dump(2) + "\n";
  return text(report);
}

RunReport parse_report(std::string_view document) {
  ordered_json j;
  try {
    j = ordered_json::parse(document);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema") != kSchema) throw ParseError("unsupported report schema");
    RunReport r;
    r.mode = mode_from(j.at("mode"));
    const auto &in = j.at("instance");
    r.instance.group = in.at("group");
    r.instance.generators = in.at("generators").get<std::vector<std::string>>();
    r.instance.target = in.at("target");
    r.instance.claimed_order = to_u64(in.at("claimed_order"));
    r.instance.n = static_cast<unsigned>(to_u64(in.at("n")));
    r.instance.epsilon = to_mpq(in.at("epsilon"));
    r.instance.epsilon_is_default = in.at("epsilon_is_default");

    const auto &s = j.at("sampler");
    r.gamma.steps = static_cast<unsigned>(to_u64(s.at("steps")));
    r.gamma.bits_per_step = static_cast<unsigned>(to_u64(s.at("bits_per_step")));
    r.gamma.total_bits = to_u64(s.at("total_bits"));
    r.gamma.steps_searched = s.at("steps_searched");
    r.gamma.subgroup_order = to_u64(s.at("subgroup_order"));
    r.gamma.max_deviation = to_mpq(s.at("max_deviation"));
    r.gamma.deviation_below_epsilon = s.at("deviation_below_epsilon");
    for (const auto &e : s.at("counts")) r.gamma.counts.emplace_back(e.at("element"), to_mpz(e.at("gamma")));

    if (j.contains("analytic")) r.analytic = probability_from(j.at("analytic"));
    if (j.contains("brute")) r.brute = probability_from(j.at("brute"));
    if (j.contains("comparison")) {
      ComparisonResult cmp;
      cmp.all_equal = j.at("comparison").at("all_equal");
      for (const auto &m : j.at("comparison").at("mismatches")) {
        cmp.mismatches.push_back({m.at("field"), m.at("analytic"), m.at("brute"), to_mpq(m.at("ratio"))});
      }
      r.comparison = cmp;
    }
    const auto &c = j.at("certificate");
    r.certificate.g_w = to_mpz(c.at("g_w"));
    r.certificate.q = to_u64(c.at("q"));
    r.certificate.G = to_mpz(c.at("G"));
    r.certificate.F = to_mpq(c.at("F"));
    r.certificate.f_integral = c.at("f_integral");
    r.certificate.ratio = to_mpq(c.at("ratio"));
    r.certificate.epsilon = to_mpq(c.at("epsilon"));
    r.certificate.n = static_cast<unsigned>(to_u64(c.at("n")));
    r.certificate.s_bits = to_u64(c.at("s_bits"));
    r.certificate.t_bits = to_u64(c.at("t_bits"));
    r.certificate.claimed_order = to_u64(c.at("claimed_order"));
    r.certificate.guard.value = to_mpq(c.at("guard").at("value"));
    r.certificate.guard.passes = c.at("guard").at("passes");
    r.certificate.decision = parse_decision(c.at("decision").get<std::string>());
    if (j.contains("ground_truth")) {
      const auto &t = j.at("ground_truth");
      r.ground_truth = GroundTruth{to_u64(t.at("true_order")), t.at("order_matches"), t.at("target_is_member"),
                                   t.at("decision_consistent")};
    }
    if (j.contains("monte_carlo")) {
      const auto &m = j.at("monte_carlo");
      r.monte_carlo = MonteCarloSummary{to_u64(m.at("seed")), to_u64(m.at("trials")), m.at("max_standard_score"),
                                        m.at("within_five_sigma")};
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.status = static_cast<ExitStatus>(j.at("exit_status").get<int>());
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  } catch (const std::out_of_range &e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace gnmawpp
