#include "gnmawpp/statevector.h"

#include <algorithm>
#include <unordered_map>

#include "gnmawpp/errors.h"

namespace gnmawpp {

std::vector<Branch> enumerate_branches(const WalkConfig &config, const GroupOracle &oracle, unsigned cap) {
  if (cap > kMaxEnumerationCap) {
    throw std::invalid_argument("enumeration cap above " + std::to_string(kMaxEnumerationCap) + " bits");
  }
  const auto s = config.total_bits();
  if (s > cap) {
    throw ResourceLimitError("brute-force enumeration needs S = " + std::to_string(s) +
                             " random bits, cap is " + std::to_string(cap));
  }
  std::vector<Branch> out;
  out.reserve(std::size_t{1} << s);
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << s); ++z) {
    out.push_back(Branch{z, config.endpoint(oracle, z), z});
  }
  return out;
}

void SparseAmplitudeState::add(const BasisLabel &label, const mpz_class &amplitude) {
  if (amplitude == 0) return;
  auto [it, inserted] = amplitudes_.try_emplace(label, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second == 0) amplitudes_.erase(it);
  }
}

Dyadic SparseAmplitudeState::squared_norm() const {
  mpz_class total = 0;
  for (const auto &[label, a] : amplitudes_) total += a * a;
  return Dyadic(total, half_exponent_);
}

Dyadic SparseAmplitudeState::squared_norm_with_ancilla(std::uint8_t ancilla) const {
  mpz_class total = 0;
  for (const auto &[label, a] : amplitudes_) {
    if (label.ancilla == ancilla) total += a * a;
  }
  return Dyadic(total, half_exponent_);
}

namespace {

// One copy of the single-register circuit for a fixed branch: element
// register, coupled qubit, and the branch's garbage. Amplitudes are
// integers over sqrt(2)^half_exponent.
struct CopyTerm {
  std::uint64_t element;
  std::uint8_t qubit;
  std::int64_t amplitude;
};

struct CopyState {
  std::vector<CopyTerm> terms;
  unsigned long half_exponent = 0;
  std::uint64_t garbage = 0;
};

// (1/sqrt N)|eta_z>|phi_z> coupled with |+>.
CopyState prepare_branch(const Branch &b, unsigned long s_bits) {
  return CopyState{{{b.eta.bits, 0, 1}, {b.eta.bits, 1, 1}}, s_bits + 1, b.garbage};
}

void controlled_multiply(CopyState &state, const GroupOracle &oracle, ElementCode h) {
  for (auto &term : state.terms) {
    if (term.qubit == 1) term.element = oracle.multiply_index(term.element, h.bits);
  }
}

void hadamard_coupled_qubit(CopyState &state) {
  std::vector<CopyTerm> out;
  auto add = [&](std::uint64_t e, std::uint8_t q, std::int64_t a) {
    for (auto &t : out) {
      if (t.element == e && t.qubit == q) {
        t.amplitude += a;
        return;
      }
    }
    out.push_back({e, q, a});
  };
  for (const auto &t : state.terms) {
    add(t.element, 0, t.amplitude);
    add(t.element, 1, t.qubit == 0 ? t.amplitude : -t.amplitude);
  }
  std::erase_if(out, [](const CopyTerm &t) { return t.amplitude == 0; });
  state.terms = std::move(out);
  state.half_exponent += 1;
}

}  // namespace

BruteForceResult simulate_full_detailed(const ProblemInstance &instance, const WalkConfig &config, unsigned cap) {
  const GroupOracle &oracle = *instance.oracle;
  const ElementCode h = instance.target;
  if (!oracle.is_valid(h)) throw InvalidCodeError("target is not a valid code of " + oracle.name());
  const auto branches = enumerate_branches(config, oracle, cap);
  const unsigned long s_bits = config.total_bits();
  const unsigned long t_bits = s_bits;  // phi_z = z

  std::vector<CopyState> copies;
  copies.reserve(branches.size());
  for (const auto &b : branches) {
    CopyState c = prepare_branch(b, s_bits);
    controlled_multiply(c, oracle, h);
    hadamard_coupled_qubit(c);
    copies.push_back(std::move(c));
  }

  // Dense slots for every element that can appear in a register.
  std::vector<std::uint64_t> touched;
  for (const auto &c : copies) {
    for (const auto &t : c.terms) touched.push_back(t.element);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < touched.size(); ++i) slot.emplace(touched[i], i);
  const std::size_t p = touched.size();
  struct SlotTerm {
    std::size_t slot;
    unsigned qubit;
    std::int64_t amplitude;
  };
  std::vector<std::vector<SlotTerm>> slotted(copies.size());
  for (std::size_t i = 0; i < copies.size(); ++i) {
    for (const auto &t : copies[i].terms) slotted[i].push_back({slot.at(t.element), t.qubit, t.amplitude});
  }

  // Single copy, garbage projected onto |+^t>: the qubit-0 / qubit-1
  // components are |h+> / |h-> over sqrt(2)^(S+2+t).
  std::vector<std::int64_t> single(p * 2, 0);
  std::map<std::uint64_t, std::uint64_t> endpoint_hits;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    for (const auto &t : slotted[i]) single[t.slot * 2 + t.qubit] += t.amplitude;
    ++endpoint_hits[branches[i].eta.bits];
  }

  // Two copies with ancilla |1>_a, flipped when the flag pair is |00>; then
  // both garbage registers projected onto |+^t>, which multiplies every
  // amplitude by 1/sqrt(2)^(2t). Accumulate per label (e1, q1, e2, q2, a).
  const unsigned long pair_half_exponent = 2 * (s_bits + 2);
  std::vector<std::int64_t> projected(p * 2 * p * 2 * 2, 0);
  auto index = [p](std::size_t e1, unsigned q1, std::size_t e2, unsigned q2, unsigned a) {
    return (((e1 * 2 + q1) * p + e2) * 2 + q2) * 2 + a;
  };
  mpz_class pre_norm = 0;
  mpz_class equal_endpoint_pairs = 0;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto &c1 = slotted[i];
    std::int64_t block_norm = 0;
    std::int64_t equal_here = 0;
    for (std::size_t j = 0; j < copies.size(); ++j) {
      const auto &c2 = slotted[j];
      equal_here += branches[i].eta == branches[j].eta;
      for (const auto &t1 : c1) {
        for (const auto &t2 : c2) {
          const std::int64_t a = t1.amplitude * t2.amplitude;
          const unsigned ancilla = (t1.qubit == 0 && t2.qubit == 0) ? 0 : 1;
          // Labels within the (z, z') block are distinct and blocks are
          // orthogonal through their garbage, so norms add termwise.
          block_norm += a * a;
          projected[index(t1.slot, t1.qubit, t2.slot, t2.qubit, ancilla)] += a;
        }
      }
    }
    pre_norm += block_norm;
    equal_endpoint_pairs += equal_here;
  }

  BruteForceResult result;
  result.pre_postselection_norm = Dyadic(pre_norm, pair_half_exponent);
  SparseAmplitudeState post(pair_half_exponent + 2 * t_bits);
  for (std::size_t e1 = 0; e1 < p; ++e1) {
    for (unsigned q1 = 0; q1 < 2; ++q1) {
      for (std::size_t e2 = 0; e2 < p; ++e2) {
        for (unsigned q2 = 0; q2 < 2; ++q2) {
          for (unsigned a = 0; a < 2; ++a) {
            auto amp = projected[index(e1, q1, e2, q2, a)];
            if (amp == 0) continue;
            BasisLabel label{touched[e1], static_cast<std::uint8_t>(q1), touched[e2], static_cast<std::uint8_t>(q2),
                             static_cast<std::uint8_t>(a), 0, 0};
            post.add(label, mpz_class(static_cast<long>(amp)));
          }
        }
      }
    }
  }

  ProbabilityReport &r = result.report;
  r.s_bits = s_bits;
  r.t_bits = t_bits;
  r.sum_gamma_sq = equal_endpoint_pairs;
  r.plus_norm = 0;
  r.minus_norm = 0;
  for (std::size_t e = 0; e < p; ++e) {
    mpz_class plus = static_cast<long>(single[e * 2]);
    mpz_class minus = static_cast<long>(single[e * 2 + 1]);
    r.plus_norm += plus * plus;
    r.minus_norm += minus * minus;
  }
  r.p_post = post.squared_norm();
  r.p_o0_joint = post.squared_norm_with_ancilla(0);
  r.p_o1_joint = post.squared_norm_with_ancilla(1);
  const mpq_class post_q = r.p_post.to_rational();
  r.p_o0_given = r.p_o0_joint.to_rational() / post_q;
  r.p_o1_given = r.p_o1_joint.to_rational() / post_q;
  result.postselected = std::move(post);

  // <+^t|garbage(g)> = (1/sqrt(gamma_g)) sum_{z: eta_z = g} <+^t|z>, and
  // each <+^t|z> is 1/sqrt(2^t); square it.
  const mpz_class two_t = pow2(t_bits);
  for (const auto &[g, hits] : endpoint_hits) {
    mpz_class sum_overlaps = hits;  // in units of 1/sqrt(2^t)
    mpq_class sq(sum_overlaps * sum_overlaps, mpz_class(hits) * two_t);
    sq.canonicalize();
    result.garbage_overlap.emplace(ElementCode{g, oracle.width()}, sq);
  }
  return result;
}

ProbabilityReport simulate_full(const ProblemInstance &instance, const WalkConfig &config, unsigned cap) {
  return simulate_full_detailed(instance, config, cap).report;
}

namespace {

void compare_field(ComparisonResult &out, std::string field, const mpq_class &a, const mpq_class &b,
                   std::string a_text, std::string b_text) {
  if (a == b) return;
  out.all_equal = false;
  mpq_class ratio = b == 0 ? mpq_class(0) : mpq_class(a / b);
  out.mismatches.push_back({std::move(field), std::move(a_text), std::move(b_text), ratio});
}

void compare_int(ComparisonResult &out, std::string field, const mpz_class &a, const mpz_class &b) {
  compare_field(out, std::move(field), mpq_class(a), mpq_class(b), a.get_str(), b.get_str());
}

void compare_dyadic(ComparisonResult &out, std::string field, const Dyadic &a, const Dyadic &b) {
  compare_field(out, std::move(field), a.to_rational(), b.to_rational(), a.to_string(), b.to_string());
}

void compare_rational(ComparisonResult &out, std::string field, const mpq_class &a, const mpq_class &b) {
  compare_field(out, std::move(field), a, b, rational_string(a), rational_string(b));
}

}  // namespace

ComparisonResult compare_reports(const ProbabilityReport &analytic, const ProbabilityReport &brute) {
  ComparisonResult out;
  compare_int(out, "sum_gamma_sq", analytic.sum_gamma_sq, brute.sum_gamma_sq);
  compare_int(out, "plus_norm", analytic.plus_norm, brute.plus_norm);
  compare_int(out, "minus_norm", analytic.minus_norm, brute.minus_norm);
  compare_dyadic(out, "p_post", analytic.p_post, brute.p_post);
  compare_dyadic(out, "p_o0_joint", analytic.p_o0_joint, brute.p_o0_joint);
  compare_dyadic(out, "p_o1_joint", analytic.p_o1_joint, brute.p_o1_joint);
  compare_rational(out, "p_o0_given", analytic.p_o0_given, brute.p_o0_given);
  compare_rational(out, "p_o1_given", analytic.p_o1_given, brute.p_o1_given);
  compare_int(out, "t_bits", analytic.t_bits, brute.t_bits);
  compare_int(out, "s_bits", analytic.s_bits, brute.s_bits);
  return out;
}

}  // namespace gnmawpp
