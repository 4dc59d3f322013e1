#include "mucont/realizer.hpp"

#include <string>

#include "mucont/error.hpp"
#include "mucont/fixpoint.hpp"

namespace mucont {

namespace {

void require_carriers(const RealizerProblem& p) {
  if (!same_space(p.g.domain(), p.xi.values)) throw PreconditionError("g: domain is not the value grid of xi");
  if (!same_space(p.g.codomain(), p.upsilon.values)) {
    throw PreconditionError("g: codomain is not the value grid of upsilon");
  }
  if (p.candidate) {
    if (!same_space(p.candidate->domain(), p.xi.words)) {
      throw PreconditionError("candidate: domain is not the code space of xi");
    }
    if (!same_space(p.candidate->codomain(), p.upsilon.words)) {
      throw PreconditionError("candidate: codomain is not the code space of upsilon");
    }
  }
}

const Multifunction& require_candidate(const RealizerProblem& p) {
  if (!p.candidate) throw PreconditionError("candidate: missing");
  if (!p.candidate->is_single_valued()) throw PreconditionError("candidate: not single-valued");
  return *p.candidate;
}

}  // namespace

RealizerConditions realizer_conditions(const RealizerProblem& p) {
  require_carriers(p);
  const auto& G = require_candidate(p);
  const auto g_xi = mf_compose(p.g, p.xi.forward);
  const auto upsilon_G = mf_compose(p.upsilon.forward, G);

  RealizerConditions out;
  out.realizes = is_restriction(g_xi, upsilon_G);
  out.pushforward = is_restriction(p.g, mf_compose(p.upsilon.forward, mf_compose(G, p.xi.inverse)));
  out.pullback = is_restriction(mf_compose(p.upsilon.inverse, g_xi), G);
  for (auto w : g_xi.dom()) {
    const auto decoded = upsilon_G.values(w);
    if (decoded.empty() || !g_xi.contains(w, decoded[0])) {
      out.witness = w;
      break;
    }
  }
  return out;
}

ForwardModulus forward_modulus(const RealizerProblem& p, const std::optional<Modulus>& mu_prime) {
  require_carriers(p);
  const auto& G = require_candidate(p);
  if (!p.candidate_modulus) throw PreconditionError("candidate_modulus: missing");
  const auto k_check = verify_selection_modulus(G, *p.candidate_modulus, G);
  if (!k_check.ok) {
    std::string where;
    if (k_check.tightest) {
      where = " at " + G.domain()->label(k_check.tightest->first) + ", " + G.domain()->label(k_check.tightest->second);
    }
    throw PreconditionError("candidate_modulus: the candidate violates K" + where);
  }
  const Modulus* inverse_modulus = mu_prime ? &*mu_prime : (p.xi.mu_prime ? &*p.xi.mu_prime : nullptr);
  if (!inverse_modulus) throw PreconditionError("mu_prime: xi carries no inverse modulus");

  auto composed = modulus_compose(p.upsilon.mu, modulus_compose(*p.candidate_modulus, *inverse_modulus));
  const auto decision = decide_continuity(p.g, composed);
  return ForwardModulus{std::move(composed), decision.continuous, decision.witness};
}

Multifunction realizer_relation(const RealizerProblem& p) {
  require_carriers(p);
  return mf_compose(mf_compose(p.upsilon.inverse, p.g), p.xi.forward);
}

SynthesisResult synthesize_realizer(const RealizerProblem& p) {
  require_carriers(p);
  if (!p.upsilon.words->ultrametric()) throw PreconditionError("upsilon: code space is not ultrametric");
  if (!p.upsilon.mu_prime) throw PreconditionError("upsilon: no inverse modulus attached");
  const auto g_check = decide_continuity(p.g, p.kappa);
  if (!g_check.continuous) {
    const auto at = p.g.domain()->label(*g_check.witness);
    throw ContinuityError("g: not kappa-continuous at " + at, at);
  }

  const auto h = realizer_relation(p);
  std::string lost;
  std::size_t lost_count = 0;
  for (auto w : mf_compose(p.g, p.xi.forward).dom()) {
    if (!h.values(w).empty()) continue;
    if (lost_count++ < 5) lost += (lost.empty() ? "" : ", ") + p.xi.words->label(w);
  }
  if (lost_count > 0) {
    throw PreconditionError("g: values outside the range of upsilon lose " + std::to_string(lost_count) +
                            " codes (" + lost + (lost_count > 5 ? ", ..." : "") + ")");
  }

  auto modulus = modulus_compose(*p.upsilon.mu_prime, modulus_compose(p.kappa, p.xi.mu));
  try {
    auto trace = select(h, modulus);
    auto realizer = trace.selection;
    auto certified = trace.certified_modulus;
    return SynthesisResult{std::move(realizer), std::move(certified), std::move(trace)};
  } catch (const ContinuityError& e) {
    throw ContinuityError(std::string("upsilon^-1 o g o xi: ") + e.what(), e.witness());
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("upsilon^-1 o g o xi: ") + e.what());
  }
}

}  // namespace mucont
