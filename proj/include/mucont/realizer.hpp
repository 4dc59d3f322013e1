#pragma once

#include <optional>
#include <vector>

#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"
#include "mucont/representations.hpp"
#include "mucont/selection.hpp"

namespace mucont {

/// A multifunction g between the value grids of two representations, its
/// modulus kappa and optionally a candidate realizer G between the code
/// spaces together with a modulus K for G.
struct RealizerProblem {
  RepresentationInstance xi;
  RepresentationInstance upsilon;
  Multifunction g;
  Modulus kappa;
  std::optional<Multifunction> candidate;
  std::optional<Modulus> candidate_modulus;
};

/// The three equivalent readings of "G realizes g":
///   (i)   g o xi is a restriction of upsilon o G,
///   (ii)  g is a restriction of upsilon o G o xi^{-1},
///   (iii) upsilon^{-1} o g o xi is a restriction of G.
struct RealizerConditions {
  bool realizes = false;
  bool pushforward = false;
  bool pullback = false;
  /// A code w in dom(g o xi) where upsilon(G(w)) is missing or outside g(xi(w)).
  std::optional<PointIndex> witness;
  bool agree() const { return realizes == pushforward && pushforward == pullback; }
};

/// Throws PreconditionError if the candidate is missing or multivalued, or
/// the carriers do not match.
RealizerConditions realizer_conditions(const RealizerProblem& p);

struct ForwardModulus {
  /// nu o K o mu_prime.
  Modulus modulus;
  bool verified = false;
  std::optional<PointIndex> witness;
};

/// Checks K against the candidate on all pairs, then decides whether g is
/// (nu o K o mu_prime)-continuous. `mu_prime` defaults to the modulus
/// attached to xi. Throws PreconditionError if K fails its check or no
/// mu_prime is available.
ForwardModulus forward_modulus(const RealizerProblem& p, const std::optional<Modulus>& mu_prime = std::nullopt);

struct SynthesisResult {
  Multifunction realizer;
  /// nu_prime o kappa o mu.
  Modulus certified;
  SelectionTrace trace;
};

/// upsilon^{-1} o g o xi.
Multifunction realizer_relation(const RealizerProblem& p);

/// Selects a single-valued realizer of g from upsilon^{-1} o g o xi under
/// the modulus nu_prime o kappa o mu. Throws PreconditionError if g is not
/// kappa-continuous, the target codes are not ultrametric, the composition
/// loses codes of dom(g), or the composed relation is not continuous.
SynthesisResult synthesize_realizer(const RealizerProblem& p);

}  // namespace mucont
