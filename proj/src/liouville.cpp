#include "toboggan/liouville.hpp"

#include <cmath>
#include <stdexcept>

namespace toboggan {

TransformResult transform_potential(const PotentialSpec& old_spec,
                                    std::optional<double> E_old,
                                    const TransformJob& job) {
  if (old_spec.basis() != Basis::IX)
    throw std::invalid_argument("transform_potential needs the (ix)^b basis");
  if (old_spec.centrifugal() && *old_spec.centrifugal() != 0.0)
    throw std::invalid_argument(
        "transform_potential: fold the centrifugal strength into an (ix)^-2 term first");
  const Rational& alpha = job.alpha;
  if (alpha <= Rational(0)) throw std::invalid_argument("alpha must be positive");
  Rational alpha2 = alpha * alpha;
  Rational shift = Rational(2) * alpha - Rational(2);
  double w_factor = to_double(job.lambda * alpha2);
  double exempt_factor = to_double(alpha2);

  std::vector<std::pair<double, Rational>> terms;
  std::optional<double> new_energy;
  auto place = [&](double coupling, const Rational& exponent) {
    if (coupling == 0.0) return;
    if (exponent == Rational(0)) {
      new_energy = -(new_energy ? -*new_energy + coupling : coupling);
      return;
    }
    for (auto& [c, e] : terms) {
      if (e == exponent) {
        c += coupling;
        return;
      }
    }
    terms.emplace_back(coupling, exponent);
  };

  for (const PotentialTerm& term : old_spec.terms()) {
    bool exempt = term.exponent == Rational(2) && term.coupling == -1.0;
    double factor = exempt ? exempt_factor : w_factor;
    place(factor * term.coupling, alpha * term.exponent + shift);
  }
  double energy_coupling = 0.0;
  if (E_old && *E_old != 0.0) {
    energy_coupling = -to_double(alpha2) * *E_old;
    place(energy_coupling, shift);
  }

  Rational generated = (alpha2 - Rational(1)) / Rational(4);
  PotentialSpec spec = make_potential(
      terms, generated == Rational(0) ? std::optional<double>{} : to_double(generated),
      Basis::IX);
  return TransformResult{std::move(spec), new_energy, shift, energy_coupling, generated};
}

PotentialSpec fold_centrifugal(const TransformResult& result) {
  const PotentialSpec& spec = result.new_potential;
  double strength = to_double(result.generated_centrifugal);
  std::vector<std::pair<double, Rational>> terms;
  for (const PotentialTerm& term : spec.terms()) {
    if (term.exponent == Rational(-2)) {
      // c*(iy)^{-2} = -c/y^2
      strength -= term.coupling;
      continue;
    }
    terms.emplace_back(term.coupling, term.exponent);
  }
  return make_potential(terms,
                        strength == 0.0 ? std::optional<double>{} : strength,
                        Basis::IX);
}

PotentialSpec unfold_centrifugal(const PotentialSpec& spec) {
  if (!spec.centrifugal() || *spec.centrifugal() == 0.0) return spec;
  if (spec.basis() != Basis::IX)
    throw std::invalid_argument("unfold_centrifugal needs the (ix)^b basis");
  double gamma = *spec.centrifugal();
  std::vector<std::pair<double, Rational>> terms;
  bool merged = false;
  for (const PotentialTerm& term : spec.terms()) {
    if (term.exponent == Rational(-2)) {
      terms.emplace_back(term.coupling - gamma, term.exponent);
      merged = true;
    } else {
      terms.emplace_back(term.coupling, term.exponent);
    }
  }
  if (!merged) terms.emplace_back(-gamma, Rational(-2));
  return make_potential(terms, std::nullopt, spec.basis());
}

std::pair<PotentialSpec, double> scale_coordinates(const PotentialSpec& spec, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  std::vector<std::pair<double, Rational>> terms;
  for (const PotentialTerm& term : spec.terms())
    terms.emplace_back(term.coupling * std::pow(sigma, to_double(term.exponent + Rational(2))),
                       term.exponent);
  return {make_potential(terms, spec.centrifugal(), spec.basis()), sigma * sigma};
}

std::vector<DictionaryEntry> dictionary() {
  // alpha = 3, lambda = 1/9: lambda*alpha^2 = 1 on the W-terms, alpha^2 = 9
  // on the lambda-exempt harmonic part and on the energy.
  return {
      {"a (ix)^{4/3}", "g8 = a at y^8", 1.0, ""},
      {"b (ix)^{2/3}", "g6 = -b at y^6", -1.0, "sign flip from (iy)^6 -> y^6"},
      {"c (ix)^0", "g4 gains +c at y^4", 1.0, "entangled with the screened energy"},
      {"E_screened", "g4 gains -9E at y^4", -9.0,
       "exact factor alpha^2 = 9; the common shorthand writes -E"},
      {"d (ix)^{-2/3}", "g2 = -d at y^2", -1.0, "sign flip from (iy)^2 -> y^2"},
      {"e (ix)^{-4/3}", "E_decadic = -e", -1.0, ""},
      {"f (ix)^{-2}", "L(L+1) = 2 - f", -1.0, "folded with (alpha^2-1)/4 = 2"},
      {"-(ix)^2 (unperturbed)", "+9 y^10 leading term", 9.0,
       "exact factor alpha^2; rescale with sigma = 9^{-1/12} for a unit leading coupling"},
  };
}

}  // namespace toboggan
