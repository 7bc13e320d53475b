#include "toboggan/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace toboggan {

PotentialSpec::PotentialSpec(std::vector<PotentialTerm> terms,
                             std::optional<double> centrifugal, Basis basis)
    : terms_(std::move(terms)), centrifugal_(centrifugal), basis_(basis) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PotentialTerm& a, const PotentialTerm& b) {
              return a.exponent > b.exponent;
            });
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].exponent == terms_[i - 1].exponent)
      throw std::invalid_argument("duplicate exponent " +
                                  to_string(terms_[i].exponent));
  }
}

Rational PotentialSpec::leading_exponent() const {
  if (terms_.empty()) throw std::logic_error("empty potential has no leading exponent");
  return terms_.front().exponent;
}

PotentialSpec make_potential(const std::vector<std::pair<double, Rational>>& terms,
                             std::optional<double> centrifugal, Basis basis) {
  std::vector<PotentialTerm> list;
  list.reserve(terms.size());
  for (const auto& [coupling, exponent] : terms) {
    if (!std::isfinite(coupling))
      throw std::invalid_argument("non-finite coupling");
    list.push_back({coupling, exponent});
  }
  return PotentialSpec(std::move(list), centrifugal, basis);
}

std::complex<double> eval_ix_power(const UnwrappedPoint& point, const Rational& beta) {
  if (point.radius <= 0.0) {
    if (beta < Rational(0))
      throw std::domain_error("negative power at the branch point r = 0");
    if (beta == Rational(0)) return 1.0;
    return 0.0;
  }
  double b = to_double(beta);
  return std::exp(std::complex<double>(b * std::log(point.radius), b * point.theta));
}

std::complex<double> eval_potential(const PotentialSpec& spec, const UnwrappedPoint& point) {
  if (spec.basis() != Basis::IX)
    throw std::invalid_argument("eval_potential needs the (ix)^b basis; basis_convert first");
  std::complex<double> sum = 0.0;
  for (const PotentialTerm& term : spec.terms())
    sum += term.coupling * eval_ix_power(point, term.exponent);
  if (spec.centrifugal() && *spec.centrifugal() != 0.0) {
    // gamma/x^2 with 1/x^2 = -(ix)^{-2}
    sum += *spec.centrifugal() * (-eval_ix_power(point, Rational(-2)));
  }
  return sum;
}

PotentialSpec basis_convert(const PotentialSpec& spec, Basis target) {
  if (spec.basis() == target) return spec;
  std::vector<PotentialTerm> terms;
  terms.reserve(spec.terms().size());
  for (const PotentialTerm& term : spec.terms()) {
    if (!is_even_integer(term.exponent))
      throw std::invalid_argument("basis_convert needs even integer exponents, got " +
                                  to_string(term.exponent));
    long long half = term.exponent.numerator() / 2;
    double sign = (half % 2 == 0) ? 1.0 : -1.0;
    terms.push_back({term.coupling * sign, term.exponent});
  }
  return PotentialSpec(std::move(terms), spec.centrifugal(), target);
}

nlohmann::json potential_to_json(const PotentialSpec& spec) {
  nlohmann::json doc;
  doc["basis"] = spec.basis() == Basis::IX ? "ix" : "x";
  auto& terms = doc["terms"] = nlohmann::json::array();
  for (const PotentialTerm& term : spec.terms())
    terms.push_back({term.coupling, term.exponent.numerator(), term.exponent.denominator()});
  if (spec.centrifugal()) doc["centrifugal"] = *spec.centrifugal();
  return doc;
}

PotentialSpec potential_from_json(const nlohmann::json& doc) {
  std::string basis_tag = doc.at("basis").get<std::string>();
  Basis basis;
  if (basis_tag == "ix")
    basis = Basis::IX;
  else if (basis_tag == "x")
    basis = Basis::X;
  else
    throw std::invalid_argument("unknown basis tag '" + basis_tag + "'");
  std::vector<std::pair<double, Rational>> terms;
  for (const auto& entry : doc.at("terms")) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument("term must be [coupling, num, den]");
    terms.emplace_back(entry[0].get<double>(),
                       Rational(entry[1].get<long long>(), entry[2].get<long long>()));
  }
  std::optional<double> centrifugal;
  if (doc.contains("centrifugal")) centrifugal = doc["centrifugal"].get<double>();
  return make_potential(terms, centrifugal, basis);
}

}  // namespace toboggan
