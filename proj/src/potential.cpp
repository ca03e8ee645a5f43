#include "ptreal/potential.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ptreal {
namespace {

std::string format_coefficient(cplx c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

}  // namespace

PotentialSpec PotentialSpec::from_terms(std::vector<PotentialTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PotentialTerm& a, const PotentialTerm& b) { return a.power < b.power; });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (t.power < 0 || t.power > kMaxPotentialDegree) {
      throw Error(ErrorKind::invalid_input,
                  "power " + std::to_string(t.power) + " outside [0, " +
                      std::to_string(kMaxPotentialDegree) + "]");
    }
    if (i > 0 && terms[i - 1].power == t.power) {
      throw Error(ErrorKind::invalid_input, "duplicate power " + std::to_string(t.power));
    }
    if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
      throw Error(ErrorKind::invalid_input,
                  "non-finite coefficient at power " + std::to_string(t.power));
    }
    const bool even = t.power % 2 == 0;
    if ((even && t.coefficient.imag() != 0.0) || (!even && t.coefficient.real() != 0.0)) {
      throw Error(ErrorKind::invalid_input, "PT violation at power " + std::to_string(t.power) +
                                                " (coefficient " +
                                                format_coefficient(t.coefficient) + ")");
    }
  }
  std::erase_if(terms, [](const PotentialTerm& t) { return t.coefficient == cplx(0.0); });
  PotentialSpec p;
  p.terms_ = std::move(terms);
  return p;
}

std::vector<cplx> PotentialSpec::dense_coefficients() const {
  std::vector<cplx> c(static_cast<std::size_t>(degree()) + 1);
  for (const auto& t : terms_) c[static_cast<std::size_t>(t.power)] = t.coefficient;
  return c;
}

PotentialSpec parse_potential(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed potential: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array()) {
    throw Error(ErrorKind::invalid_input, "malformed potential: expected {\"terms\": [...]}");
  }
  std::vector<PotentialTerm> terms;
  for (const auto& item : doc["terms"]) {
    if (!item.is_object() || !item.contains("power") || !item["power"].is_number_integer()) {
      throw Error(ErrorKind::invalid_input, "malformed potential: term needs an integer power");
    }
    auto number = [&](const char* key) {
      if (!item.contains(key)) return 0.0;
      if (!item[key].is_number()) {
        throw Error(ErrorKind::invalid_input,
                    std::string("malformed potential: field '") + key + "' is not a number");
      }
      return item[key].get<double>();
    };
    terms.push_back({item["power"].get<int>(), cplx(number("re"), number("im"))});
  }
  auto p = PotentialSpec::from_terms(std::move(terms));
  if (p.degree() < 1) {
    throw Error(ErrorKind::invalid_input, "potential must have degree >= 1");
  }
  return p;
}

std::string serialize_potential(const PotentialSpec& p) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : p.terms()) {
    nlohmann::ordered_json item;
    item["power"] = t.power;
    item["re"] = t.coefficient.real();
    item["im"] = t.coefficient.imag();
    terms.push_back(std::move(item));
  }
  nlohmann::ordered_json doc;
  doc["terms"] = std::move(terms);
  return doc.dump();
}

PotentialParts decompose(const PotentialSpec& p) {
  std::vector<PotentialTerm> even, odd;
  for (const auto& t : p.terms()) (t.power % 2 == 0 ? even : odd).push_back(t);
  return {PotentialSpec::from_terms(std::move(even)), PotentialSpec::from_terms(std::move(odd))};
}

PotentialSpec recombine(const PotentialParts& parts) {
  auto terms = parts.even.terms();
  terms.insert(terms.end(), parts.odd.terms().begin(), parts.odd.terms().end());
  return PotentialSpec::from_terms(std::move(terms));
}

cplx evaluate(const PotentialSpec& p, cplx x) {
  const auto c = p.dense_coefficients();
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::optional<std::string> confinement_warning(const PotentialSpec& p) {
  if (p.empty()) return std::nullopt;
  const auto& lead = p.terms().back();
  if (lead.power % 2 == 0 && lead.coefficient.real() < 0.0) {
    return "leading term x^" + std::to_string(lead.power) +
           " has a negative coefficient; the potential may not be confining";
  }
  return std::nullopt;
}

std::string describe(const PotentialSpec& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) os << " + ";
    first = false;
    const bool odd = t.power % 2 != 0;
    const double c = odd ? t.coefficient.imag() : t.coefficient.real();
    os << "(" << c << (odd ? "i" : "") << ")";
    if (t.power > 0) os << "x^" << t.power;
  }
  return os.str();
}

}  // namespace ptreal
