#include "circfn/json_io.hpp"

#include "circfn/error.hpp"

namespace circfn::json_io {

namespace {

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw FormatError("field '" + field + "': expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError("field '" + field + "." + key + "': missing");
  return *it;
}

std::size_t order_from_json(const json& j, const std::string& field) {
  const json& d = require(j, "d", field);
  if (!d.is_number_integer() || d.get<long long>() < 2) {
    throw FormatError("field '" + field + ".d': expected an integer >= 2");
  }
  return d.get<std::size_t>();
}

std::vector<Complex> complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError("field '" + field + "': expected an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(complex_from_json(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json complex_array(std::span<const Complex> zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(complex_to_json(z));
  return a;
}

json poly_to_json(const CircPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

const char* kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::Roots:
      return "roots";
    case ChannelKind::IdenticallyZero:
      return "identically_zero";
    case ChannelKind::NonzeroConstant:
      return "nonzero_constant";
  }
  return "";
}

const char* state_name(ChannelState s) {
  switch (s) {
    case ChannelState::Converged:
      return "converged";
    case ChannelState::NotConverged:
      return "not_converged";
    case ChannelState::Indeterminate:
      return "indeterminate";
  }
  return "";
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json channel_estimates(const std::vector<ChannelEstimate>& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    a.push_back({{"channel", c.channel},
                 {"state", state_name(c.state)},
                 {"estimates", complex_array(c.estimates)},
                 {"final_estimate", complex_to_json(c.final_estimate)},
                 {"value", optional_json(c.value)},
                 {"in_bounds", c.in_bounds},
                 {"retries", c.retries},
                 {"direction", complex_to_json(c.direction)}});
  }
  return a;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("field '" + field + "': expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Circulant& x) { return {{"d", x.order()}, {"row", complex_array(x.row())}}; }

Circulant circulant_from_json(const json& j, const std::string& field) {
  const std::size_t d = order_from_json(j, field);
  auto row = complex_list(require(j, "row", field), field + ".row");
  if (row.size() != d) {
    throw FormatError("field '" + field + ".row': expected " + std::to_string(d) + " entries, got " +
                      std::to_string(row.size()));
  }
  return Circulant(std::move(row));
}

json to_json(const Spectrum& u) { return {{"d", u.order()}, {"values", complex_array(u.values)}}; }

Spectrum spectrum_from_json(const json& j, const std::string& field) {
  const std::size_t d = order_from_json(j, field);
  Spectrum u{complex_list(require(j, "values", field), field + ".values")};
  if (u.order() != d) throw FormatError("field '" + field + ".values': expected " + std::to_string(d) + " entries");
  return u;
}

CircPoly poly_from_json(const json& j, std::size_t d, const std::string& field) {
  if (!j.is_array() || j.empty()) throw FormatError("field '" + field + "': expected a non-empty coefficient list");
  std::vector<Circulant> cs;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string name = field + "[" + std::to_string(k) + "]";
    Circulant c = circulant_from_json(j[k], name);
    if (c.order() != d) throw FormatError("field '" + name + ".d': does not match function order");
    cs.push_back(std::move(c));
  }
  return CircPoly(std::move(cs));
}

json to_json(const CircFunction& f) {
  return std::visit(
      [&](const auto& g) -> json {
        using T = std::decay_t<decltype(g)>;
        json j = {{"d", f.order()}, {"P", poly_to_json(g.p)}};
        if constexpr (std::is_same_v<T, CircFunction::Poly>) {
          j["kind"] = "poly";
        } else if constexpr (std::is_same_v<T, CircFunction::Rational>) {
          j["kind"] = "rational";
          j["Q"] = poly_to_json(g.q);
        } else {
          j["kind"] = "exppoly";
          j["G"] = poly_to_json(g.g);
        }
        return j;
      },
      f.repr());
}

CircFunction function_from_json(const json& j, const std::string& field) {
  const std::size_t d = order_from_json(j, field);
  std::string kind = "poly";
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw FormatError("field '" + field + ".kind': expected a string");
    kind = j["kind"].get<std::string>();
  }
  if (kind != "poly" && kind != "rational" && kind != "exppoly") {
    throw FormatError("field '" + field + ".kind': expected poly, rational or exppoly, got '" + kind + "'");
  }
  CircPoly p = poly_from_json(require(j, "P", field), d, field + ".P");
  if (kind == "poly") return CircFunction::poly(std::move(p));
  if (kind == "rational") {
    CircPoly q = poly_from_json(require(j, "Q", field), d, field + ".Q");
    try {
      return CircFunction::rational(std::move(p), std::move(q));
    } catch (const InvalidArgument& e) {
      throw FormatError("field '" + field + ".Q': " + e.what());
    }
  }
  return CircFunction::exppoly(std::move(p), poly_from_json(require(j, "G", field), d, field + ".G"));
}

json to_json(const EvalResult& r) {
  return {{"value", to_json(r.value)}, {"flagged_channels", r.flagged_channels}};
}

const char* status_name(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::Finite:
      return "finite";
    case SolutionStatus::NoSolution:
      return "no_solution";
    case SolutionStatus::InfiniteFamily:
      return "infinite_family";
  }
  return "";
}

json to_json(const SolutionSet& s) {
  json roots = json::array();
  for (const auto& r : s.roots) roots.push_back(to_json(r));
  json channels = json::array();
  for (const auto& c : s.channels) {
    json rs = json::array();
    for (const auto& r : c.roots.roots) rs.push_back({{"value", complex_to_json(r.value)}, {"multiplicity", r.multiplicity}});
    channels.push_back({{"channel", c.channel},
                        {"kind", kind_name(c.kind)},
                        {"nominal_degree", c.nominal_degree},
                        {"effective_degree", c.effective_degree},
                        {"roots", rs},
                        {"iterations", c.roots.iterations},
                        {"max_residual", c.roots.max_residual},
                        {"companion_fallback", c.roots.used_companion_fallback}});
  }
  return {{"status", status_name(s.status)},
          {"roots", roots},
          {"channels", channels},
          {"residuals", s.residuals},
          {"free_channels", s.free_channels}};
}

json to_json(const DivisorReport& r) {
  return {{"rational", r.rational},
          {"k", optional_json(r.k)},
          {"n", r.n},
          {"m", r.m},
          {"p_regular", r.p_regular},
          {"q_regular", r.q_regular},
          {"matches_degree_difference", optional_json(r.matches_degree_difference)},
          {"scales", r.scales},
          {"channels", channel_estimates(r.channels)}};
}

json to_json(const DegreeReport& r) {
  return {{"polynomial", r.degree.has_value()}, {"degree", optional_json(r.degree)}, {"report", to_json(r.estimates)}};
}

json to_json(const ZeroBoundReport& r) {
  return {{"matched", r.matched},
          {"n", optional_json(r.n)},
          {"bound", optional_json(r.bound)},
          {"degree_cross_check", optional_json(r.degree_cross_check)},
          {"scales", r.scales},
          {"channels", channel_estimates(r.channels)}};
}

}  // namespace circfn::json_io
