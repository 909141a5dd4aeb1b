#include "slicereg/json_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace slicereg {

namespace {

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw UsageError(std::string("missing JSON field '") + key + "'");
  return *it;
}

int read_n(const nlohmann::json& j) {
  const auto& n = need(j, "n");
  if (!n.is_number_integer()) throw UsageError("'n' must be an integer");
  return n.get<int>();
}

std::vector<double> read_coeff_row(const nlohmann::json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw UsageError("coefficient row must hold exactly 2^n reals");
  }
  std::vector<double> out;
  out.reserve(dim);
  for (const auto& v : j) {
    if (!v.is_number()) throw UsageError("coefficients must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const Multivector& m) {
  return nlohmann::json{{"n", m.context()->generators()},
                        {"coeffs", std::vector<double>(m.coeffs().begin(), m.coeffs().end())}};
}

Multivector multivector_from_json(const nlohmann::json& j) {
  ContextPtr ctx = make_context(read_n(j));
  return Multivector(ctx, read_coeff_row(need(j, "coeffs"), ctx->dim()));
}

nlohmann::json to_json(const SlicePoint& p) {
  return nlohmann::json{{"u", p.u}, {"v", p.v}, {"axis", to_json(p.axis)}};
}

SlicePoint slice_point_from_json(const nlohmann::json& j) {
  if (!need(j, "u").is_number() || !need(j, "v").is_number()) {
    throw UsageError("slice point u/v must be numbers");
  }
  return SlicePoint{j["u"].get<double>(), j["v"].get<double>(),
                    multivector_from_json(need(j, "axis"))};
}

nlohmann::json to_json(const SliceSeries& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 0; k <= f.degree(); ++k) {
    rows.push_back(std::vector<double>(f.coeff(k).coeffs().begin(), f.coeff(k).coeffs().end()));
  }
  return nlohmann::json{
      {"structure",
       f.structure().kind() == StructureKind::quaternion ? "quaternion" : "paravector"},
      {"n", f.structure().generators()},
      {"degree", f.degree()},
      {"coefficients", std::move(rows)}};
}

SliceSeries series_from_json(const nlohmann::json& j) {
  const auto& kind = need(j, "structure");
  if (!kind.is_string()) throw UsageError("'structure' must be a string");
  const std::string kind_name = kind.get<std::string>();
  if (kind_name != "quaternion" && kind_name != "paravector") {
    throw UsageError("'structure' must be 'paravector' or 'quaternion'");
  }
  const int n = read_n(j);
  if (kind_name == "quaternion" && n != 2) {
    throw UsageError("quaternion series must declare n = 2");
  }
  SliceStructure s =
      kind_name == "quaternion" ? SliceStructure::quaternion() : SliceStructure::paravector(n);
  const auto& rows = need(j, "coefficients");
  if (!rows.is_array() || rows.empty()) throw UsageError("'coefficients' must be a nonempty array");
  const auto& deg = need(j, "degree");
  if (!deg.is_number_integer() || deg.get<int>() != static_cast<int>(rows.size()) - 1) {
    throw UsageError("'degree' must equal the coefficient count minus one");
  }
  std::vector<Multivector> coeffs;
  coeffs.reserve(rows.size());
  for (const auto& row : rows) {
    coeffs.emplace_back(s.context(), read_coeff_row(row, s.context()->dim()));
  }
  return SliceSeries(s, std::move(coeffs));
}

nlohmann::json to_json(const ComplexSeries& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : f.coeffs) rows.push_back({c.real(), c.imag()});
  return nlohmann::json{{"degree", f.degree()}, {"coefficients", std::move(rows)}};
}

ComplexSeries complex_series_from_json(const nlohmann::json& j) {
  const auto& rows = need(j, "coefficients");
  if (!rows.is_array() || rows.empty()) throw UsageError("'coefficients' must be a nonempty array");
  ComplexSeries out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw UsageError("complex coefficients must be [re, im] pairs");
    }
    out.coeffs.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return out;
}

nlohmann::json to_json(const CheckReport& r) {
  return nlohmann::json{{"name", r.name},           {"samples", r.samples},
                        {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
                        {"pass", r.pass},           {"witness", r.witness}};
}

namespace {

// One literal term: [signed coefficient][blade token], where the blade
// token is "e" followed by ascending generator indices, or one of the
// quaternion aliases i, j, k.
struct TermParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit TermParser(const std::string& t) : text(t) {}

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool done() {
    skip_space();
    return pos >= text.size();
  }

  double parse_sign() {
    skip_space();
    double sign = 1.0;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      skip_space();
    }
    return sign;
  }

  bool parse_number(double& out) {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      ++pos;
    }
    if (pos == start) return false;
    const char* b = text.data() + start;
    const char* e = text.data() + pos;
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e) {
      throw UsageError("malformed number in multivector literal: " + text);
    }
    return true;
  }

  unsigned parse_blade(const ContextPtr& ctx) {
    skip_space();
    if (pos >= text.size()) return 0u;
    char c = text[pos];
    if (c == 'i' || c == 'j' || c == 'k') {
      if (ctx->generators() != 2) {
        throw UsageError("i/j/k aliases need a quaternion (n = 2) context");
      }
      ++pos;
      return c == 'i' ? 0b01u : c == 'j' ? 0b10u : 0b11u;
    }
    if (c != 'e') return 0u;
    ++pos;
    unsigned mask = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int d = text[pos] - '0';
      if (d < 1 || d > ctx->generators()) {
        throw UsageError("generator index out of range in literal: " + text);
      }
      if (mask & (1u << (d - 1))) throw UsageError("repeated generator in literal: " + text);
      mask |= 1u << (d - 1);
      any = true;
      ++pos;
    }
    if (!any) throw UsageError("'e' must be followed by generator digits: " + text);
    return mask;
  }
};

}  // namespace

Multivector parse_multivector_literal(const std::string& text, const ContextPtr& ctx) {
  Multivector out(ctx);
  TermParser p(text);
  bool any = false;
  while (!p.done()) {
    double sign = p.parse_sign();
    double value = 1.0;
    bool has_number = p.parse_number(value);
    unsigned mask = p.parse_blade(ctx);
    if (!has_number && mask == 0u) {
      throw UsageError("cannot parse multivector literal: " + text);
    }
    out.set_coeff(mask, out.coeff(mask) + sign * value);
    any = true;
  }
  if (!any) throw UsageError("empty multivector literal");
  return out;
}

Multivector parse_axis_literal(const std::string& text, const SliceStructure& s) {
  Multivector axis = parse_multivector_literal(text, s.context());
  double n = axis.norm();
  if (n < 1e-9) throw UsageError("axis literal is numerically zero: " + text);
  axis *= 1.0 / n;
  if (!s.is_sphere_element(axis, 1e-9)) {
    throw UsageError("literal does not describe an imaginary axis of this structure: " + text);
  }
  return axis;
}

}  // namespace slicereg
