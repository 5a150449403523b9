#include "rootmirror/config.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "rootmirror/error.hpp"

namespace rootmirror {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  fail(ErrorKind::Config, field + ": " + message);
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

long read_long(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "expected an integer, got " + v.dump());
  return v.get<long>();
}

Rational read_rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) field_error(field, "expected an integer or a \"p/q\" string, got " + v.dump());
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    field_error(field, e.what());
  }
}

std::vector<long> read_long_list(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected a list of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_long(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

RationalVector read_rational_list(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected a list of rationals");
  RationalVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_rational(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const json& obj, const std::string& field, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) field_error(field.empty() ? key : field + "." + key, "unknown field");
  }
}

RingPtr read_table_ring(const json& base) {
  RingTableSpec spec;
  const json* basis = member(base, "basis");
  if (!basis || !basis->is_array()) field_error("base.basis", "required list of {name, degree}");
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const std::string f = "base.basis[" + std::to_string(i) + "]";
    const json& m = (*basis)[i];
    if (!m.is_object() || !member(m, "name") || !m["name"].is_string()) field_error(f, "expected {name, degree}");
    spec.basis.push_back({m["name"].get<std::string>(), static_cast<int>(read_long(m.value("degree", json()), f + ".degree"))});
  }
  if (const json* products = member(base, "products")) {
    for (std::size_t i = 0; i < products->size(); ++i) {
      const std::string f = "base.products[" + std::to_string(i) + "]";
      const json& p = (*products)[i];
      RingTableSpec::Product prod;
      prod.left = static_cast<std::size_t>(read_long(p.value("left", json()), f + ".left"));
      prod.right = static_cast<std::size_t>(read_long(p.value("right", json()), f + ".right"));
      const json* terms = member(p, "terms");
      if (!terms || !terms->is_array()) field_error(f + ".terms", "required list of [index, coefficient]");
      for (std::size_t j = 0; j < terms->size(); ++j) {
        const std::string tf = f + ".terms[" + std::to_string(j) + "]";
        const json& term = (*terms)[j];
        if (!term.is_array() || term.size() != 2) field_error(tf, "expected [index, coefficient]");
        prod.terms.emplace_back(static_cast<std::size_t>(read_long(term[0], tf)), read_rational(term[1], tf));
      }
      spec.products.push_back(std::move(prod));
    }
  }
  const json* integral = member(base, "integral");
  if (!integral) field_error("base.integral", "required");
  spec.integral = read_rational_list(*integral, "base.integral");
  const json* divisors = member(base, "divisors");
  if (!divisors || !divisors->is_array()) field_error("base.divisors", "required list of coefficient vectors");
  for (std::size_t i = 0; i < divisors->size(); ++i) {
    spec.divisors.push_back(read_rational_list((*divisors)[i], "base.divisors[" + std::to_string(i) + "]"));
  }
  const json* pairings = member(base, "curve_pairings");
  if (!pairings || !pairings->is_array()) field_error("base.curve_pairings", "required matrix (divisor x curve generator)");
  for (std::size_t i = 0; i < pairings->size(); ++i) {
    spec.curve_pairings.push_back(read_long_list((*pairings)[i], "base.curve_pairings[" + std::to_string(i) + "]"));
  }
  try {
    return make_table_ring(spec, base.value("name", std::string("table")));
  } catch (const Error& e) {
    field_error("base", e.what());
  }
}

struct BaseChoice {
  RingPtr ring;
  JMode j_mode;
};

BaseChoice read_base(const json& doc) {
  const json* base = member(doc, "base");
  if (!base || !base->is_object()) field_error("base", "required object with a \"kind\"");
  const json* kind = member(*base, "kind");
  if (!kind || !kind->is_string()) field_error("base.kind", "required: projective, product or table");
  const std::string k = kind->get<std::string>();
  try {
    if (k == "projective") {
      reject_unknown(*base, "base", {"kind", "n"});
      const json* n = member(*base, "n");
      if (!n) field_error("base.n", "required for kind projective");
      const long dim = read_long(*n, "base.n");
      if (dim < 1 || dim > 12) field_error("base.n", "dimension must lie in 1..12, got " + std::to_string(dim));
      return {make_projective_space(static_cast<int>(dim)), JMode::ProjectiveSpace};
    }
    if (k == "product") {
      reject_unknown(*base, "base", {"kind", "factors"});
      const json* factors = member(*base, "factors");
      if (!factors) field_error("base.factors", "required for kind product");
      const std::vector<long> dims = read_long_list(*factors, "base.factors");
      if (dims.empty()) field_error("base.factors", "needs at least one factor");
      std::vector<RingPtr> rings;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) field_error("base.factors[" + std::to_string(i) + "]", "dimension must be positive");
        rings.push_back(make_projective_space(static_cast<int>(dims[i]), "H" + std::to_string(i + 1)));
      }
      return {rings.size() == 1 ? rings.front() : make_product(rings), JMode::Toric};
    }
    if (k == "table") {
      reject_unknown(*base, "base", {"kind", "name", "basis", "products", "integral", "divisors", "curve_pairings"});
      return {read_table_ring(*base), JMode::ExternalTable};
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    field_error("base", e.what());
  }
  field_error("base.kind", "unknown kind \"" + k + "\"; expected projective, product or table");
}

RingElement read_class(const json& v, const RingPtr& ring, const std::string& field) {
  const RationalVector coeffs = read_rational_list(v, field);
  if (coeffs.size() != ring->num_divisors()) {
    field_error(field, "expected " + std::to_string(ring->num_divisors()) + " coefficients, one per divisor basis element");
  }
  RingElement out = RingElement::zero(ring);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += RingElement::divisor(ring, i) * coeffs[i];
  return out;
}

SeriesBounds read_bounds(const json* b, const RingPtr& ring) {
  SeriesBounds out;
  out.dmax.assign(ring->num_curve_generators(), 3);
  if (!b) return out;
  if (!b->is_object()) field_error("bounds", "expected an object");
  reject_unknown(*b, "bounds", {"dmax", "kmax", "z_min", "log_max"});
  if (const json* d = member(*b, "dmax")) {
    if (d->is_number_integer()) {
      out.dmax.assign(ring->num_curve_generators(), read_long(*d, "bounds.dmax"));
    } else {
      out.dmax = read_long_list(*d, "bounds.dmax");
    }
  }
  if (const json* k = member(*b, "kmax")) out.kmax = read_long(*k, "bounds.kmax");
  if (const json* z = member(*b, "z_min")) out.z_min = static_cast<int>(read_long(*z, "bounds.z_min"));
  if (const json* l = member(*b, "log_max")) {
    out.log_max = read_long(*l, "bounds.log_max");
    if (*out.log_max < 0) field_error("bounds.log_max", "must be nonnegative");
  }
  return out;
}

void read_flags(const json* flags, GeometryConfig& cfg) {
  if (!flags) return;
  if (!flags->is_object()) field_error("flags", "expected an object");
  reject_unknown(*flags, "flags",
                 {"d_nef", "anticanonical_minus_d_nef", "lambda_mode", "lambda_order", "lambda_weights", "ambient_slack",
                  "j_mode"});
  auto read_bool = [&](const char* key) {
    const json* v = member(*flags, key);
    if (!v) return false;
    if (!v->is_boolean()) field_error(std::string("flags.") + key, "expected true or false");
    return v->get<bool>();
  };
  cfg.asserted_divisor_nef = read_bool("d_nef");
  cfg.asserted_anticanonical_minus_divisor_nef = read_bool("anticanonical_minus_d_nef");
  if (const json* m = member(*flags, "lambda_mode")) {
    const std::string mode = m->is_string() ? m->get<std::string>() : "";
    if (mode == "off") {
      cfg.lambda_mode = LambdaMode::Off;
    } else if (mode == "formal") {
      cfg.lambda_mode = LambdaMode::Formal;
    } else {
      field_error("flags.lambda_mode", "expected \"off\" or \"formal\", got " + m->dump());
    }
  }
  if (const json* o = member(*flags, "lambda_order")) cfg.lambda_order = static_cast<int>(read_long(*o, "flags.lambda_order"));
  if (const json* w = member(*flags, "lambda_weights")) {
    const json expected = json::array({"1", "1/r"});
    if (*w != expected) field_error("flags.lambda_weights", "only the weights [\"1\", \"1/r\"] are supported, got " + w->dump());
  }
  if (const json* s = member(*flags, "ambient_slack")) cfg.ambient_slack = read_long(*s, "flags.ambient_slack");
  if (const json* j = member(*flags, "j_mode")) {
    const std::string mode = j->is_string() ? j->get<std::string>() : "";
    if (mode == "projective") {
      cfg.j_mode = JMode::ProjectiveSpace;
    } else if (mode == "toric") {
      cfg.j_mode = JMode::Toric;
    } else if (mode == "external") {
      cfg.j_mode = JMode::ExternalTable;
    } else {
      field_error("flags.j_mode", "expected projective, toric or external, got " + j->dump());
    }
  }
}

void read_external_j(const json* table, GeometryConfig& cfg) {
  if (!table) return;
  if (!table->is_array()) field_error("external_j", "expected a list of {d, terms}");
  for (std::size_t i = 0; i < table->size(); ++i) {
    const std::string f = "external_j[" + std::to_string(i) + "]";
    const json& entry = (*table)[i];
    if (!entry.is_object() || !member(entry, "d") || !member(entry, "terms")) field_error(f, "expected {d, terms}");
    const std::vector<long> d = read_long_list(entry["d"], f + ".d");
    if (d.size() != cfg.ring->num_curve_generators()) field_error(f + ".d", "wrong number of Mori coordinates");
    const json& terms = entry["terms"];
    if (!terms.is_object()) field_error(f + ".terms", "expected an object mapping z exponents to basis coefficients");
    RingLaurent block;
    for (const auto& [zexp, coeffs] : terms.items()) {
      int z = 0;
      try {
        std::size_t used = 0;
        z = std::stoi(zexp, &used);
        if (used != zexp.size()) throw std::invalid_argument(zexp);
      } catch (const std::exception&) {
        field_error(f + ".terms", "key \"" + zexp + "\" is not an integer z exponent");
      }
      const RationalVector c = read_rational_list(coeffs, f + ".terms." + zexp);
      if (c.size() != cfg.ring->dim()) field_error(f + ".terms." + zexp, "expected one coefficient per basis element");
      block.add_term(z, RingElement(cfg.ring, c));
    }
    cfg.external_j[CurveClass(d)] = block;
  }
}

json alias_document(long n) {
  json doc;
  doc["name"] = n == 2 ? "p2-cubic" : "p3-cubic-surface";
  doc["base"] = {{"kind", "projective"}, {"n", n}};
  doc["divisor"] = json::array({3});
  doc["r"] = 5;
  doc["S"] = json::array();
  doc["bounds"] = {{"dmax", json::array({3})}, {"kmax", 2}};
  doc["flags"] = {{"d_nef", true}, {"anticanonical_minus_d_nef", true}};
  return doc;
}

}  // namespace

std::optional<json> builtin_document(std::string_view alias) {
  if (alias == "p2-cubic") return alias_document(2);
  if (alias == "p3-cubic-surface") return alias_document(3);
  return std::nullopt;
}

GeometryConfig config_from_json(const json& doc, ExtensionRule rule) {
  if (!doc.is_object()) fail(ErrorKind::Config, "config: expected a JSON object");
  reject_unknown(doc, "", {"name", "base", "divisor", "r", "S", "bounds", "flags", "toric_divisors", "external_j"});
  const BaseChoice base = read_base(doc);
  const json* d = member(doc, "divisor");
  if (!d) field_error("divisor", "required coefficient vector");
  GeometryConfig cfg(base.ring, read_class(*d, base.ring, "divisor"));
  cfg.j_mode = base.j_mode;
  if (const json* name = member(doc, "name")) {
    if (!name->is_string()) field_error("name", "expected a string");
    cfg.name = name->get<std::string>();
  }
  if (const json* r = member(doc, "r")) cfg.r = read_long(*r, "r");
  if (const json* s = member(doc, "S")) cfg.S = read_long_list(*s, "S");
  cfg.bounds = read_bounds(member(doc, "bounds"), base.ring);
  read_flags(member(doc, "flags"), cfg);
  if (const json* t = member(doc, "toric_divisors")) {
    if (!t->is_array()) field_error("toric_divisors", "expected a list of coefficient vectors");
    for (std::size_t i = 0; i < t->size(); ++i) {
      cfg.toric_divisors.push_back(read_class((*t)[i], base.ring, "toric_divisors[" + std::to_string(i) + "]"));
    }
  } else if (base.j_mode != JMode::ExternalTable) {
    cfg.toric_divisors = standard_toric_divisors(base.ring);
  }
  read_external_j(member(doc, "external_j"), cfg);
  if (cfg.j_mode == JMode::ExternalTable && cfg.external_j.empty() && cfg.toric_divisors.empty()) {
    field_error("external_j", "a table base needs external_j entries or toric_divisors");
  }
  if (cfg.j_mode == JMode::ProjectiveSpace && base.j_mode != JMode::ProjectiveSpace) {
    field_error("flags.j_mode", "projective mode needs a projective-space base");
  }
  validate(cfg, rule);
  return cfg;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Config, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

LoadedConfig load_config(const std::string& source, const ConfigOverrides& overrides, ExtensionRule rule) {
  json doc;
  if (auto builtin = builtin_document(source)) {
    doc = *builtin;
  } else {
    std::ifstream in(source);
    if (!in) fail(ErrorKind::Config, source + ": no such file and not a built-in alias (p2-cubic, p3-cubic-surface)");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::Parse, source + ": " + e.what());
    }
  }
  if (!doc.is_object()) fail(ErrorKind::Config, source + ": expected a JSON object");
  if (overrides.r) doc["r"] = *overrides.r;
  if (overrides.S) doc["S"] = *overrides.S;
  if (overrides.dmax) {
    if (!doc.contains("bounds") || !doc["bounds"].is_object()) doc["bounds"] = json::object();
    doc["bounds"]["dmax"] = *overrides.dmax;
  }
  if (overrides.kmax) {
    if (!doc.contains("bounds") || !doc["bounds"].is_object()) doc["bounds"] = json::object();
    doc["bounds"]["kmax"] = *overrides.kmax;
  }
  LoadedConfig out{config_from_json(doc, rule), doc, sha256_hex(doc.dump())};
  return out;
}

}  // namespace rootmirror
