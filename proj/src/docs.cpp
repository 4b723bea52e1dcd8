#include "lman/docs.hpp"

#include <algorithm>

#include "json.hpp"

namespace lman {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("not valid JSON");
  if (!j.is_object()) throw ParseError("top level must be an object");
  return j;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string())
    throw ParseError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Scalar scalar_at(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  if (!v.is_string())
    throw ParseError(where + ": rationals must be \"p/q\" strings");
  try {
    return scalar_from_string(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

void check_format(const json& j) {
  if (int_field(j, "format") != 1) throw ParseError("unsupported format version");
}

SuperSpace parse_space(const json& j, const char* labels_key) {
  const json& labels = field(j, labels_key);
  const json& parities = field(j, "parities");
  if (!labels.is_array() || !parities.is_array() ||
      labels.size() != parities.size())
    throw ParseError(std::string(labels_key) +
                     "/parities must be arrays of equal length");
  SuperSpace s;
  for (const auto& l : labels) {
    if (!l.is_string()) throw ParseError(std::string(labels_key) + ": strings expected");
    s.labels.push_back(l.get<std::string>());
  }
  for (const auto& p : parities) {
    if (!p.is_number_integer() || (p.get<int>() != 0 && p.get<int>() != 1))
      throw ParseError("parities: entries must be 0 or 1");
    s.parities.push_back(static_cast<Parity>(p.get<int>()));
  }
  s.validate();
  return s;
}

std::vector<std::vector<Scalar>> parse_matrix(const json& j, const char* key,
                                              std::size_t dim) {
  const json& m = field(j, key);
  if (!m.is_array() || m.size() != dim)
    throw ParseError(std::string("'") + key + "' must be a " +
                     std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!m[i].is_array() || m[i].size() != dim)
      throw ParseError(std::string(key) + "[" + std::to_string(i) +
                       "]: row of length " + std::to_string(dim) + " expected");
    std::vector<Scalar> row;
    for (std::size_t k = 0; k < dim; ++k)
      row.push_back(scalar_at(m[i][k], std::string(key) + "[" +
                                           std::to_string(i) + "][" +
                                           std::to_string(k) + "]"));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix_json(const std::vector<std::vector<Scalar>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(scalar_to_string(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

DocKind document_kind(const std::string& text) {
  json j = parse_text(text);
  std::string kind = string_field(j, "kind");
  if (kind == "algebra") return DocKind::Algebra;
  if (kind == "potential") return DocKind::Potential;
  throw ParseError("unknown document kind '" + kind + "'");
}

AlgebraDocument parse_algebra(const std::string& text) {
  json j = parse_text(text);
  check_format(j);
  if (string_field(j, "kind") != "algebra")
    throw ParseError("expected an algebra document");
  AlgebraDocument d;
  d.name = string_field(j, "name");
  d.space = parse_space(j, "basis");
  d.pairing = parse_matrix(j, "pairing", d.space.dim());
  d.max_arity = int_field(j, "max_arity");
  if (d.max_arity < 0) throw ParseError("'max_arity' must be >= 0");
  const json& ops = field(j, "operations");
  if (!ops.is_object()) throw ParseError("'operations' must be an object");
  for (const auto& [akey, list] : ops.items()) {
    int arity;
    try {
      std::size_t pos = 0;
      arity = std::stoi(akey, &pos);
      if (pos != akey.size()) throw std::invalid_argument(akey);
    } catch (const std::exception&) {
      throw ParseError("operations: arity key '" + akey + "' is not a number");
    }
    if (arity < 0 || arity > d.max_arity)
      throw ParseError("operations." + akey + ": arity outside 0..max_arity");
    if (!list.is_array())
      throw ParseError("operations." + akey + " must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string where = "operations." + akey + "[" + std::to_string(i) + "]";
      const json& e = list[i];
      if (!e.is_array() || e.size() != 3)
        throw ParseError(where + ": [inputs, output, coefficient] expected");
      AlgebraDocument::Entry entry;
      entry.arity = arity;
      if (!e[0].is_array() || e[0].size() != static_cast<std::size_t>(arity))
        throw ParseError(where + ": inputs must list " + akey + " indices");
      for (const auto& x : e[0]) {
        if (!x.is_number_integer() || x.get<long long>() < 0 ||
            x.get<unsigned long long>() >= d.space.dim())
          throw ParseError(where + ": input index out of range");
        entry.inputs.push_back(x.get<std::size_t>());
      }
      if (!e[1].is_number_integer() || e[1].get<long long>() < 0 ||
          e[1].get<unsigned long long>() >= d.space.dim())
        throw ParseError(where + ": output index out of range");
      entry.output = e[1].get<std::size_t>();
      entry.coeff = scalar_at(e[2], where);
      d.entries.push_back(std::move(entry));
    }
  }
  return d;
}

PotentialDocument parse_potential(const std::string& text) {
  json j = parse_text(text);
  check_format(j);
  if (string_field(j, "kind") != "potential")
    throw ParseError("expected a potential document");
  PotentialDocument d;
  d.name = string_field(j, "name");
  d.coords = parse_space(j, "variables");
  d.omega = parse_matrix(j, "omega", d.coords.dim());
  d.truncation = int_field(j, "truncation");
  if (d.truncation < 0) throw ParseError("'truncation' must be >= 0");
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string where = "terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    if (!t.is_array() || t.size() != 2)
      throw ParseError(where + ": [exponents, coefficient] expected");
    if (!t[0].is_array() || t[0].size() != d.coords.dim())
      throw ParseError(where + ": exponents must list " +
                       std::to_string(d.coords.dim()) + " entries");
    std::vector<int> e;
    for (std::size_t k = 0; k < t[0].size(); ++k) {
      const json& x = t[0][k];
      if (!x.is_number_integer() || x.get<int>() < 0)
        throw ParseError(where + ": exponents must be >= 0");
      if (d.coords.parities[k] && x.get<int>() > 1)
        throw ParseError(where + ": odd variable squared");
      e.push_back(x.get<int>());
    }
    d.terms.emplace_back(std::move(e), scalar_at(t[1], where));
  }
  return d;
}

std::string serialize(const AlgebraDocument& d) {
  json j;
  j["format"] = 1;
  j["kind"] = "algebra";
  j["name"] = d.name;
  j["basis"] = d.space.labels;
  json par = json::array();
  for (Parity p : d.space.parities) par.push_back(static_cast<int>(p));
  j["parities"] = par;
  j["pairing"] = matrix_json(d.pairing);
  j["max_arity"] = d.max_arity;
  auto entries = d.entries;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.arity, a.inputs, a.output) <
           std::tie(b.arity, b.inputs, b.output);
  });
  json ops = json::object();
  for (const auto& e : entries) {
    json item = json::array();
    item.push_back(e.inputs);
    item.push_back(e.output);
    item.push_back(scalar_to_string(e.coeff));
    ops[std::to_string(e.arity)].push_back(std::move(item));
  }
  j["operations"] = ops;
  return j.dump(2) + "\n";
}

std::string serialize(const PotentialDocument& d) {
  json j;
  j["format"] = 1;
  j["kind"] = "potential";
  j["name"] = d.name;
  j["variables"] = d.coords.labels;
  json par = json::array();
  for (Parity p : d.coords.parities) par.push_back(static_cast<int>(p));
  j["parities"] = par;
  j["omega"] = matrix_json(d.omega);
  j["truncation"] = d.truncation;
  auto terms = d.terms;
  std::sort(terms.begin(), terms.end());
  json ts = json::array();
  for (const auto& [e, c] : terms) {
    json item = json::array();
    item.push_back(e);
    item.push_back(scalar_to_string(c));
    ts.push_back(std::move(item));
  }
  j["terms"] = ts;
  return j.dump(2) + "\n";
}

LinftyStructure to_structure(const AlgebraDocument& d) {
  PairingForm g{d.space, d.pairing, PairingKind::SymmetricEven};
  LinftyStructure l(d.space, g, d.max_arity);
  for (const auto& e : d.entries)
    l.set_entry(e.arity, e.inputs, e.output, e.coeff);
  return l;
}

AlgebraDocument algebra_document(const std::string& name,
                                 const LinftyStructure& l) {
  AlgebraDocument d;
  d.name = name;
  d.space = l.space();
  d.pairing = l.pairing().matrix;
  d.max_arity = l.max_arity();
  for (int arity = 0; arity <= l.max_arity(); ++arity)
    for (const auto& [inputs, out] : l.raw(arity))
      for (std::size_t k = 0; k < out.size(); ++k)
        if (out[k] != 0) d.entries.push_back({arity, inputs, k, out[k]});
  return d;
}

FormalLManifold to_manifold(const PotentialDocument& d) {
  PairingForm omega{d.coords, d.omega, PairingKind::AntisymmetricEven};
  Series phi(d.coords, d.truncation);
  for (const auto& [e, c] : d.terms) phi.add_term(e, c);
  return FormalLManifold(d.coords, omega, phi);
}

PotentialDocument potential_document(const std::string& name,
                                     const FormalLManifold& m) {
  PotentialDocument d;
  d.name = name;
  d.coords = m.coords();
  d.omega = m.omega().matrix;
  d.truncation = m.truncation();
  for (const auto& [e, c] : m.potential().terms())
    if (c != 0) d.terms.emplace_back(e, c);
  return d;
}

}  // namespace lman
