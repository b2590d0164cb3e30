#pragma once

#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "symcirc/circuit.hpp"

namespace symcirc {

using ordered_json = nlohmann::ordered_json;

/// Current version of every JSON document the library writes.
inline constexpr int kSchemaVersion = 1;

inline ordered_json label_to_json(const GateLabel& l) {
  ordered_json j;
  j["kind"] = label_kind(l);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, label::Input>) {
          j["var"] = v.var;
        } else if constexpr (std::is_same_v<T, label::Const>) {
          j["value"] = v.value.to_string();
        } else if constexpr (std::is_same_v<T, label::ThresholdGE> ||
                             std::is_same_v<T, label::ThresholdEQ>) {
          j["k"] = v.k;
        } else if constexpr (std::is_same_v<T, label::PartitionSum> ||
                             std::is_same_v<T, label::PartitionProd>) {
          j["c"] = v.c.to_string();
          ordered_json parts = ordered_json::object();
          for (const auto& [tag, q] : v.parts) parts[tag] = q.to_string();
          j["parts"] = parts;
        }
      },
      l);
  return j;
}

inline ordered_json to_json(const Circuit& c) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = c.field.to_string();
  if (c.space.kind == VarSpace::Kind::Matrix) {
    j["space"] = {{"kind", "matrix"}, {"rows", c.space.rows}, {"cols", c.space.cols}};
  } else {
    j["space"] = {{"kind", "generic"}, {"count", c.space.count}};
  }
  ordered_json vars = ordered_json::array();
  for (std::size_t v = 0; v < c.num_vars(); ++v) vars.push_back(v);
  j["variables"] = vars;
  ordered_json gates = ordered_json::array();
  for (GateId g = 0; g < c.gates.size(); ++g) {
    ordered_json gj;
    gj["id"] = g;
    gj["label"] = label_to_json(c.gates[g].label);
    ordered_json kids = ordered_json::array();
    for (const auto& w : c.gates[g].children) {
      ordered_json wj;
      wj["id"] = w.child;
      if (w.tag) wj["tag"] = *w.tag;
      kids.push_back(wj);
    }
    gj["children"] = kids;
    gates.push_back(gj);
  }
  j["gates"] = gates;
  j["output"] = c.output;
  return j;
}

inline std::string serialize(const Circuit& c) { return to_json(c).dump(1) + "\n"; }

namespace detail {

template <typename J>
const J& require(const J& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

template <typename J>
std::string require_string(const J& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return v.template get<std::string>();
}

template <typename J>
std::uint64_t require_uint(const J& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.template get<long long>() >= 0))
    throw SchemaError(path + "/" + key, "expected a non-negative integer");
  return v.template get<std::uint64_t>();
}

inline FieldValue parse_value(const Field& f, const std::string& text, const std::string& path) {
  try {
    return FieldValue::parse(f, text);
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace detail

inline GateLabel label_from_json(const nlohmann::json& j, const Field& f, const std::string& path) {
  using detail::require;
  std::string kind = detail::require_string(j, "kind", path);
  if (kind == "input") return label::Input{static_cast<VarId>(detail::require_uint(j, "var", path))};
  if (kind == "const") return label::Const{detail::parse_value(f, detail::require_string(j, "value", path), path + "/value")};
  if (kind == "add") return label::Add{};
  if (kind == "mul") return label::Mul{};
  if (kind == "and") return label::And{};
  if (kind == "or") return label::Or{};
  if (kind == "not") return label::Not{};
  if (kind == "threshold_ge") return label::ThresholdGE{static_cast<std::uint32_t>(detail::require_uint(j, "k", path))};
  if (kind == "threshold_eq") return label::ThresholdEQ{static_cast<std::uint32_t>(detail::require_uint(j, "k", path))};
  if (kind == "partition_sum" || kind == "partition_prod") {
    FieldValue c = detail::parse_value(f, detail::require_string(j, "c", path), path + "/c");
    const auto& pj = require(j, "parts", path);
    if (!pj.is_object()) throw SchemaError(path + "/parts", "expected an object");
    std::map<std::string, FieldValue> parts;
    for (auto it = pj.begin(); it != pj.end(); ++it) {
      if (!it.value().is_string()) throw SchemaError(path + "/parts/" + it.key(), "expected a string");
      parts.emplace(it.key(), detail::parse_value(f, it.value().get<std::string>(), path + "/parts/" + it.key()));
    }
    if (kind == "partition_sum") return label::PartitionSum{c, std::move(parts)};
    return label::PartitionProd{c, std::move(parts)};
  }
  throw SchemaError(path + "/kind", "unknown gate kind '" + kind + "'");
}

/// Parses circuit JSON. Gate ids may be any distinct non-negative integers;
/// they are renumbered densely in ascending order.
inline Circuit deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  Circuit c;
  try {
    c.field = Field::parse(detail::require_string(j, "field", ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError("/field", e.what());
  }
  const auto& vars = detail::require(j, "variables", "");
  if (!vars.is_array()) throw SchemaError("/variables", "expected an array");
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!vars[i].is_number_integer() || vars[i].get<long long>() != static_cast<long long>(i))
      throw SchemaError("/variables/" + std::to_string(i), "variables must be 0..n-1 in order");
  c.space = VarSpace::generic(vars.size());
  if (auto it = j.find("space"); it != j.end()) {
    std::string kind = detail::require_string(*it, "kind", "/space");
    if (kind == "matrix") {
      auto rows = detail::require_uint(*it, "rows", "/space");
      auto cols = detail::require_uint(*it, "cols", "/space");
      if (rows * cols != vars.size()) throw SchemaError("/space", "rows*cols does not match variable count");
      c.space = VarSpace::matrix(rows, cols);
    } else if (kind != "generic") {
      throw SchemaError("/space/kind", "unknown space kind '" + kind + "'");
    }
  }
  const auto& gates = detail::require(j, "gates", "");
  if (!gates.is_array()) throw SchemaError("/gates", "expected an array");
  std::map<std::uint64_t, GateId> dense;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    auto id = detail::require_uint(gates[i], "id", "/gates/" + std::to_string(i));
    if (!dense.emplace(id, 0).second) throw SchemaError("/gates/" + std::to_string(i) + "/id", "duplicate gate id");
  }
  GateId next = 0;
  for (auto& [id, d] : dense) d = next++;
  c.gates.resize(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    std::string path = "/gates/" + std::to_string(i);
    GateId g = dense.at(gates[i]["id"].get<std::uint64_t>());
    c.gates[g].label = label_from_json(detail::require(gates[i], "label", path), c.field, path + "/label");
    const auto& kids = detail::require(gates[i], "children", path);
    if (!kids.is_array()) throw SchemaError(path + "/children", "expected an array");
    for (std::size_t k = 0; k < kids.size(); ++k) {
      std::string kp = path + "/children/" + std::to_string(k);
      auto child = detail::require_uint(kids[k], "id", kp);
      auto it = dense.find(child);
      if (it == dense.end()) throw SchemaError(kp + "/id", "unknown gate id " + std::to_string(child));
      Wire w{it->second, std::nullopt};
      if (auto t = kids[k].find("tag"); t != kids[k].end() && !t->is_null()) {
        if (!t->is_string()) throw SchemaError(kp + "/tag", "expected a string");
        w.tag = t->get<std::string>();
      }
      c.gates[g].children.push_back(std::move(w));
    }
  }
  auto out = detail::require_uint(j, "output", "");
  auto it = dense.find(out);
  if (it == dense.end()) throw SchemaError("/output", "unknown gate id " + std::to_string(out));
  c.output = it->second;
  return c;
}

inline std::string dot_escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') r += '\\';
    r += ch;
  }
  return r;
}

/// Graphviz rendering; edges point from child to parent, tagged wires carry
/// their part tag as edge label.
inline std::string export_dot(const Circuit& c) {
  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=BT;\n";
  for (GateId g = 0; g < c.gates.size(); ++g) {
    const auto& l = c.gates[g].label;
    std::string text = label_kind(l);
    if (auto* in = std::get_if<label::Input>(&l)) text = "x" + std::to_string(in->var);
    else if (auto* k = std::get_if<label::Const>(&l)) text = k->value.to_string();
    else if (auto* t = std::get_if<label::ThresholdGE>(&l)) text = "t>=" + std::to_string(t->k);
    else if (auto* t = std::get_if<label::ThresholdEQ>(&l)) text = "t=" + std::to_string(t->k);
    else if (auto* s = std::get_if<label::PartitionSum>(&l)) text = "+[" + s->c.to_string() + "]";
    else if (auto* p = std::get_if<label::PartitionProd>(&l)) text = "x[" + p->c.to_string() + "]";
    os << "  g" << g << " [label=\"" << dot_escape(text) << "\"" << (g == c.output ? ", shape=doublecircle" : "")
       << "];\n";
  }
  for (GateId g = 0; g < c.gates.size(); ++g) {
    for (const auto& w : c.gates[g].children) {
      os << "  g" << w.child << " -> g" << g;
      if (w.tag) os << " [label=\"" << dot_escape(*w.tag) << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace symcirc
