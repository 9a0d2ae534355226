#include "transplanck/cli/schema.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "transplanck/cli/schema_text.hpp"

namespace transplanck::cli {

using nlohmann::json;

namespace {

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& v, const std::string& path,
             std::vector<SchemaViolation>& out) const {
    const json& s = resolve(schema);
    auto fail = [&](std::string msg) { out.push_back({path.empty() ? "/" : path, std::move(msg)}); };

    if (auto it = s.find("type"); it != s.end()) {
      bool ok = false;
      if (it->is_array()) {
        for (const auto& t : *it) ok = ok || has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, it->get<std::string>());
      }
      if (!ok) {
        fail("expected type " + it->dump() + ", got " + std::string(v.type_name()));
        return;
      }
    }
    if (auto it = s.find("const"); it != s.end() && *it != v)
      fail("must equal " + it->dump());
    if (auto it = s.find("enum"); it != s.end()) {
      bool found = false;
      for (const auto& e : *it) found = found || e == v;
      if (!found) fail("must be one of " + it->dump());
    }
    if (v.is_number()) check_bounds(s, v.get<double>(), fail);
    if (v.is_object()) check_object(s, v, path, out);
    if (v.is_array()) check_array(s, v, path, out);
    if (auto it = s.find("oneOf"); it != s.end()) check_one_of(*it, v, path, out);
  }

 private:
  const json& resolve(const json& s) const {
    auto it = s.find("$ref");
    if (it == s.end()) return s;
    const auto ref = it->get<std::string>();
    if (ref.rfind("#", 0) != 0) throw std::invalid_argument("only local $ref supported: " + ref);
    return resolve(root_.at(json::json_pointer(ref.substr(1))));
  }

  static bool has_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer") {
      if (v.is_number_integer()) return true;
      if (!v.is_number_float()) return false;
      const double d = v.get<double>();
      return std::isfinite(d) && d == std::trunc(d);
    }
    return false;
  }

  template <class Fail>
  static void check_bounds(const json& s, double x, Fail& fail) {
    auto bound = [&](const char* key) -> const json* {
      auto it = s.find(key);
      return it != s.end() && it->is_number() ? &*it : nullptr;
    };
    if (const auto* b = bound("minimum"); b && !(x >= b->template get<double>())) fail("must be >= " + b->dump());
    if (const auto* b = bound("maximum"); b && !(x <= b->template get<double>())) fail("must be <= " + b->dump());
    if (const auto* b = bound("exclusiveMinimum"); b && !(x > b->template get<double>())) fail("must be > " + b->dump());
    if (const auto* b = bound("exclusiveMaximum"); b && !(x < b->template get<double>())) fail("must be < " + b->dump());
  }

  void check_object(const json& s, const json& v, const std::string& path,
                    std::vector<SchemaViolation>& out) const {
    if (auto it = s.find("required"); it != s.end())
      for (const auto& key : *it)
        if (!v.contains(key.get<std::string>()))
          out.push_back({path.empty() ? "/" : path, "missing required key '" + key.get<std::string>() + "'"});

    const auto props = s.find("properties");
    const auto extra = s.find("additionalProperties");
    for (const auto& [key, value] : v.items()) {
      const std::string child = path + "/" + key;
      if (props != s.end() && props->contains(key)) {
        check(props->at(key), value, child, out);
      } else if (extra != s.end() && extra->is_boolean() && !extra->get<bool>()) {
        out.push_back({child, "unknown key '" + key + "'"});
      }
    }
  }

  void check_array(const json& s, const json& v, const std::string& path,
                   std::vector<SchemaViolation>& out) const {
    if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
      out.push_back({path, "needs at least " + it->dump() + " items"});
    if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>())
      out.push_back({path, "allows at most " + it->dump() + " items"});
    if (auto it = s.find("items"); it != s.end() && it->is_object())
      for (std::size_t i = 0; i < v.size(); ++i) check(*it, v[i], path + "/" + std::to_string(i), out);
  }

  void check_one_of(const json& alternatives, const json& v, const std::string& path,
                    std::vector<SchemaViolation>& out) const {
    std::size_t matches = 0;
    // Report the alternative that came closest; a failed const (a tag
    // mismatch) outweighs any number of other complaints.
    std::vector<SchemaViolation> closest;
    std::size_t best_cost = SIZE_MAX;
    for (const auto& alt : alternatives) {
      std::vector<SchemaViolation> errs;
      check(alt, v, path, errs);
      if (errs.empty()) {
        ++matches;
        continue;
      }
      std::size_t cost = errs.size();
      for (const auto& e : errs) cost += e.message.rfind("must equal", 0) == 0 ? 1000 : 0;
      if (cost < best_cost) {
        best_cost = cost;
        closest = std::move(errs);
      }
    }
    if (matches == 1) return;
    if (matches == 0) {
      out.insert(out.end(), closest.begin(), closest.end());
    } else {
      out.push_back({path, "matches " + std::to_string(matches) + " alternatives, expected exactly one"});
    }
  }

  const json& root_;
};

}  // namespace

std::vector<SchemaViolation> validate_against(const json& schema, const json& instance) {
  std::vector<SchemaViolation> out;
  Validator(schema).check(schema, instance, "", out);
  return out;
}

const json& run_config_schema() {
  static const json schema = json::parse(kRunConfigSchemaText);
  return schema;
}

}  // namespace transplanck::cli
