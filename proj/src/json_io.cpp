#include "edlogic/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace edlogic {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Exact parsing: floats are captured as their raw source text so decimal
// literals survive as strings and convert to rationals without rounding.

namespace {

class ExactJsonBuilder : public nlohmann::json_sax<json> {
 public:
  json take() { return std::move(root_); }

  bool null() override { return put(json(nullptr)); }
  bool boolean(bool v) override { return put(json(v)); }
  bool number_integer(number_integer_t v) override { return put(json(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(json(v)); }
  bool number_float(number_float_t, const string_t& raw) override { return put(json(raw)); }
  bool string(string_t& v) override { return put(json(v)); }
  bool binary(binary_t& v) override { return put(json(v)); }

  bool start_object(std::size_t) override {
    stack_.push_back(put_container(json::object()));
    return true;
  }
  bool key(string_t& k) override {
    pending_key_ = k;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    stack_.push_back(put_container(json::array()));
    return true;
  }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw FormatError("JSON parse error at byte " + std::to_string(position) + ": " +
                      ex.what());
  }

 private:
  bool put(json v) {
    put_container(std::move(v));
    return true;
  }

  json* put_container(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    json& top = *stack_.back();
    if (top.is_object()) {
      top[pending_key_] = std::move(v);
      return &top[pending_key_];
    }
    top.push_back(std::move(v));
    return &top.back();
  }

  json root_;
  std::vector<json*> stack_;
  std::string pending_key_;
};

const json& member(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw FormatError(std::string("missing member \"") + name + "\"");
  return j.at(name);
}

}  // namespace

json exact_parse_json(const std::string& text) {
  ExactJsonBuilder builder;
  json::sax_parse(text, &builder);
  return builder.take();
}

json exact_parse_json_file(const std::string& path) {
  return exact_parse_json(read_text_file(path));
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(mpz_class(std::to_string(j.get<long long>()), 10));
  if (j.is_number_unsigned())
    return Rat(mpz_class(std::to_string(j.get<unsigned long long>()), 10));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float())
    throw FormatError("float value lost precision; re-parse with exact_parse_json");
  throw FormatError("expected a number, got " + j.dump());
}

json rat_to_json(const Rat& r) { return json(rat_str(r)); }

// ---------------------------------------------------------------------------
// Spaces

RawSpace raw_space_from_json(const json& j) {
  RawSpace raw;
  for (const auto& p : member(j, "points")) {
    if (!p.is_string()) throw FormatError("points must be strings");
    raw.points.push_back(p.get<std::string>());
  }
  for (const auto& row : member(j, "metric")) {
    std::vector<Rat> cells;
    for (const auto& cell : row) cells.push_back(rat_from_json(cell));
    raw.metric.push_back(std::move(cells));
  }
  for (const auto& w : member(j, "prob")) raw.prob.push_back(rat_from_json(w));
  return raw;
}

MetricProbSpace space_from_json(const json& j) { return validate_space(raw_space_from_json(j)); }

json space_to_json(const MetricProbSpace& space) {
  json j;
  j["points"] = json::array();
  for (const auto& p : space.frame().points()) j["points"].push_back(p);
  j["metric"] = json::array();
  for (int x = 0; x < space.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < space.size(); ++y) row.push_back(rat_to_json(space.dist(x, y)));
    j["metric"].push_back(std::move(row));
  }
  j["prob"] = json::array();
  for (int x = 0; x < space.size(); ++x) j["prob"].push_back(rat_to_json(space.weight(x)));
  return j;
}

// ---------------------------------------------------------------------------
// Set functions and masses

namespace {

std::string subset_key(const Frame& frame, SubsetMask mask) {
  std::vector<std::string> names;
  for (int i = 0; i < frame.size(); ++i)
    if ((mask >> i) & 1) names.push_back(frame.point(i));
  std::sort(names.begin(), names.end());
  std::string key;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) key += ",";
    key += names[i];
  }
  return key;
}

SubsetMask parse_subset_key(const Frame& frame, const std::string& key) {
  SubsetMask mask = 0;
  if (key.empty()) return mask;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    std::string name = key.substr(start, comma == std::string::npos ? comma : comma - start);
    int index = frame.index_of(name);
    if ((mask >> index) & 1) throw FormatError("point '" + name + "' repeated in key");
    mask |= SubsetMask{1} << index;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return mask;
}

std::pair<Frame, std::vector<Rat>> table_from_json(const json& j) {
  std::vector<std::string> points;
  for (const auto& p : member(j, "points")) points.push_back(p.get<std::string>());
  Frame frame(points);
  if (frame.size() > kDefaultPowersetPointCap)
    throw FrameTooLarge("table over " + std::to_string(frame.size()) + " points");
  std::size_t size = std::size_t{1} << frame.size();
  std::vector<Rat> values(size);
  std::vector<bool> seen(size, false);
  for (const auto& [key, value] : member(j, "values").items()) {
    SubsetMask mask = parse_subset_key(frame, key);
    if (seen[mask]) throw FormatError("subset {" + key + "} listed twice");
    seen[mask] = true;
    values[mask] = rat_from_json(value);
  }
  for (std::size_t s = 0; s < size; ++s)
    if (!seen[s])
      throw FormatError("missing subset {" + subset_key(frame, static_cast<SubsetMask>(s)) +
                        "}");
  return {std::move(frame), std::move(values)};
}

json table_to_json(const Frame& frame, const std::vector<Rat>& values) {
  json j;
  j["points"] = json::array();
  for (const auto& p : frame.points()) j["points"].push_back(p);
  json table = json::object();
  for (std::size_t s = 0; s < values.size(); ++s)
    table[subset_key(frame, static_cast<SubsetMask>(s))] = rat_to_json(values[s]);
  j["values"] = std::move(table);
  return j;
}

}  // namespace

SetFunction set_function_from_json(const json& j) {
  auto [frame, values] = table_from_json(j);
  return SetFunction(std::move(frame), std::move(values));
}

MassFunction mass_function_from_json(const json& j) {
  auto [frame, values] = table_from_json(j);
  return MassFunction(std::move(frame), std::move(values));
}

json set_function_to_json(const SetFunction& sf) {
  return table_to_json(sf.frame(), sf.values());
}

json mass_function_to_json(const MassFunction& m) {
  return table_to_json(m.frame(), m.values());
}

// ---------------------------------------------------------------------------
// Products

ProductSpace product_from_json(const json& j, long max_tuples) {
  std::vector<MetricProbSpace> components;
  for (const auto& c : member(j, "components")) components.push_back(space_from_json(c));
  if (components.empty()) throw FormatError("product needs at least one component");

  std::optional<std::vector<Rat>> joint;
  if (j.contains("joint") && !j.at("joint").is_null()) {
    long count = 1;
    for (const auto& c : components) {
      if (c.size() > max_tuples / count)
        throw FrameTooLarge("product frame exceeds " + std::to_string(max_tuples) + " tuples");
      count *= c.size();
    }
    std::vector<long> strides(components.size(), 1);
    for (int i = static_cast<int>(components.size()) - 2; i >= 0; --i)
      strides[i] = strides[i + 1] * components[i + 1].size();

    std::vector<Rat> table(static_cast<std::size_t>(count), Rat(0));
    for (const auto& [key, value] : j.at("joint").items()) {
      long index = 0;
      std::size_t start = 0;
      for (std::size_t comp = 0; comp < components.size(); ++comp) {
        std::size_t bar = key.find('|', start);
        bool last = comp + 1 == components.size();
        if (last != (bar == std::string::npos))
          throw InvalidJoint("key '" + key + "' does not have " +
                             std::to_string(components.size()) + " coordinates");
        std::string name = key.substr(start, bar == std::string::npos ? bar : bar - start);
        if (!components[comp].frame().has(name))
          throw InvalidJoint("key '" + key + "' names unknown point '" + name + "'");
        index += strides[comp] * components[comp].frame().index_of(name);
        start = bar + 1;
      }
      table[static_cast<std::size_t>(index)] = rat_from_json(value);
    }
    joint = std::move(table);
  }
  return ProductSpace::build(std::move(components), std::move(joint), max_tuples);
}

// ---------------------------------------------------------------------------
// Valuations, models, witnesses

Valuation valuation_from_json(const json& j, const Frame& frame) {
  const json& map = j.is_object() && j.contains("valuation") ? j.at("valuation") : j;
  if (!map.is_object()) throw FormatError("valuation must be an object");

  std::vector<std::string> props;
  for (const auto& [point, list] : map.items()) {
    frame.index_of(point);  // throws UnknownPoint
    for (const auto& p : list) {
      std::string name = p.get<std::string>();
      if (std::find(props.begin(), props.end(), name) == props.end()) props.push_back(name);
    }
  }
  std::sort(props.begin(), props.end());
  if (props.size() > 31) throw FormatError("too many propositions in valuation");

  Valuation v;
  v.props = props;
  v.truth.assign(static_cast<std::size_t>(frame.size()), 0);
  std::vector<bool> covered(static_cast<std::size_t>(frame.size()), false);
  for (const auto& [point, list] : map.items()) {
    int index = frame.index_of(point);
    covered[static_cast<std::size_t>(index)] = true;
    for (const auto& p : list) {
      auto it = std::find(props.begin(), props.end(), p.get<std::string>());
      v.truth[static_cast<std::size_t>(index)] |=
          std::uint32_t{1} << (it - props.begin());
    }
  }
  for (int i = 0; i < frame.size(); ++i)
    if (!covered[static_cast<std::size_t>(i)])
      throw FormatError("valuation missing point '" + frame.point(i) + "'");
  return v;
}

json valuation_to_json(const Valuation& v, const Frame& frame) {
  json map = json::object();
  for (int p = 0; p < frame.size(); ++p) {
    json list = json::array();
    for (std::size_t j = 0; j < v.props.size(); ++j)
      if ((v.truth[static_cast<std::size_t>(p)] >> j) & 1) list.push_back(v.props[j]);
    map[frame.point(p)] = std::move(list);
  }
  return map;
}

Model model_from_json(const json& space_json, const json& valuation_json) {
  MetricProbSpace space = space_from_json(space_json);
  Valuation v = valuation_from_json(valuation_json, space.frame());
  return Model{std::move(space), std::move(v)};
}

json model_to_json(const Model& m) {
  json j = space_to_json(m.space);
  j["valuation"] = valuation_to_json(m.valuation, m.space.frame());
  return j;
}

json witness_to_json(const Witness& w, bool include_model) {
  json j;
  j["verdict"] = "consistent";
  int n = w.basis.atom_count();
  json e = json::object();
  for (std::size_t i = 0; i < w.e.size(); ++i)
    e[atom_set_str(static_cast<AtomSet>(i), n)] = rat_to_json(w.e[i]);
  j["e"] = std::move(e);
  json mass = json::object();
  for (std::size_t i = 0; i < w.mass.size(); ++i)
    mass[atom_set_str(static_cast<AtomSet>(i), n)] = rat_to_json(w.mass[i]);
  j["mass"] = std::move(mass);
  j["props"] = w.basis.props;
  if (include_model && w.model) j["model"] = model_to_json(w.model->materialize());
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
}

}  // namespace edlogic
