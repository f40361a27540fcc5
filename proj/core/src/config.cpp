#include "semigrowth/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "semigrowth/errors.hpp"

namespace semigrowth {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    const auto mark = node.Mark();
    if (!mark.is_null()) os << ":" << mark.line + 1 << ":" << mark.column + 1;
    os << ": " << field << ": " << msg;
    throw ConfigError(os.str());
  }

  void require_map(const YAML::Node& node, const std::string& field, const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key (allowed: " + list + ")");
      }
    }
  }

  double number(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a number");
    const auto text = node.Scalar();
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    try {
      const double v = node.as<double>();
      if (std::isnan(v)) fail(node, field, "NaN is not allowed");
      return v;
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + text + "'");
    }
  }

  int integer(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected an integer");
    try {
      return node.as<int>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
  }

  std::string string(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a string");
    return node.Scalar();
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  ModelSpec model(const YAML::Node& node, const std::string& field) const {
    require_map(node, field, {"type", "profile", "exponent", "scale", "k_max", "imag_bound", "points", "members"});
    ModelSpec m;
    if (!node["type"]) fail(node, field + ".type", "missing (finite, lattice, curve or union)");
    m.type = string(node["type"], field + ".type");
    if (m.type != "finite" && m.type != "lattice" && m.type != "curve" && m.type != "union") {
      fail(node["type"], field + ".type", "unknown model variant '" + m.type + "' (finite, lattice, curve, union)");
    }
    if (node["imag_bound"]) m.imag_bound = number(node["imag_bound"], field + ".imag_bound");
    if (m.type == "lattice") {
      if (node["profile"]) m.profile = string(node["profile"], field + ".profile");
      if (m.profile != "power" && m.profile != "log") {
        fail(node["profile"], field + ".profile", "unknown profile '" + m.profile + "' (power, log)");
      }
      if (node["exponent"]) {
        if (m.profile != "power") fail(node["exponent"], field + ".exponent", "only valid for the power profile");
        m.exponent = number(node["exponent"], field + ".exponent");
      }
      if (node["scale"]) m.scale = number(node["scale"], field + ".scale");
      if (node["k_max"]) m.k_max = number(node["k_max"], field + ".k_max");
      if (node["points"] || node["members"]) fail(node, field, "lattice models take no points or members");
    } else if (m.type == "union") {
      if (!node["members"] || !node["members"].IsSequence()) fail(node, field + ".members", "expected a list of models");
      const auto members = node["members"];
      for (std::size_t i = 0; i < members.size(); ++i) {
        m.members.push_back(model(members[i], field + ".members[" + std::to_string(i) + "]"));
      }
      for (const char* key : {"profile", "exponent", "scale", "k_max", "points"}) {
        if (node[key]) fail(node[key], field + "." + key, "not valid for a union");
      }
    } else {
      if (!node["points"] || !node["points"].IsSequence()) fail(node, field + ".points", "expected a list of [re, im]");
      const auto pts = node["points"];
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto f = field + ".points[" + std::to_string(i) + "]";
        const auto pair = numbers(pts[i], f);
        if (pair.size() != 2) fail(pts[i], f, "expected [re, im]");
        m.points.emplace_back(pair[0], pair[1]);
      }
      for (const char* key : {"profile", "exponent", "scale", "k_max", "members"}) {
        if (node[key]) fail(node[key], field + "." + key, "not valid for a " + m.type + " model");
      }
    }
    return m;
  }

  GridSpec grid(const YAML::Node& node, const std::string& field, GridSpec g) const {
    require_map(node, field, {"min", "max", "per_decade"});
    if (node["min"]) g.min = number(node["min"], field + ".min");
    if (node["max"]) g.max = number(node["max"], field + ".max");
    if (node["per_decade"]) g.per_decade = integer(node["per_decade"], field + ".per_decade");
    if (!(g.min > 0.0) || !std::isfinite(g.min)) fail(node, field + ".min", "must be positive and finite");
    if (!std::isfinite(g.max)) fail(node, field + ".max", "must be finite");
    if (!(g.min < g.max)) fail(node, field + ".min", "must be smaller than " + field + ".max");
    if (g.per_decade < 4) fail(node, field + ".per_decade", "must be at least 4");
    return g;
  }

  CheckSpec check(const YAML::Node& node, const std::string& field) const {
    CheckSpec c;
    if (node.IsMap()) {
      require_map(node, field, {"id", "epsilon", "c", "c_grid", "curve_scale"});
      if (!node["id"]) fail(node, field + ".id", "missing");
    }
    // Node assignment rebinds the referenced value, so the id node is bound once.
    const YAML::Node id_node = node.IsMap() ? node["id"] : node;
    const auto name = string(id_node, field + ".id");
    const auto id = parse_check_id(name);
    if (!id) {
      std::string list;
      for (auto k : all_check_ids()) list += (list.empty() ? "" : ", ") + std::string(to_string(k));
      fail(id_node, field + ".id", "unknown check id '" + name + "' (known: " + list + ")");
    }
    c.id = *id;
    if (!node.IsMap()) return c;
    if (node["epsilon"]) {
      c.epsilon = number(node["epsilon"], field + ".epsilon");
      if (!(*c.epsilon > 0.0 && *c.epsilon < 1.0)) fail(node["epsilon"], field + ".epsilon", "must lie in (0, 1)");
    }
    if (node["c"]) {
      c.c = number(node["c"], field + ".c");
      if (!(*c.c > 0.0)) fail(node["c"], field + ".c", "must be positive");
    }
    if (node["c_grid"]) {
      c.c_grid = numbers(node["c_grid"], field + ".c_grid");
      if (c.c_grid->empty()) fail(node["c_grid"], field + ".c_grid", "must not be empty");
      for (double v : *c.c_grid) {
        if (!(v > 0.0 && v < 1.0)) fail(node["c_grid"], field + ".c_grid", "values must lie in (0, 1)");
      }
    }
    if (node["curve_scale"]) {
      c.curve_scale = number(node["curve_scale"], field + ".curve_scale");
      if (!(*c.curve_scale > 0.0)) fail(node["curve_scale"], field + ".curve_scale", "must be positive");
    }
    return c;
  }

 private:
  std::string source_;
};

void emit_model(YAML::Emitter& out, const ModelSpec& m) {
  out << YAML::BeginMap << YAML::Key << "type" << YAML::Value << m.type;
  if (m.type == "lattice") {
    out << YAML::Key << "profile" << YAML::Value << m.profile;
    if (m.profile == "power") out << YAML::Key << "exponent" << YAML::Value << m.exponent;
    out << YAML::Key << "scale" << YAML::Value << m.scale;
    out << YAML::Key << "k_max" << YAML::Value << m.k_max;
  } else if (m.type == "union") {
    out << YAML::Key << "members" << YAML::Value << YAML::BeginSeq;
    for (const auto& sub : m.members) emit_model(out, sub);
    out << YAML::EndSeq;
  } else {
    out << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
    for (const auto& [re, im] : m.points) out << YAML::Flow << YAML::BeginSeq << re << im << YAML::EndSeq;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "imag_bound" << YAML::Value << m.imag_bound;
  out << YAML::EndMap;
}

void emit_grid(YAML::Emitter& out, const char* name, const GridSpec& g) {
  out << YAML::Key << name << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "min" << YAML::Value << g.min;
  out << YAML::Key << "max" << YAML::Value << g.max;
  out << YAML::Key << "per_decade" << YAML::Value << g.per_decade;
  out << YAML::EndMap;
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": malformed document: " << e.msg;
    throw ConfigError(os.str());
  }
  const Parser p(source);
  if (!root.IsMap()) p.fail(root, "<root>", "expected a mapping with model, grids, checks, output");
  p.require_map(root, "", {"model", "grids", "checks", "output", "seed"});

  RunConfig cfg;
  if (!root["model"]) p.fail(root, "model", "missing");
  cfg.model = p.model(root["model"], "model");

  if (const auto grids = root["grids"]) {
    p.require_map(grids, "grids", {"t", "s", "eta"});
    if (grids["t"]) cfg.t_grid = p.grid(grids["t"], "grids.t", cfg.t_grid);
    if (grids["s"]) cfg.s_grid = p.grid(grids["s"], "grids.s", cfg.s_grid);
    if (grids["eta"]) cfg.eta_grid = p.grid(grids["eta"], "grids.eta", cfg.eta_grid);
  }
  if (const auto checks = root["checks"]) {
    if (!checks.IsSequence()) p.fail(checks, "checks", "expected a list");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      cfg.checks.push_back(p.check(checks[i], "checks[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (cfg.checks[i].id == cfg.checks[j].id) {
          p.fail(checks[i], "checks[" + std::to_string(i) + "].id",
                 "duplicate check id '" + std::string(to_string(cfg.checks[i].id)) + "'");
        }
      }
    }
  }
  if (const auto output = root["output"]) {
    p.require_map(output, "output", {"dir"});
    if (output["dir"]) cfg.output_dir = p.string(output["dir"], "output.dir");
  }
  if (const auto seed = root["seed"]) {
    try {
      cfg.seed = seed.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      p.fail(seed, "seed", "expected a non-negative integer");
    }
  }

  if (!(cfg.s_grid.min > cfg.model.imag_bound)) {
    p.fail(root["grids"] ? root["grids"] : root, "grids.s.min", "must exceed model.imag_bound");
  }
  try {
    build_model(cfg.model);
  } catch (const Error& e) {
    p.fail(root["model"], "model", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string echo_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "model" << YAML::Value;
  emit_model(out, c.model);
  out << YAML::Key << "grids" << YAML::Value << YAML::BeginMap;
  emit_grid(out, "t", c.t_grid);
  emit_grid(out, "s", c.s_grid);
  emit_grid(out, "eta", c.eta_grid);
  out << YAML::EndMap;
  out << YAML::Key << "checks" << YAML::Value << YAML::BeginSeq;
  for (const auto& ch : c.checks) {
    out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << std::string(to_string(ch.id));
    if (ch.epsilon) out << YAML::Key << "epsilon" << YAML::Value << *ch.epsilon;
    if (ch.c) out << YAML::Key << "c" << YAML::Value << *ch.c;
    if (ch.c_grid) out << YAML::Key << "c_grid" << YAML::Value << YAML::Flow << *ch.c_grid;
    if (ch.curve_scale) out << YAML::Key << "curve_scale" << YAML::Value << *ch.curve_scale;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap << YAML::Key << "dir" << YAML::Value << c.output_dir
      << YAML::EndMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

SpectralModel build_model(const ModelSpec& m) {
  if (m.type == "lattice") {
    Profile profile;
    if (m.profile == "power") {
      profile = PowerProfile{m.exponent, m.scale};
    } else if (m.profile == "log") {
      profile = LogProfile{m.scale};
    } else {
      throw ConfigError("unknown profile '" + m.profile + "'");
    }
    return SpectralModel::lattice(profile, m.k_max, m.imag_bound);
  }
  if (m.type == "union") {
    std::vector<SpectralModel> members;
    for (auto sub : m.members) {
      sub.imag_bound = std::max(sub.imag_bound, m.imag_bound);
      members.push_back(build_model(sub));
    }
    return SpectralModel::union_of(std::move(members), m.imag_bound);
  }
  std::vector<Complex> pts;
  for (const auto& [re, im] : m.points) pts.emplace_back(re, im);
  if (m.type == "finite") return SpectralModel::finite(std::move(pts), m.imag_bound);
  if (m.type == "curve") return SpectralModel::curve(std::move(pts), m.imag_bound);
  throw ConfigError("unknown model variant '" + m.type + "'");
}

}  // namespace semigrowth
