#include "fbvp/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "fbvp/conditions.hpp"
#include "json.hpp"

namespace fbvp::cli {

namespace {

using nlohmann::json;

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw ConfigError("format must be 'csv' or 'json', got '" + s + "'");
}

struct CustomExpressions {
  Expression f, q, u, v, gamma;
};

// Each expression may only use the variables of its own signature.
Expression parse_checked(const std::string& name, const std::string& src, const Constants& constants,
                         std::initializer_list<Var> allowed) {
  Expression e = [&] {
    try {
      return parse_expr(src, constants);
    } catch (const ParseError& err) {
      throw ConfigError("expression '" + name + "': " + err.what());
    }
  }();
  for (Var v : {Var::kT, Var::kX, Var::kR, Var::kC}) {
    if (e.uses(v) && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      throw ConfigError("expression '" + name + "' uses a variable outside its signature");
    }
  }
  return e;
}

CustomExpressions parse_custom(const CustomFamily& fam, const Constants& constants) {
  return {parse_checked("f", fam.f, constants, {Var::kT, Var::kX}),
          parse_checked("q", fam.q, constants, {Var::kT}),
          parse_checked("u", fam.u, constants, {Var::kX}),
          parse_checked("v", fam.v, constants, {Var::kX}),
          parse_checked("gamma", fam.gamma, constants, {Var::kR})};
}

}  // namespace

void ProblemConfig::validate() const {
  if (!(mu > 1.0 && mu <= 2.0)) throw ConfigError("mu must lie in (1, 2]");
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(R > 0.0)) throw ConfigError("R must be positive");
  if (grid_size < 9) throw ConfigError("solver.grid_size must be at least 9");
  if (!(tol > 0.0)) throw ConfigError("solver.tol must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("solver.damping must lie in (0, 1]");
  for (std::size_t k = 0; k < m_schedule.size(); ++k) {
    if (m_schedule[k] < 1 || (k > 0 && m_schedule[k] <= m_schedule[k - 1])) {
      throw ConfigError("solver.m_schedule must be increasing positive integers");
    }
  }
  if (const auto* ex = std::get_if<ExampleFamily>(&family)) {
    if (!(ex->lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (mu != 1.9 || omega != 2.0) throw ConfigError("family 'example' fixes mu = 1.9 and omega = 2");
  } else {
    parse_custom(std::get<CustomFamily>(family), expression_constants(*this));
  }
}

ProblemConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ProblemConfig cfg;
  try {
    allow_keys(doc, "config", {"mu", "omega", "R", "family", "lambda", "constants", "expressions", "solver", "output"});
    const std::string family = text(doc, "family", "config");
    if (doc.contains("mu")) cfg.mu = number(doc, "mu", "config");
    if (doc.contains("omega")) cfg.omega = number(doc, "omega", "config");
    if (doc.contains("R")) cfg.R = number(doc, "R", "config");
    if (family == "example") {
      if (doc.contains("expressions") || doc.contains("constants")) {
        throw ConfigError("family 'example' takes no expressions or constants");
      }
      ExampleFamily ex;
      if (doc.contains("lambda")) ex.lambda = number(doc, "lambda", "config");
      cfg.family = ex;
    } else if (family == "custom") {
      if (doc.contains("lambda")) throw ConfigError("family 'custom' binds lambda through 'constants'");
      if (!doc.contains("mu") || !doc.contains("omega") || !doc.contains("R")) {
        throw ConfigError("family 'custom' requires mu, omega and R");
      }
      CustomFamily fam;
      if (doc.contains("constants")) {
        const json& c = doc.at("constants");
        if (!c.is_object()) throw ConfigError("constants: expected an object");
        for (const auto& [key, value] : c.items()) {
          if (!value.is_number()) throw ConfigError("constants." + key + ": expected a number");
          fam.constants[key] = value.get<double>();
        }
      }
      if (!doc.contains("expressions")) throw ConfigError("family 'custom' requires 'expressions'");
      const json& e = doc.at("expressions");
      allow_keys(e, "expressions", {"f", "q", "u", "v", "gamma"});
      fam.f = text(e, "f", "expressions");
      fam.q = text(e, "q", "expressions");
      fam.u = text(e, "u", "expressions");
      fam.v = text(e, "v", "expressions");
      fam.gamma = text(e, "gamma", "expressions");
      cfg.family = std::move(fam);
    } else {
      throw ConfigError("family must be 'example' or 'custom', got '" + family + "'");
    }
    if (doc.contains("solver")) {
      const json& s = doc.at("solver");
      allow_keys(s, "solver", {"grid_size", "tol", "damping", "m_schedule"});
      if (s.contains("grid_size")) {
        if (!s.at("grid_size").is_number_unsigned()) throw ConfigError("solver.grid_size: expected a positive integer");
        cfg.grid_size = s.at("grid_size").get<std::size_t>();
      }
      if (s.contains("tol")) cfg.tol = number(s, "tol", "solver");
      if (s.contains("damping")) cfg.damping = number(s, "damping", "solver");
      if (s.contains("m_schedule")) {
        const json& m = s.at("m_schedule");
        if (!m.is_array()) throw ConfigError("solver.m_schedule: expected an array");
        for (const auto& item : m) {
          if (!item.is_number_integer()) throw ConfigError("solver.m_schedule: expected integers");
          cfg.m_schedule.push_back(item.get<int>());
        }
      }
    }
    if (doc.contains("output")) {
      const json& o = doc.at("output");
      allow_keys(o, "output", {"dir", "format"});
      if (o.contains("dir")) cfg.out_dir = text(o, "dir", "output");
      if (o.contains("format")) cfg.format = parse_format(text(o, "format", "output"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Constants expression_constants(const ProblemConfig& config) {
  Constants out;
  if (const auto* fam = std::get_if<CustomFamily>(&config.family)) out = fam->constants;
  out.emplace("R", config.R);
  out.emplace("mu", config.mu);
  out.emplace("omega", config.omega);
  return out;
}

ProblemSpec build_problem(const ProblemConfig& config) {
  config.validate();
  if (const auto* ex = std::get_if<ExampleFamily>(&config.family)) {
    return example_problem(ex->lambda, config.R);
  }
  const auto& fam = std::get<CustomFamily>(config.family);
  const KernelParams params(config.mu, config.omega);
  auto exprs = std::make_shared<const CustomExpressions>(parse_custom(fam, expression_constants(config)));
  auto green = std::make_shared<const GreenFunction>(params);

  ProblemSpec p{
      params,
      [exprs, green](double t, double x) {
        Scope s;
        s.t = t;
        s.x = x;
        return exprs->f.evaluate(s, green.get());
      },
      [exprs, green](double t) {
        Scope s;
        s.t = t;
        return exprs->q.evaluate(s, green.get());
      },
      [exprs, green](double x) {
        Scope s;
        s.x = x;
        return exprs->u.evaluate(s, green.get());
      },
      [exprs, green](double x) {
        Scope s;
        s.x = x;
        return exprs->v.evaluate(s, green.get());
      },
      [exprs, green](double r) {
        Scope s;
        s.r = r;
        return exprs->gamma.evaluate(s, green.get());
      },
      config.R,
      "custom",
      [exprs, green](double sc) {
        Scope s;
        s.t = 1.0 - sc;
        s.t_complement = sc;
        return exprs->q.evaluate(s, green.get());
      }};
  return p;
}

SolveOptions solve_options(const ProblemConfig& config) {
  SolveOptions o;
  o.grid_size = config.grid_size;
  o.tol = config.tol;
  o.damping = config.damping;
  o.m_schedule = config.m_schedule;
  return o;
}

}  // namespace fbvp::cli
