#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "wigner/basis/tables.hpp"
#include "wigner/ensemble/ensemble.hpp"

namespace wigner::cli {

namespace {

using Setter = std::function<std::optional<std::string>(RunConfig&, const std::string&)>;

struct KeySpec {
  std::string name;
  Setter set;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(const std::string& s) {
  const std::string l = lower(s);
  if (l == "true" || l == "yes" || l == "on" || l == "1") return true;
  if (l == "false" || l == "no" || l == "off" || l == "0") return false;
  return std::nullopt;
}


template <class F>
Setter real_field(F field) {
  return [field](RunConfig& c, const std::string& v) -> std::optional<std::string> {
    const auto d = to_double(v);
    if (!d) return "expected a real number, got '" + v + "'";
    field(c) = *d;
    return std::nullopt;
  };
}

template <class F>
Setter int_field(F field) {
  return [field](RunConfig& c, const std::string& v) -> std::optional<std::string> {
    const auto d = to_int(v);
    if (!d) return "expected an integer, got '" + v + "'";
    field(c) = *d;
    return std::nullopt;
  };
}

template <class F>
Setter bool_field(F field) {
  return [field](RunConfig& c, const std::string& v) -> std::optional<std::string> {
    const auto d = to_bool(v);
    if (!d) return "expected true or false, got '" + v + "'";
    field(c) = *d;
    return std::nullopt;
  };
}

template <class F>
Setter text_field(F field) {
  return [field](RunConfig& c, const std::string& v) -> std::optional<std::string> {
    field(c) = v;
    return std::nullopt;
  };
}

std::optional<Mode> parse_mode(const std::string& s) {
  static const std::map<std::string, Mode> modes{
      {"evolve", Mode::evolve},     {"stationary", Mode::stationary}, {"moyal", Mode::moyal},
      {"lindblad", Mode::lindblad}, {"ensemble", Mode::ensemble},     {"refine", Mode::refine}};
  const auto it = modes.find(lower(s));
  if (it == modes.end()) return std::nullopt;
  return it->second;
}

const std::map<std::string, std::vector<KeySpec>>& schema() {
  static const std::map<std::string, std::vector<KeySpec>> s{
      {"run",
       {{"mode", [](RunConfig& c, const std::string& v) -> std::optional<std::string> {
           const auto m = parse_mode(v);
           if (!m) return "unknown mode '" + v + "' (evolve, stationary, moyal, lindblad, ensemble, refine)";
           c.mode = *m;
           return std::nullopt;
         }}}},
      {"model",
       {{"potential", text_field([](RunConfig& c) -> std::string& { return c.potential_text; })},
        {"mass", real_field([](RunConfig& c) -> double& { return c.model.mass; })},
        {"hbar", real_field([](RunConfig& c) -> double& { return c.model.hbar; })},
        {"gamma", real_field([](RunConfig& c) -> double& { return c.model.gamma; })},
        {"diffusion", real_field([](RunConfig& c) -> double& { return c.model.diffusion; })}}},
      {"basis",
       {{"order", int_field([](RunConfig& c) -> int& { return c.order; })},
        {"j_coarse", int_field([](RunConfig& c) -> int& { return c.j_coarse; })},
        {"j_fine", int_field([](RunConfig& c) -> int& { return c.j_fine; })},
        {"q_min", real_field([](RunConfig& c) -> double& { return c.model.box_q.lo; })},
        {"q_max", real_field([](RunConfig& c) -> double& { return c.model.box_q.hi; })},
        {"p_min", real_field([](RunConfig& c) -> double& { return c.model.box_p.lo; })},
        {"p_max", real_field([](RunConfig& c) -> double& { return c.model.box_p.hi; })}}},
      {"initial",
       {{"type", text_field([](RunConfig& c) -> std::string& { return c.initial.type; })},
        {"q0", real_field([](RunConfig& c) -> double& { return c.initial.q0; })},
        {"p0", real_field([](RunConfig& c) -> double& { return c.initial.p0; })},
        {"sigma_q", real_field([](RunConfig& c) -> double& { return c.initial.sigma_q; })},
        {"sigma_p", real_field([](RunConfig& c) -> double& { return c.initial.sigma_p; })},
        {"n", int_field([](RunConfig& c) -> int& { return c.initial.n; })}}},
      {"solver",
       {{"dt", real_field([](RunConfig& c) -> double& { return c.solver.dt; })},
        {"t_end", real_field([](RunConfig& c) -> double& { return c.solver.t_end; })},
        {"scheme", [](RunConfig& c, const std::string& v) -> std::optional<std::string> {
           const std::string l = lower(v);
           if (l == "implicit_midpoint") c.solver.scheme = Scheme::implicit_midpoint;
           else if (l == "explicit_rk4") c.solver.scheme = Scheme::explicit_rk4;
           else return "unknown scheme '" + v + "' (implicit_midpoint, explicit_rk4)";
           return std::nullopt;
         }},
        {"renormalize", bool_field([](RunConfig& c) -> bool& { return c.solver.renormalize; })},
        {"states", int_field([](RunConfig& c) -> int& { return c.solver.states; })},
        {"pairs", int_field([](RunConfig& c) -> int& { return c.solver.pairs; })},
        {"assembly", text_field([](RunConfig& c) -> std::string& { return c.solver.assembly; })},
        {"sector_penalty", real_field([](RunConfig& c) -> double& { return c.solver.sector_penalty; })},
        {"tolerance", real_field([](RunConfig& c) -> double& { return c.solver.tolerance; })},
        {"epsilon", real_field([](RunConfig& c) -> double& { return c.solver.epsilon; })},
        {"n_max", int_field([](RunConfig& c) -> int& { return c.solver.n_max; })},
        {"state_index", int_field([](RunConfig& c) -> int& { return c.solver.state_index; })}}},
      {"ensemble",
       {{"n_max", int_field([](RunConfig& c) -> int& { return c.ensemble.n_max; })},
        {"weights", text_field([](RunConfig& c) -> std::string& { return c.ensemble.weights_text; })},
        {"u0", real_field([](RunConfig& c) -> double& { return c.ensemble.u0; })},
        {"g", text_field([](RunConfig& c) -> std::string& { return c.ensemble.g_text; })}}},
      {"output",
       {{"directory", text_field([](RunConfig& c) -> std::string& { return c.output.directory; })},
        {"name", text_field([](RunConfig& c) -> std::string& { return c.output.name; })},
        {"grid_q", int_field([](RunConfig& c) -> int& { return c.output.grid_q; })},
        {"grid_p", int_field([](RunConfig& c) -> int& { return c.output.grid_p; })},
        {"checkpoint_every", int_field([](RunConfig& c) -> int& { return c.output.checkpoint_every; })},
        {"checkpoints", bool_field([](RunConfig& c) -> bool& { return c.output.checkpoints; })},
        {"marginals", bool_field([](RunConfig& c) -> bool& { return c.output.marginals; })},
        {"scale_cut_q", int_field([](RunConfig& c) -> int& { return c.output.scale_cut_q; })},
        {"scale_cut_p", int_field([](RunConfig& c) -> int& { return c.output.scale_cut_p; })}}},
      {"diagnostics",
       {{"theta_loc", real_field([](RunConfig& c) -> double& { return c.thresholds.localized; })},
        {"theta_chaos", real_field([](RunConfig& c) -> double& { return c.thresholds.chaotic; })},
        {"theta_stab", real_field([](RunConfig& c) -> double& { return c.thresholds.stable; })},
        {"theta_frac", real_field([](RunConfig& c) -> double& { return c.thresholds.fraction; })}}},
  };
  return s;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string nearest(std::string_view word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Location {
  int line = 0;
  int column = 0;
};

class Validator {
 public:
  explicit Validator(const std::map<std::string, Location>& where) : where_(where) {}

  void add(const std::string& key, const std::string& message) {
    const auto it = where_.find(key);
    const Location loc = it == where_.end() ? Location{} : it->second;
    issues.push_back({loc.line, loc.column, key + ": " + message});
  }
  void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) add(key, message);
  }
  bool has(const std::string& key) const { return where_.count(key) > 0; }

  std::vector<ConfigIssue> issues;

 private:
  const std::map<std::string, Location>& where_;
};

int required_derivative(const RunConfig& c) {
  const PolynomialPotential& u = c.potential;
  int need = 1;
  if (c.model.diffusion > 0.0 || c.model.gamma > 0.0) need = std::max(need, 2);
  const int l = moyal_truncation(u);
  if (l >= 0) need = std::max(need, 2 * l + 1);
  if (c.mode == Mode::stationary || c.mode == Mode::moyal || c.mode == Mode::refine) {
    need = std::max({need, 2, u.degree_q(), u.degree_p()});
  }
  if (c.mode == Mode::ensemble && c.ensemble.present) {
    const int lg = moyal_truncation(c.ensemble.g);
    if (lg >= 0) need = std::max(need, 2 * lg + 1);
  }
  return need;
}

void validate(RunConfig& c, Validator& v, bool saw_ensemble) {
  try {
    c.potential = parse_potential(c.potential_text);
  } catch (const Error& e) {
    v.add("model.potential", e.what());
  }
  for (const auto& p : c.model.problems()) {
    std::string key = "model." + p.substr(0, p.find(' '));
    if (p.rfind("q box", 0) == 0) key = "basis.q_max";
    if (p.rfind("p box", 0) == 0) key = "basis.p_max";
    v.add(key, p);
  }

  const auto orders = supported_filter_orders();
  const bool order_ok = std::find(orders.begin(), orders.end(), c.order) != orders.end();
  v.require(order_ok, "basis.order", "unsupported filter order " + std::to_string(c.order) +
                                         " (even numbers from 2 to 20)");
  v.require(c.j_coarse >= 0, "basis.j_coarse", "must be >= 0");
  v.require(c.j_fine >= c.j_coarse, "basis.j_fine", "must be >= j_coarse");
  v.require(c.j_fine >= 1 && c.j_fine <= 10, "basis.j_fine", "must lie in [1, 10]");
  if (order_ok && !c.potential.is_zero()) {
    v.require(c.potential.degree() <= kDefaultMaxPower, "model.potential",
              "degree " + std::to_string(c.potential.degree()) + " exceeds the supported maximum " +
                  std::to_string(kDefaultMaxPower));
  }

  v.require(c.initial.type == "gaussian" || c.initial.type == "harmonic", "initial.type",
            "unknown initial state '" + c.initial.type + "' (gaussian, harmonic)");
  v.require(c.initial.sigma_q >= 0.0, "initial.sigma_q", "must be >= 0 (0 selects sqrt(hbar/2))");
  v.require(c.initial.sigma_p >= 0.0, "initial.sigma_p", "must be >= 0 (0 selects sqrt(hbar/2))");
  v.require(c.initial.n >= 0, "initial.n", "must be >= 0");
  if (c.initial.type == "harmonic") {
    const auto& cq = c.potential.coeffs_q();
    v.require(cq.size() > 2 && cq[2] > 0.0, "initial.type",
              "harmonic initial state needs a positive q^2 coefficient in model.potential");
  }
  if (c.mode == Mode::evolve || c.mode == Mode::ensemble) {
    v.require(c.model.gamma == 0.0 && c.model.diffusion == 0.0, "model",
              "gamma and diffusion act only in mode lindblad");
  }
  if (c.mode == Mode::ensemble) {
    v.require(c.potential.is_zero(), "model.potential",
              "not used in mode ensemble; level n evolves under ensemble.u0 * n * ensemble.g");
  }

  v.require(c.solver.dt > 0.0, "solver.dt", "must be positive");
  v.require(c.solver.t_end >= 0.0, "solver.t_end", "must be >= 0");
  v.require(c.solver.states >= 1, "solver.states", "must be >= 1");
  v.require(c.solver.pairs >= 1, "solver.pairs", "must be >= 1");
  v.require(c.solver.assembly == "pair" || c.solver.assembly == "cnumber", "solver.assembly",
            "unknown assembly '" + c.solver.assembly + "' (pair, cnumber)");
  v.require(c.solver.sector_penalty > 0.0, "solver.sector_penalty", "must be positive");
  v.require(c.solver.tolerance > 0.0, "solver.tolerance", "must be positive");
  v.require(c.solver.epsilon > 0.0, "solver.epsilon", "must be positive");
  v.require(c.solver.state_index >= 0, "solver.state_index", "must be >= 0");
  if (c.mode == Mode::refine) {
    v.require(c.solver.n_max >= c.j_fine + 1, "solver.n_max",
              "must be at least j_fine + 1 = " + std::to_string(c.j_fine + 1));
    v.require(c.solver.n_max <= 10, "solver.n_max", "must be <= 10");
  }

  c.ensemble.present = saw_ensemble;
  if (c.mode == Mode::ensemble && !saw_ensemble) {
    v.add("ensemble", "mode ensemble needs an [ensemble] section");
  }
  if (saw_ensemble) {
    v.require(c.ensemble.n_max >= 0, "ensemble.n_max", "must be >= 0");
    try {
      c.ensemble.g = parse_potential(c.ensemble.g_text);
    } catch (const Error& e) {
      v.add("ensemble.g", e.what());
    }
    const std::string w = trim(c.ensemble.weights_text);
    if (c.ensemble.n_max >= 0) {
      if (w.rfind("coherent:", 0) == 0) {
        const auto alpha = to_double(trim(w.substr(9)));
        if (!alpha) v.add("ensemble.weights", "expected coherent:<alpha>, got '" + w + "'");
        else c.ensemble.weights = coherent_weights(*alpha, c.ensemble.n_max);
      } else {
        std::vector<double> list;
        std::stringstream ss(w);
        std::string item;
        bool ok = true;
        while (std::getline(ss, item, ',')) {
          const auto d = to_double(trim(item));
          if (!d || *d < 0.0) {
            v.add("ensemble.weights", "entry '" + trim(item) + "' is not a non-negative number");
            ok = false;
            break;
          }
          list.push_back(*d);
        }
        if (ok && list.size() != static_cast<std::size_t>(c.ensemble.n_max) + 1) {
          v.add("ensemble.weights", "expected n_max + 1 = " + std::to_string(c.ensemble.n_max + 1) +
                                        " weights, got " + std::to_string(list.size()));
          ok = false;
        }
        double sum = 0.0;
        for (double x : list) sum += x;
        if (ok && !(sum > 0.0)) {
          v.add("ensemble.weights", "weights are all zero");
          ok = false;
        }
        if (ok) c.ensemble.weights = normalize_weights(list);
      }
    }
  }

  v.require(c.output.grid_q >= 2, "output.grid_q", "must be >= 2");
  v.require(c.output.grid_p >= 2, "output.grid_p", "must be >= 2");
  v.require(c.output.checkpoint_every >= 1, "output.checkpoint_every", "must be >= 1");
  v.require(!c.output.name.empty() && c.output.name.find('/') == std::string::npos, "output.name",
            "must be a non-empty name without '/'");
  const bool cuts = c.output.scale_cut_q >= 0 || c.output.scale_cut_p >= 0;
  if (cuts) {
    for (const auto& [key, cut] : {std::pair{"output.scale_cut_q", c.output.scale_cut_q},
                                   std::pair{"output.scale_cut_p", c.output.scale_cut_p}}) {
      v.require(cut >= c.j_coarse && cut <= c.j_fine + 1, key,
                "must lie in [j_coarse, j_fine + 1] = [" + std::to_string(c.j_coarse) + ", " +
                    std::to_string(c.j_fine + 1) + "]");
    }
  }

  try {
    c.thresholds.validate();
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    v.add("diagnostics", msg.substr(msg.find(':') + 1));
  }

  if (order_ok && v.issues.empty()) {
    const int need = required_derivative(c);
    const int have = basis_tables(c.order)->max_derivative();
    v.require(need <= have, "basis.order",
              "this run needs derivative order " + std::to_string(need) + " but filter order " +
                  std::to_string(c.order) + " supports at most " + std::to_string(have) +
                  "; use a higher filter order");
  }
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::evolve: return "evolve";
    case Mode::stationary: return "stationary";
    case Mode::moyal: return "moyal";
    case Mode::lindblad: return "lindblad";
    case Mode::ensemble: return "ensemble";
    case Mode::refine: return "refine";
  }
  return "evolve";
}

std::vector<std::string> known_keys(std::string_view section) {
  std::vector<std::string> out;
  const auto it = schema().find(std::string(section));
  if (it == schema().end()) return out;
  for (const auto& k : it->second) out.push_back(k.name);
  return out;
}

ConfigValidationError::ConfigValidationError(std::string origin, std::vector<ConfigIssue> issues)
    : ConfigError([&] {
        std::ostringstream msg;
        msg << origin << ": " << issues.size() << " configuration error" << (issues.size() == 1 ? "" : "s");
        for (const auto& i : issues) {
          msg << "\n  ";
          if (i.line > 0) msg << origin << ":" << i.line << ":" << i.column << ": ";
          msg << i.message;
        }
        return msg.str();
      }()),
      issues_(std::move(issues)) {}

RunConfig parse_config_text(std::string_view text, const std::string& origin) {
  RunConfig cfg;
  std::vector<ConfigIssue> issues;
  std::map<std::string, Location> where;
  std::string section;
  bool saw_ensemble = false;

  std::vector<std::string> sections;
  for (const auto& [name, keys] : schema()) sections.push_back(name);

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string raw(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    bool in_quote = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_quote = !in_quote;
      if (!in_quote && (raw[i] == '#' || raw[i] == ';')) {
        raw.resize(i);
        break;
      }
    }
    const std::string line = trim(raw);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({line_no, indent + static_cast<int>(line.size()), "expected ']' to close the section header"});
        section = lower(trim(line.substr(1)));
      } else {
        section = lower(trim(line.substr(1, line.size() - 2)));
        if (!schema().count(section)) {
          issues.push_back({line_no, indent + 1, "unknown section [" + section + "]; nearest valid section: [" +
                                                     nearest(section, sections) + "]"});
        }
        if (section == "ensemble") saw_ensemble = true;
      }
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        issues.push_back({line_no, indent, "expected 'key = value'"});
      } else {
        const std::string key = lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        const int value_col = indent + static_cast<int>(line.find_first_not_of(" \t", eq + 1) == std::string::npos
                                                              ? eq + 1
                                                              : line.find_first_not_of(" \t", eq + 1));
        bool ok = true;
        if (key.empty()) {
          issues.push_back({line_no, indent, "missing key before '='"});
          ok = false;
        } else if (section.empty()) {
          issues.push_back({line_no, indent, "key '" + key + "' appears before any [section]"});
          ok = false;
        }
        if (ok && !value.empty() && value.front() == '"') {
          if (value.size() < 2 || value.back() != '"') {
            issues.push_back({line_no, value_col, "unterminated quoted value"});
            ok = false;
          } else {
            value = value.substr(1, value.size() - 2);
          }
        }
        if (ok && schema().count(section)) {
          const auto& keys = schema().at(section);
          const auto it = std::find_if(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == key; });
          const std::string full = section + "." + key;
          if (it == keys.end()) {
            std::string msg = "unknown key '" + key + "' in [" + section + "]; nearest valid key: " +
                              nearest(key, known_keys(section));
            for (const auto& other : sections) {
              if (other == section) continue;
              const auto ok2 = known_keys(other);
              if (std::find(ok2.begin(), ok2.end(), key) != ok2.end()) msg += " (or [" + other + "] " + key + ")";
            }
            issues.push_back({line_no, indent, msg});
          } else if (where.count(full)) {
            issues.push_back({line_no, indent, "duplicate key '" + key + "' (first set on line " +
                                                   std::to_string(where[full].line) + ")"});
          } else {
            where[full] = {line_no, value_col};
            if (value.empty()) {
              issues.push_back({line_no, value_col, "empty value for '" + key + "'"});
            } else if (const auto err = it->set(cfg, value)) {
              issues.push_back({line_no, value_col, full + ": " + *err});
            }
          }
        }
      }
    }
    if (eol == text.size()) break;
  }

  if (!where.count("run.mode")) issues.push_back({0, 0, "run.mode: missing; set [run] mode = ..."});

  if (issues.empty()) {
    Validator v(where);
    validate(cfg, v, saw_ensemble);
    issues = std::move(v.issues);
  } else {
    Validator v(where);
    validate(cfg, v, saw_ensemble);
    for (auto& i : v.issues) issues.push_back(std::move(i));
  }
  std::stable_sort(issues.begin(), issues.end(), [](const ConfigIssue& a, const ConfigIssue& b) {
    const int la = a.line == 0 ? 1 << 30 : a.line;
    const int lb = b.line == 0 ? 1 << 30 : b.line;
    return la < lb;
  });
  if (!issues.empty()) throw ConfigValidationError(origin, std::move(issues));
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigValidationError(path.string(), {{0, 0, "cannot open configuration file"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  auto scheme_name = solver.scheme == Scheme::implicit_midpoint ? "implicit_midpoint" : "explicit_rk4";
  std::vector<std::pair<std::string, std::string>> e{
      {"run.mode", to_string(mode)},
      {"model.potential", potential.to_string()},
      {"model.mass", fmt(model.mass)},
      {"model.hbar", fmt(model.hbar)},
      {"model.gamma", fmt(model.gamma)},
      {"model.diffusion", fmt(model.diffusion)},
      {"basis.order", std::to_string(order)},
      {"basis.j_coarse", std::to_string(j_coarse)},
      {"basis.j_fine", std::to_string(j_fine)},
      {"basis.q_min", fmt(model.box_q.lo)},
      {"basis.q_max", fmt(model.box_q.hi)},
      {"basis.p_min", fmt(model.box_p.lo)},
      {"basis.p_max", fmt(model.box_p.hi)},
      {"initial.type", initial.type},
      {"initial.q0", fmt(initial.q0)},
      {"initial.p0", fmt(initial.p0)},
      {"initial.sigma_q", fmt(initial.sigma_q)},
      {"initial.sigma_p", fmt(initial.sigma_p)},
      {"initial.n", std::to_string(initial.n)},
      {"solver.dt", fmt(solver.dt)},
      {"solver.t_end", fmt(solver.t_end)},
      {"solver.scheme", scheme_name},
      {"solver.renormalize", solver.renormalize ? "true" : "false"},
      {"solver.states", std::to_string(solver.states)},
      {"solver.pairs", std::to_string(solver.pairs)},
      {"solver.assembly", solver.assembly},
      {"solver.sector_penalty", fmt(solver.sector_penalty)},
      {"solver.tolerance", fmt(solver.tolerance)},
      {"solver.epsilon", fmt(solver.epsilon)},
      {"solver.n_max", std::to_string(solver.n_max)},
      {"solver.state_index", std::to_string(solver.state_index)},
  };
  if (ensemble.present) {
    std::string w;
    for (std::size_t i = 0; i < ensemble.weights.size(); ++i) w += (i ? ", " : "") + fmt(ensemble.weights[i]);
    e.emplace_back("ensemble.n_max", std::to_string(ensemble.n_max));
    e.emplace_back("ensemble.weights", w);
    e.emplace_back("ensemble.u0", fmt(ensemble.u0));
    e.emplace_back("ensemble.g", ensemble.g.to_string());
  }
  e.emplace_back("output.name", output.name);
  e.emplace_back("output.grid_q", std::to_string(output.grid_q));
  e.emplace_back("output.grid_p", std::to_string(output.grid_p));
  e.emplace_back("output.checkpoint_every", std::to_string(output.checkpoint_every));
  e.emplace_back("output.checkpoints", output.checkpoints ? "true" : "false");
  e.emplace_back("output.marginals", output.marginals ? "true" : "false");
  e.emplace_back("output.scale_cut_q", std::to_string(output.scale_cut_q));
  e.emplace_back("output.scale_cut_p", std::to_string(output.scale_cut_p));
  e.emplace_back("diagnostics.theta_loc", fmt(thresholds.localized));
  e.emplace_back("diagnostics.theta_chaos", fmt(thresholds.chaotic));
  e.emplace_back("diagnostics.theta_stab", fmt(thresholds.stable));
  e.emplace_back("diagnostics.theta_frac", fmt(thresholds.fraction));
  return e;
}

}  // namespace wigner::cli
