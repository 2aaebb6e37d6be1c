#include "gpdiag/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gpdiag/csv.hpp"
#include "gpdiag/errors.hpp"
#include "gpdiag/parallel.hpp"
#include "gpdiag/photonstate.hpp"

namespace gpdiag {

namespace {

constexpr Output kAllOutputs[] = {Output::eigenvalues, Output::purity, Output::concurrence, Output::gamma_g,
                                  Output::dgamma};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v, std::size_t line) {
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("'" + std::string(v) + "' is not a finite number", line);
  return x;
}

std::size_t parse_count(std::string_view v, std::size_t line) {
  unsigned long long n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("'" + std::string(v) + "' is not a sample count", line);
  return static_cast<std::size_t>(n);
}

std::string shortest(double x) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Section = std::map<std::string, Entry, std::less<>>;

Axis parse_axis(const Section& sec, std::string_view name, std::size_t header_line) {
  for (const char* key : {"param", "start", "end", "samples"})
    if (!sec.contains(key)) throw ConfigError("[" + std::string(name) + "] is missing '" + key + "'", header_line);
  Axis a;
  const auto& param = sec.at("param");
  try {
    a.param = parse_control_param(param.value);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what(), param.line);
  }
  a.start = parse_double(sec.at("start").value, sec.at("start").line);
  a.end = parse_double(sec.at("end").value, sec.at("end").line);
  const auto& samples = sec.at("samples");
  a.samples = parse_count(samples.value, samples.line);
  if (a.samples < 2) throw ConfigError("samples must be at least 2", samples.line);
  if (!(a.start < a.end)) throw ConfigError("axis range must satisfy start < end", sec.at("end").line);
  if ((a.param == ControlParam::omega1 || a.param == ControlParam::omega2) && a.start < 0.0)
    throw ConfigError("Rabi frequency axis must start at >= 0", sec.at("start").line);
  return a;
}

void emit_axis(std::ostringstream& out, std::string_view name, const Axis& a) {
  out << "\n[" << name << "]\n"
      << "param = " << control_param_name(a.param) << '\n'
      << "start = " << shortest(a.start) << '\n'
      << "end = " << shortest(a.end) << '\n'
      << "samples = " << a.samples << '\n';
}

}  // namespace

Output parse_output(std::string_view name) {
  for (Output o : kAllOutputs)
    if (output_name(o) == name) return o;
  throw ContractViolation("unknown output '" + std::string(name) + "'");
}

std::string_view output_name(Output o) {
  switch (o) {
    case Output::eigenvalues: return "eigenvalues";
    case Output::purity: return "purity";
    case Output::concurrence: return "concurrence";
    case Output::gamma_g: return "gamma_g";
    case Output::dgamma: return "dgamma";
  }
  return "eigenvalues";
}

std::vector<double> Axis::values() const {
  return PathSpec{SystemParams{}, param, start, end, samples}.values();
}

SweepSpec parse_config(std::string_view text) {
  static const std::vector<std::string> top_keys{"scheme", "omega1", "omega2", "delta1", "delta2",
                                                 "gamma2", "gamma3", "outputs", "output"};
  static const std::vector<std::string> axis_keys{"param", "start", "end", "samples"};

  Section top;
  std::map<std::string, Section, std::less<>> axes;
  std::map<std::string, std::size_t, std::less<>> axis_lines;
  Section* current = &top;
  const std::vector<std::string>* allowed = &top_keys;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name != "axis1" && name != "axis2") throw ConfigError("unknown section [" + name + "]", line_no);
      if (axes.contains(name)) throw ConfigError("duplicate section [" + name + "]", line_no);
      current = &axes[name];
      axis_lines[name] = line_no;
      allowed = &axis_keys;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(allowed->begin(), allowed->end(), key) == allowed->end())
      throw ConfigError("unknown key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
    if (current->contains(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    (*current)[key] = Entry{value, line_no};
  }

  SweepSpec spec;
  if (auto it = top.find("scheme"); it != top.end()) {
    try {
      spec.scheme = parse_scheme(it->second.value);
    } catch (const ContractViolation& e) {
      throw ConfigError(e.what(), it->second.line);
    }
  }
  if (spec.scheme == Scheme::Custom)
    for (const char* key : {"gamma2", "gamma3"})
      if (!top.contains(key)) throw ConfigError(std::string("scheme = custom requires an explicit ") + key);

  spec.base = SystemParams::for_scheme(spec.scheme);
  struct Field {
    const char* key;
    double SystemParams::*member;
    bool non_negative;
  };
  const Field fields[] = {{"omega1", &SystemParams::omega1, true}, {"omega2", &SystemParams::omega2, true},
                          {"delta1", &SystemParams::delta1, false}, {"delta2", &SystemParams::delta2, false},
                          {"gamma2", &SystemParams::gamma2, true},  {"gamma3", &SystemParams::gamma3, true}};
  for (const auto& f : fields) {
    auto it = top.find(f.key);
    if (it == top.end()) continue;
    const double x = parse_double(it->second.value, it->second.line);
    if (f.non_negative && x < 0.0) throw ConfigError(std::string(f.key) + " must be >= 0", it->second.line);
    spec.base.*f.member = x;
  }
  if (spec.scheme == Scheme::II && spec.base.gamma3 != 0.0)
    throw ConfigError("scheme II has a stable top level; gamma3 must be 0", top.at("gamma3").line);

  if (auto it = top.find("outputs"); it != top.end()) {
    std::vector<Output> outs;
    std::string_view rest = it->second.value;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      if (item.empty()) throw ConfigError("empty entry in outputs", it->second.line);
      try {
        outs.push_back(parse_output(item));
      } catch (const ContractViolation& e) {
        throw ConfigError(e.what(), it->second.line);
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    spec.outputs = std::move(outs);
  }
  if (auto it = top.find("output"); it != top.end()) spec.output = it->second.value;

  if (axes.contains("axis2") && !axes.contains("axis1"))
    throw ConfigError("[axis2] given without [axis1]", axis_lines.at("axis2"));
  if (axes.contains("axis1")) spec.axis1 = parse_axis(axes.at("axis1"), "axis1", axis_lines.at("axis1"));
  if (axes.contains("axis2")) {
    spec.axis2 = parse_axis(axes.at("axis2"), "axis2", axis_lines.at("axis2"));
    if (spec.axis2->param == spec.axis1->param)
      throw ConfigError("axis1 and axis2 vary the same parameter", axis_lines.at("axis2"));
  }
  return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SweepSpec& spec) {
  std::ostringstream out;
  const auto& p = spec.base;
  out << "scheme = " << scheme_name(spec.scheme) << '\n'
      << "omega1 = " << shortest(p.omega1) << '\n'
      << "omega2 = " << shortest(p.omega2) << '\n'
      << "delta1 = " << shortest(p.delta1) << '\n'
      << "delta2 = " << shortest(p.delta2) << '\n'
      << "gamma2 = " << shortest(p.gamma2) << '\n'
      << "gamma3 = " << shortest(p.gamma3) << '\n'
      << "outputs = ";
  for (std::size_t i = 0; i < spec.outputs.size(); ++i) out << (i ? ", " : "") << output_name(spec.outputs[i]);
  out << '\n' << "output = " << spec.output << '\n';
  if (spec.axis1) emit_axis(out, "axis1", *spec.axis1);
  if (spec.axis2) emit_axis(out, "axis2", *spec.axis2);
  return out.str();
}

PointObservables observe(const SystemParams& p) {
  const auto photon = atomic_to_photon(steady_state(p));
  const auto es = hermitian_eig(photon.rho.matrix());
  PointObservables o;
  for (std::size_t k = 0; k < 3; ++k) o.lambdas[k] = es.values[2 - k];
  o.purity = purity(photon.rho);
  o.concurrence = concurrence(embed_two_qubit(photon)).c;
  return o;
}

RunSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& path, unsigned jobs) {
  if (!spec.axis1) throw ConfigError("sweep needs an [axis1] section");
  if (spec.outputs.empty()) throw ConfigError("no outputs requested");
  const Axis& a1 = *spec.axis1;
  const auto v1 = a1.values();
  const auto v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{0.0};
  const std::size_t n1 = v1.size(), n2 = v2.size();

  auto wants = [&](Output o) { return std::find(spec.outputs.begin(), spec.outputs.end(), o) != spec.outputs.end(); };
  if (wants(Output::dgamma) && a1.samples < 3) throw ConfigError("dgamma needs at least 3 samples on axis1");
  auto params_at = [&](std::size_t i, std::size_t j) {
    SystemParams p = with_param(spec.base, a1.param, v1[i]);
    if (spec.axis2) p = with_param(p, spec.axis2->param, v2[j]);
    return p;
  };

  std::atomic<std::size_t> good{0};
  std::vector<std::optional<PointObservables>> points(n1 * n2);
  const bool scalar = wants(Output::eigenvalues) || wants(Output::purity) || wants(Output::concurrence);
  if (scalar) {
    parallel_for(points.size(), jobs, [&](std::size_t idx) {
      try {
        points[idx] = observe(params_at(idx / n2, idx % n2));
        ++good;
      } catch (const NumericalError&) {
      }
    });
  }

  const bool phase = wants(Output::gamma_g) || wants(Output::dgamma);
  std::vector<std::vector<CurvePoint>> curves(n2), slopes(n2);
  if (phase) {
    parallel_for(n2, jobs, [&](std::size_t j) {
      try {
        const PathSpec path{params_at(0, j), a1.param, a1.start, a1.end, a1.samples};
        curves[j] = gp_curve(path);
        if (wants(Output::dgamma)) slopes[j] = gp_derivative(curves[j]);
        ++good;
      } catch (const NumericalError&) {
      }
    });
  }
  if (good == 0) throw NumericalError("no point of the sweep has a unique steady state");

  std::vector<std::string> header{std::string(control_param_name(a1.param))};
  if (spec.axis2) header.emplace_back(control_param_name(spec.axis2->param));
  for (Output o : spec.outputs) {
    if (o == Output::eigenvalues)
      header.insert(header.end(), {"lambda1", "lambda2", "lambda3"});
    else
      header.emplace_back(output_name(o));
  }

  CsvWriter csv(path, header);
  std::vector<CsvField> row;
  auto curve_value = [](const std::vector<CurvePoint>& c, std::size_t i) -> CsvField {
    return i < c.size() ? c[i].value : std::nullopt;
  };
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      row.clear();
      row.emplace_back(v1[i]);
      if (spec.axis2) row.emplace_back(v2[j]);
      const auto& pt = points[i * n2 + j];
      for (Output o : spec.outputs) {
        switch (o) {
          case Output::eigenvalues:
            for (std::size_t k = 0; k < 3; ++k) row.push_back(pt ? CsvField(pt->lambdas[k]) : std::nullopt);
            break;
          case Output::purity: row.push_back(pt ? CsvField(pt->purity) : std::nullopt); break;
          case Output::concurrence: row.push_back(pt ? CsvField(pt->concurrence) : std::nullopt); break;
          case Output::gamma_g: row.push_back(curve_value(curves[j], i)); break;
          case Output::dgamma: row.push_back(curve_value(slopes[j], i)); break;
        }
      }
      csv.row(row);
    }
  }
  return RunSummary{{path}, csv.rows(), csv.empty_fields()};
}

}  // namespace gpdiag
