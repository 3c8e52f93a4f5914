#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "frameforge/errors.hpp"

namespace frameforge::cli {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Value {
  std::string raw;
  std::string where;  // "file:line" for diagnostics

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError(where + ": " + what + " (got '" + raw + "')");
  }
  std::string str() const {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') return raw.substr(1, raw.size() - 2);
    return raw;
  }
  double num() const { return parse_num(raw); }
  double parse_num(const std::string& t) const {
    const std::string s = trim(t);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) fail("expected a number");
    return v;
  }
  long integer() const {
    const double v = num();
    if (v != std::floor(v)) fail("expected an integer");
    return static_cast<long>(v);
  }
  std::size_t count() const {
    const long v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  bool boolean() const {
    if (raw == "true") return true;
    if (raw == "false") return false;
    fail("expected true or false");
  }
  template <std::size_t N>
  std::array<double, N> list() const {
    std::string s = raw;
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::array<double, N> out{};
    std::stringstream ss(s);
    std::string item;
    std::size_t n = 0;
    while (std::getline(ss, item, ',')) {
      if (n == N) fail("expected " + std::to_string(N) + " comma-separated numbers");
      out[n++] = parse_num(item);
    }
    if (n != N) fail("expected " + std::to_string(N) + " comma-separated numbers");
    return out;
  }
};

using Setter = std::function<void(RunConfig&, const Value&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"space_form.q", [](RunConfig& c, const Value& v) { c.q = static_cast<int>(v.integer()); }},
      {"space_form.c", [](RunConfig& c, const Value& v) { c.c = static_cast<int>(v.integer()); }},
      {"curve.family",
       [](RunConfig& c, const Value& v) { c.curve.family = curve_family_from_string(v.str()); }},
      {"curve.r", [](RunConfig& c, const Value& v) { c.curve.r = v.num(); }},
      {"curve.a", [](RunConfig& c, const Value& v) { c.curve.a = v.num(); }},
      {"curve.alpha", [](RunConfig& c, const Value& v) { c.curve.alpha = v.num(); }},
      {"curve.s0", [](RunConfig& c, const Value& v) { c.s0 = v.num(); }},
      {"curve.s1", [](RunConfig& c, const Value& v) { c.s1 = v.num(); }},
      {"curve.samples", [](RunConfig& c, const Value& v) { c.samples = v.count(); }},
      {"curve.exact", [](RunConfig& c, const Value& v) { c.exact = v.boolean(); }},
      {"congruence.kind",
       [](RunConfig& c, const Value& v) {
         const auto k = v.str();
         if (k == "rotate") c.kind = CongruenceKind::Rotate;
         else if (k == "const") c.kind = CongruenceKind::Const;
         else v.fail("expected 'rotate' or 'const'");
       }},
      {"congruence.generator_xi", [](RunConfig& c, const Value& v) { c.generator_xi = v.list<6>(); }},
      {"congruence.generator_eta", [](RunConfig& c, const Value& v) { c.generator_eta = v.list<6>(); }},
      {"congruence.ramp_xi", [](RunConfig& c, const Value& v) { c.ramp_xi = v.num(); }},
      {"congruence.ramp_eta", [](RunConfig& c, const Value& v) { c.ramp_eta = v.num(); }},
      {"congruence.origin", [](RunConfig& c, const Value& v) { c.origin = v.list<3>(); }},
      {"congruence.extent", [](RunConfig& c, const Value& v) { c.extent = v.list<3>(); }},
      {"congruence.shape",
       [](RunConfig& c, const Value& v) {
         const auto a = v.list<3>();
         for (std::size_t i = 0; i < 3; ++i) {
           if (a[i] < 0 || a[i] != std::floor(a[i])) v.fail("expected three nonnegative integers");
           c.shape[i] = static_cast<std::size_t>(a[i]);
         }
       }},
      {"fd.order", [](RunConfig& c, const Value& v) { c.fd_order = static_cast<int>(v.integer()); }},
      {"tolerances.frame", [](RunConfig& c, const Value& v) { c.tol.frame = v.num(); }},
      {"tolerances.frenet", [](RunConfig& c, const Value& v) { c.tol.frenet = v.num(); }},
      {"tolerances.kappa", [](RunConfig& c, const Value& v) { c.tol.kappa = v.num(); }},
      {"tolerances.identity", [](RunConfig& c, const Value& v) { c.tol.identity = v.num(); }},
      {"tolerances.compatibility", [](RunConfig& c, const Value& v) { c.tol.compatibility = v.num(); }},
      {"tolerances.maxwell", [](RunConfig& c, const Value& v) { c.tol.maxwell = v.num(); }},
      {"tolerances.kappa_electric", [](RunConfig& c, const Value& v) { c.tol.kappa_electric = v.num(); }},
      {"tolerances.kappa_magnetic", [](RunConfig& c, const Value& v) { c.tol.kappa_magnetic = v.num(); }},
      {"tolerances.dual_divergence", [](RunConfig& c, const Value& v) { c.tol.dual_divergence = v.num(); }},
      {"tolerances.curl", [](RunConfig& c, const Value& v) { c.tol.curl = v.num(); }},
      {"tolerances.energy_refinement",
       [](RunConfig& c, const Value& v) { c.tol.energy_refinement = v.num(); }},
      {"energy.panels", [](RunConfig& c, const Value& v) { c.panels = v.count(); }},
      {"energy.normalize_half", [](RunConfig& c, const Value& v) { c.normalize_half = v.boolean(); }},
      {"maxwell.synthesize", [](RunConfig& c, const Value& v) { c.synthesize = v.boolean(); }},
      {"maxwell.field_csv", [](RunConfig& c, const Value& v) { c.field_csv = v.str(); }},
      {"run.strict_paper", [](RunConfig& c, const Value& v) { c.strict_paper = v.boolean(); }},
      {"output.dir", [](RunConfig& c, const Value& v) { c.out_dir = v.str(); }},
  };
  return table;
}

void assign(RunConfig& cfg, const std::string& key, const Value& v) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ValidationError(v.where + ": unknown key '" + key + "'");
  it->second(cfg, v);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

SpaceForm RunConfig::form() const {
  const SpaceForm natural = curve.form();
  if (!q && !c) return natural;
  if (!q || !c) throw ValidationError("space_form needs both q and c");
  return SpaceForm::make(*q, *c);
}

std::pair<double, double> RunConfig::interval() const {
  auto [a, b] = curve.default_interval();
  return {s0.value_or(a), s1.value_or(b)};
}

RotationCongruence RunConfig::congruence() const {
  RotationCongruence rc;
  rc.base = curve;
  if (kind == CongruenceKind::Rotate) {
    rc.A.w = generator_xi;
    rc.C.w = generator_eta;
    rc.ramp_xi = ramp_xi;
    rc.ramp_eta = ramp_eta;
  }
  if (curve.family == CurveFamily::SmallCircle) {
    // Middle half of the circle, away from the zeros of the binormal coefficient.
    rc.origin = {curve.r * std::numbers::pi / 4, 0.0, 0.0};
    rc.extent = {curve.r * std::numbers::pi / 2, 0.5, 0.5};
  } else {
    const auto [a, b] = interval();
    rc.origin = {a, 0.0, 0.0};
    rc.extent = {b - a, 0.5, 0.5};
  }
  if (origin) rc.origin = *origin;
  if (extent) rc.extent = *extent;
  rc.shape = {shape[0], shape[1], shape[2]};
  return rc;
}

void RunConfig::validate() const {
  curve.validate();
  const SpaceForm f = form();
  if (!(f == curve.form()) && input.empty())
    throw ValidationError("space_form does not match the builtin curve family '" +
                          std::string(to_string(curve.family)) + "'");
  if (fd_order != 2 && fd_order != 4) throw ValidationError("fd.order must be 2 or 4");
  for (std::size_t n : shape)
    if (n < kMinSamples)
      throw ValidationError("congruence.shape needs at least " + std::to_string(kMinSamples) +
                            " points along every axis");
  if (samples < kMinSamples) throw ValidationError("curve.samples must be at least 7");
  if (panels < 2 || panels % 2 != 0) throw ValidationError("energy.panels must be even and at least 2");
  const auto [a, b] = interval();
  if (!(b > a)) throw ValidationError("curve interval must have s1 > s0");
  if (extent)
    for (double e : *extent)
      if (!(e > 0)) throw ValidationError("congruence.extent entries must be positive");
  for (double t : {tol.frame, tol.frenet, tol.kappa, tol.identity, tol.compatibility, tol.maxwell,
                   tol.kappa_electric, tol.kappa_magnetic, tol.dual_divergence, tol.curl,
                   tol.energy_refinement})
    if (!(t > 0)) throw ValidationError("tolerances must be positive");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::stringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ValidationError(where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"space_form", "curve", "congruence", "fd", "tolerances",
                                    "energy", "maxwell", "run", "output"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ValidationError(where + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
    if (section.empty()) throw ValidationError(where + ": key outside any section");
    assign(cfg, section + "." + trim(s.substr(0, eq)), Value{trim(s.substr(eq + 1)), where});
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("--set expects section.key=value");
  assign(cfg, trim(assignment.substr(0, eq)), Value{trim(assignment.substr(eq + 1)), "--set"});
}

}  // namespace frameforge::cli
