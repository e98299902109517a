#include "artifact/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace artifact::harness {

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watt_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, ptr);
}

double Config::snr() const { return std::pow(10.0, snr_db / 10.0); }

wpt::WptParams Config::wpt_params() const {
  wpt::WptParams p;
  p.lambda_p = lambda_p_per_m2;
  p.M = M;
  p.Pp = dbm_to_watt(Pp_dbm);
  p.eta = eta;
  const double wavelength = 3e8 / (carrier_mhz * 1e6);
  const double a = wavelength / (4.0 * M_PI);
  p.A = a * a;
  p.xi = xi;
  p.d0 = d0_m;
  p.validate();
  return p;
}

wpt::PowerThresholds Config::thresholds() const {
  wpt::PowerThresholds t;
  t.Ps = dbm_to_watt(Ps_dbm);
  t.Pt_min = dbm_to_watt(Pt_min_dbm);
  t.Pt_max = dbm_to_watt(Pt_max_dbm);
  t.Pt = t.Pt_min;
  t.N0 = dbm_to_watt(N0_dbm);
  return t;
}

wpt::FrameSplit Config::frame() const {
  wpt::FrameSplit f;
  f.alpha1 = alpha1;
  f.beta = beta;
  f.alpha2 = alpha2;
  f.kappa = kappa;
  f.T = T_s;
  f.validate();
  return f;
}

sensing::SensingParams Config::sensing_params() const {
  sensing::SensingParams s;
  s.e_s = e_s_joule;
  s.Pd_target = pd_target;
  s.C_cs = C_cs;
  s.validate();
  return s;
}

throughput::ProblemSpec Config::problem_spec(throughput::Variant v) const {
  throughput::ProblemSpec spec;
  spec.variant = v;
  spec.wpt_params = wpt_params();
  spec.thr = thresholds();
  spec.sense = sensing_params();
  spec.snr = snr();
  spec.I = I;
  spec.K = K;
  spec.n_nom = n_nom;
  spec.kappa = kappa;
  spec.T = T_s;
  spec.alpha2_min = alpha2_min;
  spec.J = J;
  spec.J1 = J1;
  if (mc_mode == "practical")
    spec.mc_mode = completion::McBoundMode::practical;
  else if (mc_mode == "theoretical")
    spec.mc_mode = completion::McBoundMode::theoretical;
  else
    throw std::runtime_error("config: problem.mc_mode must be practical or theoretical");
  spec.mc_ratio = mc_ratio;
  spec.C_mc = C_mc;
  return spec;
}

namespace {

enum class FieldType { f64, i32, u64, str };

struct FieldDef {
  const char* section;
  const char* key;
  FieldType type;
  void* (*get)(Config&);
};

// clang-format off
#define FIELD(sec, key, type, member) \
  {sec, key, FieldType::type, [](Config& c) -> void* { return &c.member; }}

const FieldDef kFields[] = {
    FIELD("run", "scenario", str, scenario),
    FIELD("run", "trials", u64, trials),
    FIELD("run", "detection_trials", u64, detection_trials),
    FIELD("run", "recovery_trials", u64, recovery_trials),
    FIELD("run", "base_seed", u64, base_seed),
    FIELD("run", "threads", i32, threads),
    FIELD("run", "out", str, out),
    FIELD("wpt", "lambda_p_per_m2", f64, lambda_p_per_m2),
    FIELD("wpt", "M", i32, M),
    FIELD("wpt", "Pp_dbm", f64, Pp_dbm),
    FIELD("wpt", "eta", f64, eta),
    FIELD("wpt", "carrier_mhz", f64, carrier_mhz),
    FIELD("wpt", "xi", f64, xi),
    FIELD("wpt", "d0_m", f64, d0_m),
    FIELD("power", "Ps_dbm", f64, Ps_dbm),
    FIELD("power", "Pt_min_dbm", f64, Pt_min_dbm),
    FIELD("power", "Pt_max_dbm", f64, Pt_max_dbm),
    FIELD("power", "N0_dbm", f64, N0_dbm),
    FIELD("sensing", "e_s_joule", f64, e_s_joule),
    FIELD("sensing", "pd_target", f64, pd_target),
    FIELD("sensing", "snr_db", f64, snr_db),
    FIELD("sensing", "I", i32, I),
    FIELD("sensing", "K", i32, K),
    FIELD("sensing", "n_window", i32, n_window),
    FIELD("sensing", "C_cs", f64, C_cs),
    FIELD("frame", "alpha1", f64, alpha1),
    FIELD("frame", "beta", f64, beta),
    FIELD("frame", "alpha2", f64, alpha2),
    FIELD("frame", "kappa", f64, kappa),
    FIELD("frame", "T_s", f64, T_s),
    FIELD("problem", "alpha2_min", f64, alpha2_min),
    FIELD("problem", "J", i32, J),
    FIELD("problem", "J1", i32, J1),
    FIELD("problem", "mc_mode", str, mc_mode),
    FIELD("problem", "mc_ratio", f64, mc_ratio),
    FIELD("problem", "C_mc", f64, C_mc),
    FIELD("problem", "n_nom", i32, n_nom),
    FIELD("problem", "grid_dalpha", f64, grid_dalpha),
    FIELD("problem", "grid_dpt_db", f64, grid_dpt_db),
    FIELD("problem", "random_Z", u64, random_Z),
    FIELD("problem", "local_starts", i32, local_starts),
    FIELD("problem", "local_budget", i32, local_budget),
};
#undef FIELD
// clang-format on

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void assign(Config& cfg, const std::string& section, const std::string& key,
            const std::string& value, const std::string& where) {
  for (const auto& f : kFields) {
    if (section != f.section || key != f.key) continue;
    void* p = f.get(cfg);
    const std::string path = section + "." + key;
    try {
      switch (f.type) {
        case FieldType::f64: *static_cast<double*>(p) = std::stod(value); break;
        case FieldType::i32: *static_cast<int*>(p) = std::stoi(value); break;
        case FieldType::u64: *static_cast<std::uint64_t*>(p) = std::stoull(value); break;
        case FieldType::str: *static_cast<std::string*>(p) = value; break;
      }
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad value '" + value + "' for key '" + path +
                               "' (" + where + ")");
    }
    return;
  }
  throw std::runtime_error("config: unknown key '" + section + "." + key + "' (" +
                           where + ")");
}

}  // namespace

Config parse_config_text(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section header (" + where + ")");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected 'key = value' (" + where + ")");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::runtime_error("config: key '" + key + "' before any section (" +
                               where + ")");
    assign(cfg, section, key, value, where);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string emit_config(const Config& cfg) {
  std::ostringstream out;
  std::string section;
  // kFields is declaration-ordered, so iterating it reproduces the canonical
  // section layout.
  Config& c = const_cast<Config&>(cfg);
  for (const auto& f : kFields) {
    if (section != f.section) {
      if (!section.empty()) out << "\n";
      section = f.section;
      out << "[" << section << "]\n";
    }
    out << f.key << " = ";
    void* p = f.get(c);
    switch (f.type) {
      case FieldType::f64: out << format_double(*static_cast<double*>(p)); break;
      case FieldType::i32: out << *static_cast<int*>(p); break;
      case FieldType::u64: out << *static_cast<std::uint64_t*>(p); break;
      case FieldType::str: out << *static_cast<std::string*>(p); break;
    }
    out << "\n";
  }
  return out.str();
}

std::uint64_t config_hash(const Config& cfg) {
  // Execution-environment fields must not affect the hash: results are
  // required to be identical across thread counts and output paths.
  Config canon = cfg;
  canon.threads = 0;
  canon.out = "";
  const std::string text = emit_config(canon);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace artifact::harness
