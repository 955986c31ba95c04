// gaudin: verify, spectrum and trajectory subcommands.
// Exit codes: 0 pass, 1 a check failed (or a trajectory collided), 2 usage or invalid configuration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gaudin/correspond.hpp"
#include "gaudin/verify.hpp"

namespace fs = std::filesystem;
using gaudin::Complex;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// "1.5", "-2i", "0.3+0.1i", "0.3-1e-2i"
Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty complex value");
  const char* p = s.c_str();
  char* end = nullptr;
  if (s.back() != 'i') {
    const double re = std::strtod(p, &end);
    if (end != p + s.size()) throw UsageError("cannot parse '" + raw + "' as a number");
    return {re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  if (body.empty() || body == "+" || body == "-") return {0.0, body == "-" ? -1.0 : 1.0};
  // split at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  auto number = [&](const std::string& t) {
    if (t == "+" || t.empty()) return 1.0;
    if (t == "-") return -1.0;
    char* e = nullptr;
    const double v = std::strtod(t.c_str(), &e);
    if (e != t.c_str() + t.size()) throw UsageError("cannot parse '" + raw + "' as a complex number");
    return v;
  };
  if (split == std::string::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

std::vector<Complex> parse_list(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse sector entry '" + item + "'");
    }
    if (used != item.size()) throw UsageError("cannot parse sector entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct Flags {
  std::string config_file, preset, suites, x, k, p, sector, out, format;
  int N = 0, n = 0, K = 0, flow = 2, record_every = 1;
  std::uint64_t seed = 0;
  double hbar = 0.0, tol = 0.0, t_final = 0.1, dt = 1e-3;
  int state = -1;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON run configuration (flags override it)");
  cmd->add_option("--preset", f.preset, "tiny (N=2,n=2), small (N=2,n=3) or medium (N=3,n=3)");
  cmd->add_option("--seed", f.seed, "seed of the random model");
  cmd->add_option("--N", f.N, "rank of gl_N");
  cmd->add_option("--n", f.n, "number of sites");
  cmd->add_option("--hbar", f.hbar, "Planck constant (real)");
  cmd->add_option("--x", f.x, "marked points, comma separated, e.g. 0,1.2,2.5+0.1i");
  cmd->add_option("--k", f.k, "twist eigenvalues, comma separated");
  cmd->add_option("--out", f.out, "output directory (default $GAUDIN_OUT_DIR)");
}

gaudin::RunConfig build_config(CLI::App* cmd, const Flags& f) {
  gaudin::RunConfig c;
  if (cmd->count("--config")) {
    std::ifstream in(f.config_file);
    if (!in) throw UsageError("cannot open config file '" + f.config_file + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
      gaudin::from_json(j, c);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  if (cmd->count("--preset")) gaudin::apply_preset(c, f.preset);
  if (cmd->count("--seed")) c.seed = f.seed;
  if (cmd->count("--N")) c.N = f.N;
  if (cmd->count("--n")) c.n = f.n;
  if (cmd->count("--hbar")) c.hbar = f.hbar;
  if (cmd->count("--x")) c.x = parse_list(f.x);
  if (cmd->count("--k")) c.k = parse_list(f.k);
  if (cmd->get_option_no_throw("--suite") && cmd->count("--suite")) {
    c.suites.clear();
    std::stringstream ss(f.suites);
    std::string s;
    while (std::getline(ss, s, ',')) c.suites.push_back(s);
  }
  if (cmd->get_option_no_throw("--K") && cmd->count("--K")) c.K = f.K;
  if (cmd->get_option_no_throw("--tol") && cmd->count("--tol")) c.tolerance = f.tol;
  if (cmd->get_option_no_throw("--sector") && cmd->count("--sector")) c.sector = parse_ints(f.sector);
  if (cmd->get_option_no_throw("--format") && cmd->count("--format")) c.format = f.format;
  if (cmd->count("--out")) {
    c.out_dir = f.out;
  } else if (c.out_dir.empty()) {
    if (const char* env = std::getenv("GAUDIN_OUT_DIR")) c.out_dir = env;
  }
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_verify(CLI::App* cmd, const Flags& f) {
  auto config = build_config(cmd, f);
  if (config.format == "csv") throw UsageError("verify supports --format json or text");
  const auto report = gaudin::run_verify(config);
  const std::string js = gaudin::to_json(report).dump(2) + "\n";
  std::cout << (config.format == "json" ? js : gaudin::to_text(report));
  if (!config.out_dir.empty()) write_file(fs::path(config.out_dir) / "verify.json", js);
  if (!report.pass)
    for (const auto& s : report.suites)
      for (const auto& c : s.checks)
        if (!c.pass)
          std::cerr << "FAIL " << s.suite << "/" << c.name << ": residual " << c.residual << " > tolerance "
                    << c.tolerance << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
  return report.pass ? 0 : 1;
}

int cmd_spectrum(CLI::App* cmd, const Flags& f) {
  const auto config = build_config(cmd, f);
  const auto model = gaudin::make_model(config);
  if (!config.sector.empty()) {
    const auto all = gaudin::sectors(model);
    if (std::find(all.begin(), all.end(), config.sector) == all.end())
      throw UsageError("--sector must list N nonnegative counts summing to n");
  }
  const auto report = gaudin::spectrum_report(model, config);
  const std::string js = report.dump(2) + "\n";
  const std::string csv = gaudin::spectrum_csv(report);
  if (config.format == "json")
    std::cout << js;
  else if (config.format == "csv")
    std::cout << csv;
  else
    std::cout << gaudin::spectrum_text(report);
  if (!config.out_dir.empty()) {
    write_file(fs::path(config.out_dir) / "spectrum.json", js);
    write_file(fs::path(config.out_dir) / "spectrum.csv", csv);
  }
  return 0;
}

gaudin::CMPhasePoint trajectory_start(CLI::App* cmd, const Flags& f, const gaudin::RunConfig& config) {
  if (f.state >= 0) {
    const auto model = gaudin::make_model(config);
    const auto spec = gaudin::joint_diagonalize(model);
    if (static_cast<std::size_t>(f.state) >= spec.states.size())
      throw UsageError("--state out of range (model has " + std::to_string(spec.states.size()) + " joint eigenstates)");
    return gaudin::initial_point(spec.states[f.state].H, model);
  }
  gaudin::CMPhasePoint s{config.hbar.value_or(1.0), config.x, {}};
  if (s.x.empty()) {
    // seeded random: real positions near 0..n-1, small complex momenta
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int i = 0; i < config.n; ++i) s.x.push_back({i + u(rng), 0.0});
    for (int i = 0; i < config.n; ++i) s.p.push_back({u(rng), u(rng)});
  }
  if (cmd->count("--p")) s.p = parse_list(f.p);
  if (s.p.empty()) s.p.assign(s.x.size(), 0.0);
  if (s.p.size() != s.x.size()) throw UsageError("--p must have as many entries as --x");
  if (s.x.empty()) throw UsageError("trajectory needs at least one particle");
  if (s.hbar == 0.0) throw UsageError("hbar must be nonzero");
  for (std::size_t i = 0; i < s.x.size(); ++i)
    for (std::size_t j = i + 1; j < s.x.size(); ++j)
      if (s.x[i] == s.x[j]) throw UsageError("initial positions must be pairwise distinct (x_i = x_j)");
  return s;
}

int cmd_trajectory(CLI::App* cmd, const Flags& f) {
  const auto config = build_config(cmd, f);
  if (!(f.dt > 0.0) || !(f.t_final >= 0.0)) throw UsageError("--dt must be positive and --t-final nonnegative");
  if (f.flow < 1) throw UsageError("--flow must be at least 1");
  if (f.record_every < 1) throw UsageError("--record-every must be at least 1");
  const auto s0 = trajectory_start(cmd, f, config);
  const fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
  gaudin::Trajectory traj;
  try {
    traj = gaudin::integrate(s0, f.t_final, f.dt, f.flow, {f.record_every});
  } catch (const gaudin::CollisionError& e) {
    std::cerr << "collision: " << e.what() << "; last good time " << e.last_good_time() << '\n';
    return 1;
  }
  std::ostringstream full, drift;
  gaudin::write_trajectory_csv(full, traj);
  const int n = s0.n();
  drift << "t";
  for (int j = 1; j <= n; ++j) drift << ",drift_H" << j;
  drift << '\n' << std::setprecision(17);
  for (const auto& smp : traj.samples) {
    drift << smp.time;
    for (double d : smp.drift) drift << ',' << d;
    drift << '\n';
  }
  write_file(dir / "trajectory.csv", full.str());
  write_file(dir / "drift.csv", drift.str());
  std::cout << "wrote " << (dir / "trajectory.csv").string() << " and " << (dir / "drift.csv").string() << " ("
            << traj.samples.size() << " samples, max drift " << std::scientific << std::setprecision(2)
            << traj.max_drift << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for the Gaudin model and its KP / Calogero-Moser correspondence"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_model_flags(verify, f);
  verify->add_option("--suite", f.suites, "comma separated subset of: commutativity,master,bilinear,ba,cm,correspondence");
  verify->add_option("--K", f.K, "number of KP times in random samples");
  verify->add_option("--tol", f.tol, "joint diagonalization and tau-fit tolerance");
  verify->add_option("--format", f.format, "text or json")->check(CLI::IsMember({"json", "text", "csv"}));

  auto* spectrum = app.add_subcommand("spectrum", "quantum spectra against solutions of the classical system");
  add_model_flags(spectrum, f);
  spectrum->add_option("--tol", f.tol, "joint diagonalization tolerance");
  spectrum->add_option("--sector", f.sector, "restrict to one sector, e.g. 1,1");
  spectrum->add_option("--format", f.format, "text, json or csv")->check(CLI::IsMember({"json", "text", "csv"}));

  auto* trajectory = app.add_subcommand("trajectory", "integrate a Calogero-Moser flow and write CSV");
  add_model_flags(trajectory, f);
  trajectory->add_option("--p", f.p, "initial momenta, comma separated (default 0)");
  trajectory->add_option("--state", f.state, "start from p = -H/hbar of this joint eigenstate of the model");
  trajectory->add_option("--t-final", f.t_final, "final time")->capture_default_str();
  trajectory->add_option("--dt", f.dt, "RK4 step")->capture_default_str();
  trajectory->add_option("--flow", f.flow, "k of the t_k flow (2 is the physical time)")->capture_default_str();
  trajectory->add_option("--record-every", f.record_every, "write every m-th step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(verify, f);
    if (*spectrum) return cmd_spectrum(spectrum, f);
    return cmd_trajectory(trajectory, f);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
