#include "toboggan/contour.hpp"
#include "toboggan/liouville.hpp"
#include "toboggan/potential.hpp"
#include "toboggan/qe.hpp"
#include "toboggan/rational.hpp"
#include "toboggan/spectra.hpp"
#include "toboggan/svg.hpp"
#include "toboggan/verify.hpp"
#include "toboggan/wedges.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace toboggan;

/// 15 significant digits, lowercase scientific when shorter.
std::string num15(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string side_name(Side side) { return side == Side::Left ? "left" : "right"; }

std::string sign_name(AnsatzSign sign) {
  return sign == AnsatzSign::Minus ? "minus" : "plus";
}

json wedge_json(const Wedge& w) {
  return {{"side", side_name(w.side)},
          {"index", w.index},
          {"sign", sign_name(w.sign)},
          {"center_pi", pi_multiple_string(w.center_pi)},
          {"center", w.center()},
          {"lower_pi", pi_multiple_string(w.center_pi - w.half_width_pi)},
          {"upper_pi", pi_multiple_string(w.center_pi + w.half_width_pi)},
          {"lower", w.lower()},
          {"upper", w.upper()}};
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + out_path);
  file << content;
}

std::string default_out_dir() {
  const char* env = std::getenv("TOBOGGAN_OUT_DIR");
  return env && *env ? env : ".";
}

PotentialSpec load_potential(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read potential file " + path);
  json doc = json::parse(file);
  return potential_from_json(doc);
}

struct ContourFlags {
  std::string type = "bg";  // bg | join
  double epsilon = 0.1;
  int n = 1;
  double p = 2.0;
  double ell = 1.0;
  double liouville_alpha = 0.0;  // 0 means no wrapping

  ContourPtr build() const {
    ContourPtr base;
    if (type == "bg") {
      base = bg_line(epsilon);
    } else if (type == "join") {
      base = wedge_join(n, p, epsilon, ell);
    } else {
      throw std::runtime_error("unknown contour type " + type);
    }
    if (liouville_alpha != 0.0) base = liouville_image(base, liouville_alpha);
    return base;
  }
};

void add_contour_flags(CLI::App* cmd, ContourFlags& flags) {
  cmd->add_option("--contour", flags.type, "contour family: bg | join")
      ->check(CLI::IsMember({"bg", "join"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", flags.epsilon, "distance below the origin")
      ->capture_default_str();
  cmd->add_option("--n", flags.n, "wedge index for join contours")->capture_default_str();
  cmd->add_option("--p", flags.p, "decay power D/2 + 1 for join contours")
      ->capture_default_str();
  cmd->add_option("--ell", flags.ell, "turning length for join contours")
      ->capture_default_str();
  cmd->add_option("--liouville-alpha", flags.liouville_alpha,
                  "wrap the contour in a liouville image with this alpha");
}

/// `--config file.json` merges a flat {"flag": value} object; explicit
/// command-line flags win.
void inject_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read config file " + path);
  json doc = json::parse(file);
  if (!doc.is_object()) throw std::runtime_error("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
}

int run_wedges(int D, const std::string& sign, int count, const std::string& format,
               const std::string& out) {
  AnsatzSign ansatz = sign == "plus" ? AnsatzSign::Plus : AnsatzSign::Minus;
  auto wedges = asymptotic_wedges(D, ansatz, count);
  if (format == "json") {
    json doc = json::array();
    for (const Wedge& w : wedges) doc.push_back(wedge_json(w));
    emit(doc.dump(2), out);
  } else if (format == "csv") {
    std::ostringstream table;
    table << "side,index,sign,lower_pi,upper_pi,lower,upper\n";
    for (const Wedge& w : wedges)
      table << side_name(w.side) << ',' << w.index << ',' << sign_name(w.sign) << ','
            << pi_multiple_string(w.center_pi - w.half_width_pi) << ','
            << pi_multiple_string(w.center_pi + w.half_width_pi) << ','
            << num15(w.lower()) << ',' << num15(w.upper()) << '\n';
    emit(table.str(), out);
  } else {
    std::ostringstream table;
    for (const Wedge& w : wedges)
      table << side_name(w.side) << ' ' << w.index << "  ("
            << pi_multiple_string(w.center_pi - w.half_width_pi) << ", "
            << pi_multiple_string(w.center_pi + w.half_width_pi) << ")  ["
            << num15(w.lower()) << ", " << num15(w.upper()) << "]  " << sign_name(w.sign)
            << '\n';
    emit(table.str(), out);
  }
  return 0;
}

int run_contour(const ContourFlags& flags, int D, const std::string& format,
                const std::string& out) {
  ContourPtr contour = flags.build();
  ContourReport report = analyze(*contour, D);
  json doc = {{"contour", contour->describe()},
              {"x0", {contour->x(0.0).real(), contour->x(0.0).imag()}},
              {"theta_limits", {contour->theta_limit(-1), contour->theta_limit(+1)}},
              {"total_sweep", report.total_sweep},
              {"left_wedge", wedge_json(report.left_wedge)},
              {"right_wedge", wedge_json(report.right_wedge)},
              {"cut_crossings", report.cut_crossings},
              {"tobogganic", report.tobogganic}};
  if (format == "text") {
    std::ostringstream text;
    text << contour->describe() << '\n'
         << "ends in wedges: left " << report.left_wedge.index << " (center "
         << pi_multiple_string(report.left_wedge.center_pi) << "), right "
         << report.right_wedge.index << " (center "
         << pi_multiple_string(report.right_wedge.center_pi) << ")\n"
         << "total sweep " << num15(report.total_sweep) << ", cut crossings "
         << report.cut_crossings << (report.tobogganic ? " (tobogganic)" : "") << '\n';
    emit(text.str(), out);
  } else {
    emit(doc.dump(2), out);
  }
  return 0;
}

int run_transform(const std::string& potential_path, std::optional<double> energy,
                  const std::string& alpha_str, const std::string& lambda_str, bool fold,
                  bool show_dictionary, const std::string& format, const std::string& out) {
  if (show_dictionary) {
    if (format == "text") {
      std::ostringstream text;
      for (const DictionaryEntry& entry : dictionary()) {
        text << entry.screened << "  ->  " << entry.decadic << "  (factor "
             << num15(entry.factor) << ')';
        if (!entry.note.empty()) text << "  # " << entry.note;
        text << '\n';
      }
      emit(text.str(), out);
    } else {
      json doc = json::array();
      for (const DictionaryEntry& entry : dictionary())
        doc.push_back({{"screened", entry.screened},
                       {"decadic", entry.decadic},
                       {"factor", entry.factor},
                       {"note", entry.note}});
      emit(doc.dump(2), out);
    }
    return 0;
  }
  TransformJob job{parse_rational(alpha_str), parse_rational(lambda_str)};
  PotentialSpec old = load_potential(potential_path);
  TransformResult result = transform_potential(old, energy, job);
  PotentialSpec new_potential = fold ? fold_centrifugal(result) : result.new_potential;
  json doc = {{"alpha", to_string(job.alpha)},
              {"lambda", to_string(job.lambda)},
              {"rho", to_string(job.rho())},
              {"potential", potential_to_json(new_potential)},
              {"energy_exponent", to_string(result.energy_exponent)},
              {"energy_coupling", result.energy_coupling},
              {"generated_centrifugal", to_string(result.generated_centrifugal)},
              {"folded", fold}};
  if (result.new_energy) doc["new_energy"] = *result.new_energy;
  emit(doc.dump(2), out);
  return 0;
}

int run_qe(const QEParams& params, const SearchBox& box, bool complex_pairs,
           const std::string& format, const std::string& out) {
  json doc = {{"params",
               {{"M", params.M},
                {"N", params.N},
                {"alpha", params.alpha},
                {"beta", params.beta},
                {"L", params.L()},
                {"g8", params.g8()},
                {"g6", params.g6()},
                {"g4", fix_g4(params)}}}};
  std::ostringstream text;
  text << "M=" << params.M << " N=" << params.N << " alpha=" << num15(params.alpha)
       << " beta=" << num15(params.beta) << "  g4=" << num15(fix_g4(params)) << '\n';
  auto& solutions = doc["solutions"] = json::array();
  if (complex_pairs) {
    for (const ComplexQESolution& sol : qe_solve_complex(params, box)) {
      solutions.push_back({{"E", {sol.E.real(), sol.E.imag()}},
                           {"g2", {sol.g2.real(), sol.g2.imag()}},
                           {"residual", sol.residual}});
      text << "E=(" << num15(sol.E.real()) << ", " << num15(sol.E.imag()) << ")  g2=("
           << num15(sol.g2.real()) << ", " << num15(sol.g2.imag()) << ")\n";
    }
  } else {
    for (const QESolution& sol : qe_solve(params, box)) {
      solutions.push_back(
          {{"E", sol.E}, {"g2", sol.g2}, {"h", sol.h}, {"residual", sol.residual}});
      text << "E=" << num15(sol.E) << "  g2=" << num15(sol.g2) << '\n';
    }
  }
  emit(format == "text" ? text.str() : doc.dump(2), out);
  return 0;
}

int run_spectrum(const std::string& potential_path, const ContourFlags& flags,
                 const GridSpec& grid, int k, double reality_tol,
                 std::optional<double> shoot_guess, double shoot_imag,
                 const std::string& format, const std::string& out) {
  PotentialSpec pot = load_potential(potential_path);
  ContourPtr contour = flags.build();
  if (shoot_guess) {
    std::complex<double> refined =
        shoot_refine(pot, *contour, {*shoot_guess, shoot_imag}, grid);
    json doc = {{"refined", {refined.real(), refined.imag()}},
                {"contour", contour->describe()}};
    emit(format == "csv" ? num15(refined.real()) + "," + num15(refined.imag()) + "\n"
                         : doc.dump(2),
         out);
    return 0;
  }
  Spectrum spectrum = solve_spectrum(pot, *contour, grid, k, reality_tol);
  if (format == "csv") {
    std::ostringstream table;
    table << "index,re,im\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
      table << i << ',' << num15(spectrum.eigenvalues[i].real()) << ','
            << num15(spectrum.eigenvalues[i].imag()) << '\n';
    emit(table.str(), out);
    return 0;
  }
  json doc = {{"contour", spectrum.contour_fingerprint},
              {"grid", spectrum.grid_fingerprint},
              {"reality_tolerance", spectrum.reality_tolerance}};
  auto& eigs = doc["eigenvalues"] = json::array();
  for (std::complex<double> e : spectrum.eigenvalues)
    eigs.push_back({e.real(), e.imag()});
  doc["filtered_real"] = filter_real(spectrum, reality_tol);
  emit(doc.dump(2), out);
  return 0;
}

int run_figures(const std::string& dir_flag) {
  std::string dir = dir_flag.empty() ? default_out_dir() : dir_flag;
  std::filesystem::create_directories(dir);
  for (const auto& [stem, svg] : render_figures()) {
    std::filesystem::path path = std::filesystem::path(dir) / (stem + ".svg");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << svg;
    std::cout << path.string() << '\n';
  }
  return 0;
}

int run_verify(const std::vector<int>& only) {
  int failures = 0;
  for (const CheckResult& result : run_acceptance(only)) {
    std::printf("criterion %2d [%s] %s%s%s\n", result.id, result.pass ? "pass" : "FAIL",
                result.name.c_str(), result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    inject_config(args);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }

  CLI::App app{"spectra of Schroedinger operators on winding complex contours"};
  app.require_subcommand(1);

  std::string format = "json", out, sign = "minus";
  int D = 2, count = 3, k = 0;
  double reality_tol = 1e-6;
  ContourFlags contour_flags;
  GridSpec grid{-8.0, 8.0, 401};

  auto* wedges_cmd = app.add_subcommand("wedges", "asymptotic decay sectors of x^D");
  wedges_cmd->add_option("--D", D, "dominant even exponent")->required();
  wedges_cmd->add_option("--sign", sign, "ansatz sign: minus | plus")
      ->check(CLI::IsMember({"minus", "plus"}))
      ->capture_default_str();
  wedges_cmd->add_option("--count", count, "wedges per side")->capture_default_str();
  std::string wedges_format = "text";
  wedges_cmd->add_option("--format", wedges_format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  wedges_cmd->add_option("--out", out, "output file (stdout by default)");

  auto* contour_cmd = app.add_subcommand("contour", "classify an integration contour");
  add_contour_flags(contour_cmd, contour_flags);
  contour_cmd->add_option("--D", D, "dominant even exponent for wedge classification")
      ->capture_default_str();
  contour_cmd->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  contour_cmd->add_option("--out", out, "output file (stdout by default)");

  auto* transform_cmd =
      app.add_subcommand("transform", "change of variables ix = (iy)^alpha");
  std::string potential_path, alpha_str = "3", lambda_str = "1";
  double energy = 0.0;
  bool fold = false, show_dictionary = false;
  auto* pot_opt =
      transform_cmd->add_option("--potential", potential_path, "potential JSON file");
  auto* energy_opt = transform_cmd->add_option("--energy", energy, "old eigenvalue");
  transform_cmd->add_option("--alpha", alpha_str, "exponent, a rational like 3 or 1/3")
      ->capture_default_str();
  transform_cmd->add_option("--lambda", lambda_str, "perturbation scale, rational")
      ->capture_default_str();
  transform_cmd->add_flag("--fold", fold, "fold (iy)^-2 into the centrifugal strength");
  transform_cmd->add_flag("--dictionary", show_dictionary,
                          "print the alpha=3, lambda=1/9 correspondence table");
  transform_cmd->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  transform_cmd->add_option("--out", out, "output file (stdout by default)");

  auto* qe_cmd = app.add_subcommand("qe", "quasi-exact decadic (E, g2) pairs");
  QEParams qe_params{1, 1, 0.0, 0.0};
  SearchBox box;
  bool complex_pairs = false;
  qe_cmd->add_option("--M", qe_params.M, "secular block size, L = M - 1/2")->required();
  qe_cmd->add_option("--N", qe_params.N, "polynomial coefficient count")->required();
  qe_cmd->add_option("--alpha", qe_params.alpha, "g8 = 2 alpha")->capture_default_str();
  qe_cmd->add_option("--beta", qe_params.beta, "g6 = 2 beta + alpha^2")
      ->capture_default_str();
  qe_cmd->add_option("--e-min", box.e_min)->capture_default_str();
  qe_cmd->add_option("--e-max", box.e_max)->capture_default_str();
  qe_cmd->add_option("--g2-min", box.g2_min)->capture_default_str();
  qe_cmd->add_option("--g2-max", box.g2_max)->capture_default_str();
  qe_cmd->add_option("--grid", box.grid, "Newton seeds per axis")->capture_default_str();
  qe_cmd->add_flag("--complex", complex_pairs, "admit complex (E, g2) pairs");
  qe_cmd->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  qe_cmd->add_option("--out", out, "output file (stdout by default)");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "dense contour spectrum");
  std::optional<double> shoot_guess;
  double shoot_imag = 0.0;
  spectrum_cmd->add_option("--potential", potential_path, "potential JSON file")
      ->required();
  add_contour_flags(spectrum_cmd, contour_flags);
  spectrum_cmd->add_option("--s-min", grid.s_min)->capture_default_str();
  spectrum_cmd->add_option("--s-max", grid.s_max)->capture_default_str();
  spectrum_cmd->add_option("--points", grid.points)->capture_default_str();
  spectrum_cmd->add_option("--k", k, "keep only the k smallest-real-part eigenvalues")
      ->capture_default_str();
  spectrum_cmd->add_option("--reality-tol", reality_tol)->capture_default_str();
  spectrum_cmd->add_option("--shoot", shoot_guess,
                           "refine a single level from this real guess instead");
  spectrum_cmd->add_option("--shoot-imag", shoot_imag, "imaginary part of the guess")
      ->capture_default_str();
  spectrum_cmd->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--out", out, "output file (stdout by default)");

  auto* figures_cmd = app.add_subcommand("figures", "emit the stock SVG diagrams");
  std::string out_dir;
  figures_cmd->add_option("--out-dir", out_dir,
                          "output directory (TOBOGGAN_OUT_DIR or . by default)");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  std::vector<int> only;
  verify_cmd->add_option("--only", only, "restrict to these criterion ids");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (wedges_cmd->parsed()) return run_wedges(D, sign, count, wedges_format, out);
    if (contour_cmd->parsed()) return run_contour(contour_flags, D, format, out);
    if (transform_cmd->parsed()) {
      if (!show_dictionary && pot_opt->count() == 0) {
        std::cerr << "error: transform needs --potential (or --dictionary)\n";
        return 2;
      }
      return run_transform(potential_path,
                           energy_opt->count() ? std::optional<double>(energy)
                                               : std::nullopt,
                           alpha_str, lambda_str, fold, show_dictionary, format, out);
    }
    if (qe_cmd->parsed())
      return run_qe(qe_params, box, complex_pairs, format, out);
    if (spectrum_cmd->parsed())
      return run_spectrum(potential_path, contour_flags, grid, k, reality_tol,
                          shoot_guess, shoot_imag, format, out);
    if (figures_cmd->parsed()) return run_figures(out_dir);
    if (verify_cmd->parsed()) return run_verify(only);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 2;
}
