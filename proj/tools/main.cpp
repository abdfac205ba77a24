#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <heisenwave/calderon.hpp>
#include <heisenwave/io.hpp>
#include <heisenwave/wavelet.hpp>

#include "suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace heisenwave;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  cli::SuiteConfig config;
  std::string suite = "all";
  std::string out;
  std::string format = "hwf1";
  std::string sampling = "adaptive";
  std::string input;
  std::string kind;
  std::string moments;
  double s = 1.0;
  double a = 1.0;
  bool json = false;
  bool closed_form = false;
  bool lattice = false;
};

Sampling parse_sampling(const std::string& s) {
  static const std::map<std::string, Sampling> names{
      {"point", Sampling::point}, {"cell", Sampling::cell_average}, {"adaptive", Sampling::adaptive}};
  return names.at(s);
}

void write_field(const SampledField& f, const Options& o) {
  if (o.format == "csv")
    save_csv(o.out, f);
  else
    save_hwf1(o.out, f);
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names{"group", "heat", "wavelet", "calderon"};
  if (o.suite != "all") names = {o.suite};
  std::vector<cli::SuiteResult> results;
  for (const auto& n : names) {
    results.push_back(cli::run_suite(n, o.config));
    std::cerr << n << ": " << (results.back().passed() ? "pass" : "FAIL") << " (" << results.back().wall_time << " s)\n";
  }
  const json report = cli::report_json(results);
  if (o.out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(o.out);
    if (!out) throw FormatError("cannot open " + o.out + " for writing");
    out << report.dump(2) << '\n';
  }
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

int cmd_cwt(const Options& o) {
  const SampledField f = load_hwf1(o.input);
  const ScaleLattice scales(o.config.eps, o.config.A, o.config.scales);
  const fs::path manifest = o.out.empty() ? fs::path("cwt.json") : fs::path(o.out);
  const fs::path dir = manifest.parent_path();
  std::error_code ec;
  if (!dir.empty()) fs::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create " + dir.string() + ": " + ec.message());

  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const WaveletCoefficients c = cwt(f, phi, scales, parse_sampling(o.sampling));
  const double energy = cwt_energy(c);
  const double norm2 = std::pow(norm_l2(f), 2);
  const double ratio = norm2 > 0.0 ? energy / norm2 : 0.0;

  json slabs = json::array();
  for (std::size_t j = 0; j < c.slabs.size(); ++j) {
    const std::string name = manifest.stem().string() + "_scale" + std::to_string(j) + ".hwf1";
    save_hwf1(dir / name, c.slabs[j]);
    const double a = scales.nodes()[j];
    slabs.push_back({{"index", j}, {"scale", a}, {"log_weight", scales.log_weights()[j]},
                     {"measure_weight", scales.log_weights()[j] / (a * a * a * a)}, {"file", name}});
  }
  json grid = json::array();
  for (Axis ax : {Axis::p, Axis::q, Axis::t})
    grid.push_back({{"samples", f.grid().axis(ax).samples}, {"half_extent", f.grid().axis(ax).half_extent}});
  const json doc{{"schema", "hwcwt/1"},
                 {"input", o.input},
                 {"grid", grid},
                 {"lattice", {{"a_min", scales.a_min()}, {"a_max", scales.a_max()}, {"count", scales.count()}}},
                 {"sampling", o.sampling},
                 {"slabs", slabs},
                 {"energy", energy},
                 {"input_norm2", norm2},
                 {"ratio", ratio}};
  std::ofstream out(manifest);
  if (!out) throw FormatError("cannot open " + manifest.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (o.json)
    std::cout << json{{"energy", energy}, {"input_norm2", norm2}, {"ratio", ratio}}.dump() << '\n';
  else
    std::cout << "energy " << energy << "\nratio " << ratio << '\n';
  return kExitPass;
}

int cmd_gen(const Options& o) {
  const HeatKernelEvaluator ev;
  const GridSpec grid = o.lattice ? GridSpec::lattice(o.config.extent, o.config.grid)
                                  : GridSpec::cube(o.config.extent, o.config.grid);
  const Sampling mode = parse_sampling(o.sampling);
  const MexicanHatWavelet phi(ev);
  const SmoothingFunction psi(ev);
  std::optional<SampledField> f;
  if (o.kind == "heat") {
    if (!(o.s >= HeatKernelEvaluator::kMinTime)) throw std::invalid_argument("--s must be >= 1e-4");
    f = ev.sample(grid, o.s, {1, 0, 0});
  } else if (o.kind == "phi") {
    f = phi.sample_dilated(grid, Scale(o.a), Normalization::L1, mode);
  } else if (o.kind == "psi") {
    f = psi.sample_dilated(grid, Scale(o.a), mode);
  } else {
    const double eps = o.config.eps, A = o.config.A;
    if (!(eps > 0.0 && A > eps)) throw std::invalid_argument("kernel needs 0 < eps < A");
    const Sampling kmode = mode == Sampling::adaptive ? Sampling::cell_average : mode;
    f = o.closed_form ? calderon_kernel_closed_form(psi, grid, eps, A, kmode).field
                      : calderon_kernel_numeric(phi, grid, eps, A, ScaleLattice(eps, A, o.config.scales), {.sampling = kmode}).field;
  }
  write_field(*f, o);

  if (!o.moments.empty()) {
    std::ofstream out(o.moments);
    if (!out) throw FormatError("cannot open " + o.moments + " for writing");
    out << "monomial,degree,value,boundary_ratio\n";
    for (const Monomial& m : Monomial::up_to_degree(2)) {
      const MomentResult r = moment(*f, m);
      out << m.name() << ',' << m.degree() << ',' << r.value.real() << ',' << r.boundary_ratio << '\n';
    }
  }
  const double integral = integrate(*f).real();
  if (o.json)
    std::cout << json{{"kind", o.kind}, {"file", o.out}, {"integral", integral}}.dump() << '\n';
  else
    std::cout << o.kind << " -> " << o.out << "  integral " << integral << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet analysis on the Heisenberg group"};
  app.require_subcommand(1);
  Options o;

  auto grid_flags = [&](CLI::App* sub) {
    sub->add_option("--grid", o.config.grid, "samples per axis")->check(CLI::Range(3u, 1024u));
    sub->add_option("--extent", o.config.extent, "half extent of the box")->check(CLI::PositiveNumber);
  };
  auto window_flags = [&](CLI::App* sub) {
    sub->add_option("--eps", o.config.eps, "smallest scale")->check(CLI::PositiveNumber);
    sub->add_option("--A", o.config.A, "largest scale")->check(CLI::PositiveNumber);
    sub->add_option("--scales", o.config.scales, "geometric scale count")->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  };
  auto sampling_flag = [&](CLI::App* sub) {
    sub->add_option("--sampling", o.sampling, "point | cell | adaptive")->check(CLI::IsMember({"point", "cell", "adaptive"}));
  };

  auto* verify = app.add_subcommand("verify", "run property suites and print a JSON report");
  verify->add_option("--suite", o.suite, "group | heat | wavelet | calderon | all")
      ->check(CLI::IsMember({"group", "heat", "wavelet", "calderon", "all"}));
  grid_flags(verify);
  window_flags(verify);
  verify->add_option("--out", o.out, "write the report here instead of stdout");
  verify->add_flag("--json", o.json, "accepted for symmetry; the report is always JSON");

  auto* cwt_cmd = app.add_subcommand("cwt", "continuous wavelet transform of an HWF1 field");
  cwt_cmd->add_option("input", o.input, "HWF1 input")->required()->check(CLI::ExistingFile);
  window_flags(cwt_cmd);
  sampling_flag(cwt_cmd);
  cwt_cmd->add_option("--out", o.out, "manifest path; slabs are written next to it");
  cwt_cmd->add_flag("--json", o.json, "print the summary as JSON");

  auto* gen = app.add_subcommand("gen", "sample a field and write it as HWF1 or CSV");
  gen->add_option("kind", o.kind, "heat | phi | psi | kernel")->required()->check(CLI::IsMember({"heat", "phi", "psi", "kernel"}));
  grid_flags(gen);
  window_flags(gen);
  sampling_flag(gen);
  gen->add_option("--s", o.s, "heat time")->check(CLI::PositiveNumber);
  gen->add_option("--a", o.a, "dilation scale for phi and psi")->check(CLI::PositiveNumber);
  gen->add_flag("--closed-form", o.closed_form, "kernel from the closed form instead of the scale sum");
  gen->add_flag("--lattice", o.lattice, "use the interpolation-free lattice grid");
  gen->add_option("--out", o.out, "output file")->required();
  gen->add_option("--format", o.format, "hwf1 | csv")->check(CLI::IsMember({"hwf1", "csv"}));
  gen->add_option("--moments", o.moments, "also write a moments table (CSV)");
  gen->add_flag("--json", o.json, "print the summary as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*cwt_cmd) return cmd_cwt(o);
    return cmd_gen(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
