// modval: figure data, parameter sweeps, errata report and oracle checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modval/modval.hpp"

namespace {

using namespace modval;
namespace sw = modval::sweep;

struct NumericFlag {
  const char* flag;
  const char* param;
  const char* help;
  std::optional<double> value;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

std::string to_csv(const std::vector<sw::ResultRow>& rows) {
  std::ostringstream os;
  sw::write_csv(os, rows);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized modular-value measurements with bosonic pointer states"};
  app.require_subcommand(1);

  std::vector<NumericFlag> numeric = {
      {"--gamma", "gamma", "coherent amplitude |alpha|", {}},
      {"--phi", "phi", "coherent phase arg(alpha)", {}},
      {"--alpha-re", "alpha_re", "Re(alpha) for squeezed/cat pointers", {}},
      {"--alpha-im", "alpha_im", "Im(alpha) for squeezed/cat pointers", {}},
      {"--r", "r", "squeezing magnitude", {}},
      {"--theta-sq", "theta_sq", "squeezing angle", {}},
      {"--phi-cat", "phi_cat", "cat relative phase", {}},
      {"--g", "g", "coupling strength", {}},
      {"--theta1", "theta1", "pre-selection polar angle", {}},
      {"--phi1", "phi1", "pre-selection azimuth", {}},
      {"--modval", "modval", "real modular value; sets theta1 = atan(modval), g = phi1 = pi/2", {}},
      {"--m", "m", "projector level", {}},
      {"--dim", "dim", "Fock truncation", {}},
      {"--quad-theta", "quad_theta", "quadrature angle", {}},
      {"--n-total", "n_total", "number of measurements N", {}},
      {"--n", "n", "photon number for quantity p_n", {}},
  };
  std::string pointer = "coherent";
  std::string snr_mode;
  std::string ps;
  std::string quantity = "p_n";
  std::vector<std::string> sweeps;
  std::string figure_out;
  std::string out;
  unsigned threads = 0;
  std::string figure_id;

  auto add_common = [&](CLI::App* sub) {
    for (auto& f : numeric) sub->add_option(f.flag, f.value, f.help);
    sub->add_option("--snr-mode", snr_mode, "SNR signal: final mean or shift from initial")
        ->check(CLI::IsMember({"final", "shift"}));
    sub->add_option("--ps", ps, "post-selection probability convention")->check(CLI::IsMember({"exact", "paper"}));
    sub->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  };

  auto* figure = app.add_subcommand("figure", "write the CSV data behind one figure (one file per panel)");
  figure->add_option("id", figure_id, "fig1..fig9")->required();
  figure->add_option("--out", figure_out, "output directory")->default_val(".");
  add_common(figure);

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a Cartesian parameter sweep");
  sweep_cmd->add_option("--pointer", pointer, "pointer family")->check(CLI::IsMember({"coherent", "squeezed", "cat"}));
  sweep_cmd->add_option("--quantity", quantity, "p_n, q_mandel, snr, quad_mean, quad_second, mean_n");
  sweep_cmd->add_option("--sweep", sweeps, "param=start:stop:count or param=v1,v2,...");
  sweep_cmd->add_option("--out", out, "output CSV (default stdout)");
  add_common(sweep_cmd);

  auto* errata = app.add_subcommand("errata", "report printed-formula discrepancies");
  errata->add_option("--out", out, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "run the analytic/oracle equivalence suite");
  std::size_t check_count = 200;
  std::uint64_t check_seed = 20240611;
  check->add_option("--count", check_count, "number of random configurations");
  check->add_option("--seed", check_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (figure->parsed()) {
      sw::Overrides overrides;
      for (const auto& f : numeric)
        if (f.value) overrides.emplace_back(f.param, *f.value);
      sw::FigureModes modes;
      if (!snr_mode.empty()) modes.snr_mode = sw::parse_snr_mode(snr_mode);
      if (!ps.empty()) modes.ps = sw::parse_ps_convention(ps);
      const auto panels = sw::run_figure(figure_id, overrides, modes, threads);
      std::filesystem::create_directories(figure_out);
      for (const auto& panel : panels) {
        const auto path = std::filesystem::path(figure_out) / (panel.name + ".csv");
        write_text(path.string(), to_csv(panel.rows));
        std::cerr << "wrote " << path.string() << " (" << panel.rows.size() << " rows)\n";
      }
    } else if (sweep_cmd->parsed()) {
      sw::SweepSpec spec;
      spec.base.family = sw::parse_family(pointer);
      spec.base.quantity = sw::parse_quantity(quantity);
      for (const auto& f : numeric)
        if (f.value && std::string(f.param) != "modval") sw::set_param(spec.base, f.param, *f.value);
      for (const auto& f : numeric)
        if (f.value && std::string(f.param) == "modval") sw::set_param(spec.base, f.param, *f.value);
      if (!snr_mode.empty()) spec.base.snr_mode = sw::parse_snr_mode(snr_mode);
      if (!ps.empty()) spec.base.ps = sw::parse_ps_convention(ps);
      for (const auto& s : sweeps) spec.axes.push_back(sw::parse_axis(s));
      write_text(out, to_csv(sw::run_sweep(spec, threads)));
    } else if (errata->parsed()) {
      write_text(out, errata_report());
    } else if (check->parsed()) {
      const auto res = run_oracle_equivalence(check_count, check_seed);
      std::cout << "configs: " << res.configs << "\nfailures: " << res.failures
                << "\nmax amplitude deviation: " << res.max_deviation
                << "\nmax P_s deviation: " << res.max_ps_deviation << "\n";
      return res.failures == 0 ? 0 : 1;
    }
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << " (raise --dim)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
