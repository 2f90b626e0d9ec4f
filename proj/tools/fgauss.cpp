// fgauss: finite Gaussian tables and datasets on the command line.
//
//   fgauss gauss --d 31 --kappa 1
//   fgauss uncertainty --d-list 3,5,7 --format json
//   fgauss revival --d 9 --ham free --state delta 0
//
// Exit status: 0 success, 2 usage error, 3 numerical failure or uncertified result.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fgauss/reports.hpp"

namespace {

void add_common(CLI::App& sub, fgauss::RunConfig& cfg) {
  static const std::map<std::string, fgauss::Format> formats{{"csv", fgauss::Format::csv},
                                                            {"json", fgauss::Format::json}};
  sub.add_option("--d", cfg.d, "odd dimension d = 2s+1 >= 3")->capture_default_str();
  sub.add_option("--kappa", cfg.kappa, "Gaussian width parameter")->capture_default_str();
  sub.add_option("--term-tol", cfg.term_tol, "series truncation threshold")->capture_default_str();
  sub.add_option("--eig-tol", cfg.eig_tol, "eigen residual bound relative to max|H|")
      ->capture_default_str();
  sub.add_option("--rel-tol", cfg.rel_tol, "relative tolerance for revival analysis")
      ->capture_default_str();
  sub.add_option("--max-den", cfg.max_den, "largest denominator for level ratios")
      ->capture_default_str();
  sub.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub.add_option("--out", cfg.output_path, "output file (default stdout)");
}

fgauss::StateSpec parse_state(const std::vector<std::string>& words) {
  fgauss::StateSpec spec;
  const std::string& kind = words.front();
  auto to_int = [](const std::string& w) {
    std::size_t used = 0;
    const int v = std::stoi(w, &used);
    if (used != w.size()) throw CLI::ValidationError("--state", "not an integer: " + w);
    return v;
  };
  if (kind == "gauss" && words.size() == 1) {
    spec.kind = fgauss::StateSpec::Kind::gauss;
  } else if (kind == "coherent" && words.size() == 3) {
    spec.kind = fgauss::StateSpec::Kind::coherent;
    spec.a = to_int(words[1]);
    spec.b = to_int(words[2]);
  } else if (kind == "delta" && words.size() == 2) {
    spec.kind = fgauss::StateSpec::Kind::delta;
    spec.a = to_int(words[1]);
  } else {
    throw CLI::ValidationError("--state", "expected 'gauss', 'coherent A B' or 'delta N'");
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Gaussians on Z_d: tables and datasets"};
  app.require_subcommand(1);

  fgauss::RunConfig cfg;
  std::vector<int> d_list{3, 5, 7, 9, 11, 13, 15};
  fgauss::HamiltonianKind ham = fgauss::HamiltonianKind::osc;
  fgauss::WignerSource source = fgauss::WignerSource::definition;
  bool check = false;
  std::vector<std::string> state_words{"gauss"};
  double weight_floor = 1e-12;

  const std::map<std::string, fgauss::HamiltonianKind> hams{{"osc", fgauss::HamiltonianKind::osc},
                                                            {"free", fgauss::HamiltonianKind::free}};
  const std::map<std::string, fgauss::WignerSource> sources{
      {"definition", fgauss::WignerSource::definition},
      {"closed", fgauss::WignerSource::closed_form},
      {"closed_form", fgauss::WignerSource::closed_form},
      {"theta", fgauss::WignerSource::theta_form},
      {"theta_form", fgauss::WignerSource::theta_form}};

  auto* gauss = app.add_subcommand("gauss", "g, g_plus and the naive Gaussian over Z_d");
  auto* comm = app.add_subcommand("commutator", "spectrum of -i[Q,P], ascending");
  auto* unc = app.add_subcommand("uncertainty", "dQ dP against |<[Q,P]>|/2 per dimension");
  auto* spec = app.add_subcommand("spectrum", "Hamiltonian eigenvalues, descending, with gaps");
  auto* quasi = app.add_subcommand("quasi", "g_1 as a quasi-eigenstate of the oscillator");
  auto* wig = app.add_subcommand("wigner", "discrete Wigner function grid");
  auto* rev = app.add_subcommand("revival", "revival period of a state, certified by evolution");
  for (CLI::App* sub : {gauss, comm, unc, spec, quasi, wig, rev}) add_common(*sub, cfg);

  unc->add_option("--d-list", d_list, "dimensions")->delimiter(',')->capture_default_str();
  for (CLI::App* sub : {spec, rev}) {
    sub->add_option("--ham", ham, "osc or free")->transform(CLI::CheckedTransformer(hams));
  }
  wig->add_option("--source", source, "definition, closed or theta")
      ->transform(CLI::CheckedTransformer(sources));
  wig->add_flag("--check", check, "also report max |definition - closed form|");
  rev->add_option("--state", state_words, "gauss | coherent A B | delta N")->expected(1, 3);
  rev->add_option("--weight-floor", weight_floor, "smallest weight counted as populated")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
    fgauss::Report report;
    if (*gauss) {
      report = fgauss::cmd_gauss(cfg);
    } else if (*comm) {
      report = fgauss::cmd_commutator(cfg);
    } else if (*unc) {
      report = fgauss::cmd_uncertainty(cfg, d_list);
    } else if (*spec) {
      report = fgauss::cmd_spectrum(cfg, ham);
    } else if (*quasi) {
      report = fgauss::cmd_quasi(cfg);
    } else if (*wig) {
      report = fgauss::cmd_wigner(cfg, source, check);
    } else {
      fgauss::StateSpec st;
      try {
        st = parse_state(state_words);
      } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
      }
      report = fgauss::cmd_revival(cfg, ham, st, weight_floor);
    }

    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path, std::ios::binary);
      if (!file) {
        std::cerr << "cannot open " << cfg.output_path << '\n';
        return 2;
      }
    }
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;
    if (cfg.format == fgauss::Format::json) {
      fgauss::write_json(os, report);
    } else {
      fgauss::write_csv(os, report);
      for (const auto& [k, v] : report.extras.items()) {
        std::cerr << k << ": " << (v.is_number_float() ? fgauss::format_double(v.get<double>())
                                                       : v.dump()) << '\n';
      }
    }
    if (report.exit_code != 0) std::cerr << report.diagnostic << '\n';
    return report.exit_code;
  } catch (const fgauss::Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case fgauss::Errc::invalid_dimension:
      case fgauss::Errc::invalid_parameter:
      case fgauss::Errc::out_of_range:
        return 2;
      default:
        return 3;
    }
  }
}
