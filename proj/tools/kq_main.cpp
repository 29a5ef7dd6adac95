#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "kq/kq.hpp"

namespace {

int run_and_emit(kq::RunConfig cfg) {
  kq::Report rep = kq::run(cfg);
  std::string payload = kq::emit(rep, cfg.format);
  if (cfg.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file " << cfg.out << "\n";
      return 3;
    }
    out << payload;
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification workbench for the deformed-oscillator quantization"};
  app.set_config("--config", "", "key=value config file mirroring the flags");

  kq::RunConfig cfg;
  std::string k_str = "-4";
  std::string hbar_str = "1/3";
  std::string measure_str = "corrected";
  std::string point_str;

  app.add_option("--n", cfg.n, "complex dimension")->capture_default_str();
  app.add_option("--k", k_str, "holomorphic curvature, rational p/q")->capture_default_str();
  app.add_option("--hbar", hbar_str, "quantization scale, rational p/q")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "basis degree cutoff")->capture_default_str();
  app.add_option("--measure", measure_str, "weight mode: corrected | literal (alias: paper)")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "sample-point count")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | text")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");

  const std::vector<std::string> names = {"geometry", "algebra", "operators", "spectrum",
                                          "gram",     "adjoint", "hproj",     "all"};
  CLI::App* hproj_cmd = nullptr;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name, name == "all" ? "run every suite"
                                                           : "run the " + name + " suite");
    if (name == "hproj") {
      hproj_cmd = sub;
      sub->add_option("--point", point_str,
                      "classification point, rationals re,im,re,im (n = 2)");
      sub->add_option("--curve", cfg.curve_file, "CSV curve t,Re z1,Im z1,... to test");
    }
  }
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.k = kq::rat_from_string(k_str);
    cfg.hbar = kq::rat_from_string(hbar_str);
    if (measure_str == "literal" || measure_str == "paper")
      cfg.measure = kq::MeasureMode::literal;
    else if (measure_str == "corrected")
      cfg.measure = kq::MeasureMode::corrected;
    else
      throw kq::ConfigError("unknown measure mode: " + measure_str);

    for (const auto& name : names) {
      if (name == "all") continue;
      if (app.got_subcommand(name)) cfg.suites.push_back(name);
    }
    if (app.got_subcommand("all"))
      cfg.suites = {"geometry", "algebra", "operators", "spectrum", "gram", "adjoint", "hproj"};

    if (hproj_cmd && !point_str.empty()) {
      std::istringstream ps(point_str);
      std::string cell;
      std::vector<kq::Rat> vals;
      while (std::getline(ps, cell, ',')) vals.push_back(kq::rat_from_string(cell));
      if (vals.size() % 2 != 0) throw kq::ConfigError("--point needs re,im pairs");
      for (size_t j = 0; j + 1 < vals.size(); j += 2)
        cfg.hproj_point.emplace_back(vals[j], vals[j + 1]);
    }

    return run_and_emit(std::move(cfg));
  } catch (const kq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
