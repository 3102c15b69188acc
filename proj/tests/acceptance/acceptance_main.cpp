#include <iostream>

#include <CLI11.hpp>

#include "fcheb/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1..10 with pinned tolerances"};
  std::string out, catalog;
  app.add_option("--out", out, "directory for count.csv, sigma.csv, acceptance.json and plots/");
  app.add_option("--catalog", catalog, "shipped catalog JSON compared in criterion 1");
  CLI11_PARSE(app, argc, argv);

  fcheb::AcceptanceOptions opt;
  opt.out_dir = out;
  if (!catalog.empty()) opt.catalog_file = catalog;
  bool all = true;
  try {
    for (const auto& r : fcheb::run_acceptance(opt)) {
      std::cout << fcheb::criterion_line(r) << std::endl;
      all = all && r.pass;
    }
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 3;
  }
  return all ? 0 : 1;
}
