#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "countdiag/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dispersion and skewness diagnostics for count time series with missing observations"};
  app.require_subcommand(1);
  countdiag::cli::register_simulate(app);
  countdiag::cli::register_diagnose(app);
  countdiag::cli::register_critical(app);
  countdiag::cli::register_mc(app);
  countdiag::cli::register_curves(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const countdiag::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
