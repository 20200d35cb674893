#pragma once

#include <CLI11.hpp>

namespace countdiag::cli {

/// Registers the subcommands on @p app; each one runs its action from a callback.
void register_simulate(CLI::App& app);
void register_diagnose(CLI::App& app);
void register_critical(CLI::App& app);
void register_mc(CLI::App& app);
void register_curves(CLI::App& app);

}  // namespace countdiag::cli
