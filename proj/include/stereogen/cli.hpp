#pragma once

namespace stereogen {

/// Dispatches the stereogen subcommands. Exit codes: 0 success, 1 stage
/// failure, 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace stereogen
