#pragma once

namespace sepnn {

/// Entry point of the command-line tool (build / bench / match / stats).
/// Returns the process exit status; diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace sepnn
