#pragma once

namespace lamgraph {

// Command-line entry point (the `lamgraph` binary is a thin wrapper).
// Exit codes: 0 success / verdict Yes, 1 verdict No, 2 verdict Unknown,
// 64 usage error, 65 malformed or inconsistent input data, 70 internal error.
int cli_main(int argc, const char* const* argv);

}  // namespace lamgraph
