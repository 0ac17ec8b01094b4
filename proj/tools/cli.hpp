// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace rsmar::cli {

/// Entry point of the `rsmar` tool. Returns the process exit code; normal
/// output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsmar::cli
