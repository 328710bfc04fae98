#pragma once

namespace zb::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitConfig = 2,
  kExitVerifyFailed = 3,
};

/// Entry point of the `zb` executable.
int run(int argc, char** argv);

}  // namespace zb::cli
