#include "zb/cli/app.hpp"

int main(int argc, char** argv) { return zb::cli::run(argc, argv); }
