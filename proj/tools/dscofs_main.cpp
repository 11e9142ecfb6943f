#include "dscofs/cli.hpp"

int main(int argc, char** argv) { return dscofs::cli::run_cli(argc, argv); }
