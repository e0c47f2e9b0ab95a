#include "zelab/cli.hpp"

int main(int argc, char** argv) { return zelab::cli::run_cli(argc, argv); }
