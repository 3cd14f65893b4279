#include "dix/cli.hpp"

int main(int argc, char** argv) { return dix::cli::run_main(argc, argv); }
