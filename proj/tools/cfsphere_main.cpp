#include "../src/cli_lib.hpp"

int main(int argc, char** argv) { return cfs::cli::run(argc, argv); }
