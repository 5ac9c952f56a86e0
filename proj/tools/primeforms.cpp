#include "primeforms/cli.hpp"

int main(int argc, char** argv) { return primeforms::cli_main(argc, argv); }
