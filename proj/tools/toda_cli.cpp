#include "toda/cli.hpp"

int main(int argc, char** argv) { return toda::cli::main(argc, argv); }
