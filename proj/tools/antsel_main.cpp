#include "antsel/cli.hpp"

int main(int argc, char** argv) { return antsel::cli::main(argc, argv); }
