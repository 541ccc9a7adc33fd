#include "gfe/cli.hpp"

int main(int argc, char** argv) { return gfe::cli::run(argc, argv); }
