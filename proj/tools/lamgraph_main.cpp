#include "lamgraph/cli.hpp"

int main(int argc, char** argv) { return lamgraph::cli_main(argc, argv); }
