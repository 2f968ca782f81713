#include "isingkit/cli.hpp"

int main(int argc, char** argv) { return isingkit::run_cli(argc, argv); }
