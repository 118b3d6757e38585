#include "lqrl/cli.hpp"

int main(int argc, char** argv) { return lqrl::cli_main(argc, argv); }
