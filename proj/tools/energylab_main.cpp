#include "energylab/cli.hpp"

int main(int argc, char** argv) { return energylab::run_cli(argc, argv); }
