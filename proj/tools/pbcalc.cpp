#include "primebag/cli.hpp"

int main(int argc, char** argv) { return primebag::run_cli(argc, argv); }
