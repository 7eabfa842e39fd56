#include "afd2d/cli.hpp"

int main(int argc, char** argv) { return afd2d::run_cli(argc, argv); }
