#include "cupset/cli.hpp"

int main(int argc, char** argv) { return cupset::run_cli(argc, argv); }
