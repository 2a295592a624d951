#include "stereogen/cli.hpp"

int main(int argc, char** argv) { return stereogen::run_cli(argc, argv); }
