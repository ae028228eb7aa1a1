#include "fishsim/cli.hpp"

int main(int argc, char** argv) { return fishsim::run_cli(argc, argv); }
