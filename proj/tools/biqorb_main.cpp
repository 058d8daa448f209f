#include "biqorb/cli.hpp"

int main(int argc, char** argv) { return biqorb::run_cli(argc, argv); }
