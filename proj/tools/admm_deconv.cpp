#include "admm/cli.hpp"

int main(int argc, char** argv) { return admm::cli_main(argc, argv); }
