#include "landauer_lab/cli.hpp"

int main(int argc, char** argv) { return lab::cli::run(argc, argv); }
