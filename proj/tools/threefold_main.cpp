#include "threefold/cli.hpp"

int main(int argc, char** argv) { return threefold::cli::run(argc, argv); }
