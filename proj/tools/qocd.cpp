#include "qocd/cli.hpp"

int main(int argc, char** argv) { return qocd::cli::run(argc, argv); }
