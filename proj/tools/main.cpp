#include "fockq/cli.hpp"

int main(int argc, char** argv) { return fockq::cli::run(argc, argv); }
