#include "platonic/cli.hpp"

int main(int argc, char** argv) { return platonic::cli::run(argc, argv); }
