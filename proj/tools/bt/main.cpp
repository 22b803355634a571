#include "cli.hpp"

int main(int argc, char** argv) { return gazetrack::cli::run(argc, argv); }
