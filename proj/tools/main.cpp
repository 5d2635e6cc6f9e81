#include "cli.hpp"

int main(int argc, char** argv) { return wdcolor::cli::run(argc, argv); }
