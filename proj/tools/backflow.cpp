#include "cli.hpp"

int main(int argc, char** argv) { return backflow::cli::run(argc, argv); }
