#include "eit4/cli.hpp"

int main(int argc, char** argv) { return eit4::cli::run(argc, argv); }
