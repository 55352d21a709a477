#include "cli.hpp"

int main(int argc, char** argv) { return sphint::cli::main(argc, argv); }
