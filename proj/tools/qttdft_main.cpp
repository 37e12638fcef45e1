#include "qttdft/cli.hpp"

int main(int argc, char** argv) { return qttdft::cli::run(argc, argv); }
