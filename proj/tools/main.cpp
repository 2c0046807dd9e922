#include "cli.hpp"

int main(int argc, char** argv) { return coulstat::cli::run(argc, argv); }
