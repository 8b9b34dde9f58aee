#include "cli.hpp"

int main(int argc, char** argv) { return ro3::cli::run(argc, argv); }
