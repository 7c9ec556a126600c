#include "holo_interp/cli.hpp"

int main(int argc, char** argv) { return holo_interp::cli::run(argc, argv); }
