#include "run_config.hpp"

int main(int argc, char** argv) { return casimir::cli::run(argc, argv); }
