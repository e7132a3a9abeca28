#include "twofront/cli.hpp"

int main(int argc, char** argv) { return twofront::cli::run_main(argc, argv); }
