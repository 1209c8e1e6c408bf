#include "tvsample/cli.hpp"

int main(int argc, char** argv) { return tvsample::cli_main(argc, argv); }
