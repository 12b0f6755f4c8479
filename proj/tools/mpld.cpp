#include "mpld/cli.hpp"

int main(int argc, char** argv) { return mpld::cli_main(argc, argv); }
