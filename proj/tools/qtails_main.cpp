#include "qtails/cli.hpp"

int main(int argc, char** argv) { return qtails::cli_main(argc, argv); }
