#include "sprecov/cli_app.hpp"

int main(int argc, char** argv) { return sprecov::run_cli(argc, argv); }
