// Command-line front end; subcommands are wired up in cli_main.
#include "phase/cli.hpp"

int main(int argc, char** argv) { return phase::cli_main(argc, argv); }
