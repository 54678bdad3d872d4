#include "cli_app.hpp"

int main(int argc, char** argv) { return dimer::cli::run(argc, argv); }
